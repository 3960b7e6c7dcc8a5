//! Univariate helpers and the squarefree test for binary forms.

use super::{Field, FieldElem, Polynomial};
use crate::error::Error;

/// Dense univariate polynomial, coefficients from low to high degree.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl UniPoly {
    pub fn new(field: Field, mut coeffs: Vec<FieldElem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> UniPoly {
        let f = self.field;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_i64(i as i64))).collect();
        UniPoly::new(f, coeffs)
    }

    /// Remainder of Euclidean division.
    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        let f = self.field;
        let d = divisor.degree().expect("division by zero polynomial");
        let inv_lc = f.inv(&divisor.coeffs[d]).unwrap();
        let mut r = self.coeffs.clone();
        while r.len() > d && !r.is_empty() {
            let top = r.len() - 1;
            let k = f.mul(&r[top], &inv_lc);
            if !f.is_zero(&k) {
                let shift = top - d;
                for (i, c) in divisor.coeffs.iter().enumerate() {
                    r[shift + i] = f.sub(&r[shift + i], &f.mul(&k, c));
                }
            }
            r.pop();
            while r.last().is_some_and(|c| f.is_zero(c)) {
                r.pop();
            }
        }
        UniPoly::new(f, r)
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

/// Dehomogenizes a binary form by setting the variable other than `u` to 1.
fn dehomogenize(p: &Polynomial, u: usize) -> UniPoly {
    let f = p.field();
    let deg = p.degree_in(u) as usize;
    let mut coeffs = vec![f.zero(); deg + 1];
    for (m, c) in p.terms() {
        let i = m.0[u] as usize;
        coeffs[i] = f.add(&coeffs[i], c);
    }
    UniPoly::new(f, coeffs)
}

/// True iff the binary form `p(x_u, x_v)` has no repeated projective root.
///
/// Both affine charts are checked: `p(t, 1)` and `p(1, t)` must each be
/// coprime to their derivatives. Requires characteristic 0 or above
/// twice the degree.
pub fn binary_form_squarefree(p: &Polynomial, u: usize, v: usize) -> Result<bool, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = p.ring();
    if u == v || ring.weight(u) != 1 || ring.weight(v) != 1 {
        return Err(Error::NotBinaryForm);
    }
    if p.terms().iter().any(|(m, _)| m.support().any(|i| i != u && i != v)) {
        return Err(Error::NotBinaryForm);
    }
    let deg = match p.homogeneity() {
        super::Homogeneity::Degree(d) => d,
        _ => return Err(Error::NotBinaryForm),
    };
    p.field().require_characteristic_above(2 * deg as u64)?;
    let squarefree = |g: UniPoly| {
        let dg = g.derivative();
        match g.degree() {
            None | Some(0) => true,
            _ => g.gcd(&dg).degree() == Some(0),
        }
    };
    Ok(squarefree(dehomogenize(p, u)) && squarefree(dehomogenize(p, v)))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::poly::{parse_poly, WeightedRing};

    fn ring(field: Field) -> Arc<WeightedRing> {
        WeightedRing::new(["x0", "x1", "z"], &[1, 1, 3], field).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let r = ring(Field::Rational);
        let sf = |s: &str| binary_form_squarefree(&parse_poly(s, &r).unwrap(), 0, 1).unwrap();
        assert!(sf("x0^5*x1 + x0*x1^5"));
        assert!(!sf("x0^2*(x0+x1)^4"));
        assert!(sf("x0"));
        // double root at infinity only
        assert!(!sf("x0*x1^2"));
        assert!(!sf("x0^6"));
        assert!(sf("x0^6 + x1^6"));
    }

    #[test]
    fn rejects_bad_input() {
        let r = ring(Field::Rational);
        assert_eq!(binary_form_squarefree(&Polynomial::zero(&r), 0, 1), Err(Error::ZeroPolynomial));
        let zf = parse_poly("z^2 + x0^6", &r).unwrap();
        assert_eq!(binary_form_squarefree(&zf, 0, 1), Err(Error::NotBinaryForm));
        let inh = parse_poly("x0^2 + x1", &r).unwrap();
        assert_eq!(binary_form_squarefree(&inh, 0, 1), Err(Error::NotBinaryForm));
        let r7 = ring(Field::prime(7).unwrap());
        let f = parse_poly("x0^6 + x1^6", &r7).unwrap();
        assert!(matches!(binary_form_squarefree(&f, 0, 1), Err(Error::CharacteristicTooSmall { .. })));
    }

    #[test]
    fn gcd_over_prime_field() {
        let r = ring(Field::prime(1009).unwrap());
        let f = parse_poly("(x0 - 3*x1)^2*(x0 + x1)*x1^3", &r).unwrap();
        assert!(!binary_form_squarefree(&f, 0, 1).unwrap());
        let g = parse_poly("(x0 - 3*x1)*(x0 + x1)*x1*(x0 - 5*x1)*(x0+7*x1)*(x0 + 11*x1)", &r).unwrap();
        assert!(binary_form_squarefree(&g, 0, 1).unwrap());
    }
}
