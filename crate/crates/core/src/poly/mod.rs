//! Exact coefficient arithmetic and sparse weighted polynomials.

mod binary;
mod field;
mod parse;
mod polynomial;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::Error;

pub use binary::{binary_form_squarefree, UniPoly};
pub use field::{is_prime, random_primes, Field, FieldElem, MAX_PRIME};
pub use parse::parse_poly;
pub use polynomial::{Homogeneity, Polynomial};
pub(crate) use polynomial::merge_scaled;

/// Exponent vector, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(arity: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, arity))
    }

    pub fn var(arity: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(arity);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Graded polynomial ring `k[x_0..x_n]` with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedRing {
    names: Vec<String>,
    weights: Vec<u32>,
    field: Field,
}

impl WeightedRing {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        weights: &[u32],
        field: Field,
    ) -> Result<Arc<WeightedRing>, Error> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() != weights.len() {
            return Err(Error::InvalidRing(format!(
                "{} names for {} weights",
                names.len(),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w == 0) {
            return Err(Error::InvalidRing(format!("weight {w} is not positive")));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("{n:?} is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable {n:?}")));
            }
        }
        Ok(Arc::new(WeightedRing { names, weights: weights.to_vec(), field }))
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and weights over another field.
    pub fn with_field(&self, field: Field) -> Arc<WeightedRing> {
        Arc::new(WeightedRing { field, ..self.clone() })
    }

    /// This ring with one extra trailing variable.
    pub fn extended(&self, name: &str, weight: u32) -> Result<Arc<WeightedRing>, Error> {
        let mut names = self.names.clone();
        names.push(name.to_string());
        let mut weights = self.weights.clone();
        weights.push(weight);
        WeightedRing::new(names, &weights, self.field)
    }

    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    /// Weighted graded reverse lexicographic order.
    ///
    /// Larger weighted degree wins; ties are broken at the last variable where
    /// the exponents differ, the smaller exponent being the larger monomial.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let da = self.weighted_degree(a);
        let db = self.weighted_degree(b);
        if da != db {
            return da.cmp(&db);
        }
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    }

    pub fn monomial_to_string(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| if *e == 1 { self.names[i].clone() } else { format!("{}^{}", self.names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `weighted_degree` as a free function over a ring.
pub fn weighted_degree(m: &Monomial, ring: &WeightedRing) -> u32 {
    ring.weighted_degree(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p11223() -> Arc<WeightedRing> {
        WeightedRing::new(["x0", "x1", "y0", "y1", "z"], &[1, 1, 2, 2, 3], Field::Rational).unwrap()
    }

    #[test]
    fn degrees() {
        let r = p11223();
        assert_eq!(weighted_degree(&Monomial::from_exponents(&[0, 0, 2, 2, 0]), &r), 8);
        assert_eq!(weighted_degree(&Monomial::var(5, 0), &r), 1);
        let r113 = WeightedRing::new(["x0", "x1", "z"], &[1, 1, 3], Field::Rational).unwrap();
        assert_eq!(weighted_degree(&Monomial::from_exponents(&[0, 0, 2]), &r113), 6);
    }

    #[test]
    fn rejects_bad_rings() {
        assert!(WeightedRing::new(["x", "x"], &[1, 1], Field::Rational).is_err());
        assert!(WeightedRing::new(["x", "y"], &[1, 0], Field::Rational).is_err());
        assert!(WeightedRing::new(["x"], &[1, 2], Field::Rational).is_err());
        assert!(WeightedRing::new(["2x"], &[1], Field::Rational).is_err());
    }

    #[test]
    fn term_order_is_graded_then_revlex() {
        let r = p11223();
        let m = |e: &[u32]| Monomial::from_exponents(e);
        // weighted degree dominates
        assert_eq!(r.cmp_monomials(&m(&[0, 0, 0, 0, 1]), &m(&[2, 0, 0, 0, 0])), Ordering::Greater);
        // same degree: smaller power of the last variable is larger
        assert_eq!(r.cmp_monomials(&m(&[6, 0, 0, 0, 0]), &m(&[0, 0, 0, 0, 2])), Ordering::Greater);
        assert_eq!(r.cmp_monomials(&m(&[1, 1, 0, 0, 0]), &m(&[0, 0, 1, 0, 0])), Ordering::Greater);
    }
}
