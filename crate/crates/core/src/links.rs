//! Birational maps between the members of the family, written as explicit
//! coordinate substitutions and certified by ideal membership of their
//! cleared pullbacks.

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::family::{build_x1, build_x2, build_xprime, decompose_normalized_sextic, is_proportional, split_by_z, xi, xprime, Triplet};
use crate::groebner::{buchberger, GroebnerConfig, GroebnerError};
use crate::poly::{Field, FieldElem, Homogeneity, Monomial, Polynomial, WeightedRing};
use crate::wps::VarietySpec;
use crate::Result;

/// A rational map `source ⇢ target`: target coordinate `i` is
/// `numerators[i] / denominator^powers[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMapSpec {
    pub name: String,
    pub source: VarietySpec,
    pub target: VarietySpec,
    pub numerators: Vec<Polynomial>,
    pub denominator: Option<Polynomial>,
    pub powers: Vec<u32>,
}

fn degree_of(p: &Polynomial) -> Result<Option<u32>> {
    match p.homogeneity() {
        Homogeneity::Degree(d) => Ok(Some(d)),
        Homogeneity::Any => Ok(None),
        Homogeneity::Inhomogeneous => Err(Error::NotHomogeneous { expected: p.degree().unwrap_or(0) }),
    }
}

impl RationalMapSpec {
    /// Checks arities, rings and that every coordinate has degree `c * weight`
    /// for one common `c > 0`.
    pub fn new(
        name: impl Into<String>,
        source: VarietySpec,
        target: VarietySpec,
        numerators: Vec<Polynomial>,
        denominator: Option<Polynomial>,
        powers: Vec<u32>,
    ) -> Result<RationalMapSpec> {
        let n = target.ring().arity();
        if numerators.len() != n || powers.len() != n {
            return Err(Error::InvalidRing(format!("a map into {n} coordinates needs {n} expressions")));
        }
        let src = source.ring();
        let in_source = |p: &Polynomial| Arc::ptr_eq(p.ring(), src) || **p.ring() == **src;
        if !numerators.iter().all(in_source) || !denominator.as_ref().is_none_or(in_source) {
            return Err(Error::RingMismatch);
        }
        let dd = match &denominator {
            Some(d) if d.is_zero() => return Err(Error::ZeroPolynomial),
            Some(d) => degree_of(d)?.unwrap_or(0) as i64,
            None => {
                if powers.iter().any(|&k| k > 0) {
                    return Err(Error::InvalidRing("denominator powers without a denominator".into()));
                }
                0
            }
        };
        let mut ratio: Option<BigRational> = None;
        for (i, num) in numerators.iter().enumerate() {
            let Some(d) = degree_of(num)? else { continue };
            let eff = d as i64 - powers[i] as i64 * dd;
            let c = BigRational::new(eff.into(), (target.ring().weight(i) as i64).into());
            match &ratio {
                None if eff > 0 => ratio = Some(c),
                Some(r) if *r == c => {}
                _ => return Err(Error::InvalidRing(format!("coordinate {} has inconsistent degree", target.ring().name(i)))),
            }
        }
        Ok(RationalMapSpec { name: name.into(), source, target, numerators, denominator, powers })
    }

    /// `(P, N)` with `g(map) = P / D^N` and `N` minimal.
    pub fn pullback_raw(&self, g: &Polynomial) -> (Polynomial, u32) {
        let src = self.source.ring();
        let one = Polynomial::one(src);
        let d = self.denominator.clone().unwrap_or_else(|| one.clone());
        let n = self.numerators.len();
        let mut num_pows: Vec<Vec<Polynomial>> = self.numerators.iter().map(|p| vec![one.clone(), p.clone()]).collect();
        let mut d_pows: Vec<Polynomial> = vec![one.clone(), d.clone()];
        let shift = |m: &Monomial| (0..n).map(|i| m.0[i] * self.powers[i]).sum::<u32>();
        let top = g.terms().iter().map(|(m, _)| shift(m)).max().unwrap_or(0);
        let field = src.field();
        let mut acc = Polynomial::zero(src);
        for (m, c) in g.terms() {
            let c = convert(c, g.field(), field);
            let mut t = Polynomial::constant(src, c);
            for i in 0..n {
                let e = m.0[i] as usize;
                if e == 0 {
                    continue;
                }
                while num_pows[i].len() <= e {
                    let next = &num_pows[i][num_pows[i].len() - 1] * &self.numerators[i];
                    num_pows[i].push(next);
                }
                t = &t * &num_pows[i][e];
            }
            let k = (top - shift(m)) as usize;
            while d_pows.len() <= k {
                let next = &d_pows[d_pows.len() - 1] * &d;
                d_pows.push(next);
            }
            acc = &acc + &(&t * &d_pows[k]);
        }
        let mut power = top;
        if self.denominator.is_some() {
            while power > 0 && !acc.is_zero() {
                match acc.divide_exact(&d) {
                    Some(q) => {
                        acc = q;
                        power -= 1;
                    }
                    None => break,
                }
            }
        }
        (acc, power)
    }

    /// Pullback of `g` multiplied by the least power of the denominator
    /// that makes it a polynomial.
    pub fn pullback(&self, g: &Polynomial) -> Polynomial {
        self.pullback_raw(g).0
    }

    /// Composition with the automorphism of the target exchanging
    /// coordinates `i` and `j`.
    pub fn then_swap(&self, i: usize, j: usize, name: impl Into<String>) -> RationalMapSpec {
        let mut m = self.clone();
        m.numerators.swap(i, j);
        m.powers.swap(i, j);
        m.name = name.into();
        m
    }

    /// Adds `c * x0^d` to coordinate `i`, with `d` its numerator degree.
    pub fn corrupted(&self, i: usize, c: &FieldElem) -> RationalMapSpec {
        let mut m = self.clone();
        let src = self.source.ring();
        let d = m.numerators[i].degree().unwrap_or(src.weight(0));
        let mut e = Monomial::one(src.arity());
        e.0[0] = d;
        m.numerators[i] = &m.numerators[i] + &Polynomial::term(src, e, c.clone());
        m.name = format!("{} (corrupted at {})", self.name, self.target.ring().name(i));
        m
    }

    /// `next ∘ self`.
    pub fn compose(&self, next: &RationalMapSpec, name: impl Into<String>) -> Result<RationalMapSpec> {
        if self.target != next.source {
            return Err(Error::RingMismatch);
        }
        let src = self.source.ring();
        let one = Polynomial::one(src);
        let d1 = self.denominator.clone().unwrap_or_else(|| one.clone());
        let (q, m) = match &next.denominator {
            Some(d2) => self.pullback_raw(d2),
            None => (one.clone(), 0),
        };
        let pulled: Vec<(Polynomial, u32)> = next.numerators.iter().map(|p| self.pullback_raw(p)).collect();
        let k_max = pulled.iter().zip(&next.powers).map(|((_, n), k)| (*n).max(*k)).max().unwrap_or(0);
        let mut numerators = Vec::with_capacity(pulled.len());
        for ((p, n), &k) in pulled.iter().zip(&next.powers) {
            let a = m * k + k_max - n;
            let b = k_max - k;
            numerators.push(&(p * &d1.pow(a)) * &q.pow(b));
        }
        let e = &d1 * &q;
        let (denominator, powers) = if e.is_constant() { (None, vec![0; numerators.len()]) } else { (Some(e), vec![k_max; numerators.len()]) };
        let numerators = if denominator.is_none() && k_max > 0 {
            // constant denominator: fold it into the numerators
            let inv = src.field().inv(&(&d1 * &q).terms()[0].1).expect("nonzero");
            let s = src.field().pow(&inv, k_max as u64);
            numerators.into_iter().map(|p| p.scale(&s)).collect()
        } else {
            numerators
        };
        RationalMapSpec::new(name, self.source.clone(), next.target.clone(), numerators, denominator, powers)
    }

    pub fn identity(v: &VarietySpec, name: impl Into<String>) -> RationalMapSpec {
        let n = v.ring().arity();
        let numerators = (0..n).map(|i| Polynomial::var(v.ring(), i)).collect();
        RationalMapSpec::new(name, v.clone(), v.clone(), numerators, None, vec![0; n]).expect("identity map")
    }
}

fn convert(c: &FieldElem, from: Field, to: Field) -> FieldElem {
    if from == to {
        return c.clone();
    }
    match c {
        FieldElem::Rational(q) => to.from_rational(q).expect("coefficient reduces"),
        FieldElem::Residue(_) => panic!("cannot lift residues"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkVerdict {
    Certified,
    Failed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapCertificate {
    pub name: String,
    pub verdict: LinkVerdict,
    /// Normal forms of the pullbacks that did not reduce to zero.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub residuals: Vec<String>,
    /// Whether the Gröbner basis of the source passed its S-pair self-check.
    pub basis_checked: bool,
}

/// Every target equation pulls back into the source ideal.
pub fn pullback_vanishes(m: &RationalMapSpec, cfg: &GroebnerConfig) -> MapCertificate {
    let src = m.source.ring();
    let gb = match buchberger(src, m.source.equations(), cfg) {
        Ok(gb) => gb,
        Err(e) => {
            return MapCertificate { name: m.name.clone(), verdict: LinkVerdict::Inconclusive, residuals: vec![e.to_string()], basis_checked: false }
        }
    };
    let basis_checked = gb.self_check();
    let mut residuals = Vec::new();
    for g in m.target.equations() {
        let r = gb.reduce(&m.pullback(g)).expect("same ring");
        if !r.is_zero() {
            residuals.push(r.to_string());
        }
    }
    let verdict = if residuals.is_empty() { LinkVerdict::Certified } else { LinkVerdict::Failed };
    MapCertificate { name: m.name.clone(), verdict, residuals, basis_checked }
}

pub fn z1_ring(field: Field) -> Arc<WeightedRing> {
    WeightedRing::new(["x0", "x1", "y", "z", "s"], &[1, 1, 2, 3, 4], field).expect("valid ring")
}

pub fn z_ring(field: Field) -> Arc<WeightedRing> {
    WeightedRing::new(["x0", "x1", "z", "s0", "s1"], &[1, 1, 3, 4, 4], field).expect("valid ring")
}

pub fn zprime_ring(field: Field) -> Arc<WeightedRing> {
    WeightedRing::new(["x0", "x1", "y0", "y1", "t"], &[1, 1, 2, 2, 5], field).expect("valid ring")
}

/// `s^2 y + s a6 + y^2 b6 + y c8 = 0` in `P(1,1,2,3,4)`.
pub fn build_z1(t: &Triplet) -> VarietySpec {
    let r = z1_ring(t.field());
    let [a, b, c] = t.embedded(&r, 3);
    let (y, s) = (Polynomial::var(&r, 2), Polynomial::var(&r, 4));
    let f = &(&(&(&s * &s) * &y) + &(&s * &a)) + &(&(&(&y * &y) * &b) + &(&y * &c));
    VarietySpec::new(&r, vec![f]).expect("homogeneous of degree 10")
}

/// `(s0 + s1)(s0 s1 - c8) + a6 b6 = 0` in `P(1,1,3,4,4)`.
pub fn build_z(t: &Triplet) -> VarietySpec {
    let r = z_ring(t.field());
    let [a, b, c] = t.embedded(&r, 2);
    let (s0, s1) = (Polynomial::var(&r, 3), Polynomial::var(&r, 4));
    let f = &(&(&s0 + &s1) * &(&(&s0 * &s1) - &c)) + &(&a * &b);
    VarietySpec::new(&r, vec![f]).expect("homogeneous of degree 12")
}

/// Binary forms with `a6 = z^2 + z f3 + f6`, `b6 = z^2 + z g3 + g6` and
/// `c8 = z^2 h2 + z h5 + h8`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub f3: Polynomial,
    pub f6: Polynomial,
    pub g3: Polynomial,
    pub g6: Polynomial,
    pub h2: Polynomial,
    pub h5: Polynomial,
    pub h8: Polynomial,
}

pub fn decompose(t: &Triplet) -> Result<Decomposition> {
    let (f3, f6) = decompose_normalized_sextic(&t.a6)?;
    let (g3, g6) = decompose_normalized_sextic(&t.b6)?;
    let [h8, h5, h2] = split_by_z(&t.c8)?;
    Ok(Decomposition { f3, f6, g3, g6, h2, h5, h8 })
}

/// `t^2 + (y0 f3 + y1 g3 + h5) t + (y0 + y1 + h2)(y0^2 y1^2 + y0 f6 + y1 g6 + h8) = 0`
/// in `P(1,1,2,2,5)`. Needs the `z^2` coefficients of `a6, b6` to be 1.
pub fn build_zprime(t: &Triplet) -> Result<(VarietySpec, Decomposition)> {
    let dec = decompose(t)?;
    let r = zprime_ring(t.field());
    // binary forms carry a z slot; drop it
    let e = |p: &Polynomial| p.map_into(&r, &[0, 1, 4]).expect("same field");
    let v = |i| Polynomial::var(&r, i);
    let (y0, y1, tt) = (v(2), v(3), v(4));
    let lin = &(&(&y0 * &e(&dec.f3)) + &(&y1 * &e(&dec.g3))) + &e(&dec.h5);
    let l = &(&y0 + &y1) + &e(&dec.h2);
    let q = &(&(&(&y0 * &y0) * &(&y1 * &y1)) + &(&y0 * &e(&dec.f6))) + &(&(&y1 * &e(&dec.g6)) + &e(&dec.h8));
    let f = &(&(&tt * &tt) + &(&lin * &tt)) + &(&l * &q);
    Ok((VarietySpec::new(&r, vec![f])?, dec))
}

/// Substituting `t ↦ (y0 + y1 + h2) z` in the equation of `Z'` gives
/// `(y0 + y1 + h2) F'` exactly.
pub fn involution_identity_check(t: &Triplet) -> Result<bool> {
    let (zp, dec) = build_zprime(t)?;
    let xp = build_xprime(t);
    let r = xp.ring();
    let v = |i| Polynomial::var(r, i);
    let h2 = dec.h2.map_into(r, &[0, 1, xprime::Z])?;
    let l = &(&v(xprime::Y0) + &v(xprime::Y1)) + &h2;
    let images = [v(0), v(1), v(xprime::Y0), v(xprime::Y1), &l * &v(xprime::Z)];
    let lhs = zp.equations()[0].substitute(&images);
    Ok(lhs == &l * &xp.equations()[0])
}

fn vars(r: &Arc<WeightedRing>) -> impl Fn(usize) -> Polynomial + '_ {
    move |i| Polynomial::var(r, i)
}

/// `X' ⇢ X1`: `(x0 : x1 : y1 : z : -(y0 y1^2 + a6)/y1 : y0 y1)`.
pub fn sigma11(t: &Triplet) -> RationalMapSpec {
    let xp = build_xprime(t);
    let r = xp.ring().clone();
    let v = vars(&r);
    let [a, _, _] = t.embedded(&r, xprime::Z);
    let (y0, y1) = (v(xprime::Y0), v(xprime::Y1));
    let s0 = -&(&(&y0 * &(&y1 * &y1)) + &a);
    let s1 = &y0 * &y1;
    let nums = vec![v(0), v(1), y1.clone(), v(xprime::Z), s0, s1];
    RationalMapSpec::new("sigma11", xp, build_x1(t), nums, Some(y1), vec![0, 0, 0, 0, 1, 0]).expect("well-formed map")
}

/// `X' ⇢ X2`: `(x0 : x1 : y0 : z : -(y0^2 y1 + b6)/y0 : y0 y1)`.
pub fn sigma21(t: &Triplet) -> RationalMapSpec {
    let xp = build_xprime(t);
    let r = xp.ring().clone();
    let v = vars(&r);
    let [_, b, _] = t.embedded(&r, xprime::Z);
    let (y0, y1) = (v(xprime::Y0), v(xprime::Y1));
    let s0 = -&(&(&(&y0 * &y0) * &y1) + &b);
    let s1 = &y0 * &y1;
    let nums = vec![v(0), v(1), y0.clone(), v(xprime::Z), s0, s1];
    RationalMapSpec::new("sigma21", xp, build_x2(t), nums, Some(y0), vec![0, 0, 0, 0, 1, 0]).expect("well-formed map")
}

pub fn sigma12(t: &Triplet) -> RationalMapSpec {
    sigma11(t).then_swap(xi::S0, xi::S1, "sigma12")
}

pub fn sigma22(t: &Triplet) -> RationalMapSpec {
    sigma21(t).then_swap(xi::S0, xi::S1, "sigma22")
}

/// `X1 ⇢ X2`: `y ↦ (b6/a6) y`.
pub fn theta_map(t: &Triplet) -> Result<RationalMapSpec> {
    if t.a6.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let x1 = build_x1(t);
    let r = x1.ring().clone();
    let v = vars(&r);
    let [a, b, _] = t.embedded(&r, xi::Z);
    let nums = vec![v(0), v(1), &b * &v(xi::Y), v(xi::Z), v(xi::S0), v(xi::S1)];
    RationalMapSpec::new("theta", x1, build_x2(t), nums, Some(a), vec![0, 0, 1, 0, 0, 0])
}

/// `X_i → Z` forgetting `y`; `i = 1` uses `t`, `i = 2` its swap.
fn pi_to_z(t: &Triplet, second: bool) -> RationalMapSpec {
    let src = if second { build_x2(t) } else { build_x1(t) };
    let r = src.ring().clone();
    let v = vars(&r);
    let nums = vec![v(0), v(1), v(xi::Z), v(xi::S0), v(xi::S1)];
    let name = if second { "pi2_to_Z" } else { "pi1_to_Z" };
    RationalMapSpec::new(name, src, build_z(t), nums, None, vec![0; 5]).expect("well-formed map")
}

pub fn pi1_to_z(t: &Triplet) -> RationalMapSpec {
    pi_to_z(t, false)
}

pub fn pi2_to_z(t: &Triplet) -> RationalMapSpec {
    pi_to_z(t, true)
}

/// `X' ⇢ Z1`: `(x0 : x1 : y1 : z : y0 y1)`.
pub fn pi_prime_to_z1(t: &Triplet) -> RationalMapSpec {
    let xp = build_xprime(t);
    let r = xp.ring().clone();
    let v = vars(&r);
    let nums = vec![v(0), v(1), v(xprime::Y1), v(xprime::Z), &v(xprime::Y0) * &v(xprime::Y1)];
    RationalMapSpec::new("pi_prime_to_Z1", xp, build_z1(t), nums, None, vec![0; 5]).expect("well-formed map")
}

/// `X1 → Z1`: `(x0 : x1 : y : z : s1)`.
pub fn pi1_to_z1(t: &Triplet) -> RationalMapSpec {
    let x1 = build_x1(t);
    let r = x1.ring().clone();
    let v = vars(&r);
    let nums = vec![v(0), v(1), v(xi::Y), v(xi::Z), v(xi::S1)];
    RationalMapSpec::new("pi1_to_Z1", x1, build_z1(t), nums, None, vec![0; 5]).expect("well-formed map")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlopVerdict {
    /// `a6, b6` not proportional: the `cAx/2` point starts a link.
    Link,
    /// `b6 = λ a6`: the flopping locus is a divisor and the point is not a
    /// maximal center.
    NoMaximalCenter,
}

pub fn flop_vs_divisorial_test(t: &Triplet) -> Result<FlopVerdict> {
    Ok(match is_proportional(&t.a6, &t.b6)? {
        Some(_) => FlopVerdict::NoMaximalCenter,
        None => FlopVerdict::Link,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkReport {
    pub maps: Vec<MapCertificate>,
    pub involution_identity: bool,
    /// `b6 / a6` is a constant, so `θ` only rescales `y`.
    pub theta_degenerate: bool,
    pub flop: FlopVerdict,
    pub verdict: LinkVerdict,
}

/// All maps of the suite, in report order.
pub fn link_suite_maps(t: &Triplet) -> Result<Vec<RationalMapSpec>> {
    Ok(vec![
        sigma11(t),
        sigma12(t),
        sigma21(t),
        sigma22(t),
        theta_map(t)?,
        {
            let mut inv = theta_map(&t.swap())?;
            inv.name = "theta_inverse".into();
            inv
        },
        pi1_to_z(t),
        pi2_to_z(t),
        pi_prime_to_z1(t),
        pi1_to_z1(t),
    ])
}

/// Certifies every map of the suite; maps are checked concurrently.
pub fn verify_link_suite(t: &Triplet, cfg: &GroebnerConfig) -> Result<LinkReport> {
    let maps = link_suite_maps(t)?;
    let certs = crate::par::map(maps, |m| pullback_vanishes(&m, cfg));
    let involution_identity = involution_identity_check(t)?;
    let flop = flop_vs_divisorial_test(t)?;
    let theta_degenerate = flop == FlopVerdict::NoMaximalCenter;
    let verdict = if certs.iter().any(|c| c.verdict == LinkVerdict::Failed) || !involution_identity {
        LinkVerdict::Failed
    } else if certs.iter().any(|c| c.verdict == LinkVerdict::Inconclusive) {
        LinkVerdict::Inconclusive
    } else {
        LinkVerdict::Certified
    };
    Ok(LinkReport { maps: certs, involution_identity, theta_degenerate, flop, verdict })
}

impl From<GroebnerError> for LinkVerdict {
    fn from(_: GroebnerError) -> Self {
        LinkVerdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn q(a: &str, b: &str, c: &str) -> Triplet {
        Triplet::parse(Field::Rational, a, b, c).unwrap()
    }

    fn sample() -> Triplet {
        q("z^2 + z*x0^3 - 2*x0^5*x1 + x1^6", "z^2 - z*x1^3 + 3*x0^6 + x0*x1^5", "z^2*x0*x1 + 5*z*x1^5 + x0^8 - x1^8")
    }

    #[test]
    fn sigma11_second_equation_is_minus_fprime() {
        let t = sample();
        let m = sigma11(&t);
        let f = &m.source.equations()[0];
        assert!(m.pullback(&m.target.equations()[0]).is_zero());
        assert_eq!(m.pullback(&m.target.equations()[1]), -f);
    }

    #[test]
    fn z1_pullbacks() {
        let t = sample();
        assert_eq!(build_z1(&t).degrees(), &[10]);
        let m = pi_prime_to_z1(&t);
        let f = &m.source.equations()[0];
        let y1 = Polynomial::var(m.source.ring(), xprime::Y1);
        assert_eq!(m.pullback(&m.target.equations()[0]), &y1 * f);
        let m = pi1_to_z1(&t);
        let (f1, f2) = (&m.source.equations()[0], &m.source.equations()[1]);
        let r = m.source.ring();
        let expect = &(&Polynomial::var(r, xi::S1) * f1) - &(&Polynomial::var(r, xi::Y) * f2);
        assert_eq!(m.pullback(&m.target.equations()[0]), expect);
    }

    #[test]
    fn z_pullback_has_explicit_cofactors() {
        let t = sample();
        assert_eq!(build_z(&t).degrees(), &[12]);
        let m = pi1_to_z(&t);
        let r = m.source.ring();
        let [_, b, _] = t.embedded(r, xi::Z);
        let (f1, f2) = (&m.source.equations()[0], &m.source.equations()[1]);
        let s = &Polynomial::var(r, xi::S0) + &Polynomial::var(r, xi::S1);
        assert_eq!(m.pullback(&m.target.equations()[0]), &(&s * f2) + &(&b * f1));
    }

    #[test]
    fn theta_pullbacks() {
        let t = sample();
        let m = theta_map(&t).unwrap();
        let r = m.source.ring();
        let [_, b, _] = t.embedded(r, xi::Z);
        assert_eq!(m.pullback(&m.target.equations()[0]), &b * &m.source.equations()[0]);
        assert_eq!(m.pullback(&m.target.equations()[1]), m.source.equations()[1]);
        assert!(theta_map(&q("0", "z^2", "0")).is_err());
    }

    #[test]
    fn decomposition_and_zprime() {
        let t = q("z^2 + z*x0^3 + x1^6", "z^2", "0");
        let (zp, dec) = build_zprime(&t).unwrap();
        assert_eq!(zp.degrees(), &[10]);
        assert_eq!(dec.f3.to_string(), "x0^3");
        assert_eq!(dec.f6.to_string(), "x1^6");
        assert!(involution_identity_check(&t).unwrap());
        assert!(involution_identity_check(&q("z^2", "z^2", "0")).unwrap());
        assert!(involution_identity_check(&q("2*z^2", "z^2", "0")).is_err());
    }

    #[test]
    fn suite_on_a_fixed_triplet() {
        let rep = verify_link_suite(&sample(), &GroebnerConfig::default()).unwrap();
        for m in &rep.maps {
            assert_eq!(m.verdict, LinkVerdict::Certified, "{}", m.name);
            assert!(m.basis_checked);
        }
        assert!(rep.involution_identity);
        assert_eq!(rep.flop, FlopVerdict::Link);
        assert_eq!(rep.verdict, LinkVerdict::Certified);
    }

    #[test]
    fn corrupted_map_fails() {
        let t = sample();
        let m = pi_prime_to_z1(&t).corrupted(4, &Field::Rational.one());
        let c = pullback_vanishes(&m, &GroebnerConfig::default());
        assert_eq!(c.verdict, LinkVerdict::Failed);
        assert!(!c.residuals.is_empty());
    }

    #[test]
    fn identity_certified_and_theta_round_trip() {
        let t = sample();
        let xp = build_xprime(&t);
        let id = RationalMapSpec::identity(&xp, "id");
        assert_eq!(pullback_vanishes(&id, &GroebnerConfig::default()).verdict, LinkVerdict::Certified);
        let there = theta_map(&t).unwrap();
        let back = theta_map(&t.swap()).unwrap();
        let round = there.compose(&back, "round").unwrap();
        assert_eq!(pullback_vanishes(&round, &GroebnerConfig::default()).verdict, LinkVerdict::Certified);
        let f = &round.source.equations()[0];
        assert_eq!(&round.pullback(&round.target.equations()[0]), f);
    }

    #[test]
    fn flop_test() {
        assert_eq!(flop_vs_divisorial_test(&sample()).unwrap(), FlopVerdict::Link);
        let t = q("z^2 + x0^6", "7*z^2 + 7*x0^6", "x1^8");
        assert_eq!(flop_vs_divisorial_test(&t).unwrap(), FlopVerdict::NoMaximalCenter);
        let r = crate::family::base_ring(Field::Rational);
        let a = parse_poly("z^2 + x0*x1^5", &r).unwrap();
        let t = Triplet::new(a.clone(), a, parse_poly("x0^8", &r).unwrap()).unwrap();
        assert_eq!(flop_vs_divisorial_test(&t).unwrap(), FlopVerdict::NoMaximalCenter);
    }

    #[test]
    fn rejects_inconsistent_degrees() {
        let t = sample();
        let xp = build_xprime(&t);
        let r = xp.ring().clone();
        let v = |i| Polynomial::var(&r, i);
        // y coordinate of degree 3 against weight 2
        let nums = vec![v(0), v(1), v(4), v(4), &v(2) * &v(3), &v(2) * &v(3)];
        assert!(RationalMapSpec::new("bad", xp, build_x1(&t), nums, None, vec![0; 6]).is_err());
    }
}
