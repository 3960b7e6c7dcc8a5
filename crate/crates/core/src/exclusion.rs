//! Exclusion arithmetic: isolating sets for smooth points, curve-degree
//! bounds and the inequality chain on the special curve.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::family::{build_x1, build_x2, build_xprime, coefficient, decompose_normalized_sextic, xi, xprime, Triplet};
use crate::groebner::{buchberger, GroebnerConfig};
use crate::poly::{Field, FieldElem, Polynomial};
use crate::wps::{anticanonical_degree, matrix_rank, VarietySpec};
use crate::Result;

/// Which member of the family a variety is, read off its weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Member {
    /// Octic in `P(1,1,2,2,3)`.
    XPrime,
    /// Complete intersection of type (6,8) in `P(1,1,2,3,4,4)`.
    Xi,
}

pub fn member_of(v: &VarietySpec) -> Result<Member> {
    match (v.ring().weights(), v.degrees()) {
        ([1, 1, 2, 2, 3], [8]) => Ok(Member::XPrime),
        ([1, 1, 2, 3, 4, 4], [6, 8]) => Ok(Member::Xi),
        (w, d) => Err(Error::Unsupported(format!("no isolating sets known for weights {w:?} and degrees {d:?}"))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsolationVerdict {
    Pass,
    /// The whole intersection is not finite, but `p` is a reduced isolated
    /// point of it (tangent space of the intersection is zero there).
    PassLocalized,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsolationCheck {
    pub point: Vec<String>,
    pub set: Vec<String>,
    pub l: u32,
    /// `4 / (A^3)`.
    pub bound: String,
    /// Krull dimension of the affine cone over the intersection; `None` when
    /// the Gröbner budget ran out.
    pub cone_dimension: Option<i64>,
    pub basis_checked: bool,
    pub verdict: IsolationVerdict,
}

impl IsolationCheck {
    pub fn passes(&self) -> bool {
        matches!(self.verdict, IsolationVerdict::Pass | IsolationVerdict::PassLocalized)
    }
}

fn check_point(v: &VarietySpec, point: &[FieldElem]) -> Result<()> {
    if !v.contains_point(point) || point.iter().all(|c| v.field().is_zero(c)) {
        return Err(Error::NotOnVariety);
    }
    if !v.is_nonsingular_point(point) {
        return Err(Error::SingularPoint);
    }
    Ok(())
}

/// `c_a * v_i^k - c_b * v_j^m` as a polynomial.
fn binomial(v: &VarietySpec, a: &FieldElem, i: usize, k: u32, b: &FieldElem, j: usize, m: u32) -> Polynomial {
    let r = v.ring();
    let lhs = Polynomial::var(r, i).pow(k).scale(a);
    let rhs = Polynomial::var(r, j).pow(m).scale(b);
    &lhs - &rhs
}

/// Polynomials of low degree vanishing at `point` and cutting it out of `v`.
/// Returns the set and its maximal degree `l`.
pub fn isolating_set_for(v: &VarietySpec, point: &[FieldElem]) -> Result<(Vec<Polynomial>, u32)> {
    let member = member_of(v)?;
    check_point(v, point)?;
    let f = v.field();
    let nz = |i: usize| !f.is_zero(&point[i]);
    let set = match member {
        Member::XPrime => {
            use xprime::*;
            if nz(X0) || nz(X1) {
                // normalize on a nonzero x coordinate
                let (a, b) = if nz(X0) { (X0, X1) } else { (X1, X0) };
                let xa = &point[a];
                let mut s = vec![binomial(v, xa, b, 1, &point[b], a, 1)];
                for (c, k) in [(Y0, 2), (Y1, 2), (Z, 3)] {
                    s.push(binomial(v, &f.pow(xa, k as u64), c, 1, &point[c], a, k));
                }
                s
            } else if nz(Y0) || nz(Y1) {
                let (a, b) = if nz(Y0) { (Y0, Y1) } else { (Y1, Y0) };
                let ya = &point[a];
                vec![
                    Polynomial::var(v.ring(), X0),
                    Polynomial::var(v.ring(), X1),
                    binomial(v, ya, b, 1, &point[b], a, 1),
                    binomial(v, &f.pow(ya, 3), Z, 2, &f.pow(&point[Z], 2), a, 3),
                ]
            } else {
                return Err(Error::SingularPoint);
            }
        }
        Member::Xi => {
            use xi::*;
            if nz(X0) || nz(X1) {
                let (a, b) = if nz(X0) { (X0, X1) } else { (X1, X0) };
                let xa = &point[a];
                let mut s = vec![binomial(v, xa, b, 1, &point[b], a, 1)];
                for (c, k) in [(Y, 2), (Z, 3), (S0, 4), (S1, 4)] {
                    s.push(binomial(v, &f.pow(xa, k as u64), c, 1, &point[c], a, k));
                }
                s
            } else if nz(Y) {
                let eta2 = f.pow(&point[Y], 2);
                vec![
                    Polynomial::var(v.ring(), X0),
                    Polynomial::var(v.ring(), X1),
                    binomial(v, &eta2, S0, 1, &point[S0], Y, 2),
                    binomial(v, &eta2, S1, 1, &point[S1], Y, 2),
                ]
            } else {
                return Err(Error::SingularPoint);
            }
        }
    };
    debug_assert!(set.iter().all(|g| f.is_zero(&g.evaluate(point))));
    let l = set.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    Ok((set, l))
}

/// `4 / (A^3)`.
pub fn isolation_bound(v: &VarietySpec) -> Result<BigRational> {
    let (a3, _) = anticanonical_degree(v)?;
    Ok(BigRational::from_integer(4.into()) / a3)
}

/// Decides whether `set` isolates the smooth point `point` of `v` with
/// `l <= 4/(A^3)`.
pub fn check_isolation(v: &VarietySpec, point: &[FieldElem], set: &[Polynomial], cfg: &GroebnerConfig) -> Result<IsolationCheck> {
    check_point(v, point)?;
    let f = v.field();
    if set.iter().any(|g| !f.is_zero(&g.evaluate(point))) {
        return Err(Error::InvalidVariety("isolating set does not vanish at the point".into()));
    }
    let l = set.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let bound = isolation_bound(v)?;
    let mut gens = v.equations().to_vec();
    gens.extend(set.iter().cloned());
    let (dim, basis_checked) = match buchberger(v.ring(), &gens, cfg) {
        Ok(gb) => (Some(gb.krull_dimension()), gb.self_check()),
        Err(_) => (None, false),
    };
    let within = BigRational::from_integer(l.into()) <= bound;
    let verdict = match dim {
        _ if !within => IsolationVerdict::Fail,
        Some(d) if d <= 1 => IsolationVerdict::Pass,
        _ if tangent_space_is_line(v, point, set) => IsolationVerdict::PassLocalized,
        Some(_) => IsolationVerdict::Fail,
        None => IsolationVerdict::Inconclusive,
    };
    Ok(IsolationCheck {
        point: point.iter().map(|c| f.format(c)).collect(),
        set: set.iter().map(Polynomial::to_string).collect(),
        l,
        bound: bound.to_string(),
        cone_dimension: dim,
        basis_checked,
        verdict,
    })
}

/// The Jacobian of equations and set has corank one at the point, so the
/// cone over the intersection is a reduced line there.
fn tangent_space_is_line(v: &VarietySpec, point: &[FieldElem], set: &[Polynomial]) -> bool {
    let n = v.ring().arity();
    let rows = v
        .equations()
        .iter()
        .chain(set)
        .map(|g| (0..n).map(|i| g.partial_derivative(i).evaluate(point)).collect())
        .collect();
    matrix_rank(v.field(), rows) == n - 1
}

/// Where sampled points lie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointLocus {
    /// Every coordinate nonzero.
    Torus,
    /// `x0 = x1 = 0`, all other coordinates nonzero.
    XiZero,
}

fn random_unit(rng: &mut ChaCha8Rng, f: Field) -> FieldElem {
    match f {
        Field::Prime(p) => f.from_i64(rng.gen_range(1..p as i64)),
        Field::Rational => {
            let n = rng.gen_range(1..=20i64) * if rng.gen() { 1 } else { -1 };
            f.from_i64(n)
        }
    }
}

/// Roots of `a T^2 + b T + c` with `a != 0`.
fn quadratic_roots(f: Field, a: &FieldElem, b: &FieldElem, c: &FieldElem) -> Option<[FieldElem; 2]> {
    let four = f.from_i64(4);
    let disc = f.sub(&f.mul(b, b), &f.mul(&four, &f.mul(a, c)));
    let r = f.sqrt(&disc)?;
    let two_a = f.mul(&f.from_i64(2), a);
    let nb = f.neg(b);
    Some([f.div(&f.add(&nb, &r), &two_a)?, f.div(&f.sub(&nb, &r), &two_a)?])
}

const POINT_ATTEMPTS: usize = 2000;

/// Random smooth point of `X'` in the given locus.
pub fn sample_xprime_point(t: &Triplet, locus: PointLocus, rng: &mut ChaCha8Rng) -> Result<Vec<FieldElem>> {
    let v = build_xprime(t);
    let f = t.field();
    let zero = f.zero();
    for _ in 0..POINT_ATTEMPTS {
        let candidate = match locus {
            PointLocus::Torus => {
                let (x0, x1, y1, z) = (random_unit(rng, f), random_unit(rng, f), random_unit(rng, f), random_unit(rng, f));
                let ev = |p: &Polynomial| p.evaluate(&[x0.clone(), x1.clone(), z.clone()]);
                let (a, b, c) = (ev(&t.a6), ev(&t.b6), ev(&t.c8));
                // y1^2 y0^2 + a y0 + (y1 b + c) = 0
                let lead = f.mul(&y1, &y1);
                let cst = f.add(&f.mul(&y1, &b), &c);
                let Some(roots) = quadratic_roots(f, &lead, &a, &cst) else { continue };
                let y0 = roots[rng.gen_range(0..2)].clone();
                vec![x0, x1, y0, y1, z]
            }
            PointLocus::XiZero => {
                // y0^2 y1^2 + (y0 + y1) z^2 = 0
                let (y0, y1) = (random_unit(rng, f), random_unit(rng, f));
                let s = f.add(&y0, &y1);
                if f.is_zero(&s) {
                    continue;
                }
                let y0y1 = f.mul(&y0, &y1);
                let z2 = f.neg(&f.div(&f.mul(&y0y1, &y0y1), &s).expect("nonzero"));
                let Some(z) = f.sqrt(&z2) else { continue };
                vec![zero.clone(), zero.clone(), y0, y1, z]
            }
        };
        if candidate[2..].iter().all(|c| !f.is_zero(c)) && v.contains_point(&candidate) && v.is_nonsingular_point(&candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::Unsupported("no smooth point found in the requested locus".into()))
}

/// Random smooth point of `X1` (or of `X2` when `second`) in the given locus.
pub fn sample_xi_point(t: &Triplet, second: bool, locus: PointLocus, rng: &mut ChaCha8Rng) -> Result<Vec<FieldElem>> {
    let t = if second { t.swap() } else { t.clone() };
    let v = build_x1(&t);
    let f = t.field();
    let zero = f.zero();
    for _ in 0..POINT_ATTEMPTS {
        let (x0, x1) = match locus {
            PointLocus::Torus => (random_unit(rng, f), random_unit(rng, f)),
            PointLocus::XiZero => (zero.clone(), zero.clone()),
        };
        let (y, z) = (random_unit(rng, f), random_unit(rng, f));
        let ev = |p: &Polynomial| p.evaluate(&[x0.clone(), x1.clone(), z.clone()]);
        let (a, b, c) = (ev(&t.a6), ev(&t.b6), ev(&t.c8));
        // s0 + s1 = -a/y and s0 s1 = y b + c
        let sum = f.neg(&f.div(&a, &y).expect("nonzero"));
        let prod = f.add(&f.mul(&y, &b), &c);
        let Some([s0, s1]) = quadratic_roots(f, &f.one(), &f.neg(&sum), &prod) else { continue };
        let candidate = vec![x0, x1, y, z, s0, s1];
        if candidate[2..].iter().all(|c| !f.is_zero(c)) && v.contains_point(&candidate) && v.is_nonsingular_point(&candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::Unsupported("no smooth point found in the requested locus".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveVerdict {
    Excluded,
    Candidate,
}

/// Whether a curve of the given anticanonical degree can be a maximal
/// center. Curves through a quotient point, or of degree at least `(A^3)`,
/// are excluded; on `X'` the degree must moreover be exactly `1/2` since it
/// lies in `½ℤ` and is below `2/3`.
pub fn curve_exclusion_verdict(v: &VarietySpec, curve_degree: &BigRational, passes_quotient_point: bool) -> Result<CurveVerdict> {
    if !curve_degree.is_positive() {
        return Err(Error::InvalidVariety("curve degree must be positive".into()));
    }
    let member = member_of(v)?;
    let (a3, _) = anticanonical_degree(v)?;
    if passes_quotient_point || *curve_degree >= a3 {
        return Ok(CurveVerdict::Excluded);
    }
    if member == Member::XPrime && *curve_degree != BigRational::new(1.into(), 2.into()) {
        return Ok(CurveVerdict::Excluded);
    }
    Ok(CurveVerdict::Candidate)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialCurve {
    /// `X'` contains the curve `(x1 = y0 = y1 = 0)`.
    pub contains_gamma: bool,
    /// With `a6 = z^2 + z f3 + x1 f5`: not both `f3` and `f5` divisible by
    /// `x1`. Only evaluated when the curve is contained.
    pub f3_f5_lemma: Option<bool>,
}

pub fn special_curve_conditions(t: &Triplet) -> Result<SpecialCurve> {
    let f = t.field();
    let (f3, f6) = decompose_normalized_sextic(&t.a6)?;
    let contains_gamma = f.is_zero(&coefficient(&t.a6, 6, 0, 0)) && f.is_zero(&coefficient(&t.c8, 8, 0, 0));
    if !contains_gamma {
        return Ok(SpecialCurve { contains_gamma, f3_f5_lemma: None });
    }
    let x1 = Polynomial::var(f6.ring(), 1);
    let f5 = f6.divide_exact(&x1).ok_or_else(|| Error::Normalization("f6 is not divisible by x1".into()))?;
    let divisible = |p: &Polynomial| p.is_zero() || p.divide_exact(&x1).is_some();
    Ok(SpecialCurve { contains_gamma, f3_f5_lemma: Some(!(divisible(&f3) && divisible(&f5))) })
}

/// Upper bound on the self-intersection of the special curve on the
/// surface `S`.
pub fn default_gamma_self_int() -> BigRational {
    BigRational::new((-3).into(), 2.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaChain {
    pub l2: String,
    pub contradiction: bool,
}

/// `(L^2) = 2 - γ + (Γ^2) γ^2`; a negative value contradicts nefness of `L`.
pub fn gamma_chain_value(gamma: &BigRational, gamma_self_int: &BigRational) -> Result<BigRational> {
    if *gamma <= BigRational::one() {
        return Err(Error::InvalidVariety("gamma must exceed 1".into()));
    }
    let two = BigRational::from_integer(2.into());
    Ok(two - gamma + gamma_self_int * gamma * gamma)
}

pub fn gamma_chain(gamma: &BigRational, gamma_self_int: &BigRational) -> Result<GammaChain> {
    let l2 = gamma_chain_value(gamma, gamma_self_int)?;
    Ok(GammaChain { contradiction: l2 < BigRational::zero(), l2: l2.to_string() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionCase {
    pub variety: String,
    pub locus: PointLocus,
    pub expected_l: u32,
    pub checks: Vec<IsolationCheck>,
}

impl ExclusionCase {
    pub fn passes(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passes() && c.l == self.expected_l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionReport {
    pub field: String,
    pub cases: Vec<ExclusionCase>,
    pub special_curve: Option<SpecialCurve>,
    pub gamma_grid_contradiction: bool,
    pub passed: bool,
}

/// Isolation checks at `per_case` random points of each locus, plus the
/// curve arithmetic. `t` must be over a prime field.
pub fn exclusion_suite(t: &Triplet, seed: u64, per_case: usize, cfg: &GroebnerConfig) -> Result<ExclusionReport> {
    if t.field() == Field::Rational {
        return Err(Error::Unsupported("point sampling needs a prime field".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xp = build_xprime(t);
    let x1 = build_x1(t);
    let x2 = build_x2(t);
    let mut jobs: Vec<(&'static str, PointLocus, u32, VarietySpec, Vec<FieldElem>)> = Vec::new();
    for _ in 0..per_case {
        jobs.push(("X'", PointLocus::Torus, 3, xp.clone(), sample_xprime_point(t, PointLocus::Torus, &mut rng)?));
        jobs.push(("X'", PointLocus::XiZero, 6, xp.clone(), sample_xprime_point(t, PointLocus::XiZero, &mut rng)?));
        for (name, second, v) in [("X1", false, &x1), ("X2", true, &x2)] {
            for locus in [PointLocus::Torus, PointLocus::XiZero] {
                jobs.push((name, locus, 4, v.clone(), sample_xi_point(t, second, locus, &mut rng)?));
            }
        }
    }
    let results = crate::par::map(jobs, |(name, locus, l, v, p)| {
        let check = isolating_set_for(&v, &p).and_then(|(set, _)| check_isolation(&v, &p, &set, cfg));
        (name, locus, l, check)
    });
    let mut cases: Vec<ExclusionCase> = Vec::new();
    for (name, locus, l, check) in results {
        let check = check?;
        match cases.iter_mut().find(|c| c.variety == name && c.locus == locus) {
            Some(c) => c.checks.push(check),
            None => cases.push(ExclusionCase { variety: name.into(), locus, expected_l: l, checks: vec![check] }),
        }
    }
    let special_curve = special_curve_conditions(t).ok();
    let self_int = default_gamma_self_int();
    let gamma_grid_contradiction = (1..=24).all(|k| {
        let gamma = BigRational::one() + BigRational::new(k.into(), 8.into());
        gamma_chain(&gamma, &self_int).is_ok_and(|g| g.contradiction)
    });
    let passed = cases.iter().all(ExclusionCase::passes) && gamma_grid_contradiction;
    Ok(ExclusionReport { field: t.field().to_string(), cases, special_curve, gamma_grid_contradiction, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, a: &str, b: &str, c: &str) -> Triplet {
        Triplet::parse(Field::prime(p).unwrap(), a, b, c).unwrap()
    }

    fn q(a: &str, b: &str, c: &str) -> Triplet {
        Triplet::parse(Field::Rational, a, b, c).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sample() -> Triplet {
        fp(1009, "z^2 + z*x0^3 - 2*x0^5*x1 + x1^6", "z^2 - z*x1^3 + 3*x0^6 + x0*x1^5", "z^2*x0*x1 + 5*z*x1^5 + x0^8 - x1^8")
    }

    #[test]
    fn coordinate_point_set() {
        // a6, b6, c8 vanish at (1:0:0), so (1:0:0:0:0) lies on X'
        let t = q("z^2 + x1^6", "z^2 + x0*x1^5", "x1^8 + x0^7*x1");
        let v = build_xprime(&t);
        let f = Field::Rational;
        let p = vec![f.one(), f.zero(), f.zero(), f.zero(), f.zero()];
        let (set, l) = isolating_set_for(&v, &p).unwrap();
        let shown: Vec<String> = set.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["x1", "y0", "y1", "z"]);
        assert_eq!(l, 3);
    }

    #[test]
    fn singular_and_missing_points_rejected() {
        let t = sample();
        let v = build_xprime(&t);
        let f = t.field();
        let p3 = vec![f.zero(), f.zero(), f.zero(), f.zero(), f.one()];
        assert_eq!(isolating_set_for(&v, &p3).unwrap_err(), Error::SingularPoint);
        let off = vec![f.one(), f.one(), f.one(), f.one(), f.one()];
        if !v.contains_point(&off) {
            assert_eq!(isolating_set_for(&v, &off).unwrap_err(), Error::NotOnVariety);
        }
    }

    #[test]
    fn isolation_on_sampled_points() {
        let t = sample();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = GroebnerConfig::default();
        let v = build_xprime(&t);
        for (locus, expect) in [(PointLocus::Torus, 3), (PointLocus::XiZero, 6)] {
            let p = sample_xprime_point(&t, locus, &mut rng).unwrap();
            let (set, l) = isolating_set_for(&v, &p).unwrap();
            assert_eq!(l, expect);
            let c = check_isolation(&v, &p, &set, &cfg).unwrap();
            assert_eq!(c.verdict, IsolationVerdict::Pass, "{c:?}");
            assert_eq!(c.bound, "6");
        }
        let v = build_x1(&t);
        for locus in [PointLocus::Torus, PointLocus::XiZero] {
            let p = sample_xi_point(&t, false, locus, &mut rng).unwrap();
            let (set, l) = isolating_set_for(&v, &p).unwrap();
            assert_eq!(l, 4);
            let c = check_isolation(&v, &p, &set, &cfg).unwrap();
            assert!(c.passes(), "{c:?}");
            assert_eq!(c.bound, "8");
        }
    }

    #[test]
    fn undersized_set_fails() {
        let t = sample();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v = build_xprime(&t);
        let p = sample_xprime_point(&t, PointLocus::Torus, &mut rng).unwrap();
        let (set, _) = isolating_set_for(&v, &p).unwrap();
        let c = check_isolation(&v, &p, &set[..1], &GroebnerConfig::default()).unwrap();
        assert_eq!(c.verdict, IsolationVerdict::Fail);
        assert!(c.cone_dimension.unwrap() >= 2);
    }

    #[test]
    fn curve_verdicts() {
        let t = q("z^2", "z^2", "x0^8");
        let (xp, x1) = (build_xprime(&t), build_x1(&t));
        assert_eq!(curve_exclusion_verdict(&xp, &rat(2, 3), false).unwrap(), CurveVerdict::Excluded);
        assert_eq!(curve_exclusion_verdict(&xp, &rat(1, 2), false).unwrap(), CurveVerdict::Candidate);
        assert_eq!(curve_exclusion_verdict(&xp, &rat(1, 2), true).unwrap(), CurveVerdict::Excluded);
        assert_eq!(curve_exclusion_verdict(&x1, &rat(1, 2), false).unwrap(), CurveVerdict::Excluded);
        assert_eq!(curve_exclusion_verdict(&x1, &rat(1, 3), false).unwrap(), CurveVerdict::Candidate);
        assert!(curve_exclusion_verdict(&x1, &rat(0, 1), false).is_err());
    }

    #[test]
    fn special_curve() {
        let s = special_curve_conditions(&q("z^2 + x1*x0^5", "z^2", "x1*x0^7")).unwrap();
        assert_eq!(s, SpecialCurve { contains_gamma: true, f3_f5_lemma: Some(true) });
        let s = special_curve_conditions(&q("z^2 + x0^6", "z^2", "x1*x0^7")).unwrap();
        assert!(!s.contains_gamma);
        let s = special_curve_conditions(&q("z^2 + z*x1*x0^2 + x1^2*x0^4", "z^2", "x1^8")).unwrap();
        assert_eq!(s.f3_f5_lemma, Some(false));
        assert!(special_curve_conditions(&q("2*z^2", "z^2", "0")).is_err());
    }

    #[test]
    fn gamma_examples() {
        let g = gamma_chain(&rat(2, 1), &rat(-3, 2)).unwrap();
        assert_eq!((g.l2.as_str(), g.contradiction), ("-6", true));
        let g = gamma_chain(&rat(3, 2), &rat(-2, 1)).unwrap();
        assert_eq!((g.l2.as_str(), g.contradiction), ("-4", true));
        // just above 1 the value approaches -1/2 from below
        let v = gamma_chain_value(&rat(1001, 1000), &rat(-3, 2)).unwrap();
        assert!(v < rat(-1, 2) && v > rat(-51, 100));
        assert!(gamma_chain(&rat(1, 1), &rat(-3, 2)).is_err());
    }

    #[test]
    fn suite_passes() {
        let rep = exclusion_suite(&sample(), 11, 1, &GroebnerConfig::default()).unwrap();
        assert_eq!(rep.cases.len(), 6);
        assert!(rep.passed, "{rep:#?}");
    }
}
