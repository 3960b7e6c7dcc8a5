//! The triplet family: a sextic pair `a6, b6` and an octic `c8` in
//! `x0, x1, z` (weights 1, 1, 3) determine
//!
//! * `X'`: `y0^2 y1^2 + y0 a6 + y1 b6 + c8 = 0` in `P(1,1,2,2,3)`,
//! * `X1`: `s0 y + s1 y + a6 = s0 s1 - y b6 - c8 = 0` in `P(1,1,2,3,4,4)`,
//! * `X2`: the same with `a6` and `b6` exchanged.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::groebner::{is_empty_affine, saturate_by_product, GroebnerConfig, GroebnerError};
use crate::poly::{binary_form_squarefree, parse_poly, random_primes, Field, FieldElem, Monomial, Polynomial, WeightedRing};
use crate::wps::{monomials_of_degree, StratumIndex, VarietySpec};
use crate::{Result, Verdict};

/// Variable positions in `P(1,1,2,2,3)`.
pub mod xprime {
    pub const X0: usize = 0;
    pub const X1: usize = 1;
    pub const Y0: usize = 2;
    pub const Y1: usize = 3;
    pub const Z: usize = 4;
}

/// Variable positions in `P(1,1,2,3,4,4)`.
pub mod xi {
    pub const X0: usize = 0;
    pub const X1: usize = 1;
    pub const Y: usize = 2;
    pub const Z: usize = 3;
    pub const S0: usize = 4;
    pub const S1: usize = 5;
}

/// `k[x0, x1, z]` with weights `(1, 1, 3)`.
pub fn base_ring(field: Field) -> Arc<WeightedRing> {
    WeightedRing::new(["x0", "x1", "z"], &[1, 1, 3], field).expect("valid ring")
}

pub fn xprime_ring(field: Field) -> Arc<WeightedRing> {
    WeightedRing::new(["x0", "x1", "y0", "y1", "z"], &[1, 1, 2, 2, 3], field).expect("valid ring")
}

pub fn xi_ring(field: Field) -> Arc<WeightedRing> {
    WeightedRing::new(["x0", "x1", "y", "z", "s0", "s1"], &[1, 1, 2, 3, 4, 4], field).expect("valid ring")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Triplet {
    pub a6: Polynomial,
    pub b6: Polynomial,
    pub c8: Polynomial,
}

/// On-disk form of a triplet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripletRecord {
    pub field: String,
    pub a6: String,
    pub b6: String,
    pub c8: String,
}

fn require_degree(p: &Polynomial, d: u32) -> Result<()> {
    if p.homogeneity().is_degree(d) {
        Ok(())
    } else {
        Err(Error::NotHomogeneous { expected: d })
    }
}

impl Triplet {
    pub fn new(a6: Polynomial, b6: Polynomial, c8: Polynomial) -> Result<Triplet> {
        let ring = a6.ring().clone();
        if ring.names() != ["x0", "x1", "z"] || ring.weights() != [1, 1, 3] {
            return Err(Error::InvalidRing("triplet polynomials must live in x0, x1, z with weights 1, 1, 3".into()));
        }
        if !a6.same_ring(&b6) || !a6.same_ring(&c8) {
            return Err(Error::RingMismatch);
        }
        require_degree(&a6, 6)?;
        require_degree(&b6, 6)?;
        require_degree(&c8, 8)?;
        Ok(Triplet { a6, b6, c8 })
    }

    pub fn parse(field: Field, a6: &str, b6: &str, c8: &str) -> Result<Triplet> {
        let r = base_ring(field);
        Triplet::new(parse_poly(a6, &r)?, parse_poly(b6, &r)?, parse_poly(c8, &r)?)
    }

    pub fn from_record(rec: &TripletRecord) -> Result<Triplet> {
        Triplet::parse(rec.field.parse()?, &rec.a6, &rec.b6, &rec.c8)
    }

    pub fn to_record(&self) -> TripletRecord {
        TripletRecord {
            field: self.field().to_string(),
            a6: self.a6.to_string(),
            b6: self.b6.to_string(),
            c8: self.c8.to_string(),
        }
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        self.a6.ring()
    }

    pub fn field(&self) -> Field {
        self.ring().field()
    }

    /// Exchanges `a6` and `b6`.
    pub fn swap(&self) -> Triplet {
        Triplet { a6: self.b6.clone(), b6: self.a6.clone(), c8: self.c8.clone() }
    }

    pub fn change_field(&self, field: Field) -> Result<Triplet> {
        let r = base_ring(field);
        Triplet::new(self.a6.change_field(&r)?, self.b6.change_field(&r)?, self.c8.change_field(&r)?)
    }

    /// Copies of the three polynomials in `target`, whose `z` sits at `z`.
    pub(crate) fn embedded(&self, target: &Arc<WeightedRing>, z: usize) -> [Polynomial; 3] {
        let map = [0, 1, z];
        let e = |p: &Polynomial| p.map_into(target, &map).expect("same field");
        [e(&self.a6), e(&self.b6), e(&self.c8)]
    }
}

/// Coefficients of `z^0, z^1, z^2` of a polynomial in `x0, x1, z` of
/// degree at most 8, as binary forms.
pub fn split_by_z(p: &Polynomial) -> Result<[Polynomial; 3]> {
    let ring = p.ring();
    let mut parts: [Vec<(Monomial, FieldElem)>; 3] = Default::default();
    for (m, c) in p.terms() {
        let e = m.0[2] as usize;
        if e > 2 {
            return Err(Error::Normalization("z-degree above 2".into()));
        }
        let mut mm = m.clone();
        mm.0[2] = 0;
        parts[e].push((mm, c.clone()));
    }
    Ok(parts.map(|t| Polynomial::from_terms(ring, t)))
}

/// `(f3, f6)` with `s = z^2 + z f3 + f6`; the `z^2` coefficient must be 1.
pub fn decompose_normalized_sextic(s: &Polynomial) -> Result<(Polynomial, Polynomial)> {
    let [f6, f3, c] = split_by_z(s)?;
    let field = s.field();
    if !(c.is_constant() && !c.is_zero() && field.is_one(&c.terms()[0].1)) {
        return Err(Error::Normalization("the coefficient of z^2 must be 1".into()));
    }
    Ok((f3, f6))
}

pub fn build_xprime(t: &Triplet) -> VarietySpec {
    let r = xprime_ring(t.field());
    let [a, b, c] = t.embedded(&r, xprime::Z);
    let y0 = Polynomial::var(&r, xprime::Y0);
    let y1 = Polynomial::var(&r, xprime::Y1);
    let f = &(&(&(&y0 * &y0) * &(&y1 * &y1)) + &(&y0 * &a)) + &(&(&y1 * &b) + &c);
    VarietySpec::new(&r, vec![f]).expect("homogeneous of degree 8")
}

pub fn build_x1(t: &Triplet) -> VarietySpec {
    let r = xi_ring(t.field());
    let [a, b, c] = t.embedded(&r, xi::Z);
    let v = |i| Polynomial::var(&r, i);
    let (y, s0, s1) = (v(xi::Y), v(xi::S0), v(xi::S1));
    let f1 = &(&(&s0 * &y) + &(&s1 * &y)) + &a;
    let f2 = &(&(&s0 * &s1) - &(&y * &b)) - &c;
    VarietySpec::new(&r, vec![f1, f2]).expect("homogeneous of degrees 6 and 8")
}

pub fn build_x2(t: &Triplet) -> VarietySpec {
    build_x1(&t.swap())
}

/// How emptiness of an affine variety is decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Gröbner bases over the field of the input.
    Exact,
    /// Reduce a rational input modulo each prime; all must agree.
    Primes(Vec<u64>),
}

/// The three fixed default primes in `[1009, 2^31)`.
pub fn default_primes() -> Vec<u64> {
    random_primes(0x9e37_79b9, 3, 1009, 1 << 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub mode: CheckMode,
    pub groebner: GroebnerConfig,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { mode: CheckMode::Primes(default_primes()), groebner: GroebnerConfig::default() }
    }
}

impl CheckOptions {
    pub fn exact() -> Self {
        CheckOptions { mode: CheckMode::Exact, groebner: GroebnerConfig::default() }
    }

    /// Fields the checks actually run over for an input defined over `field`.
    pub fn fields_for(&self, field: Field) -> Result<Vec<Field>> {
        match (&self.mode, field) {
            (CheckMode::Primes(ps), Field::Rational) => ps.iter().map(|&p| Field::prime(p)).collect(),
            _ => Ok(vec![field]),
        }
    }
}

/// One affine system whose emptiness certifies smoothness, given as ring plus generators.
type System = (Arc<WeightedRing>, Vec<Polynomial>);

/// Systems whose common zero sets cover the singular locus of the affine cone.
///
/// For a hypersurface: the equation and its gradient. For a complete
/// intersection the gradients are dependent iff `∇f1 = 0` or
/// `∇f2 = μ ∇f1`, so two systems are returned, the second with an extra
/// variable `μ` in last position.
pub fn singular_systems(v: &VarietySpec) -> Result<Vec<System>> {
    let ring = v.ring();
    let n = ring.arity();
    let eqs = v.equations();
    let grad = |f: &Polynomial| (0..n).map(|i| f.partial_derivative(i)).collect::<Vec<_>>();
    if v.is_hypersurface() {
        let mut g = vec![eqs[0].clone()];
        g.extend(grad(&eqs[0]));
        return Ok(vec![(ring.clone(), g)]);
    }
    let mut s1 = eqs.to_vec();
    s1.extend(grad(&eqs[0]));
    let ext = ring.extended("_mu", 1)?;
    let mu = Polynomial::var(&ext, n);
    let mut s2: Vec<Polynomial> = eqs.iter().map(|e| e.embed(&ext)).collect();
    for (d1, d2) in grad(&eqs[0]).iter().zip(grad(&eqs[1])) {
        s2.push(&d2.embed(&ext) - &(&mu * &d1.embed(&ext)));
    }
    Ok(vec![(ring.clone(), s1), (ext, s2)])
}

/// Outcome of one emptiness test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Emptiness {
    Empty,
    NonEmpty,
    Budget,
}

fn emptiness(r: std::result::Result<bool, GroebnerError>) -> Emptiness {
    match r {
        Ok(true) => Emptiness::Empty,
        Ok(false) => Emptiness::NonEmpty,
        Err(_) => Emptiness::Budget,
    }
}

/// Restricts a system to `x_j = 0` (j in `zeros`) and `x_one = 1`.
fn restrict(sys: &System, zeros: &[usize], one: usize) -> Vec<Polynomial> {
    let f = sys.0.field();
    sys.1
        .iter()
        .map(|g| {
            let mut h = g.specialize(one, &f.one());
            for &j in zeros {
                h = h.specialize(j, &f.zero());
            }
            h
        })
        .collect()
}

/// All systems empty on `x_one = 1, x_j = 0 (j in zeros)`, optionally also
/// requiring the variables in `nonzero` to be invertible.
fn systems_empty(systems: &[System], zeros: &[usize], one: usize, nonzero: &[usize], cfg: &GroebnerConfig) -> Emptiness {
    let mut worst = Emptiness::Empty;
    for sys in systems {
        let gens = restrict(sys, zeros, one);
        let r = if nonzero.is_empty() {
            is_empty_affine(&gens, cfg)
        } else {
            match saturate_by_product(&sys.0, &gens, nonzero) {
                Ok(s) => is_empty_affine(&s.generators, cfg),
                Err(_) => return Emptiness::Budget,
            }
        };
        match emptiness(r) {
            Emptiness::Empty => {}
            Emptiness::NonEmpty => return Emptiness::NonEmpty,
            Emptiness::Budget => worst = Emptiness::Budget,
        }
    }
    worst
}

/// Per-stratum outcome over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
enum FieldOutcome {
    Allowed,
    /// Empty because the whole chart `x_i != 0` is smooth.
    Chart(usize),
    Stratum,
    NonEmpty,
    Budget,
}

fn qsm_over_field(v: &VarietySpec, allowed: &[StratumIndex], cfg: &GroebnerConfig) -> Result<Vec<(StratumIndex, FieldOutcome)>> {
    let ring = v.ring().clone();
    let n = ring.arity();
    let systems = singular_systems(v)?;
    let allowed_points: Vec<usize> = allowed.iter().filter(|s| s.is_point()).map(|s| s.vars()[0]).collect();

    // whole charts first; one empty chart settles every stratum through it
    let charts: Vec<usize> = (0..n).filter(|i| !allowed_points.contains(i)).collect();
    let chart_results = crate::par::map(charts.clone(), |i| systems_empty(&systems, &[], i, &[], cfg));
    let smooth_charts: Vec<usize> = charts.iter().zip(&chart_results).filter(|(_, r)| **r == Emptiness::Empty).map(|(i, _)| *i).collect();

    let strata = StratumIndex::all(n);
    let outcomes = crate::par::map(strata, |s| {
        if allowed.contains(&s) {
            return (s, FieldOutcome::Allowed);
        }
        if let Some(&i) = smooth_charts.iter().find(|&&i| s.contains(i)) {
            return (s, FieldOutcome::Chart(i));
        }
        let one = *s.vars().iter().min_by_key(|&&i| (ring.weight(i), i)).unwrap();
        let zeros: Vec<usize> = (0..n).filter(|j| !s.contains(*j)).collect();
        let others: Vec<usize> = s.vars().iter().copied().filter(|&i| i != one).collect();
        let out = match systems_empty(&systems, &zeros, one, &others, cfg) {
            Emptiness::Empty => FieldOutcome::Stratum,
            Emptiness::NonEmpty => FieldOutcome::NonEmpty,
            Emptiness::Budget => FieldOutcome::Budget,
        };
        (s, out)
    });
    Ok(outcomes)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRecord {
    pub stratum: String,
    /// `None` for strata excluded from the check.
    pub verdict: Option<Verdict>,
    pub evidence: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QsmReport {
    pub fields: Vec<String>,
    pub strata: Vec<StratumRecord>,
    pub verdict: Verdict,
}

impl QsmReport {
    pub fn failing(&self) -> Vec<&str> {
        self.strata.iter().filter(|s| s.verdict == Some(Verdict::Failed)).map(|s| s.stratum.as_str()).collect()
    }
}

/// Quasismoothness of `v` on every stratum except `allowed`.
pub fn member_qsm_outside_strata(v: &VarietySpec, allowed: &[StratumIndex], opts: &CheckOptions) -> Result<QsmReport> {
    let fields = opts.fields_for(v.field())?;
    let reductions: Vec<VarietySpec> = fields.iter().map(|&f| v.change_field(f)).collect::<Result<_>>()?;
    let per_field = crate::par::map(reductions, |w| qsm_over_field(&w, allowed, &opts.groebner));
    let per_field: Vec<Vec<(StratumIndex, FieldOutcome)>> = per_field.into_iter().collect::<Result<_>>()?;

    let ring = v.ring();
    let mut strata = Vec::new();
    for (k, (s, _)) in per_field[0].iter().enumerate() {
        let outs: Vec<&FieldOutcome> = per_field.iter().map(|pf| &pf[k].1).collect();
        let label = s.label(ring);
        let rec = if outs.iter().all(|o| **o == FieldOutcome::Allowed) {
            StratumRecord { stratum: label, verdict: None, evidence: "excluded from the check".into() }
        } else if outs.iter().all(|o| matches!(o, FieldOutcome::Chart(_) | FieldOutcome::Stratum)) {
            let how: Vec<String> = outs
                .iter()
                .map(|o| match o {
                    FieldOutcome::Chart(i) => format!("chart {}", ring.name(*i)),
                    _ => "stratum".to_string(),
                })
                .collect();
            StratumRecord { stratum: label, verdict: Some(Verdict::Verified), evidence: format!("singular locus empty ({})", how.join(", ")) }
        } else if outs.iter().all(|o| **o == FieldOutcome::NonEmpty) {
            StratumRecord { stratum: label, verdict: Some(Verdict::Failed), evidence: "cone is singular over this stratum".into() }
        } else if outs.contains(&&FieldOutcome::Budget) {
            StratumRecord { stratum: label, verdict: Some(Verdict::Inconclusive), evidence: "Gröbner budget exhausted".into() }
        } else {
            StratumRecord { stratum: label, verdict: Some(Verdict::Inconclusive), evidence: "fields disagree".into() }
        };
        strata.push(rec);
    }
    let verdict = Verdict::all(strata.iter().filter_map(|s| s.verdict));
    Ok(QsmReport { fields: fields.iter().map(|f| f.to_string()).collect(), strata, verdict })
}

/// Quasismoothness of `v` away from the coordinate points of `allowed`.
pub fn member_qsm_outside(v: &VarietySpec, allowed: &[usize], opts: &CheckOptions) -> Result<QsmReport> {
    let n = v.ring().arity();
    let strata = allowed.iter().map(|&i| StratumIndex::new(vec![i], n)).collect::<Result<Vec<_>>>()?;
    member_qsm_outside_strata(v, &strata, opts)
}

/// Emptiness of the singular locus of the cone over one stratum.
pub fn stratum_verdict(v: &VarietySpec, stratum: &StratumIndex, opts: &CheckOptions) -> Result<Verdict> {
    let n = v.ring().arity();
    let mut results = Vec::new();
    for f in opts.fields_for(v.field())? {
        let w = v.change_field(f)?;
        let systems = singular_systems(&w)?;
        let one = *stratum.vars().iter().min_by_key(|&&i| (w.ring().weight(i), i)).unwrap();
        let zeros: Vec<usize> = (0..n).filter(|j| !stratum.contains(*j)).collect();
        let others: Vec<usize> = stratum.vars().iter().copied().filter(|&i| i != one).collect();
        results.push(systems_empty(&systems, &zeros, one, &others, &opts.groebner));
    }
    Ok(if results.iter().all(|r| *r == Emptiness::Empty) {
        Verdict::Verified
    } else if results.iter().all(|r| *r == Emptiness::NonEmpty) {
        Verdict::Failed
    } else {
        Verdict::Inconclusive
    })
}

/// Which sextic of a triplet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sextic {
    A,
    B,
}

/// The sextic has a `z^2` term and the residual binary form after
/// completing the square in `z` is squarefree, i.e. `(s = 0) ⊂ P(1,1,3)` is
/// quasismooth. This certifies a `cAx/2` point of `X'`.
pub fn detect_cax2_via_sextic(t: &Triplet, which: Sextic) -> Result<bool> {
    let s = match which {
        Sextic::A => &t.a6,
        Sextic::B => &t.b6,
    };
    let field = t.field();
    // residual sextic: squarefree test needs p > 12
    field.require_characteristic_above(12)?;
    let [f6, f3, c] = split_by_z(s)?;
    if c.is_zero() {
        return Ok(false);
    }
    let c = c.terms()[0].1.clone();
    // 4c(c z^2 + z f3 + f6) = (2cz + f3)^2 + (4c f6 - f3^2)
    let residual = &f6.scale(&field.mul(&field.from_i64(4), &c)) - &(&f3 * &f3);
    if residual.is_zero() {
        return Ok(false);
    }
    binary_form_squarefree(&residual, 0, 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemReport {
    pub verdict: Verdict,
    pub evidence: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub members: Vec<(String, QsmReport)>,
}

/// The four-item genericity condition on a triplet.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub item1: ItemReport,
    pub item2: ItemReport,
    pub item3: ItemReport,
    pub item4: ItemReport,
    pub overall: bool,
}

impl ConditionReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::all([self.item1.verdict, self.item2.verdict, self.item3.verdict, self.item4.verdict])
    }
}

fn sextic_item(t: &Triplet) -> ItemReport {
    let check = |w| match detect_cax2_via_sextic(t, w) {
        Ok(true) => (Verdict::Verified, "squarefree residual"),
        Ok(false) => (Verdict::Failed, "no z^2 term or repeated root"),
        Err(_) => (Verdict::Inconclusive, "characteristic too small"),
    };
    let (va, ea) = check(Sextic::A);
    let (vb, eb) = check(Sextic::B);
    ItemReport { verdict: va.and(vb), evidence: format!("a6: {ea}; b6: {eb}"), members: vec![] }
}

fn qsm_item(name: &str, r: Result<QsmReport>) -> (Verdict, String, Option<(String, QsmReport)>) {
    match r {
        Ok(rep) => {
            let ev = match rep.verdict {
                Verdict::Verified => format!("{name}: every other stratum smooth"),
                Verdict::Failed => format!("{name}: singular along {}", rep.failing().join(" ")),
                Verdict::Inconclusive => format!("{name}: undecided strata"),
            };
            (rep.verdict, ev, Some((name.to_string(), rep)))
        }
        Err(e) => (Verdict::Inconclusive, format!("{name}: {e}"), None),
    }
}

/// Checks the four items; the three member checks run concurrently.
pub fn verify_condition(t: &Triplet, opts: &CheckOptions) -> ConditionReport {
    let xp = build_xprime(t);
    let x1 = build_x1(t);
    let x2 = build_x2(t);
    let (r1, (r31, r32)) = crate::par::join(
        || member_qsm_outside(&xp, &[xprime::Y0, xprime::Y1], opts),
        || {
            crate::par::join(
                || member_qsm_outside(&x1, &[xi::Y], opts),
                || member_qsm_outside(&x2, &[xi::Y], opts),
            )
        },
    );
    let (v1, e1, m1) = qsm_item("X'", r1);
    let item1 = ItemReport { verdict: v1, evidence: e1, members: m1.into_iter().collect() };
    let item2 = sextic_item(t);
    let (va, ea, ma) = qsm_item("X1", r31);
    let (vb, eb, mb) = qsm_item("X2", r32);
    let item3 = ItemReport { verdict: va.and(vb), evidence: format!("{ea}; {eb}"), members: ma.into_iter().chain(mb).collect() };
    // the cAx/2 germs of X1, X2 at the y-point are those of X' at the y-points
    let item4 = ItemReport {
        verdict: item2.verdict,
        evidence: format!("germ identification with the points of X': {}", item2.evidence),
        members: vec![],
    };
    let overall = [&item1, &item2, &item3, &item4].iter().all(|i| i.verdict.is_verified());
    ConditionReport { item1, item2, item3, item4, overall }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    General,
    /// `b6 = a6`.
    Symmetric,
}

/// Coefficients are drawn from `[-COEFF_BOX, COEFF_BOX]` over ℚ.
pub const COEFF_BOX: i64 = 20;

#[derive(Clone, Debug)]
pub struct SampledTriplet {
    pub triplet: Triplet,
    /// Draws made, including the accepted one.
    pub attempts: usize,
    pub report: ConditionReport,
}

fn random_form(rng: &mut ChaCha8Rng, field: Field, d: u32, pin_z2: bool) -> Polynomial {
    let r = base_ring(field);
    let terms = monomials_of_degree(&r, &[0, 1, 2], d).iter().cloned().collect::<Vec<_>>();
    let z2 = Monomial::from_exponents(&[0, 0, 2]);
    let coeffs = terms.into_iter().map(|m| {
        let c = if pin_z2 && m == z2 {
            field.one()
        } else {
            match field {
                Field::Rational => field.from_i64(rng.gen_range(-COEFF_BOX..=COEFF_BOX)),
                Field::Prime(p) => FieldElem::Residue(rng.gen_range(0..p)),
            }
        };
        (m, c)
    });
    Polynomial::from_terms(&r, coeffs)
}

/// Draws one triplet with `z^2` coefficients of `a6, b6` equal to 1.
pub fn draw_triplet(rng: &mut ChaCha8Rng, field: Field, mode: SampleMode) -> Triplet {
    let a6 = random_form(rng, field, 6, true);
    let b6 = match mode {
        SampleMode::General => random_form(rng, field, 6, true),
        SampleMode::Symmetric => a6.clone(),
    };
    let c8 = random_form(rng, field, 8, false);
    Triplet::new(a6, b6, c8).expect("homogeneous by construction")
}

/// Draws until the condition holds, at most `retry_cap` times.
pub fn sample_triplet(seed: u64, mode: SampleMode, field: Field, opts: &CheckOptions, retry_cap: usize) -> Result<SampledTriplet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=retry_cap {
        let t = draw_triplet(&mut rng, field, mode);
        let report = verify_condition(&t, opts);
        if report.overall {
            return Ok(SampledTriplet { triplet: t, attempts: attempt, report });
        }
    }
    Err(Error::RetriesExhausted(retry_cap))
}

/// `λ` with `q = λ p`; `None` if there is none or `q = 0`.
pub fn is_proportional(p: &Polynomial, q: &Polynomial) -> Result<Option<FieldElem>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p.proportionality(q))
}

/// An automorphism `τ` of `P(1,1,3)` with scalars `α, β, γ` such that
/// `γ^3 = α^2 β^2`, `τ*a6 = α b6`, `τ*b6 = β a6` and `τ*c8 = γ c8`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryWitness {
    /// `x0 ↦ m[0][0] x0 + m[0][1] x1`, `x1 ↦ m[1][0] x0 + m[1][1] x1`.
    pub linear: [[FieldElem; 2]; 2],
    /// `z ↦ z_scale z + z_shift`, with `z_shift` a cubic form in `x0, x1`.
    pub z_scale: FieldElem,
    pub z_shift: Polynomial,
    pub alpha: FieldElem,
    pub beta: FieldElem,
    pub gamma: FieldElem,
    pub label: String,
}

/// Serializable summary of a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub tau: String,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

impl SymmetryWitness {
    pub fn identity(field: Field, alpha: FieldElem, beta: FieldElem, gamma: FieldElem) -> SymmetryWitness {
        SymmetryWitness {
            linear: [[field.one(), field.zero()], [field.zero(), field.one()]],
            z_scale: field.one(),
            z_shift: Polynomial::zero(&base_ring(field)),
            alpha,
            beta,
            gamma,
            label: "identity".into(),
        }
    }

    pub fn summary(&self, field: Field) -> WitnessSummary {
        WitnessSummary {
            tau: self.label.clone(),
            alpha: field.format(&self.alpha),
            beta: field.format(&self.beta),
            gamma: field.format(&self.gamma),
        }
    }

    /// Pullback `τ*p`.
    pub fn pull(&self, p: &Polynomial) -> Polynomial {
        let r = p.ring();
        let x0 = Polynomial::var(r, 0);
        let x1 = Polynomial::var(r, 1);
        let z = Polynomial::var(r, 2);
        let m = &self.linear;
        let images = [
            &x0.scale(&m[0][0]) + &x1.scale(&m[0][1]),
            &x0.scale(&m[1][0]) + &x1.scale(&m[1][1]),
            &z.scale(&self.z_scale) + &self.z_shift,
        ];
        p.substitute(&images)
    }
}

/// Checks the four identities exactly.
pub fn verify_symmetry_witness(t: &Triplet, w: &SymmetryWitness) -> Result<bool> {
    let f = t.field();
    let m = &w.linear;
    let det = f.sub(&f.mul(&m[0][0], &m[1][1]), &f.mul(&m[0][1], &m[1][0]));
    if f.is_zero(&det) {
        return Err(Error::InvalidWitness("linear part is singular".into()));
    }
    if [&w.z_scale, &w.alpha, &w.beta, &w.gamma].iter().any(|c| f.is_zero(c)) {
        return Err(Error::InvalidWitness("scalars must be nonzero".into()));
    }
    if !w.z_shift.same_ring(&t.a6) || !(w.z_shift.is_zero() || w.z_shift.homogeneity().is_degree(3)) || w.z_shift.degree_in(2) > 0 {
        return Err(Error::InvalidWitness("z shift must be a cubic form in x0, x1".into()));
    }
    let g3 = f.pow(&w.gamma, 3);
    let ab2 = f.pow(&f.mul(&w.alpha, &w.beta), 2);
    Ok(g3 == ab2
        && w.pull(&t.a6) == t.b6.scale(&w.alpha)
        && w.pull(&t.b6) == t.a6.scale(&w.beta)
        && w.pull(&t.c8) == t.c8.scale(&w.gamma))
}

/// `λ` with `q = λ p`, allowing both to vanish.
fn ratio(p: &Polynomial, q: &Polynomial) -> Option<FieldElem> {
    match (p.is_zero(), q.is_zero()) {
        (true, true) => Some(p.field().one()),
        (false, false) => p.proportionality(q),
        _ => None,
    }
}

/// Searches `x0 ↔ x1` swaps and `z ↦ ±z` for a witness. A `None` result
/// does not prove the triplet asymmetric.
pub fn find_symmetry_heuristic(t: &Triplet) -> Option<SymmetryWitness> {
    let f = t.field();
    let (o, z) = (f.one(), f.zero());
    let minus = f.neg(&o);
    for swap in [false, true] {
        for zs in [o.clone(), minus.clone()] {
            let linear = if swap { [[z.clone(), o.clone()], [o.clone(), z.clone()]] } else { [[o.clone(), z.clone()], [z.clone(), o.clone()]] };
            let label = match (swap, f.is_one(&zs)) {
                (false, true) => "identity",
                (false, false) => "z -> -z",
                (true, true) => "x0 <-> x1",
                (true, false) => "x0 <-> x1, z -> -z",
            };
            let mut w = SymmetryWitness {
                linear,
                z_scale: zs.clone(),
                z_shift: Polynomial::zero(t.ring()),
                alpha: o.clone(),
                beta: o.clone(),
                gamma: o.clone(),
                label: label.into(),
            };
            let Some(alpha) = ratio(&t.b6, &w.pull(&t.a6)) else { continue };
            let Some(beta) = ratio(&t.a6, &w.pull(&t.b6)) else { continue };
            let target = f.pow(&f.mul(&alpha, &beta), 2);
            let gamma = if t.c8.is_zero() {
                match f.cbrt(&target) {
                    Some(g) => g,
                    None => continue,
                }
            } else {
                match ratio(&t.c8, &w.pull(&t.c8)) {
                    Some(g) => g,
                    None => continue,
                }
            };
            w.alpha = alpha;
            w.beta = beta;
            w.gamma = gamma;
            if verify_symmetry_witness(t, &w).unwrap_or(false) {
                return Some(w);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub variety: String,
    /// Label of the coordinate point, e.g. `{z}`.
    pub point: String,
    /// `1/r(a,b,c)`, or `not-determined` for a point that is not a
    /// quotient singularity.
    pub kind: String,
    pub terminal: Option<bool>,
    /// For non-quotient points: the governing sextic passed the `cAx/2` test.
    pub sextic_certified: Option<bool>,
}

/// Singular coordinate points of `X'`, `X1` and `X2`.
pub fn singularity_inventory(t: &Triplet) -> Result<Vec<SingularPoint>> {
    use crate::wps::{coordinate_point_quotient_type, is_terminal_quotient};
    // at the y1-point of X' (and the y-point of X1) the z^2 term comes from b6
    let cases: [(&str, VarietySpec, &[(usize, Option<Sextic>)]); 3] = [
        ("X'", build_xprime(t), &[(xprime::Y0, Some(Sextic::A)), (xprime::Y1, Some(Sextic::B)), (xprime::Z, None)]),
        ("X1", build_x1(t), &[(xi::Y, Some(Sextic::B)), (xi::S0, None), (xi::S1, None)]),
        ("X2", build_x2(t), &[(xi::Y, Some(Sextic::A)), (xi::S0, None), (xi::S1, None)]),
    ];
    let mut out = Vec::new();
    for (name, v, points) in cases {
        for &(i, sextic) in points {
            let point = StratumIndex::new(vec![i], v.ring().arity())?.label(v.ring());
            let entry = match coordinate_point_quotient_type(&v, i)? {
                Some(q) => SingularPoint { variety: name.into(), point, kind: q.to_string(), terminal: Some(is_terminal_quotient(&q)?), sextic_certified: None },
                None => SingularPoint {
                    variety: name.into(),
                    point,
                    kind: "not-determined".into(),
                    terminal: None,
                    sextic_certified: match sextic {
                        Some(s) => detect_cax2_via_sextic(t, s).ok(),
                        None => None,
                    },
                },
            };
            out.push(entry);
        }
    }
    Ok(out)
}

/// Coefficient lookup by exponent vector in `x0, x1, z`.
pub fn coefficient(p: &Polynomial, x0: u32, x1: u32, z: u32) -> FieldElem {
    p.coefficient_of(&[x0, x1, z])
}

/// Monomial-wise description used in reports.
pub fn describe(t: &Triplet) -> BTreeMap<&'static str, String> {
    BTreeMap::from([("a6", t.a6.to_string()), ("b6", t.b6.to_string()), ("c8", t.c8.to_string()), ("field", t.field().to_string())])
}
