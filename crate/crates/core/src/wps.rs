//! Weight-system combinatorics: well-formedness, coordinate strata, monomial
//! sets, the monomial quasismoothness criteria for general members, and
//! typing of coordinate points.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poly::{Field, FieldElem, Homogeneity, Monomial, Polynomial, WeightedRing};
use crate::Result;

/// Nonempty set of variable indices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratumIndex(Vec<usize>);

impl StratumIndex {
    pub fn new(mut vars: Vec<usize>, arity: usize) -> Result<StratumIndex> {
        vars.sort_unstable();
        vars.dedup();
        if vars.is_empty() {
            return Err(Error::InvalidRing("empty stratum".into()));
        }
        if vars.iter().any(|&v| v >= arity) {
            return Err(Error::InvalidRing(format!("stratum index out of range for {arity} variables")));
        }
        Ok(StratumIndex(vars))
    }

    fn from_mask(mask: u64, arity: usize) -> StratumIndex {
        StratumIndex((0..arity).filter(|i| mask >> i & 1 == 1).collect())
    }

    /// All `2^n - 1` strata, ordered by size and then lexicographically.
    pub fn all(arity: usize) -> Vec<StratumIndex> {
        let mut out: Vec<StratumIndex> = (1u64..(1 << arity)).map(|m| StratumIndex::from_mask(m, arity)).collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_point(&self) -> bool {
        self.0.len() == 1
    }

    pub fn label(&self, ring: &WeightedRing) -> String {
        let names: Vec<&str> = self.0.iter().map(|&i| ring.name(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Cyclic quotient singularity `1/r(w1,w2,w3)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientSingularity {
    pub r: u32,
    pub weights: [u32; 3],
}

impl fmt::Display for QuotientSingularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.weights;
        write!(f, "1/{}({},{},{})", self.r, a, b, c)
    }
}

/// Set of monomials sharing one weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSet {
    ring: Arc<WeightedRing>,
    degree: u32,
    monomials: BTreeSet<Monomial>,
}

impl MonomialSet {
    pub fn new(ring: &Arc<WeightedRing>, degree: u32, monomials: impl IntoIterator<Item = Monomial>) -> Result<MonomialSet> {
        let monomials: BTreeSet<Monomial> = monomials.into_iter().collect();
        for m in &monomials {
            if m.arity() != ring.arity() {
                return Err(Error::RingMismatch);
            }
            if ring.weighted_degree(m) != degree {
                return Err(Error::NotHomogeneous { expected: degree });
            }
        }
        Ok(MonomialSet { ring: ring.clone(), degree, monomials })
    }

    /// Support of a homogeneous polynomial.
    pub fn support_of(p: &Polynomial) -> Result<MonomialSet> {
        let d = match p.homogeneity() {
            Homogeneity::Degree(d) => d,
            Homogeneity::Any => return Err(Error::ZeroPolynomial),
            Homogeneity::Inhomogeneous => return Err(Error::NotHomogeneous { expected: p.degree().unwrap_or(0) }),
        };
        MonomialSet::new(p.ring(), d, p.terms().iter().map(|(m, _)| m.clone()))
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn union(&self, other: &MonomialSet) -> Result<MonomialSet> {
        if self.degree != other.degree {
            return Err(Error::NotHomogeneous { expected: self.degree });
        }
        MonomialSet::new(&self.ring, self.degree, self.monomials.iter().chain(other.monomials.iter()).cloned())
    }

    /// `x_v * M`.
    pub fn times_var(&self, v: usize) -> MonomialSet {
        let xv = Monomial::var(self.ring.arity(), v);
        MonomialSet {
            ring: self.ring.clone(),
            degree: self.degree + self.ring.weight(v),
            monomials: self.monomials.iter().map(|m| m.mul(&xv)).collect(),
        }
    }

    pub fn insert(&mut self, m: Monomial) -> Result<()> {
        if self.ring.weighted_degree(&m) != self.degree {
            return Err(Error::NotHomogeneous { expected: self.degree });
        }
        self.monomials.insert(m);
        Ok(())
    }

    /// Monomials supported in `I` (pure in the stratum).
    fn has_pure(&self, stratum: &StratumIndex) -> bool {
        self.monomials.iter().any(|m| m.support().all(|i| stratum.contains(i)))
    }

    /// Outside variables `e` for which some `x_I^m * x_e` lies in the set.
    fn outside_partners(&self, stratum: &StratumIndex) -> BTreeSet<usize> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (k, m) in self.monomials.iter().enumerate() {
            let outside: Vec<usize> = m.support().filter(|i| !stratum.contains(*i)).collect();
            if let [e] = outside.as_slice() {
                if m.0[*e] == 1 {
                    edges.push((k, *e));
                }
            }
        }
        matched_right(&edges)
    }
}

/// Right endpoints used by a maximum matching of the bipartite graph `edges`.
fn matched_right(edges: &[(usize, usize)]) -> BTreeSet<usize> {
    let left: BTreeSet<usize> = edges.iter().map(|e| e.0).collect();
    let mut owner: std::collections::BTreeMap<usize, usize> = Default::default();
    fn augment(
        l: usize,
        edges: &[(usize, usize)],
        owner: &mut std::collections::BTreeMap<usize, usize>,
        seen: &mut BTreeSet<usize>,
    ) -> bool {
        for &(a, r) in edges {
            if a != l || !seen.insert(r) {
                continue;
            }
            let free = match owner.get(&r) {
                None => true,
                Some(&other) => augment(other, edges, owner, seen),
            };
            if free {
                owner.insert(r, l);
                return true;
            }
        }
        false
    }
    for l in left {
        augment(l, edges, &mut owner, &mut BTreeSet::new());
    }
    owner.keys().copied().collect()
}

/// Gcd of every `n`-element subset of the `n + 1` weights is 1.
pub fn is_well_formed(weights: &[u32]) -> bool {
    if weights.len() < 2 {
        return weights.iter().all(|&w| w == 1);
    }
    (0..weights.len()).all(|skip| {
        weights.iter().enumerate().filter(|(i, _)| *i != skip).fold(0u32, |g, (_, &w)| g.gcd(&w)) == 1
    })
}

/// All monomials in `vars` of weighted degree exactly `d`.
pub fn monomials_of_degree(ring: &Arc<WeightedRing>, vars: &[usize], d: u32) -> MonomialSet {
    fn rec(ring: &WeightedRing, vars: &[usize], left: u32, cur: &mut Monomial, out: &mut BTreeSet<Monomial>) {
        let Some((&v, rest)) = vars.split_first() else {
            if left == 0 {
                out.insert(cur.clone());
            }
            return;
        };
        let w = ring.weight(v);
        for e in 0..=left / w {
            cur.0[v] = e;
            rec(ring, rest, left - e * w, cur, out);
        }
        cur.0[v] = 0;
    }
    let mut out = BTreeSet::new();
    rec(ring, vars, d, &mut Monomial::one(ring.arity()), &mut out);
    MonomialSet { ring: ring.clone(), degree: d, monomials: out }
}

/// Some variable appears alone, i.e. the general member is a linear cone.
pub fn is_linear_cone(set: &MonomialSet) -> bool {
    set.monomials.iter().any(|m| m.total_degree() == 1)
}

/// Same test for an explicit polynomial.
pub fn is_linear_cone_poly(p: &Polynomial) -> bool {
    p.terms().iter().any(|(m, _)| m.total_degree() == 1)
}

/// Which criterion certified a stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "verdict", content = "rule")]
pub enum CriterionVerdict {
    Pass(u8),
    Fail,
}

impl CriterionVerdict {
    pub fn passes(self) -> bool {
        matches!(self, CriterionVerdict::Pass(_))
    }
}

/// Monomial criterion for a general hypersurface along `Π°_I`.
pub fn hypersurface_stratum_criterion(m: &MonomialSet, stratum: &StratumIndex) -> CriterionVerdict {
    if m.has_pure(stratum) {
        return CriterionVerdict::Pass(1);
    }
    if m.outside_partners(stratum).len() >= stratum.len() {
        return CriterionVerdict::Pass(2);
    }
    CriterionVerdict::Fail
}

/// Monomial criterion for a general complete intersection along `Π°_I`.
pub fn ci_stratum_criterion(m1: &MonomialSet, m2: &MonomialSet, stratum: &StratumIndex) -> CriterionVerdict {
    let k = stratum.len();
    let (p1, p2) = (m1.has_pure(stratum), m2.has_pure(stratum));
    if p1 && p2 {
        return CriterionVerdict::Pass(1);
    }
    let e1 = m1.outside_partners(stratum);
    let e2 = m2.outside_partners(stratum);
    if p1 && e2.len() + 1 >= k {
        return CriterionVerdict::Pass(2);
    }
    if p2 && e1.len() + 1 >= k {
        return CriterionVerdict::Pass(3);
    }
    // two size-k matchings whose images cover k+1 variables exist iff
    // both sides reach k and the union reaches k+1
    if e1.len() >= k && e2.len() >= k && e1.union(&e2).count() > k {
        return CriterionVerdict::Pass(4);
    }
    CriterionVerdict::Fail
}

#[derive(Clone, Debug)]
pub struct GeneralMemberReport {
    pub strata: Vec<(StratumIndex, CriterionVerdict)>,
    /// The general member is a linear cone, so the criteria do not apply.
    pub linear_cone: bool,
}

impl GeneralMemberReport {
    pub fn failing(&self) -> Vec<&StratumIndex> {
        self.strata.iter().filter(|(_, v)| !v.passes()).map(|(s, _)| s).collect()
    }

    pub fn pass_count(&self) -> usize {
        self.strata.iter().filter(|(_, v)| v.passes()).count()
    }
}

/// Criterion verdict on every stratum for a family given by one or two
/// monomial sets.
pub fn general_member_report(sets: &[MonomialSet]) -> Result<GeneralMemberReport> {
    let ring = match sets {
        [a] => a.ring.clone(),
        [a, b] if a.ring == b.ring => a.ring.clone(),
        [_, _] => return Err(Error::RingMismatch),
        _ => return Err(Error::WrongDimension { vars: 0, equations: sets.len() }),
    };
    let strata = StratumIndex::all(ring.arity());
    let verdicts = crate::par::map(strata, |s| {
        let v = match sets {
            [a] => hypersurface_stratum_criterion(a, &s),
            [a, b] => ci_stratum_criterion(a, b, &s),
            _ => unreachable!(),
        };
        (s, v)
    });
    Ok(GeneralMemberReport { strata: verdicts, linear_cone: sets.iter().any(is_linear_cone) })
}

/// Weighted hypersurface or codimension-two complete intersection.
#[derive(Clone, Debug, PartialEq)]
pub struct VarietySpec {
    ring: Arc<WeightedRing>,
    equations: Vec<Polynomial>,
    degrees: Vec<u32>,
}

impl VarietySpec {
    /// Equations must be nonzero and homogeneous; a complete intersection is
    /// stored with the smaller degree first.
    pub fn new(ring: &Arc<WeightedRing>, equations: Vec<Polynomial>) -> Result<VarietySpec> {
        if equations.is_empty() || equations.len() > 2 {
            return Err(Error::WrongDimension { vars: ring.arity(), equations: equations.len() });
        }
        let mut eqs: Vec<(u32, Polynomial)> = Vec::new();
        for e in equations {
            if !(Arc::ptr_eq(e.ring(), ring) || **e.ring() == **ring) {
                return Err(Error::RingMismatch);
            }
            match e.homogeneity() {
                Homogeneity::Degree(d) => eqs.push((d, e)),
                Homogeneity::Any => return Err(Error::ZeroPolynomial),
                Homogeneity::Inhomogeneous => {
                    return Err(Error::NotHomogeneous { expected: e.degree().unwrap_or(0) })
                }
            }
        }
        eqs.sort_by_key(|(d, _)| *d);
        let (degrees, equations) = eqs.into_iter().unzip();
        Ok(VarietySpec { ring: ring.clone(), equations, degrees })
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.equations
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn is_hypersurface(&self) -> bool {
        self.equations.len() == 1
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    /// Reduction to another coefficient field.
    pub fn change_field(&self, field: Field) -> Result<VarietySpec> {
        let ring = self.ring.with_field(field);
        let equations = self.equations.iter().map(|e| e.change_field(&ring)).collect::<Result<Vec<_>>>()?;
        VarietySpec::new(&ring, equations)
    }

    pub fn contains_point(&self, point: &[FieldElem]) -> bool {
        let f = self.field();
        point.len() == self.ring.arity() && self.equations.iter().all(|e| f.is_zero(&e.evaluate(point)))
    }

    /// Rank of the Jacobian of the affine cone at `point`.
    pub fn jacobian_rank_at(&self, point: &[FieldElem]) -> usize {
        let rows: Vec<Vec<FieldElem>> = self
            .equations
            .iter()
            .map(|e| (0..self.ring.arity()).map(|v| e.partial_derivative(v).evaluate(point)).collect())
            .collect();
        matrix_rank(self.field(), rows)
    }

    /// The point is a smooth point of the variety: the cone is smooth there
    /// and the weights of its nonzero coordinates have no common factor.
    pub fn is_nonsingular_point(&self, point: &[FieldElem]) -> bool {
        let f = self.field();
        let g = point
            .iter()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .fold(0u32, |g, (i, _)| g.gcd(&self.ring.weight(i)));
        g == 1 && self.jacobian_rank_at(point) == self.equations.len()
    }
}

/// Rank by Gaussian elimination.
pub fn matrix_rank(f: Field, mut rows: Vec<Vec<FieldElem>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !f.is_zero(&rows[r][c])) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(&rows[rank][c]).unwrap();
        for r in 0..rows.len() {
            if r != rank && !f.is_zero(&rows[r][c]) {
                let k = f.mul(&rows[r][c], &inv);
                for j in c..cols {
                    let t = f.mul(&k, &rows[rank][j]);
                    rows[r][j] = f.sub(&rows[r][j], &t);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Type of the quotient singularity at the `i`-th coordinate point.
///
/// `Ok(None)` means no tangent monomials `x_i^k x_j` eliminate enough
/// variables, so the point is not a quasismooth quotient point.
pub fn coordinate_point_quotient_type(v: &VarietySpec, i: usize) -> Result<Option<QuotientSingularity>> {
    let ring = v.ring();
    let n = ring.arity();
    if n != 4 + v.equations().len() {
        return Err(Error::WrongDimension { vars: n, equations: v.equations().len() });
    }
    let pure = Monomial::var(n, i);
    for e in v.equations() {
        if e.terms().iter().any(|(m, _)| m.support().all(|k| k == i) && !m.is_one() && pure.divides(m)) {
            return Err(Error::PointNotOnVariety(ring.name(i).to_string()));
        }
    }
    let eliminated: Vec<BTreeSet<usize>> = v
        .equations()
        .iter()
        .map(|e| {
            e.terms()
                .iter()
                .filter_map(|(m, _)| {
                    let others: Vec<usize> = m.support().filter(|&k| k != i).collect();
                    match others.as_slice() {
                        [j] if m.0[*j] == 1 => Some(*j),
                        _ => None,
                    }
                })
                .collect()
        })
        .collect();
    // smallest choice first, so the answer does not depend on equation order
    let choice: Option<Vec<usize>> = match eliminated.as_slice() {
        [e] => e.iter().next().map(|&j| vec![j]),
        [e1, e2] => {
            let mut best: Option<Vec<usize>> = None;
            for &a in e1 {
                for &b in e2 {
                    if a != b {
                        let cand = vec![a.min(b), a.max(b)];
                        if best.as_ref().is_none_or(|x| cand < *x) {
                            best = Some(cand);
                        }
                    }
                }
            }
            best
        }
        _ => unreachable!(),
    };
    let Some(elim) = choice else {
        return Ok(None);
    };
    let r = ring.weight(i);
    let rest: Vec<u32> = (0..n).filter(|k| *k != i && !elim.contains(k)).map(|k| ring.weight(k) % r).collect();
    Ok(Some(QuotientSingularity { r, weights: [rest[0], rest[1], rest[2]] }))
}

/// Isolated cyclic quotient singularity of type `1/r(1, a, r-a)` after
/// rescaling, with `gcd(a, r) = 1`.
pub fn is_terminal_quotient(q: &QuotientSingularity) -> Result<bool> {
    let r = q.r;
    if r <= 1 {
        return Ok(true);
    }
    if q.weights.iter().any(|w| w.gcd(&r) != 1) {
        return Err(Error::NonIsolated { r, weights: q.weights.to_vec() });
    }
    let w = q.weights;
    Ok((0..3).any(|i| (i + 1..3).any(|j| (w[i] + w[j]) % r == 0)))
}

/// `(A^3)` and the Fano index `Σa - Σd` of a threefold given by weights and
/// equation degrees.
pub fn anticanonical_degree_of(weights: &[u32], degrees: &[u32]) -> Result<(BigRational, i64)> {
    if degrees.is_empty() || weights.len() != 4 + degrees.len() {
        return Err(Error::WrongDimension { vars: weights.len(), equations: degrees.len() });
    }
    if weights.contains(&0) {
        return Err(Error::InvalidRing("weights must be positive".into()));
    }
    let num: BigInt = degrees.iter().map(|&d| BigInt::from(d)).product();
    let den: BigInt = weights.iter().map(|&a| BigInt::from(a)).product();
    let index = weights.iter().map(|&a| a as i64).sum::<i64>() - degrees.iter().map(|&d| d as i64).sum::<i64>();
    Ok((BigRational::new(num, den), index))
}

pub fn anticanonical_degree(v: &VarietySpec) -> Result<(BigRational, i64)> {
    anticanonical_degree_of(v.ring().weights(), v.degrees())
}
