//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer-Möller form of both Buchberger criteria.
//!
//! All computations use the weighted graded reverse lexicographic order of the
//! ring (see [`WeightedRing::cmp_monomials`]).

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use smallvec::SmallVec;
use thiserror::Error;

use crate::poly::{FieldElem, Monomial, Polynomial, WeightedRing};

/// Default cap on treated S-pairs.
pub const DEFAULT_MAX_PAIRS: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerConfig {
    /// Treated S-pairs before giving up with [`GroebnerError::BudgetExceeded`].
    pub max_pairs: usize,
    /// Re-reduce every S-polynomial of the final basis and fail if one survives.
    pub self_check: bool,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: DEFAULT_MAX_PAIRS, self_check: false }
    }
}

impl GroebnerConfig {
    pub fn with_budget(max_pairs: usize) -> Self {
        GroebnerConfig { max_pairs, ..Default::default() }
    }

    pub fn checked(mut self) -> Self {
        self.self_check = true;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("S-pair budget of {pairs} exhausted")]
    BudgetExceeded { pairs: usize },
    #[error("generators belong to different rings")]
    RingMismatch,
    #[error("self-check failed: an S-polynomial of the basis has nonzero normal form")]
    SelfCheckFailed,
}

/// Reduced, monic Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<WeightedRing>,
    generators: Vec<Polynomial>,
    pairs_treated: usize,
}

type SortKey = (u32, SmallVec<[Reverse<u32>; 8]>);

/// Key whose natural order agrees with the term order.
fn sort_key(ring: &WeightedRing, m: &Monomial) -> SortKey {
    (ring.weighted_degree(m), m.0.iter().rev().map(|&e| Reverse(e)).collect())
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    key: SortKey,
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Fully reduces `f` modulo the monic `reducers`.
fn normal_form(f: &Polynomial, reducers: &[&Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut remainder: Vec<(Monomial, FieldElem)> = Vec::new();
    let mut cur: Vec<(Monomial, FieldElem)> = f.terms().to_vec();
    let mut start = 0;
    while start < cur.len() {
        let (m, c) = &cur[start];
        match reducers.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m))) {
            Some(g) => {
                let q = g.leading_monomial().unwrap().quotient_of(m);
                let k = field.neg(c);
                // leading terms cancel exactly; merge the tails
                cur = crate::poly::merge_scaled(&ring, &cur[start + 1..], &g.terms()[1..], &q, &k);
                start = 0;
            }
            None => {
                remainder.push(cur[start].clone());
                start += 1;
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, remainder)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let field = f.field();
    let lf = f.leading_monomial().unwrap().quotient_of(lcm);
    let lg = g.leading_monomial().unwrap().quotient_of(lcm);
    let a = f.mul_term(&lf, &field.one());
    a.add_scaled(g, &lg, &field.neg(&field.one()))
}

struct Engine {
    ring: Arc<WeightedRing>,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: BinaryHeap<Reverse<Pair>>,
    treated: usize,
}

impl Engine {
    fn active_reducers(&self) -> Vec<&Polynomial> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    /// Adds the monic polynomial `h` and updates the pair set.
    fn insert(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        let h_lm = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.active.push(false);

        let mut cands: Vec<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, h_lm.lcm(self.lm(g))))
            .collect();
        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = cands.pop() {
            let coprime = h_lm.is_coprime(self.lm(g1));
            let dominated = cands.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                kept.push((g1, l1));
            }
        }
        // product criterion
        let new_pairs: Vec<(usize, Monomial)> = kept.into_iter().filter(|(g, _)| !h_lm.is_coprime(self.lm(*g))).collect();

        // old pairs made redundant by h
        let old = std::mem::take(&mut self.pairs);
        for Reverse(p) in old.into_vec() {
            let keep = !h_lm.divides(&p.lcm)
                || p.lcm == self.lm(p.i).lcm(&h_lm)
                || p.lcm == h_lm.lcm(self.lm(p.j));
            if keep {
                self.pairs.push(Reverse(p));
            }
        }
        for (g, lcm) in new_pairs {
            let key = sort_key(&self.ring, &lcm);
            self.pairs.push(Reverse(Pair { key, i: g, j: hi, lcm }));
        }
        for g in 0..hi {
            if self.active[g] && h_lm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
pub fn buchberger(ring: &Arc<WeightedRing>, gens: &[Polynomial], cfg: &GroebnerConfig) -> Result<GroebnerBasis, GroebnerError> {
    if gens.iter().any(|g| !(Arc::ptr_eq(g.ring(), ring) || **g.ring() == **ring)) {
        return Err(GroebnerError::RingMismatch);
    }
    let mut eng = Engine { ring: ring.clone(), polys: Vec::new(), active: Vec::new(), pairs: BinaryHeap::new(), treated: 0 };
    let unit = |treated| GroebnerBasis { ring: ring.clone(), generators: vec![Polynomial::one(ring)], pairs_treated: treated };

    let mut inputs: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    inputs.sort_by(|a, b| ring.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in inputs {
        let r = normal_form(g, &eng.active_reducers());
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit(0));
        }
        eng.insert(r.monic());
    }

    while let Some(Reverse(pair)) = eng.pairs.pop() {
        if eng.treated >= cfg.max_pairs {
            return Err(GroebnerError::BudgetExceeded { pairs: eng.treated });
        }
        eng.treated += 1;
        let s = s_polynomial(&eng.polys[pair.i], &eng.polys[pair.j], &pair.lcm);
        let r = normal_form(&s, &eng.active_reducers());
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return Ok(unit(eng.treated));
        }
        eng.insert(r.monic());
    }

    // inter-reduce the minimal basis
    let minimal: Vec<Polynomial> = eng.active_reducers().into_iter().cloned().collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (k, g) in minimal.iter().enumerate() {
        let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, p)| p).collect();
        let lead = Polynomial::from_sorted_terms(ring, vec![g.leading_term().unwrap().clone()]);
        let tail = &normal_form(&(g - &lead), &others) + &lead;
        reduced.push(tail.monic());
    }
    reduced.sort_by(|a, b| ring.cmp_monomials(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let basis = GroebnerBasis { ring: ring.clone(), generators: reduced, pairs_treated: eng.treated };
    if cfg.self_check && !basis.self_check() {
        return Err(GroebnerError::SelfCheckFailed);
    }
    Ok(basis)
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn pairs_treated(&self) -> usize {
        self.pairs_treated
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.is_unit())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Remainder of `p` on division by the basis.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if !p.same_ring(&Polynomial::zero(&self.ring)) {
            return Err(GroebnerError::RingMismatch);
        }
        let reducers: Vec<&Polynomial> = self.generators.iter().collect();
        Ok(normal_form(p, &reducers))
    }

    /// Every S-polynomial of the basis reduces to zero, and every element is monic.
    pub fn self_check(&self) -> bool {
        let reducers: Vec<&Polynomial> = self.generators.iter().collect();
        let field = self.ring.field();
        if !self.generators.iter().all(|g| field.is_one(g.leading_coefficient().unwrap())) {
            return false;
        }
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                let (f, g) = (&self.generators[i], &self.generators[j]);
                let lcm = f.leading_monomial().unwrap().lcm(g.leading_monomial().unwrap());
                if !normal_form(&s_polynomial(f, g, &lcm), &reducers).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Dimension of the affine variety: the largest set of variables no leading
    /// monomial is supported in. `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        if self.is_unit_ideal() {
            return -1;
        }
        let n = self.ring.arity();
        assert!(n < 63, "too many variables for subset enumeration");
        let supports: Vec<u64> = self
            .generators
            .iter()
            .map(|g| g.leading_monomial().unwrap().support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        let mut best = 0;
        for set in 0u64..(1 << n) {
            let size = set.count_ones();
            if size > best && supports.iter().all(|s| s & !set != 0) {
                best = size;
            }
        }
        best as i64
    }
}

/// Membership test by normal form.
pub fn ideal_contains(gb: &GroebnerBasis, p: &Polynomial) -> Result<bool, GroebnerError> {
    Ok(gb.reduce(p)?.is_zero())
}

/// True iff the affine variety of `gens` is empty over the algebraic closure.
pub fn is_empty_affine(gens: &[Polynomial], cfg: &GroebnerConfig) -> Result<bool, GroebnerError> {
    let Some(first) = gens.first() else {
        return Ok(false);
    };
    let gb = buchberger(first.ring(), gens, cfg)?;
    Ok(gb.is_unit_ideal())
}

pub fn krull_dimension(gb: &GroebnerBasis) -> i64 {
    gb.krull_dimension()
}

/// Localization away from the coordinate hyperplanes of `vars`.
#[derive(Clone, Debug)]
pub struct SaturatedSystem {
    /// Input ring plus one trailing auxiliary variable.
    pub ring: Arc<WeightedRing>,
    pub generators: Vec<Polynomial>,
}

/// Adjoins `t * prod(vars) - 1` in a ring with one extra variable `t`.
///
/// The zero set of the result projects onto the part of the original zero set
/// where none of `vars` vanishes.
pub fn saturate_by_product(
    ring: &Arc<WeightedRing>,
    gens: &[Polynomial],
    vars: &[usize],
) -> Result<SaturatedSystem, crate::error::Error> {
    if vars.is_empty() {
        return Err(crate::error::Error::InvalidRing("saturation needs at least one variable".into()));
    }
    let mut name = String::from("_t");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    let ext = ring.extended(&name, 1)?;
    let field = ext.field();
    let mut generators: Vec<Polynomial> = gens.iter().map(|g| g.embed(&ext)).collect();
    let mut m = Monomial::var(ext.arity(), ext.arity() - 1);
    for &v in vars {
        m.0[v] += 1;
    }
    let rab = Polynomial::from_terms(&ext, [(m, field.one()), (Monomial::one(ext.arity()), field.neg(&field.one()))]);
    generators.push(rab);
    Ok(SaturatedSystem { ring: ext, generators })
}
