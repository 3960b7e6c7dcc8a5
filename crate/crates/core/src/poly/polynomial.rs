use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Field, FieldElem, Monomial, WeightedRing};
use crate::error::Error;

/// Sparse polynomial over a [`WeightedRing`].
///
/// Terms are kept sorted in decreasing term order with no zero coefficients,
/// so the first term is the leading term.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<WeightedRing>,
    terms: Vec<(Monomial, FieldElem)>,
}

/// Outcome of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Any,
    Degree(u32),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_degree(&self, d: u32) -> bool {
        matches!(self, Homogeneity::Any) || *self == Homogeneity::Degree(d)
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<WeightedRing>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<WeightedRing>, c: FieldElem) -> Polynomial {
        Polynomial::term(ring, Monomial::one(ring.arity()), c)
    }

    pub fn one(ring: &Arc<WeightedRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Arc<WeightedRing>, n: i64) -> Polynomial {
        Polynomial::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Arc<WeightedRing>, i: usize) -> Polynomial {
        Polynomial::term(ring, Monomial::var(ring.arity(), i), ring.field().one())
    }

    /// Variable by name. Panics when unbound; intended for fixed, known rings.
    pub fn named(ring: &Arc<WeightedRing>, name: &str) -> Polynomial {
        let i = ring.var_index(name).unwrap_or_else(|| panic!("no variable {name} in ring"));
        Polynomial::var(ring, i)
    }

    pub fn term(ring: &Arc<WeightedRing>, m: Monomial, c: FieldElem) -> Polynomial {
        assert_eq!(m.arity(), ring.arity(), "monomial arity does not match ring");
        if ring.field().is_zero(&c) {
            return Polynomial::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<WeightedRing>, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Polynomial {
        let field = ring.field();
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.arity(), ring.arity(), "monomial arity does not match ring");
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Polynomial::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<WeightedRing>, acc: HashMap<Monomial, FieldElem>) -> Polynomial {
        let field = ring.field();
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<WeightedRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, FieldElem)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElem {
        self.terms
            .binary_search_by(|(t, _)| self.ring.cmp_monomials(m, t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| self.field().zero())
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient_of(&self, exps: &[u32]) -> FieldElem {
        self.coefficient(&Monomial::from_exponents(exps))
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    fn assert_same_ring(&self, other: &Polynomial) {
        assert!(self.same_ring(other), "polynomials belong to different rings");
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.iter().map(|(m, _)| self.ring.weighted_degree(m));
        match degs.next() {
            None => Homogeneity::Any,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    /// Weighted degree of the leading term (the maximal weighted degree).
    pub fn degree(&self) -> Option<u32> {
        self.leading_monomial().map(|m| self.ring.weighted_degree(m))
    }

    /// Largest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[i]).max().unwrap_or(0)
    }

    /// Set of variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.arity()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, s)| **s).map(|(i, _)| i).collect()
    }

    pub fn scale(&self, c: &FieldElem) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field.mul(a, c))).collect(),
        }
    }

    /// `c * m * self`. Term order is compatible with multiplication, so the
    /// sorted order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), field.mul(a, c))).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// `self + c * m * other`, merging sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, m: &Monomial, c: &FieldElem) -> Polynomial {
        self.assert_same_ring(other);
        Polynomial { ring: self.ring.clone(), terms: merge_scaled(&self.ring, &self.terms, &other.terms, m, c) }
    }

    pub(crate) fn from_sorted_terms(ring: &Arc<WeightedRing>, terms: Vec<(Monomial, FieldElem)>) -> Polynomial {
        debug_assert!(terms.windows(2).all(|w| ring.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let field = self.field();
        let terms = self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let e = m.0[var];
            let mut d = m.clone();
            d.0[var] -= 1;
            (d, field.mul(c, &field.from_i64(e as i64)))
        });
        // differentiation can merge nothing but may kill coefficients in char p
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Composition: variable `i` is replaced by `images[i]`; the result lives
    /// in the ring of the images.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.arity(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        for im in images {
            assert!(Arc::ptr_eq(&im.ring, &target) || *im.ring == *target, "images in different rings");
        }
        let field = target.field();
        let mut power_cache: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&target), p.clone()]).collect();
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (m, c) in &self.terms {
            let coeff = convert_coeff(c, self.field(), field);
            let mut prod = Polynomial::constant(&target, coeff);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &images[i];
                    cache.push(next);
                }
                prod = &prod * &cache[e as usize];
                if prod.is_zero() {
                    break;
                }
            }
            for (tm, tc) in prod.terms {
                match acc.get_mut(&tm) {
                    Some(x) => *x = field.add(x, &tc),
                    None => {
                        acc.insert(tm, tc);
                    }
                }
            }
        }
        Polynomial::from_map(&target, acc)
    }

    /// Replaces the listed variables, leaving the others in place.
    pub fn substitute_vars(&self, assignment: &BTreeMap<usize, Polynomial>) -> Polynomial {
        let images: Vec<Polynomial> = (0..self.ring.arity())
            .map(|i| assignment.get(&i).cloned().unwrap_or_else(|| Polynomial::var(&self.ring, i)))
            .collect();
        self.substitute(&images)
    }

    /// Sets variable `i` to the constant `c`.
    pub fn specialize(&self, i: usize, c: &FieldElem) -> Polynomial {
        let field = self.field();
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (m, a) in &self.terms {
            let e = m.0[i];
            let coeff = if e == 0 { a.clone() } else { field.mul(a, &field.pow(c, e as u64)) };
            let mut mm = m.clone();
            mm.0[i] = 0;
            match acc.get_mut(&mm) {
                Some(x) => *x = field.add(x, &coeff),
                None => {
                    acc.insert(mm, coeff);
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    pub fn evaluate(&self, point: &[FieldElem]) -> FieldElem {
        assert_eq!(point.len(), self.ring.arity());
        let field = self.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Moves the polynomial into `target`: variable `i` becomes variable
    /// `mapping[i]` there. Coefficients are converted to the target field.
    pub fn map_into(&self, target: &Arc<WeightedRing>, mapping: &[usize]) -> Result<Polynomial, Error> {
        assert_eq!(mapping.len(), self.ring.arity());
        let field = target.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = Monomial::one(target.arity());
            for (i, &x) in m.0.iter().enumerate() {
                e.0[mapping[i]] += x;
            }
            terms.push((e, try_convert_coeff(c, self.field(), field)?));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Same variables, new field (e.g. reduction of a rational polynomial mod p).
    pub fn change_field(&self, target: &Arc<WeightedRing>) -> Result<Polynomial, Error> {
        let mapping: Vec<usize> = (0..self.ring.arity()).collect();
        self.map_into(target, &mapping)
    }

    /// Into a ring that extends this one by trailing variables.
    pub fn embed(&self, target: &Arc<WeightedRing>) -> Polynomial {
        assert!(target.arity() >= self.ring.arity());
        let mapping: Vec<usize> = (0..self.ring.arity()).collect();
        self.map_into(target, &mapping).expect("same field")
    }

    /// Exact quotient by another polynomial if it divides; `None` otherwise.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.assert_same_ring(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let field = self.field();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rem.leading_term().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let q = lm.quotient_of(&m);
            let k = field.div(&c, lc).unwrap();
            rem = rem.add_scaled(divisor, &q, &field.neg(&k));
            quot = quot.add_scaled(&Polynomial::one(&self.ring), &q, &k);
        }
        Some(quot)
    }

    /// `λ` with `other = λ·self`, if any. Both must be nonzero.
    pub fn proportionality(&self, other: &Polynomial) -> Option<FieldElem> {
        if self.is_zero() || other.is_zero() || self.len() != other.len() {
            return None;
        }
        let field = self.field();
        let lambda = field.div(&other.terms[0].1, &self.terms[0].1)?;
        for ((m1, c1), (m2, c2)) in self.terms.iter().zip(&other.terms) {
            if m1 != m2 || field.mul(c1, &lambda) != *c2 {
                return None;
            }
        }
        Some(lambda)
    }
}

/// Merge of `a + c * m * b` for term lists sorted in decreasing order.
pub(crate) fn merge_scaled(
    ring: &WeightedRing,
    a: &[(Monomial, FieldElem)],
    b: &[(Monomial, FieldElem)],
    m: &Monomial,
    c: &FieldElem,
) -> Vec<(Monomial, FieldElem)> {
    let field = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.iter().peekable();
    let mut b = b.iter().map(|(t, x)| (t.mul(m), field.mul(x, c))).peekable();
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => ring.cmp_monomials(&x.0, &y.0),
        };
        match ord {
            Ordering::Greater => out.push(a.next().unwrap().clone()),
            Ordering::Less => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (mx, cx) = a.next().unwrap();
                let (_, cy) = b.next().unwrap();
                let s = field.add(cx, &cy);
                if !field.is_zero(&s) {
                    out.push((mx.clone(), s));
                }
            }
        }
    }
    out
}

fn convert_coeff(c: &FieldElem, from: Field, to: Field) -> FieldElem {
    try_convert_coeff(c, from, to).expect("coefficient not representable in target field")
}

fn try_convert_coeff(c: &FieldElem, from: Field, to: Field) -> Result<FieldElem, Error> {
    if from == to {
        return Ok(c.clone());
    }
    match (c, to) {
        (FieldElem::Rational(q), _) => to.from_rational(q),
        (FieldElem::Residue(_), _) => Err(Error::RingMismatch),
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Polynomial) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    /// Prints in the expression grammar; `parse_poly` reads it back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = field.is_negative(c);
            let abs = if neg { field.neg(c) } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let cs = field.format(&abs);
            if m.is_one() {
                write!(f, "{cs}")?;
            } else if field.is_one(&abs) {
                write!(f, "{}", self.ring.monomial_to_string(m))?;
            } else {
                write!(f, "{cs}*{}", self.ring.monomial_to_string(m))?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let one = Monomial::one(self.ring.arity());
        self.add_scaled(rhs, &one, &self.field().one())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let one = Monomial::one(self.ring.arity());
        let field = self.field();
        self.add_scaled(rhs, &one, &field.neg(&field.one()))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let field = self.field();
        self.scale(&field.neg(&field.one()))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(m, c);
        }
        if rhs.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(m, c);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.mul(mb);
                let c = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = field.add(x, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -(&self)
    }
}
