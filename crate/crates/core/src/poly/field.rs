//! Coefficient fields: the rationals and prime fields of word size.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest modulus accepted for a prime field. Products of two residues must
/// fit into a `u64`.
pub const MAX_PRIME: u64 = 1 << 31;

/// Field descriptor carried by every [`WeightedRing`](super::WeightedRing).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// A coefficient. Which variant is valid is decided by the owning [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Residue(u64),
}

impl Field {
    /// Prime field of characteristic `p`. Rejects composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p < 2 || p >= MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_exact_rational(&self) -> bool {
        matches!(self, Field::Rational)
    }

    /// Fails unless the characteristic is zero or exceeds `bound`.
    pub fn require_characteristic_above(&self, bound: u64) -> Result<(), Error> {
        match self {
            Field::Prime(p) if *p <= bound => Err(Error::CharacteristicTooSmall { p: *p, bound }),
            _ => Ok(()),
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::zero()),
            Field::Prime(_) => FieldElem::Residue(0),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::one()),
            Field::Prime(_) => FieldElem::Residue(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => FieldElem::Residue(n.rem_euclid(*p as i64) as u64),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElem {
        match self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => FieldElem::Residue(reduce_bigint(n, *p)),
        }
    }

    /// Image of a rational number. Fails when the denominator vanishes in the field.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElem, Error> {
        match self {
            Field::Rational => Ok(FieldElem::Rational(q.clone())),
            Field::Prime(p) => {
                let den = reduce_bigint(q.denom(), *p);
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let num = reduce_bigint(q.numer(), *p);
                Ok(FieldElem::Residue(mul_mod(num, inv_mod(den, *p), *p)))
            }
        }
    }

    /// Quotient `num/den` of two integers, as a field element.
    pub fn ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.from_rational(&BigRational::new(num.clone(), den.clone()))
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Residue(r) => *r == 1,
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (Field::Rational, FieldElem::Rational(x), FieldElem::Rational(y)) => FieldElem::Rational(x + y),
            (Field::Prime(p), FieldElem::Residue(x), FieldElem::Residue(y)) => {
                let s = x + y;
                FieldElem::Residue(if s >= *p { s - p } else { s })
            }
            _ => mismatch(),
        }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        match (self, a) {
            (Field::Rational, FieldElem::Rational(x)) => FieldElem::Rational(-x),
            (Field::Prime(p), FieldElem::Residue(x)) => FieldElem::Residue(if *x == 0 { 0 } else { p - x }),
            _ => mismatch(),
        }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (Field::Rational, FieldElem::Rational(x), FieldElem::Rational(y)) => FieldElem::Rational(x - y),
            (Field::Prime(p), FieldElem::Residue(x), FieldElem::Residue(y)) => {
                FieldElem::Residue(if x >= y { x - y } else { p - (y - x) })
            }
            _ => mismatch(),
        }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        match (self, a, b) {
            (Field::Rational, FieldElem::Rational(x), FieldElem::Rational(y)) => FieldElem::Rational(x * y),
            (Field::Prime(p), FieldElem::Residue(x), FieldElem::Residue(y)) => FieldElem::Residue(mul_mod(*x, *y, *p)),
            _ => mismatch(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &FieldElem) -> Option<FieldElem> {
        if self.is_zero(a) {
            return None;
        }
        Some(match (self, a) {
            (Field::Rational, FieldElem::Rational(x)) => FieldElem::Rational(x.recip()),
            (Field::Prime(p), FieldElem::Residue(x)) => FieldElem::Residue(inv_mod(*x, *p)),
            _ => mismatch(),
        })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// A square root in the field, if one exists.
    pub fn sqrt(&self, a: &FieldElem) -> Option<FieldElem> {
        match (self, a) {
            (Field::Rational, FieldElem::Rational(q)) => {
                if q.is_negative() {
                    return None;
                }
                let n = exact_root(q.numer(), 2)?;
                let d = exact_root(q.denom(), 2)?;
                Some(FieldElem::Rational(BigRational::new(n, d)))
            }
            (Field::Prime(p), FieldElem::Residue(x)) => sqrt_mod(*x, *p).map(FieldElem::Residue),
            _ => mismatch(),
        }
    }

    /// A cube root in the field, when one is cheaply available.
    ///
    /// Over `F_p` with `p = 1 mod 3` cube roots are not searched for and `None`
    /// is returned.
    pub fn cbrt(&self, a: &FieldElem) -> Option<FieldElem> {
        match (self, a) {
            (Field::Rational, FieldElem::Rational(q)) => {
                let n = exact_root(q.numer(), 3)?;
                let d = exact_root(q.denom(), 3)?;
                Some(FieldElem::Rational(BigRational::new(n, d)))
            }
            (Field::Prime(p), FieldElem::Residue(x)) => {
                if *p == 3 || *p % 3 == 2 {
                    // x -> x^3 is a bijection; its inverse is x^((2p-1)/3)
                    let e = if *p == 3 { 1 } else { (2 * p - 1) / 3 };
                    Some(self.pow(&FieldElem::Residue(*x), e))
                } else if *x == 0 {
                    Some(FieldElem::Residue(0))
                } else {
                    None
                }
            }
            _ => mismatch(),
        }
    }

    /// Writes `a` the way the expression grammar reads it back.
    pub fn format(&self, a: &FieldElem) -> String {
        match a {
            FieldElem::Rational(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Residue(r) => r.to_string(),
        }
    }

    /// True when the element prints with a leading minus sign.
    pub fn is_negative(&self, a: &FieldElem) -> bool {
        matches!(a, FieldElem::Rational(q) if q.is_negative())
    }

    /// Integer value of a residue or integral rational, when it fits an `i64`.
    pub fn to_i64(&self, a: &FieldElem) -> Option<i64> {
        match a {
            FieldElem::Rational(q) if q.is_integer() => q.numer().to_i64(),
            FieldElem::Rational(_) => None,
            FieldElem::Residue(r) => Some(*r as i64),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "QQ" {
            return Ok(Field::Rational);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            let p: u64 = rest.trim().parse().map_err(|_| Error::InvalidField(s.to_string()))?;
            return Field::prime(p);
        }
        Err(Error::InvalidField(s.to_string()))
    }
}

#[cold]
fn mismatch() -> ! {
    panic!("field element does not belong to the field it is used with")
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(p as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(p as i64) as u64
}

/// Tonelli-Shanks.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let neg = n.is_negative();
    if neg && k % 2 == 0 {
        return None;
    }
    let r = n.abs().nth_root(k);
    if r.pow(k) == n.abs() {
        Some(if neg { -r } else { r })
    } else {
        None
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, a);
            }
            a = mulm(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes drawn uniformly-ish from `[lo, hi)` by a seeded generator.
pub fn random_primes(seed: u64, count: usize, lo: u64, hi: u64) -> Vec<u64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut c = rng.gen_range(lo..hi) | 1;
        while c < hi && !is_prime(c) {
            c += 2;
        }
        if c < hi && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}
