//! Cross-checks of the Gröbner engine against brute-force enumeration.

use std::sync::Arc;

use qfano_core::groebner::{buchberger, ideal_contains, is_empty_affine, GroebnerConfig, GroebnerError};
use qfano_core::poly::{Field, FieldElem, Monomial, Polynomial, WeightedRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ring(n: usize, p: u64) -> Arc<WeightedRing> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    WeightedRing::new(names, &vec![1; n], Field::prime(p).unwrap()).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, r: &Arc<WeightedRing>, max_deg: u32) -> Polynomial {
    let n = r.arity();
    let p = r.field().characteristic();
    let count = rng.gen_range(1..=4);
    let terms: Vec<(Monomial, FieldElem)> = (0..count)
        .map(|_| {
            let mut e = vec![0u32; n];
            let mut left = rng.gen_range(0..=max_deg);
            while left > 0 {
                e[rng.gen_range(0..n)] += 1;
                left -= 1;
            }
            (Monomial::from_exponents(&e), FieldElem::Residue(rng.gen_range(1..p)))
        })
        .collect();
    Polynomial::from_terms(r, terms)
}

fn has_rational_point(gens: &[Polynomial], n: usize, p: u64) -> bool {
    let f = Field::prime(p).unwrap();
    let total = p.pow(n as u32);
    (0..total).any(|mut code| {
        let point: Vec<FieldElem> = (0..n)
            .map(|_| {
                let c = code % p;
                code /= p;
                f.from_i64(c as i64)
            })
            .collect();
        gens.iter().all(|g| f.is_zero(&g.evaluate(&point)))
    })
}

/// `x^p - x` for every variable: with these, emptiness over the algebraic
/// closure is the same as having no point over the prime field.
fn field_equations(r: &Arc<WeightedRing>) -> Vec<Polynomial> {
    let p = r.field().characteristic() as u32;
    (0..r.arity()).map(|i| &Polynomial::var(r, i).pow(p) - &Polynomial::var(r, i)).collect()
}

#[test]
fn emptiness_agrees_with_enumeration() {
    let cfg = GroebnerConfig::default().checked();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut empty_seen = 0;
    for k in 0..100 {
        let p = if k % 2 == 0 { 5 } else { 7 };
        let n = rng.gen_range(1..=3);
        let r = ring(n, p);
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_poly(&mut rng, &r, 3)).collect();
        let brute = has_rational_point(&gens, n, p);
        // without field equations emptiness is over the closure: empty implies no point
        if is_empty_affine(&gens, &cfg).unwrap() {
            assert!(!brute, "system {k} has a point but was declared empty");
        }
        let mut closed = gens.clone();
        closed.extend(field_equations(&r));
        let empty = is_empty_affine(&closed, &cfg).unwrap();
        assert_eq!(empty, !brute, "system {k} over F_{p}: {:?}", gens.iter().map(ToString::to_string).collect::<Vec<_>>());
        empty_seen += empty as usize;
    }
    // both outcomes occur, so the comparison is not vacuous
    assert!(empty_seen > 5 && empty_seen < 95, "{empty_seen}");
}

#[test]
fn products_lie_in_the_ideal_and_bases_self_check() {
    let cfg = GroebnerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let r = ring(3, 1009);
        let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut rng, &r, 3)).collect();
        let gb = buchberger(&r, &gens, &cfg).unwrap();
        assert!(gb.self_check());
        let combo = gens.iter().fold(Polynomial::zero(&r), |acc, g| &acc + &(g * &random_poly(&mut rng, &r, 2)));
        assert!(ideal_contains(&gb, &combo).unwrap());
        for g in &gens {
            assert!(gb.reduce(g).unwrap().is_zero());
        }
    }
}

#[test]
fn random_hypersurface_has_codimension_one() {
    let cfg = GroebnerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for n in 2..=5 {
        let r = ring(n, 1009);
        for _ in 0..5 {
            let mut f = random_poly(&mut rng, &r, 4);
            if f.is_constant() {
                f = &f + &Polynomial::var(&r, 0);
            }
            let gb = buchberger(&r, &[f], &cfg).unwrap();
            assert_eq!(gb.krull_dimension(), n as i64 - 1);
        }
        let full = (0..n).map(|i| Polynomial::var(&r, i)).collect::<Vec<_>>();
        assert_eq!(buchberger(&r, &full, &cfg).unwrap().krull_dimension(), 0);
        let unit = [Polynomial::one(&r)];
        assert_eq!(buchberger(&r, &unit, &cfg).unwrap().krull_dimension(), -1);
    }
}

#[test]
fn budget_is_reported() {
    let r = ring(3, 1009);
    let f = |s: &str| qfano_core::poly::parse_poly(s, &r).unwrap();
    let gens = [f("v0^3*v1 - v2^4 + v0*v1*v2^2"), f("v1^3*v2 - v0^4 + v0^2*v1*v2"), f("v2^3*v0 - v1^4 + v0*v1^2*v2")];
    match buchberger(&r, &gens, &GroebnerConfig::with_budget(2)) {
        Err(GroebnerError::BudgetExceeded { .. }) => {}
        other => panic!("expected budget error, got {other:?}"),
    }
}
