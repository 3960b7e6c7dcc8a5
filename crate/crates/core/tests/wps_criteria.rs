use std::sync::Arc;

use num_rational::BigRational;
use qfano_core::family::{base_ring, build_x1, build_xprime, stratum_verdict, CheckOptions, Triplet};
use qfano_core::poly::{Field, FieldElem, Polynomial, WeightedRing};
use qfano_core::wps::{anticanonical_degree, anticanonical_degree_of, general_member_report, is_well_formed, monomials_of_degree, MonomialSet, StratumIndex, VarietySpec};
use qfano_core::Verdict;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn full_form(d: u32) -> Polynomial {
    let r = base_ring(Field::Rational);
    let one = Field::Rational.one();
    Polynomial::from_terms(&r, monomials_of_degree(&r, &[0, 1, 2], d).iter().map(|m| (m.clone(), one.clone())))
}

/// Triplet whose forms contain every monomial, so supports are the full
/// Newton sets of the family.
fn full_triplet() -> Triplet {
    Triplet::new(full_form(6), full_form(6), full_form(8)).unwrap()
}

fn labels(ring: &WeightedRing, strata: &[&StratumIndex]) -> Vec<String> {
    strata.iter().map(|s| s.label(ring)).collect()
}

#[test]
fn degrees_and_index() {
    let (a3, idx) = anticanonical_degree_of(&[1, 1, 2, 2, 3], &[8]).unwrap();
    assert_eq!((a3, idx), (BigRational::new(2.into(), 3.into()), 1));
    let (a3, idx) = anticanonical_degree_of(&[1, 1, 2, 3, 4, 4], &[6, 8]).unwrap();
    assert_eq!((a3, idx), (BigRational::new(1.into(), 2.into()), 1));
    let t = full_triplet();
    assert_eq!(anticanonical_degree(&build_xprime(&t)).unwrap().0, BigRational::new(2.into(), 3.into()));
    assert!(is_well_formed(&[1, 1, 2, 2, 3]) && is_well_formed(&[1, 1, 2, 3, 4, 4]));
    assert!(!is_well_formed(&[2, 2, 2]));
}

#[test]
fn newton_set_of_xprime_fails_only_at_y_points() {
    let xp = build_xprime(&full_triplet());
    let n = MonomialSet::support_of(&xp.equations()[0]).unwrap();
    let rep = general_member_report(&[n]).unwrap();
    assert_eq!(rep.strata.len(), 31);
    assert_eq!(rep.pass_count(), 29);
    assert_eq!(labels(xp.ring(), &rep.failing()), ["{y0}", "{y1}"]);
    assert!(!rep.linear_cone);
}

#[test]
fn newton_sets_of_xi_fail_only_at_y_point() {
    let x1 = build_x1(&full_triplet());
    let sets: Vec<MonomialSet> = x1.equations().iter().map(|e| MonomialSet::support_of(e).unwrap()).collect();
    assert_eq!(sets.iter().map(MonomialSet::degree).collect::<Vec<_>>(), [6, 8]);
    let rep = general_member_report(&sets).unwrap();
    assert_eq!(rep.strata.len(), 63);
    assert_eq!(labels(x1.ring(), &rep.failing()), ["{y}"]);
}

fn random_member(rng: &mut ChaCha8Rng, r: &Arc<WeightedRing>, d: u32, keep: f64) -> Polynomial {
    let p = r.field().characteristic();
    let all: Vec<usize> = (0..r.arity()).collect();
    let mut terms = Vec::new();
    for m in monomials_of_degree(r, &all, d).iter() {
        if rng.gen_bool(keep) {
            terms.push((m.clone(), FieldElem::Residue(rng.gen_range(1..p))));
        }
    }
    Polynomial::from_terms(r, terms)
}

/// On random supports, a stratum certified by the monomial criterion is
/// smooth for a member with random coefficients, and a failing stratum is
/// singular for it.
#[test]
fn criterion_matches_random_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let opts = CheckOptions::exact();
    let shapes: [(&[u32], &[u32]); 3] = [(&[1, 1, 2, 2, 3], &[8]), (&[1, 1, 1, 2, 3], &[6]), (&[1, 1, 2, 3, 4, 4], &[6, 8])];
    let (mut passes, mut fails) = (0, 0);
    for k in 0..30 {
        let (w, d) = shapes[k % 3];
        let names: Vec<String> = (0..w.len()).map(|i| format!("u{i}")).collect();
        let r = WeightedRing::new(names, w, Field::prime(10007).unwrap()).unwrap();
        let eqs: Vec<Polynomial> = d.iter().map(|&deg| random_member(&mut rng, &r, deg, 0.55)).collect();
        if eqs.iter().any(Polynomial::is_zero) {
            continue;
        }
        let v = VarietySpec::new(&r, eqs).unwrap();
        let sets: Vec<MonomialSet> = v.equations().iter().map(|e| MonomialSet::support_of(e).unwrap()).collect();
        let rep = general_member_report(&sets).unwrap();
        if rep.linear_cone {
            continue;
        }
        for (s, crit) in &rep.strata {
            let actual = stratum_verdict(&v, s, &opts).unwrap();
            if crit.passes() {
                assert_eq!(actual, Verdict::Verified, "instance {k} stratum {}", s.label(&r));
                passes += 1;
            } else if actual == Verdict::Failed {
                fails += 1;
            }
        }
    }
    assert!(passes > 200, "{passes}");
    assert!(fails > 0);
}
