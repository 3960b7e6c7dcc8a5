//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use qfano_core::exclusion::{default_gamma_self_int, exclusion_suite, gamma_chain_value, ExclusionReport, PointLocus};
use qfano_core::family::{
    base_ring, build_x1, build_xprime, default_primes, sample_triplet, singularity_inventory, CheckMode, CheckOptions, SampleMode, Triplet,
};
use qfano_core::groebner::{is_empty_affine, GroebnerConfig};
use qfano_core::links::{involution_identity_check, link_suite_maps, pullback_vanishes, verify_link_suite, LinkVerdict};
use qfano_core::poly::{Field, FieldElem, Monomial, Polynomial, WeightedRing};
use qfano_core::wps::{anticanonical_degree_of, general_member_report, monomials_of_degree, MonomialSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn checked_opts() -> CheckOptions {
    CheckOptions { mode: CheckMode::Primes(default_primes()), groebner: GroebnerConfig::default().checked() }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let a = anticanonical_degree_of(&[1, 1, 2, 2, 3], &[8]).map_err(|e| e.to_string())?;
    let first = start.elapsed();
    let start = Instant::now();
    let b = anticanonical_degree_of(&[1, 1, 2, 3, 4, 4], &[6, 8]).map_err(|e| e.to_string())?;
    let second = start.elapsed();
    ensure(a == (rat(2, 3), 1), format!("X' gave {a:?}"))?;
    ensure(b == (rat(1, 2), 1), format!("X1 gave {b:?}"))?;
    ensure(first < Duration::from_millis(1) && second < Duration::from_millis(1), format!("took {first:?}, {second:?}"))?;
    Ok(format!("A^3 = {} and {}, index 1, {:?} / {:?}", a.0, b.0, first, second))
}

fn full_triplet() -> Triplet {
    let r = base_ring(Field::Rational);
    let form = |d| Polynomial::from_terms(&r, monomials_of_degree(&r, &[0, 1, 2], d).iter().map(|m| (m.clone(), Field::Rational.one())));
    Triplet::new(form(6), form(6), form(8)).unwrap()
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let t = full_triplet();
    let xp = build_xprime(&t);
    let rep = general_member_report(&[MonomialSet::support_of(&xp.equations()[0]).map_err(|e| e.to_string())?]).map_err(|e| e.to_string())?;
    let fail_xp: Vec<String> = rep.failing().iter().map(|s| s.label(xp.ring())).collect();
    ensure(rep.strata.len() == 31 && rep.pass_count() == 29, format!("X': {} strata, {} pass", rep.strata.len(), rep.pass_count()))?;
    ensure(fail_xp == ["{y0}", "{y1}"], format!("X' failing {fail_xp:?}"))?;
    let x1 = build_x1(&t);
    let sets: Vec<MonomialSet> = x1.equations().iter().map(|e| MonomialSet::support_of(e).unwrap()).collect();
    let rep = general_member_report(&sets).map_err(|e| e.to_string())?;
    let fail_x1: Vec<String> = rep.failing().iter().map(|s| s.label(x1.ring())).collect();
    ensure(rep.strata.len() == 63 && fail_x1 == ["{y}"], format!("X1 failing {fail_x1:?}"))?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), format!("took {took:?}"))?;
    Ok(format!("X' 29/31 strata pass (fail {{y0}},{{y1}}); X1 62/63 (fail {{y}}); {took:?}"))
}

struct Sampled {
    triplets: Vec<Triplet>,
    successes: usize,
    slowest: Duration,
}

fn sample_seeds(seeds: impl Iterator<Item = u64>) -> Sampled {
    let opts = checked_opts();
    let (mut triplets, mut successes, mut slowest) = (Vec::new(), 0, Duration::ZERO);
    for seed in seeds {
        let start = Instant::now();
        let r = sample_triplet(seed, SampleMode::General, Field::Rational, &opts, 3);
        slowest = slowest.max(start.elapsed());
        if let Ok(s) = r {
            successes += 1;
            triplets.push(s.triplet);
        }
    }
    Sampled { triplets, successes, slowest }
}

fn criterion_4(s: &Sampled) -> Outcome {
    ensure(s.successes >= 9, format!("{}/10 seeds succeeded", s.successes))?;
    ensure(s.slowest < Duration::from_secs(120), format!("slowest seed {:?}", s.slowest))?;
    Ok(format!("{}/10 seeds within 3 draws over primes {:?}, self-checked bases, slowest {:?}", s.successes, default_primes(), s.slowest))
}

fn criterion_3(triplets: &[Triplet]) -> Outcome {
    ensure(triplets.len() >= 10, format!("only {} verified triplets", triplets.len()))?;
    let expected = [
        ("X'", "{y0}", "not-determined"),
        ("X'", "{y1}", "not-determined"),
        ("X'", "{z}", "1/3(1,1,2)"),
        ("X1", "{y}", "not-determined"),
        ("X1", "{s0}", "1/4(1,1,3)"),
        ("X1", "{s1}", "1/4(1,1,3)"),
        ("X2", "{y}", "not-determined"),
        ("X2", "{s0}", "1/4(1,1,3)"),
        ("X2", "{s1}", "1/4(1,1,3)"),
    ];
    for (k, t) in triplets.iter().enumerate() {
        let inv = singularity_inventory(t).map_err(|e| e.to_string())?;
        let got: Vec<(&str, &str, &str)> = inv.iter().map(|s| (s.variety.as_str(), s.point.as_str(), s.kind.as_str())).collect();
        ensure(got == expected, format!("triplet {k}: {got:?}"))?;
        for p in &inv {
            if p.kind == "not-determined" {
                ensure(p.sextic_certified == Some(true), format!("triplet {k} {} {}: sextic not certified", p.variety, p.point))?;
            } else {
                ensure(p.terminal == Some(true), format!("triplet {k} {} {}: not terminal", p.variety, p.point))?;
            }
        }
    }
    Ok(format!("{} triplets: 1/3(1,1,2) on X', 2 x 1/4(1,1,3) on X1 and X2, y-points cAx/2-certified", triplets.len()))
}

fn criterion_5(triplets: &[Triplet]) -> Outcome {
    let cfg = GroebnerConfig::default().checked();
    let mut maps = 0;
    let mut slowest = Duration::ZERO;
    for (k, t) in triplets.iter().enumerate() {
        let start = Instant::now();
        ensure(involution_identity_check(t).map_err(|e| e.to_string())?, format!("triplet {k}: Z' identity fails"))?;
        for p in default_primes() {
            let tp = t.change_field(Field::prime(p).unwrap()).map_err(|e| e.to_string())?;
            let rep = verify_link_suite(&tp, &cfg).map_err(|e| e.to_string())?;
            ensure(rep.verdict == LinkVerdict::Certified, format!("triplet {k} mod {p}: {:?}", rep.verdict))?;
            ensure(rep.maps.iter().all(|m| m.basis_checked), format!("triplet {k} mod {p}: unchecked basis"))?;
            maps += rep.maps.len();
        }
        slowest = slowest.max(start.elapsed());
    }
    ensure(slowest < Duration::from_secs(60), format!("slowest triplet {slowest:?}"))?;
    Ok(format!("{} triplets, {maps} map certificates, Z' identity holds, slowest {slowest:?}", triplets.len()))
}

fn criterion_6(triplets: &[Triplet]) -> Outcome {
    let cfg = GroebnerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0xbad);
    let p = default_primes()[0];
    let f = Field::prime(p).unwrap();
    let mut count = 0;
    for t in triplets.iter().take(3) {
        let tp = t.change_field(f).map_err(|e| e.to_string())?;
        for m in link_suite_maps(&tp).map_err(|e| e.to_string())? {
            let coord = rng.gen_range(0..m.numerators.len());
            let c = FieldElem::Residue(rng.gen_range(1..p));
            let bad = m.corrupted(coord, &c);
            let cert = pullback_vanishes(&bad, &cfg);
            ensure(cert.verdict == LinkVerdict::Failed, format!("{} corrupted at {coord}: {:?}", m.name, cert.verdict))?;
            ensure(!cert.residuals.is_empty(), format!("{}: no residual", m.name))?;
            count += 1;
        }
    }
    ensure(count >= 20, format!("only {count} corruptions"))?;
    Ok(format!("{count} corrupted maps rejected with nonzero residuals"))
}

fn criterion_7(triplets: &[Triplet]) -> Outcome {
    let cfg = GroebnerConfig::default().checked();
    let f = Field::prime(default_primes()[0]).unwrap();
    let mut summary = String::new();
    for (k, t) in triplets.iter().take(2).enumerate() {
        let tp = t.change_field(f).map_err(|e| e.to_string())?;
        let rep: ExclusionReport = exclusion_suite(&tp, 0x5eed + k as u64, 5, &cfg).map_err(|e| e.to_string())?;
        ensure(rep.passed, format!("triplet {k}: exclusion failed"))?;
        for case in &rep.cases {
            let want = match (case.variety.as_str(), case.locus) {
                ("X'", PointLocus::Torus) => (3, "6"),
                ("X'", PointLocus::XiZero) => (6, "6"),
                _ => (4, "8"),
            };
            ensure(case.checks.len() >= 5, format!("{} {:?}: {} points", case.variety, case.locus, case.checks.len()))?;
            for c in &case.checks {
                ensure(c.passes() && c.l == want.0 && c.bound == want.1, format!("{} {:?}: l = {} bound {} {:?}", case.variety, case.locus, c.l, c.bound, c.verdict))?;
                ensure(c.basis_checked, "isolation basis failed its self-check")?;
            }
        }
        summary = format!("{} cases x 5 points per triplet", rep.cases.len());
    }
    // (L^2) < -1/2 across (1, 4]
    let s = default_gamma_self_int();
    for k in 1..=300 {
        let g = BigRational::from_integer(1.into()) + rat(k, 100);
        let v = gamma_chain_value(&g, &s).map_err(|e| e.to_string())?;
        ensure(v < rat(-1, 2), format!("gamma {g}: L^2 = {v}"))?;
    }
    Ok(format!("l = 3 <= 6, 6 <= 6, 4 <= 8 on {summary}; L^2 < -1/2 on 300 gammas in (1,4]"))
}

fn replicate_json(args: &[&str]) -> Result<serde_json::Value, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("r.json");
    let mut all = vec!["replicate"];
    all.extend_from_slice(args);
    all.extend(["--json", out.to_str().unwrap()]);
    let o = Command::new(env!("CARGO_BIN_EXE_qfano")).args(&all).output().map_err(|e| e.to_string())?;
    ensure(o.status.code() == Some(0), format!("{args:?} exited {:?}", o.status.code()))?;
    serde_json::from_slice(&std::fs::read(&out).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn criterion_8() -> Outcome {
    let mut witnesses = Vec::new();
    for seed in [7, 8] {
        let doc = replicate_json(&["--sample", &seed.to_string(), "--symmetric"])?;
        let ev = doc["summary"]["structure_count_evidence"].as_str().unwrap_or_default().to_string();
        ensure(ev == "2 (witness verified)", format!("symmetric seed {seed}: {ev}"))?;
        let w = &doc["sections"]["symmetry"]["detail"]["witness"];
        ensure(!w.is_null(), format!("symmetric seed {seed}: no witness in report"))?;
        witnesses.push(format!("tau={} alpha={} beta={} gamma={}", w["tau"], w["alpha"], w["beta"], w["gamma"]));
    }
    for seed in [42, 43] {
        let doc = replicate_json(&["--sample", &seed.to_string()])?;
        let ev = doc["summary"]["structure_count_evidence"].as_str().unwrap_or_default().to_string();
        ensure(ev == "3 (no symmetry witness found)", format!("generic seed {seed}: {ev}"))?;
    }
    Ok(format!("symmetric draws give 2 ({}); generic draws give 3", witnesses.join("; ")))
}

fn small_ring(n: usize, p: u64) -> Arc<WeightedRing> {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    WeightedRing::new(names, &vec![1; n], Field::prime(p).unwrap()).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, r: &Arc<WeightedRing>) -> Polynomial {
    let (n, p) = (r.arity(), r.field().characteristic());
    let terms: Vec<(Monomial, FieldElem)> = (0..rng.gen_range(1..=4))
        .map(|_| {
            let mut e = vec![0u32; n];
            for _ in 0..rng.gen_range(0..=3) {
                e[rng.gen_range(0..n)] += 1;
            }
            (Monomial::from_exponents(&e), FieldElem::Residue(rng.gen_range(1..p)))
        })
        .collect();
    Polynomial::from_terms(r, terms)
}

fn has_point(gens: &[Polynomial], n: usize, p: u64) -> bool {
    let f = Field::prime(p).unwrap();
    (0..p.pow(n as u32)).any(|mut code| {
        let pt: Vec<FieldElem> = (0..n)
            .map(|_| {
                let c = code % p;
                code /= p;
                f.from_i64(c as i64)
            })
            .collect();
        gens.iter().all(|g| f.is_zero(&g.evaluate(&pt)))
    })
}

fn criterion_9() -> Outcome {
    let cfg = GroebnerConfig::default().checked();
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut empty = 0;
    for k in 0..50 {
        let p = if k % 2 == 0 { 5 } else { 7 };
        let n = rng.gen_range(1..=3);
        let r = small_ring(n, p);
        let mut gens: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_poly(&mut rng, &r)).collect();
        let brute = has_point(&gens, n, p);
        gens.extend((0..n).map(|i| &Polynomial::var(&r, i).pow(p as u32) - &Polynomial::var(&r, i)));
        let e = is_empty_affine(&gens, &cfg).map_err(|e| format!("system {k}: {e}"))?;
        ensure(e == !brute, format!("system {k} over F_{p}: Groebner says empty = {e}"))?;
        empty += e as usize;
    }
    ensure(empty > 0 && empty < 50, "degenerate sample")?;
    Ok(format!("50 systems over F5/F7 agree with enumeration ({empty} empty); bases of criteria 4-7 self-checked"))
}

#[test]
fn acceptance() {
    let sampled = sample_seeds(1..=10);
    let mut triplets = sampled.triplets.clone();
    // top up for the inventory if a seed ran out of draws
    if triplets.len() < 10 {
        triplets.extend(sample_seeds(11..=20).triplets);
        triplets.truncate(10);
    }
    let results: [(&str, Outcome); 9] = [
        ("degrees and Fano index", criterion_1()),
        ("general-member quasismoothness", criterion_2()),
        ("singularity inventory", criterion_3(&triplets)),
        ("sampling over three primes", criterion_4(&sampled)),
        ("Sarkisov link certification", criterion_5(&triplets)),
        ("corrupted maps are rejected", criterion_6(&triplets)),
        ("exclusion of centres", criterion_7(&triplets)),
        ("structure-count evidence", criterion_8()),
        ("Groebner oracle", criterion_9()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        match r {
            Ok(detail) => println!("criterion {} [{name}]: PASS: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL: {why}", i + 1);
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
