//! Acceptance suite. Each criterion prints one line with its verdict and
//! timing; the process exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use clickstate::ensemble::{EnsembleBrace, UnitaryBrace};
use clickstate::experiments::{convergence_study, two_slit_demo};
use clickstate::numeric::{
    algebra_verify, ansatz_search, ordinal_encode, DeltaForm, PairNumber, SignAssignment,
};
use clickstate::rational::{ratio, Rational};
use clickstate::statespace::{
    measure, verify_lvs_axioms, verify_lvs_axioms_with, BasisChange, InstrumentRep, StateVector,
    VectorOps,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn rand_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    ratio(
        rng.random_range(-bound..=bound),
        rng.random_range(1..=bound),
    )
}

fn rand_pair(rng: &mut ChaCha8Rng) -> PairNumber {
    PairNumber::new(rand_rational(rng, 1000), rand_rational(rng, 1000))
}

fn rand_nonzero_pair(rng: &mut ChaCha8Rng) -> PairNumber {
    loop {
        let p = rand_pair(rng);
        if !p.is_zero() {
            return p;
        }
    }
}

fn algebra_suite() -> Outcome {
    let r = algebra_verify(10_000, 2024);
    let failed: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.property.as_str())
        .collect();
    outcome(
        r.verdict.passed() && r.checks.iter().all(|c| c.samples == 10_000),
        format!(
            "{} identities x {} samples, failed: {failed:?}",
            r.checks.len(),
            r.trials
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut mismatches = 0;
    for _ in 0..10_000 {
        let (a, b) = (rand_pair(&mut rng), rand_pair(&mut rng));
        // (a.n + i a.m)(b.n + i b.m) expanded term by term
        let re = &a.n * &b.n - &a.m * &b.m;
        let im = &a.n * &b.m + &a.m * &b.n;
        let z = Complex::new(a.n.clone(), a.m.clone()) * Complex::new(b.n.clone(), b.m.clone());
        let got = PairNumber::mul(&a, &b);
        if got != PairNumber::new(re, im) || got != PairNumber::new(z.re, z.im) {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("10000 products, {mismatches} mismatches"),
    )
}

fn ansatz_elimination() -> Outcome {
    let r = ansatz_search(1000, 7);
    let one_one = PairNumber::from_ints(1, 1);
    let difference: Vec<_> = r
        .candidates
        .iter()
        .filter(|c| c.delta_form == DeltaForm::DifferenceOfSquares)
        .collect();
    let all_fail_at_one_one = difference.iter().all(|c| {
        !c.invertible
            && c.witnesses
                .iter()
                .any(|w| w.property == "invertibility" && w.elements == [one_one.clone()])
    });
    let standard = r.pass_invertibility.contains(&SignAssignment::STANDARD);
    outcome(
        r.candidates.len() == 16 && standard && difference.len() == 8 && all_fail_at_one_one && r.isomorphism_classes == 1,
        format!(
            "16 candidates, survivors {:?}, {} difference-of-squares all fail at (1,1): {all_fail_at_one_one}, classes {}",
            r.pass_invertibility.iter().map(ToString::to_string).collect::<Vec<_>>(),
            difference.len(),
            r.isomorphism_classes
        ),
    )
}

/// Scalar action that drops the second coordinate of the scalar; breaks
/// `a·(b·v) = (a⊙b)·v` whenever both scalars have one.
struct RealPartOnly;

impl VectorOps for RealPartOnly {
    fn add(&self, a: &StateVector, b: &StateVector) -> StateVector {
        a.add(b).unwrap()
    }
    fn scale(&self, c: &PairNumber, v: &StateVector) -> StateVector {
        v.scale(&PairNumber::real(c.n.clone()))
    }
}

fn lvs_suite() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for d in [2, 3, 8] {
        let r = verify_lvs_axioms(d, 11, 10_000).expect("valid dimension");
        ok &= r.verdict.passed();
        details.push(format!(
            "D={d}: {}",
            if r.verdict.passed() { "pass" } else { "fail" }
        ));
    }
    let mutated = verify_lvs_axioms_with(&RealPartOnly, 2, 11, 1000).expect("valid dimension");
    let detected = !mutated.verdict.passed();
    ok &= detected;
    details.push(format!("mutation detected: {detected}"));
    outcome(ok, format!("10000 samples each, {}", details.join(", ")))
}

fn ray_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut failures = 0;
    for _ in 0..1000 {
        let d = rng.random_range(2..=5);
        let inst = InstrumentRep::with_default_labels("A", d).unwrap();
        let coords: Vec<PairNumber> = (0..d).map(|_| rand_pair(&mut rng)).collect();
        let v = StateVector::new("A", coords).unwrap();
        if v.is_zero() {
            continue;
        }
        let c = rand_nonzero_pair(&mut rng);
        let base = measure(&v, &inst).unwrap();
        let same = measure(&v.scale(&c), &inst).unwrap() == base
            && measure(&v.conj(), &inst).unwrap() == base
            && measure(&v.swap(), &inst).unwrap() == base;
        failures += usize::from(!same);
    }
    outcome(
        failures == 0,
        format!("1000 (v, c) pairs with conj and swap, {failures} failures"),
    )
}

fn scale_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let mut failures = 0;
    for _ in 0..1000 {
        // counts are multiples of q so that k = p/q is realizable
        let (p, q) = (rng.random_range(1..=30u64), rng.random_range(1..=6u64));
        let outcomes = rng.random_range(1..=5);
        let entries: Vec<UnitaryBrace> = (0..outcomes)
            .map(|i| {
                let psi = q * rng.random_range(0..50u64);
                let phi = q * rng.random_range(1..50u64);
                UnitaryBrace::new(format!("s{i}").as_str(), psi, phi)
            })
            .collect();
        let brace = EnsembleBrace::new(entries).unwrap();
        let k = ratio(p as i64, q as i64);
        let scaled = brace.replicate(&k).unwrap();
        let ok = scaled.extract_stats().unwrap() == brace.extract_stats().unwrap()
            && scaled.sigma() * BigUint::from(q) == brace.sigma() * BigUint::from(p);
        failures += usize::from(!ok);
    }
    outcome(
        failures == 0,
        format!("1000 (brace, k) pairs, {failures} failures"),
    )
}

fn interference_contrast() -> Outcome {
    let p = |n, m| PairNumber::from_ints(n, m);
    let u = BasisChange::new(
        "A",
        "B",
        vec![vec![p(1, 0), p(1, 0)], vec![p(1, 0), p(-1, 0)]],
    )
    .unwrap();
    let r = two_slit_demo(&u, &[p(1, 0), p(1, 0)]).unwrap();
    let half = serde_json::json!(["1/2", "1/2"]);
    let ok = r.verdict.passed()
        && r.observation("superposed_nu") == Some(&serde_json::json!(["1", "0"]))
        && r.observation("component_1_nu") == Some(&half)
        && r.observation("component_2_nu") == Some(&half)
        && r.observation("w_grid_points") == Some(&serde_json::json!(129))
        && r.observation("w_grid_contains_zero") == Some(&serde_json::json!(false));
    outcome(
        ok,
        "superposed (1,0) from components (1/2,1/2); 129 grid mixtures, none with a zero",
    )
}

fn statistical_round_trip() -> Outcome {
    let nu = [ratio(3, 10), ratio(7, 10)];
    let passing = (0..100u64)
        .into_par_iter()
        .filter(|&seed| {
            convergence_study(&nu, &[1_000_000], seed)
                .expect("valid study")
                .verdict
                .passed()
        })
        .count();
    outcome(
        passing >= 99,
        format!("{passing}/100 seeds within 3*sqrt(0.21/1e6) at sigma=1e6"),
    )
}

fn ordinals() -> Outcome {
    let mut ok = true;
    for n in 0..=11 {
        let o = ordinal_encode(n).unwrap();
        let next = ordinal_encode(n + 1).unwrap();
        ok &= o.cardinality() == n && o.is_ordinal() && next == o.successor() && next.contains(&o);
        for k in 0..n {
            ok &= o.contains(&ordinal_encode(k).unwrap());
        }
    }
    ok &= ordinal_encode(0).unwrap().to_string() == "∅"
        && ordinal_encode(2).unwrap().to_string() == "{∅,{∅}}";
    outcome(ok, "n = 0..=11: cardinality, successor, membership")
}

fn cli_determinism() -> Outcome {
    let invocations: [&[&str]; 6] = [
        &["ansatz-search", "--trials", "1000", "--seed", "7"],
        &["algebra-verify", "--trials", "500", "--seed", "3"],
        &[
            "simulate",
            "--nu",
            "3/10,7/10",
            "--sigma",
            "2000",
            "--seed",
            "5",
        ],
        &[
            "converge",
            "--nu",
            "1/4,3/4",
            "--schedule",
            "100,1000",
            "--seed",
            "5",
        ],
        &["interfere", "--seed", "5"],
        &[
            "lvs-verify",
            "--dimension",
            "3",
            "--trials",
            "200",
            "--seed",
            "5",
        ],
    ];
    let run = |args: &[&str]| {
        let out = Command::new(env!("CARGO_BIN_EXE_clickstate"))
            .args(args)
            .output()
            .expect("binary runs");
        (out.status.code(), out.stdout)
    };
    let mut differing = Vec::new();
    for args in invocations {
        let (a, b) = (run(args), run(args));
        if a != b || a.0 != Some(0) || a.1.is_empty() {
            differing.push(args[0]);
        }
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} subcommands run twice, not identical: {differing:?}",
            invocations.len()
        ),
    )
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "algebra suite",
            Some(Duration::from_secs(10)),
            algebra_suite,
        ),
        ("oracle equivalence", None, oracle_equivalence),
        (
            "ansatz elimination",
            Some(Duration::from_secs(5)),
            ansatz_elimination,
        ),
        ("lvs axiom suite", None, lvs_suite),
        ("ray and involution invariance", None, ray_invariance),
        ("sigma scale invariance", None, scale_invariance),
        (
            "interference contrast",
            Some(Duration::from_secs(1)),
            interference_contrast,
        ),
        (
            "statistical round trip",
            Some(Duration::from_secs(30)),
            statistical_round_trip,
        ),
        ("ordinals", None, ordinals),
        ("cli determinism", None, cli_determinism),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let passed = result.passed && in_time;
        failed += usize::from(!passed);
        let budget = limit.map_or(String::new(), |l| {
            format!(" (limit {:.0} s)", l.as_secs_f64())
        });
        println!(
            "{} {name}: {} [{:.2} s{budget}]",
            if passed { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
