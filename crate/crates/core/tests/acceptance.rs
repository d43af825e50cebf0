//! Acceptance checks. Each test prints one `PASS`/`FAIL` line to stdout
//! (uncaptured) and then asserts.
//!
//! Run with `cargo test -p nri --test acceptance`.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nri::experiments::{run_recovery, snr_db, RecoveryConfig, RecoveryMode, RecoveryReport};
use nri::tensor::{self, DimensionSpec, ElementKind, NriSpec, NriTensor, StateView, Value};
use nri::ternary::{
    count_at_dot, count_at_dot_hyp, monte_carlo_dot, prob_dot_census, prob_dot_exact,
    prob_dot_series,
};
use nri::textlang::{
    evaluate, planted_corpus, shuffled, CoocConfig, EncodePolicy, Method, PlantedConfig, Transform,
};

fn report(name: &str, pass: bool, detail: &str) {
    let line = format!("{} {name}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let out = std::io::stdout();
    let mut lock = out.lock();
    lock.write_all(line.as_bytes()).unwrap();
    lock.flush().unwrap();
    assert!(pass, "{name}: {detail}");
}

// Printed probabilities P(dot = +d) for d = 0, 1, ... by (n, 2k). Entries the
// table marks as outside the expansion's validity are left out.
type Row = (u64, u64, &'static [(u64, &'static str)]);

const DOT_TABLE: &[Row] = &[
    (1000, 4, &[(0, "9.84e-1"), (1, "7.93e-3"), (2, "1.99e-5")]),
    (
        1000,
        8,
        &[
            (0, "9.38e-1"),
            (1, "3.05e-2"),
            (2, "3.86e-4"),
            (3, "2.44e-6"),
            (4, "8.22e-9"),
        ],
    ),
    (
        1000,
        12,
        &[
            (0, "8.65e-1"),
            (1, "6.37e-2"),
            (2, "1.99e-3"),
            (3, "3.44e-5"),
            (4, "3.64e-7"),
        ],
    ),
    (
        1000,
        16,
        &[
            (1, "1.02e-1"),
            (2, "5.94e-3"),
            (3, "2.01e-4"),
            (4, "4.44e-6"),
        ],
    ),
    (
        1000,
        20,
        &[
            (1, "1.39e-1"),
            (2, "1.31e-2"),
            (3, "7.36e-4"),
            (4, "2.78e-5"),
        ],
    ),
    (10000, 4, &[(0, "9.98e-1"), (1, "7.99e-4"), (2, "2.00e-7")]),
    (
        10000,
        8,
        &[
            (0, "9.94e-1"),
            (1, "3.20e-3"),
            (2, "3.99e-6"),
            (3, "2.49e-9"),
            (4, "8.3e-13"),
        ],
    ),
    (
        10000,
        12,
        &[
            (0, "9.86e-1"),
            (1, "7.10e-3"),
            (2, "2.17e-5"),
            (3, "3.69e-8"),
            (4, "3.8e-11"),
        ],
    ),
    (
        10000,
        16,
        &[
            (0, "9.75e-1"),
            (1, "1.25e-2"),
            (2, "7.09e-5"),
            (3, "2.34e-7"),
            (4, "5.0e-10"),
        ],
    ),
    (
        10000,
        20,
        &[
            (0, "9.61e-1"),
            (1, "1.93e-2"),
            (2, "1.75e-4"),
            (3, "9.55e-7"),
            (4, "3.49e-9"),
        ],
    ),
];

/// `value` rounded to as many significant figures as `printed` shows.
fn round_like(value: f64, printed: &str) -> String {
    let mantissa = printed.split('e').next().unwrap();
    let digits = mantissa.chars().filter(char::is_ascii_digit).count();
    format!("{:.*e}", digits - 1, value)
}

#[test]
fn analytic_dot_table() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut total = 0;
    for &(n, chi, entries) in DOT_TABLE {
        for &(d, printed) in entries {
            total += 1;
            let got = prob_dot_series(n, chi / 2, d).unwrap().value;
            if round_like(got, printed) != printed {
                mismatches.push(format!(
                    "n={n} 2k={chi} d={d}: printed {printed}, series {got:.4e}"
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = mismatches.is_empty() && elapsed < Duration::from_secs(1);
    report(
        "analytic dot-product table",
        pass,
        &format!(
            "{}/{total} entries match at printed precision in {elapsed:.2?}; {}",
            total - mismatches.len(),
            if mismatches.is_empty() {
                "no mismatches".into()
            } else {
                mismatches.join("; ")
            }
        ),
    );
}

#[test]
fn monte_carlo_matches_analytic() {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let start = Instant::now();
    let dist = pool
        .install(|| monte_carlo_dot(1000, 4, 10_000_000, 2024))
        .unwrap();
    let elapsed = start.elapsed();
    let mut worst = 0.0f64;
    let mut bins = Vec::new();
    for d in 0..=3u64 {
        let p = prob_dot_series(1000, 4, d).unwrap().value;
        let z = (dist.prob(d as usize) - p) / dist.stderr_at(d as usize, p);
        worst = worst.max(z.abs());
        bins.push(format!("d={d} z={z:+.2}"));
    }
    // The census counts cancelling overlaps that the analytic count omits.
    let census = prob_dot_census(1000, 4, 0).unwrap();
    let census_z = (dist.prob(0) - census) / dist.stderr_at(0, census);
    let pass = worst <= 3.0 && elapsed < Duration::from_secs(120);
    report(
        "Monte Carlo vs analytic, n=1000 2k=8, 1e7 samples",
        pass,
        &format!(
            "{} (limit 3) in {elapsed:.2?}; d=0 sampled {:.6}, analytic {:.6}, exact census {census:.6} (z={census_z:+.2})",
            bins.join(", "),
            dist.prob(0),
            prob_dot_series(1000, 4, 0).unwrap().value,
        ),
    );
}

#[test]
fn two_count_forms_agree() {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in [50u64, 100, 500] {
        for k in 1..=8u64 {
            for d in 0..=k {
                checked += 1;
                if count_at_dot(n, k, d).unwrap() != count_at_dot_hyp(n, k, d).unwrap() {
                    bad.push(format!("n={n} k={k} d={d}"));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "sum and hypergeometric counts agree exactly",
        bad.is_empty() && elapsed < Duration::from_secs(1),
        &format!(
            "{} of {checked} grid points equal in {elapsed:.2?} {}",
            checked - bad.len(),
            bad.join(" ")
        ),
    );
}

/// Every dense vector in `{-1, 0, 1}^n` with one `+1` and one `-1`.
fn single_pair_vectors(n: usize) -> Vec<Vec<i8>> {
    let mut out = Vec::new();
    let mut digits = vec![0u8; n];
    for _ in 0..3usize.pow(n as u32) {
        let v: Vec<i8> = digits.iter().map(|&t| t as i8 - 1).collect();
        if v.iter().filter(|&&x| x == 1).count() == 1 && v.iter().filter(|&&x| x == -1).count() == 1
        {
            out.push(v);
        }
        for t in digits.iter_mut() {
            *t += 1;
            if *t < 3 {
                break;
            }
            *t = 0;
        }
    }
    out
}

#[test]
fn brute_force_census() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut lines = Vec::new();
    for n in 4..=10usize {
        let space = single_pair_vectors(n);
        let reference = &space[0];
        for d in 0..=1i64 {
            let hits = space
                .iter()
                .filter(|v| {
                    v.iter()
                        .zip(reference)
                        .map(|(a, b)| (*a as i64) * (*b as i64))
                        .sum::<i64>()
                        == d
                })
                .count();
            let brute = hits as f64 / space.len() as f64;
            let analytic = prob_dot_exact(n as u64, 1, d as u64).unwrap();
            let rel = (analytic - brute).abs() / brute;
            worst = worst.max(rel);
            lines.push(format!("n={n} d={d} {brute:.4}/{analytic:.4}"));
        }
    }
    let elapsed = start.elapsed();
    report(
        "brute-force census, k=1, n<=10",
        worst <= 0.02 && elapsed < Duration::from_secs(10),
        &format!("worst relative error {worst:.2e} (limit 2e-2) in {elapsed:.2?}"),
    );
}

#[test]
fn snr_formula() {
    let cases = [
        (0.005, 100.0, 1.55),
        (0.005, 1000.0, 21.55),
        (0.01, 100.0, 4.56),
    ];
    let got: Vec<f64> = cases
        .iter()
        .map(|&(r, w, _)| snr_db(r, w, 10).unwrap())
        .collect();
    let pass = cases.iter().zip(&got).all(|(c, g)| (g - c.2).abs() <= 0.01);
    report(
        "SNR formula",
        pass,
        &format!(
            "{:.3} / {:.3} / {:.3} dB (expected 1.55 / 21.55 / 4.56 +- 0.01)",
            got[0], got[1], got[2]
        ),
    );
}

fn recovery(
    n_big: usize,
    n_small: usize,
    mode: RecoveryMode,
    rho: f64,
    w: i64,
    chi: usize,
) -> RecoveryReport {
    recovery_over(n_big, n_small, mode, rho, w, chi, n_big.min(200))
}

fn recovery_over(
    n_big: usize,
    n_small: usize,
    mode: RecoveryMode,
    rho: f64,
    w: i64,
    chi: usize,
    classes: usize,
) -> RecoveryReport {
    let mut cfg = RecoveryConfig::new(n_big, n_small, mode, rho);
    cfg.feature_weight = w;
    cfg.chi = chi;
    cfg.classes_sampled = classes;
    cfg.seed = 11;
    run_recovery(&cfg).unwrap()
}

#[test]
fn recovery_fifty_features() {
    // Sizes are compared at fixed density; the smaller matrix is scored as a
    // fraction scaled to 50 features.
    let mut ok = true;
    let mut parts = Vec::new();
    for (n_big, n_small, limit) in [(10_000, 5_000, 600.0), (4_000, 2_000, 60.0)] {
        let start = Instant::now();
        let strong = recovery(n_big, n_small, RecoveryMode::TwoWay, 0.005, 1000, 8);
        let weak = recovery(n_big, n_small, RecoveryMode::TwoWay, 0.005, 100, 8);
        let secs = start.elapsed().as_secs_f64();
        let (s50, w50) = (
            50.0 * strong.mean_correct_fraction,
            50.0 * weak.mean_correct_fraction,
        );
        ok &= (44.0..=48.0).contains(&s50) && (35.0..=43.0).contains(&w50) && secs <= limit;
        parts.push(format!(
            "N={n_big}: w=1000 {s50:.1} +- {:.1}, w=100 {w50:.1} +- {:.1} per 50 over {} classes in {secs:.1}s",
            50.0 * strong.std_correct_fraction,
            50.0 * weak.std_correct_fraction,
            strong.per_class_correct.len()
        ));
    }
    report(
        "two-way recovery of 50 planted features",
        ok,
        &parts.join("; "),
    );
}

#[test]
fn recovery_ten_features() {
    let r = recovery(10_000, 5_000, RecoveryMode::TwoWay, 0.001, 100, 8);
    let tail = r.profile_range_mean(11, 20);
    let far = r.profile_range_mean(20, 60);
    let pass = (8.0..=10.0).contains(&r.mean_correct) && tail < 50.0;
    report(
        "two-way recovery of 10 planted features",
        pass,
        &format!(
            "{:.2} +- {:.2} of 10; mean decoded value at ranks 11-20 is {tail:.1} (limit 50), \
             ranks 1-10 {:.1}, ranks 20-60 {far:.1}",
            r.mean_correct,
            r.std_correct,
            r.profile_range_mean(1, 10)
        ),
    );
}

#[test]
fn chi_sweep() {
    // Every class is scored: the plateau tolerance is tighter than the
    // sampling error of 200 classes.
    let means: Vec<f64> = [2, 4, 8]
        .iter()
        .map(|&chi| {
            recovery_over(5000, 1250, RecoveryMode::OneWay, 0.02, 100, chi, 5000)
                .mean_correct_fraction
        })
        .collect();
    let gain = means[1] - means[0];
    let plateau = (means[2] - means[1]).abs();
    report(
        "chi sweep, one-way 4:1",
        gain >= 0.05 && plateau <= 0.03,
        &format!(
            "chi 2/4/8 -> {:.3}/{:.3}/{:.3}; gain 2->4 {gain:.3} (>= 0.05), change 4->8 {plateau:.3} (<= 0.03)",
            means[0], means[1], means[2]
        ),
    );
}

#[test]
fn one_way_beats_two_way() {
    let mut ok = true;
    let mut parts = Vec::new();
    for rho in [0.005, 0.01, 0.04] {
        let one = recovery(5000, 1250, RecoveryMode::OneWay, rho, 100, 8);
        let two = recovery(5000, 2500, RecoveryMode::TwoWay, rho, 100, 8);
        let se = (one.stderr_fraction().powi(2) + two.stderr_fraction().powi(2)).sqrt();
        ok &= one.mean_correct_fraction >= two.mean_correct_fraction - 2.0 * se;
        parts.push(format!(
            "rho={rho}: {:.3} vs {:.3} (se {se:.3})",
            one.mean_correct_fraction, two.mean_correct_fraction
        ));
    }
    report(
        "one-way at least as good as two-way, 4:1",
        ok,
        &parts.join("; "),
    );
}

// Tensor properties over random small tensors of rank 1 to 3.

struct Case {
    spec: NriSpec,
    updates: Vec<(Vec<usize>, Value)>,
    rng: ChaCha8Rng,
}

fn random_spec(rng: &mut ChaCha8Rng, rank: usize, kind: ElementKind, need_random: bool) -> NriSpec {
    let forced = rng.gen_range(0..rank);
    let dims = (0..rank)
        .map(|d| {
            let big = rng.gen_range(2..=12);
            if rng.gen_bool(0.3) && !(need_random && d == forced) {
                DimensionSpec::direct(big)
            } else {
                let small = rng.gen_range(2..=big);
                let chi = 2 * rng.gen_range(1..=small / 2);
                DimensionSpec::random(big, small, chi)
            }
        })
        .collect();
    NriSpec::new(dims, rng.gen()).with_kind(kind)
}

/// Integer weights, or multiples of 1/8 for floats so sums stay exact.
fn random_weight(rng: &mut ChaCha8Rng, kind: ElementKind) -> Value {
    let mut k: i64 = rng.gen_range(-1000..=1000);
    if k == 0 {
        k = 1;
    }
    match kind {
        ElementKind::Int64 => Value::Int(k),
        ElementKind::Float64 => Value::Float(k as f64 / 8.0),
    }
}

fn random_component(rng: &mut ChaCha8Rng, spec: &NriSpec) -> Vec<usize> {
    spec.dims
        .iter()
        .map(|d| rng.gen_range(0..d.component_range))
        .collect()
}

fn make_case(seed: u64, rank: usize, kind: ElementKind, need_random: bool) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = random_spec(&mut rng, rank, kind, need_random);
    let count = rng.gen_range(1..=8);
    let updates = (0..count)
        .map(|_| {
            (
                random_component(&mut rng, &spec),
                random_weight(&mut rng, kind),
            )
        })
        .collect();
    Case { spec, updates, rng }
}

fn build(spec: &NriSpec, updates: &[(Vec<usize>, Value)]) -> NriTensor {
    let mut t = NriTensor::new(spec.clone()).unwrap();
    for (c, w) in updates {
        t.encode_add(c, *w).unwrap();
    }
    t
}

fn state_bits(t: &NriTensor) -> Vec<u64> {
    match t.state() {
        StateView::Int(s) => s.iter().map(|&v| v as u64).collect(),
        StateView::Float(s) => s.iter().map(|v| v.to_bits()).collect(),
    }
}

fn state_f64(t: &NriTensor) -> Vec<f64> {
    match t.state() {
        StateView::Int(s) => s.iter().map(|&v| v as f64).collect(),
        StateView::Float(s) => s.to_vec(),
    }
}

fn neg(w: Value) -> Value {
    match w {
        Value::Int(i) => Value::Int(-i),
        Value::Float(f) => Value::Float(-f),
    }
}

fn value_f64(w: Value) -> f64 {
    match w {
        Value::Int(i) => i as f64,
        Value::Float(f) => f,
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

type Property = fn(Case) -> Result<(), TestCaseError>;

fn single_round_trip(mut c: Case) -> Result<(), TestCaseError> {
    let (at, w) = c.updates[0].clone();
    let t = build(&c.spec, &[(at.clone(), w)]);
    prop_assert_eq!(t.decode(&at).unwrap(), value_f64(w));
    let other = random_component(&mut c.rng, &c.spec);
    prop_assert!(t.decode(&other).unwrap().is_finite());
    Ok(())
}

fn linearity(mut c: Case) -> Result<(), TestCaseError> {
    let split = c.rng.gen_range(0..=c.updates.len());
    let (a, b) = c.updates.split_at(split);
    let (ta, tb, tab) = (
        build(&c.spec, a),
        build(&c.spec, b),
        build(&c.spec, &c.updates),
    );
    let sum: Vec<f64> = state_f64(&ta)
        .iter()
        .zip(state_f64(&tb))
        .map(|(x, y)| x + y)
        .collect();
    prop_assert_eq!(state_f64(&tab), sum);
    for _ in 0..4 {
        let at = random_component(&mut c.rng, &c.spec);
        let lhs = tab.decode(&at).unwrap();
        let rhs = ta.decode(&at).unwrap() + tb.decode(&at).unwrap();
        prop_assert!(close(lhs, rhs), "{} vs {}", lhs, rhs);
    }
    Ok(())
}

fn permutation(mut c: Case) -> Result<(), TestCaseError> {
    let mut shuffled = c.updates.clone();
    shuffled.shuffle(&mut c.rng);
    prop_assert!(build(&c.spec, &c.updates).bit_identical(&build(&c.spec, &shuffled)));
    Ok(())
}

fn subtraction(mut c: Case) -> Result<(), TestCaseError> {
    let base = build(&c.spec, &c.updates);
    let mut t = base.clone();
    let at = random_component(&mut c.rng, &c.spec);
    let w = random_weight(&mut c.rng, c.spec.element_kind);
    t.encode_add(&at, w).unwrap();
    t.encode_add(&at, neg(w)).unwrap();
    prop_assert_eq!(state_bits(&t), state_bits(&base));
    Ok(())
}

fn extension(mut c: Case) -> Result<(), TestCaseError> {
    let mut t = build(&c.spec, &c.updates);
    let random: Vec<usize> = (0..c.spec.rank())
        .filter(|&d| c.spec.dims[d].mode == nri::Mode::Random)
        .collect();
    let dim = random[c.rng.gen_range(0..random.len())];
    let new_range = c.spec.dims[dim].component_range + c.rng.gen_range(1..=20);
    let before: Vec<f64> = c
        .updates
        .iter()
        .map(|(at, _)| t.decode(at).unwrap())
        .collect();
    t.extend_dimension(dim, new_range).unwrap();
    for ((at, _), b) in c.updates.iter().zip(&before) {
        prop_assert_eq!(t.decode(at).unwrap().to_bits(), b.to_bits());
    }
    let mut big = c.spec.clone();
    big.dims[dim].component_range = new_range;
    prop_assert!(t.bit_identical(&build(&big, &c.updates)));
    Ok(())
}

fn save_load(c: Case) -> Result<(), TestCaseError> {
    let t = build(&c.spec, &c.updates);
    let mut bytes = Vec::new();
    tensor::save(&t, &mut bytes).unwrap();
    let back = tensor::load(bytes.as_slice()).unwrap();
    prop_assert!(back.bit_identical(&t));
    let mut again = Vec::new();
    tensor::save(&back, &mut again).unwrap();
    prop_assert_eq!(again, bytes);
    Ok(())
}

fn find_top_total(mut c: Case) -> Result<(), TestCaseError> {
    let t = build(&c.spec, &c.updates);
    let free = c.rng.gen_range(0..c.spec.rank());
    let mut fixed: Vec<Option<usize>> = random_component(&mut c.rng, &c.spec)
        .into_iter()
        .map(Some)
        .collect();
    fixed[free] = None;
    let range = c.spec.dims[free].component_range;
    let all = t.find_top(&fixed, range).unwrap();
    let mut seen = all.components();
    seen.sort_unstable();
    prop_assert_eq!(seen, (0..range).collect::<Vec<_>>());
    for pair in all.entries.windows(2) {
        prop_assert!(
            pair[0].value > pair[1].value
                || (pair[0].value == pair[1].value && pair[0].component < pair[1].component)
        );
    }
    for e in &all.entries {
        prop_assert!(close(e.value, t.decode(&all.indices(e)).unwrap()));
    }
    let len = c.rng.gen_range(1..=range);
    prop_assert_eq!(
        t.find_top(&fixed, len).unwrap().entries,
        all.entries[..len].to_vec()
    );
    Ok(())
}

#[test]
fn tensor_properties() {
    const CASES: u32 = 1000;
    let properties: [(&str, Property, bool); 7] = [
        ("single-component round trip", single_round_trip, false),
        ("linearity", linearity, false),
        ("encode order invariance", permutation, false),
        ("subtraction inverse", subtraction, false),
        ("extend then decode", extension, true),
        ("save/load identity", save_load, false),
        ("find_top totality", find_top_total, false),
    ];
    let mut failures = Vec::new();
    for (name, property, need_random) in properties {
        for rank in 1..=3 {
            for kind in [ElementKind::Int64, ElementKind::Float64] {
                let mut runner = TestRunner::new(Config {
                    cases: CASES,
                    failure_persistence: None,
                    ..Config::default()
                });
                let outcome = runner.run(&any::<u64>(), |seed| {
                    property(make_case(seed, rank, kind, need_random))
                });
                if let Err(e) = outcome {
                    failures.push(format!("{name} rank {rank} {kind:?}: {e}"));
                }
            }
        }
    }
    report(
        "tensor property suites",
        failures.is_empty(),
        &format!(
            "7 properties x ranks 1-3 x 2 kinds x {CASES} cases; {}",
            if failures.is_empty() {
                "all hold".to_string()
            } else {
                failures.join("; ")
            }
        ),
    );
}

#[test]
fn text_pipeline() {
    let seeds: Vec<u64> = (0..10).collect();
    const TOP: usize = 10;
    let run = |pc: PlantedConfig, transform: Transform, shuffle: bool| {
        let b = planted_corpus(&pc).unwrap();
        let tokens = if shuffle {
            shuffled(&b.tokens, 99)
        } else {
            b.tokens.clone()
        };
        let v = b.vocabulary_size();
        let cfg = CoocConfig {
            transform,
            policy: EncodePolicy::BatchTransformed,
            state_size: v / 4,
            initial_capacity: v,
            ..CoocConfig::default()
        };
        evaluate(&cfg, &tokens, &b.items, TOP, Method::Jaccard, &seeds)
            .unwrap()
            .mean
    };
    let planted = run(PlantedConfig::default(), Transform::Sqrt, false);
    let stops = PlantedConfig {
        stop_words: 5,
        stop_rate: 1.0,
        ..PlantedConfig::default()
    };
    let stop_identity = run(stops.clone(), Transform::Identity, false);
    let stop_sqrt = run(stops, Transform::Sqrt, false);
    let chance = run(
        PlantedConfig {
            pairs: 100,
            ..PlantedConfig::default()
        },
        Transform::Sqrt,
        true,
    );
    let pass = planted >= 0.9 && stop_identity <= stop_sqrt && (0.15..=0.35).contains(&chance);
    report(
        "synonym tests on planted corpora, one-way 4:1",
        pass,
        &format!(
            "planted sqrt {planted:.3} (>= 0.9); stop tokens identity {stop_identity:.3} <= sqrt {stop_sqrt:.3}; \
             shuffled {chance:.3} (in [0.15, 0.35]); 10 seeds, top lists of {TOP}"
        ),
    );
}

#[test]
fn counts_are_big_integers() {
    // The n = 500, k = 8 counts overflow u64; the comparison above relies on
    // arbitrary precision.
    assert!(count_at_dot(500, 8, 0).unwrap() > BigUint::from(u64::MAX));
}
