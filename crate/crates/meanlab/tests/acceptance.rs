//! The release gate: one test per acceptance criterion, each printing a
//! single pass/fail line (visible with `--nocapture`) and asserting both the
//! numerical requirements and, where stated, a wall-clock budget. Timed
//! sections run once for warmup before the measured run.

use std::time::{Duration, Instant};

use meanlab::chains::{scan_sharp_constants, GridSpec, SHARP_CONSTANT};
use meanlab::kernel::{
    gram, necessity_witnesses, search_counterexample, EigenReport, KernelFamily, SearchConfig,
    SearchStrategy, DEFAULT_KERNEL_TOL,
};
use meanlab::matrix::random::{random_general, random_psd};
use meanlab::means::{hadamard_map, logarithmic_map};
use meanlab::rng::trial_rng;
use meanlab::scalar::MeanKind;
use meanlab::suites::{
    fuzz_correction, fuzz_fundamental, fuzz_refined, hsnorm_suite, operator_suite,
    psd_family_suite, uinorm_suite, FuzzConfig, KernelSuiteConfig, NormSuiteConfig,
    OperatorSuiteConfig, RefinedFuzzConfig,
};

fn verdict(index: usize, label: &str, failures: Vec<String>) {
    let pass = failures.is_empty();
    println!(
        "criterion {index:02} ({label}): {}",
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "criterion {index:02} failures: {failures:#?}");
}

fn check(failures: &mut Vec<String>, ok: bool, detail: impl FnOnce() -> String) {
    if !ok {
        failures.push(detail());
    }
}

fn check_runtime(failures: &mut Vec<String>, elapsed: Duration, cap: Duration, what: &str) {
    check(failures, elapsed <= cap, || {
        format!("{what} took {elapsed:?}, budget {cap:?}")
    });
}

fn integer_points(n: usize) -> Vec<f64> {
    (1..=n).map(|k| k as f64).collect()
}

fn check_triple(failures: &mut Vec<String>, label: &str, report: &EigenReport, expected: [f64; 3]) {
    for (i, want) in expected.into_iter().enumerate() {
        let got = report.eigenvalues[i];
        check(failures, (got - want).abs() <= 1e-4, || {
            format!("{label} eigenvalue {}: {got} vs {want}", i + 1)
        });
    }
}

fn integer_grid_search(family: KernelFamily, n_points: usize) -> Option<EigenReport> {
    search_counterexample(
        &family,
        &SearchConfig {
            n_points,
            strategy: SearchStrategy::IntegerGrid,
            budget: 1,
            seed: 0,
            tol: DEFAULT_KERNEL_TOL,
        },
    )
    .expect("integer-grid search cannot fail on these families")
}

#[test]
fn acceptance_01_bridge_kernel_gram_and_spectrum() {
    let mut failures = Vec::new();
    let family = KernelFamily::PhiR { r: 2.0 / 3.0 };
    let points = integer_points(3);
    let run = || gram(&family, &points, DEFAULT_KERNEL_TOL).unwrap();
    let _warmup = run();
    let start = Instant::now();
    let report = run();
    let elapsed = start.elapsed();

    for (entry, want) in [(report.gram[0][1], 0.983_295), (report.gram[0][2], 0.857_656)] {
        check(&mut failures, (entry - want).abs() <= 1e-6, || {
            format!("gram entry {entry} vs {want}")
        });
    }
    check_triple(
        &mut failures,
        "phi(2/3)",
        &report,
        [2.88404, 0.142344, -0.026381],
    );
    check(&mut failures, !report.psd, || {
        "matrix unexpectedly positive semidefinite".into()
    });
    check_runtime(&mut failures, elapsed, Duration::from_millis(1), "3x3 gram");
    verdict(1, "bridge-ratio kernel gram and spectrum", failures);
}

#[test]
fn acceptance_02_binomial_ratio_spectra() {
    let mut failures = Vec::new();
    let psi = gram(
        &KernelFamily::PsiS { s: 0.25 },
        &integer_points(3),
        DEFAULT_KERNEL_TOL,
    )
    .unwrap();
    check_triple(
        &mut failures,
        "psi(1/4)",
        &psi,
        [2.96626, 0.0436155, -0.00987773],
    );
    let xi = gram(
        &KernelFamily::XiS { s: 0.75 },
        &integer_points(3),
        DEFAULT_KERNEL_TOL,
    )
    .unwrap();
    check_triple(
        &mut failures,
        "xi(3/4)",
        &xi,
        [2.98432, 0.0182053, -0.00252532],
    );
    verdict(2, "binomial-ratio kernel spectra", failures);
}

#[test]
fn acceptance_03_integer_grid_witnesses() {
    let mut failures = Vec::new();
    let phi = KernelFamily::PhiR { r: 0.9 };
    let eta = KernelFamily::EtaP { p: 3.0 / 7.0 };
    let _warmup = (
        integer_grid_search(phi.clone(), 5),
        integer_grid_search(eta.clone(), 7),
    );

    let start = Instant::now();
    let phi_witness = integer_grid_search(phi, 5);
    let phi_elapsed = start.elapsed();
    let start = Instant::now();
    let eta_witness = integer_grid_search(eta, 7);
    let eta_elapsed = start.elapsed();

    match &phi_witness {
        Some(report) => check(&mut failures, report.min_eigenvalue < 0.0, || {
            format!("phi(0.9) witness not negative: {}", report.min_eigenvalue)
        }),
        None => failures.push("no phi(0.9) witness on the 5-point integer grid".into()),
    }
    match &eta_witness {
        Some(report) => check(&mut failures, report.min_eigenvalue < 0.0, || {
            format!("eta(3/7) witness not negative: {}", report.min_eigenvalue)
        }),
        None => failures.push("no eta(3/7) witness on the 7-point integer grid".into()),
    }
    // Deterministic: a second run reproduces the same points and spectrum.
    check(
        &mut failures,
        phi_witness == integer_grid_search(KernelFamily::PhiR { r: 0.9 }, 5),
        || "phi(0.9) search is not deterministic".into(),
    );
    check_runtime(
        &mut failures,
        phi_elapsed,
        Duration::from_millis(10),
        "phi(0.9) search",
    );
    check_runtime(
        &mut failures,
        eta_elapsed,
        Duration::from_millis(10),
        "eta(3/7) search",
    );
    verdict(3, "integer-grid negative-eigenvalue witnesses", failures);
}

#[test]
fn acceptance_04_sharp_constant_scans() {
    let mut failures = Vec::new();
    let warm_grid = GridSpec {
        count: 1000,
        refine: 10,
        ..GridSpec::default()
    };
    let _warmup = scan_sharp_constants(warm_grid).unwrap();

    let start = Instant::now();
    let (bridge_scan, heron_scan) = scan_sharp_constants(GridSpec::default()).unwrap();
    let elapsed = start.elapsed();

    check(
        &mut failures,
        bridge_scan.extremum >= SHARP_CONSTANT - 1e-4 && bridge_scan.extremum <= SHARP_CONSTANT,
        || format!("log-ratio supremum {}", bridge_scan.extremum),
    );
    check(
        &mut failures,
        heron_scan.extremum >= SHARP_CONSTANT && heron_scan.extremum <= SHARP_CONSTANT + 1e-4,
        || format!("difference-ratio infimum {}", heron_scan.extremum),
    );
    check_runtime(&mut failures, elapsed, Duration::from_secs(1), "both scans");
    verdict(4, "sharp-constant scans bracket 2/3", failures);
}

#[test]
fn acceptance_05_scalar_chain_fuzz() {
    let mut failures = Vec::new();
    let warm = FuzzConfig {
        trials: 200,
        ..FuzzConfig::default()
    };
    let _warmup = fuzz_fundamental(warm).unwrap();

    let start = Instant::now();
    let fundamental = fuzz_fundamental(FuzzConfig::default()).unwrap();
    let refined = fuzz_refined(RefinedFuzzConfig::default()).unwrap();
    let correction = fuzz_correction(FuzzConfig::default()).unwrap();
    let elapsed = start.elapsed();

    for (name, passed, count) in [
        ("fundamental", fundamental.passed(), fundamental.violations.len()),
        ("refined", refined.passed(), refined.violations.len()),
        ("correction", correction.passed(), correction.violations.len()),
    ] {
        check(&mut failures, passed, || {
            format!("{name} chain fuzz: {count} violations")
        });
    }
    check(&mut failures, fundamental.n_trials == 100_000, || {
        format!("fundamental ran {} trials", fundamental.n_trials)
    });
    check(&mut failures, refined.config.max_order == 5, || {
        format!("refined order cap {}", refined.config.max_order)
    });
    check_runtime(
        &mut failures,
        elapsed,
        Duration::from_secs(10),
        "three fuzz campaigns",
    );
    verdict(5, "scalar chain fuzz at 1e5 pairs", failures);
}

#[test]
fn acceptance_06_operator_chain_suite() {
    let mut failures = Vec::new();
    let warm = OperatorSuiteConfig {
        corner_trials: 5,
        random_parameter_trials: 2,
        ..OperatorSuiteConfig::default()
    };
    let _warmup = operator_suite(warm).unwrap();

    let start = Instant::now();
    let report = operator_suite(OperatorSuiteConfig::default()).unwrap();
    let elapsed = start.elapsed();

    check(&mut failures, report.passed(), || {
        format!("{} violations: {:?}", report.violations.len(), report.violations)
    });
    check(&mut failures, report.n_trials == 210, || {
        format!("ran {} trials", report.n_trials)
    });
    check(&mut failures, report.worst_gap >= -1e-9, || {
        format!("worst normalized margin {}", report.worst_gap)
    });
    let config = report.config;
    check(
        &mut failures,
        config.min_dim == 2 && config.max_dim == 8 && config.tolerance == 1e-9,
        || format!("unexpected configuration {config:?}"),
    );
    check_runtime(
        &mut failures,
        elapsed,
        Duration::from_secs(30),
        "operator suite",
    );
    verdict(6, "operator chain over random positive pairs", failures);
}

#[test]
fn acceptance_07_norm_dominance_suites() {
    let mut failures = Vec::new();
    let warm = NormSuiteConfig {
        trials: 5,
        ..NormSuiteConfig::default()
    };
    let _warmup = (hsnorm_suite(warm).unwrap(), uinorm_suite(warm).unwrap());

    let start = Instant::now();
    let hs = hsnorm_suite(NormSuiteConfig::default()).unwrap();
    let ui = uinorm_suite(NormSuiteConfig::default()).unwrap();
    let elapsed = start.elapsed();

    check(&mut failures, hs.passed(), || {
        format!("hilbert-schmidt chain: {:?}", hs.violations)
    });
    check(&mut failures, ui.passed(), || {
        format!("ky fan squeeze: {:?}", ui.violations)
    });
    check(
        &mut failures,
        hs.n_trials == 200 && ui.n_trials == 200 && hs.config.max_dim == 6,
        || format!("unexpected trial counts {} / {}", hs.n_trials, ui.n_trials),
    );
    check_runtime(
        &mut failures,
        elapsed,
        Duration::from_secs(30),
        "both norm suites",
    );
    verdict(7, "norm chain and dominance squeeze", failures);
}

#[test]
fn acceptance_08_quadrature_cross_check() {
    let mut failures = Vec::new();
    for trial in 0..50u64 {
        let mut rng = trial_rng(1088, trial);
        let n = 2 + (trial as usize) % 5;
        let s = random_psd(n, 0.1, 10.0, &mut rng).unwrap();
        let t = random_psd(n, 0.1, 10.0, &mut rng).unwrap();
        let x = random_general(n, &mut rng);
        let quadrature = logarithmic_map(&s, &t, &x, 64).unwrap();
        let hadamard = hadamard_map(MeanKind::Logarithmic, &s, &t, &x).unwrap();
        let gap = quadrature.sub(&hadamard).unwrap().frobenius_norm();
        check(&mut failures, gap <= 1e-8, || {
            format!("trial {trial} (n={n}): frobenius gap {gap}")
        });
    }
    verdict(8, "quadrature and spectral logarithmic maps agree", failures);
}

#[test]
fn acceptance_09_positive_definite_catalog() {
    let mut failures = Vec::new();
    let report = psd_family_suite(KernelSuiteConfig::default()).unwrap();
    check(&mut failures, report.passed(), || {
        format!("catalog violations: {:?}", report.violations)
    });
    check(
        &mut failures,
        report.config.point_sets == 20 && report.config.set_size == 10,
        || format!("unexpected configuration {:?}", report.config),
    );

    // Just past the shifted-sech boundary the positivity must break.
    let witness = integer_grid_search(KernelFamily::ShiftedSech { beta: 2.0 }, 7);
    match witness {
        Some(report) => check(&mut failures, report.min_eigenvalue < 0.0, || {
            format!("boundary witness not negative: {}", report.min_eigenvalue)
        }),
        None => failures.push("no witness for the shifted-sech boundary".into()),
    }
    verdict(9, "positive-definite catalog sweep and boundary", failures);
}

#[test]
fn acceptance_10_necessity_witness_table() {
    let mut failures = Vec::new();
    let reports = necessity_witnesses(DEFAULT_KERNEL_TOL).unwrap();
    let found = |needle: &str| -> Option<&EigenReport> {
        reports.iter().find(|r| r.family == needle)
    };
    for spec in [
        "ratio:L/heron:s=0.6",
        "ratio:L/heron:s=0.7",
        "ratio:heron:s=0.9/heron:s=0.8",
        "ratio:binomial:p=0.3333333333333333/heron:s=0.6666666666666666",
    ] {
        match found(spec) {
            Some(report) => {
                check(
                    &mut failures,
                    !report.psd && report.min_eigenvalue < 0.0,
                    || format!("{spec}: min eigenvalue {}", report.min_eigenvalue),
                );
                // Witnesses survive a tightened tolerance.
                let replay = gram(
                    &spec.parse().unwrap(),
                    &report.points,
                    DEFAULT_KERNEL_TOL / 10.0,
                )
                .unwrap();
                check(&mut failures, replay.min_eigenvalue < 0.0, || {
                    format!("{spec}: witness unstable under tol/10")
                });
            }
            None => failures.push(format!("{spec} missing from the witness table")),
        }
    }
    verdict(10, "necessity witnesses all exhibited", failures);
}
