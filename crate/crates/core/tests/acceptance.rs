//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p squarewalk --test acceptance`.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use squarewalk::character::{real_nonprincipal, C64};
use squarewalk::group::{squares_subgroup, DEFAULT_MAX_ORDER};
use squarewalk::oracle::{self, DenseProbability};
use squarewalk::walk::{self, ClassProbability};
use squarewalk::zoo::{small_zoo, ZooSpec};
use squarewalk::Analysis;

const STEPS: u32 = 10;

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            detail: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Order ≤ 24 zoo plus A5.
fn full_zoo() -> Vec<(ZooSpec, Analysis)> {
    let mut specs = small_zoo();
    specs.push(ZooSpec::Alternating(5));
    specs
        .into_iter()
        .map(|s| {
            let a = Analysis::from_spec(&s, DEFAULT_MAX_ORDER).expect("zoo group analyses");
            (s, a)
        })
        .collect()
}

fn analysis(spec: &str) -> Analysis {
    Analysis::from_spec(&ZooSpec::parse(spec).unwrap(), DEFAULT_MAX_ORDER).unwrap()
}

fn oracle_distances(a: &Analysis, n_max: u32) -> Vec<f64> {
    let p = DenseProbability::square_walk(&a.group);
    oracle::convolution_powers(&p, n_max, &a.group)
        .iter()
        .map(oracle::l2_distance_to_uniform)
        .collect()
}

fn closed_form_vs_oracle(zoo: &[(ZooSpec, Analysis)]) -> Outcome {
    let mut out = Outcome::new();
    let mut worst: f64 = 0.0;
    for (spec, a) in zoo.iter().filter(|(_, a)| a.group.order() <= 24) {
        for (i, oracle) in oracle_distances(a, STEPS).into_iter().enumerate() {
            let n = i as u32 + 1;
            let err = (walk::theorem1_distance(&a.table, n) - oracle).abs();
            worst = worst.max(err);
            out.check(err < 1e-9, || format!("{spec} n={n}: error {err:e}"));
        }
    }
    out.detail = format!("max error {worst:.3e}");
    out
}

fn spectral_deviation_vs_oracle(zoo: &[(ZooSpec, Analysis)]) -> Outcome {
    let mut out = Outcome::new();
    let mut worst: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for (spec, a) in zoo {
        let k = a.classes.num_classes();
        let order = a.group.order() as f64;
        for trial in 0..20 {
            let weights: Vec<f64> = (0..k)
                .map(|_| if rng.random_bool(0.3) { 0.0 } else { rng.random::<f64>() })
                .collect();
            let weights = if weights.iter().all(|&w| w == 0.0) { vec![1.0; k] } else { weights };
            let p = ClassProbability::from_weights(&weights, &a.classes).unwrap();
            let spectrum = walk::fourier_coefficients(&p, &a.table).unwrap();
            let powers = oracle::convolution_powers(&p.to_dense(&a.classes), STEPS, &a.group);
            for (i, brute) in powers.iter().enumerate() {
                let n = i as u32 + 1;
                let dev = walk::deviation(&spectrum, &a.table, n);
                let err = (0..a.group.order())
                    .map(|g| {
                        let spectral = dev.per_class[a.classes.class_of[g]] + 1.0 / order;
                        (spectral - brute.per_element[g]).abs()
                    })
                    .fold(0.0, f64::max);
                worst = worst.max(err);
                out.check(err < 1e-9, || format!("{spec} trial {trial} n={n}: error {err:e}"));
            }
        }
    }
    out.detail = format!("max pointwise error {worst:.3e}");
    out
}

fn fs_lattice(zoo: &[(ZooSpec, Analysis)]) -> Outcome {
    let mut out = Outcome::new();
    let mut worst: f64 = 0.0;
    let mut rows = 0;
    for (spec, a) in zoo {
        let order = a.group.order() as f64;
        for (j, chi) in a.table.values.iter().enumerate() {
            rows += 1;
            let sum: C64 = (0..a.group.order())
                .map(|h| chi[a.classes.class_of[a.group.mul(h, h)]])
                .sum();
            let nu = sum / order;
            let nearest = nu.re.round().clamp(-1.0, 1.0);
            let off = (nu - C64::new(nearest, 0.0)).norm();
            worst = worst.max(off);
            out.check(off < 1e-8, || format!("{spec} row {j}: indicator {nu}"));
            let real = chi.iter().all(|v| v.im.abs() < 1e-8);
            out.check((nearest != 0.0) == real, || {
                format!("{spec} row {j}: indicator {nearest} but real = {real}")
            });
        }
    }
    out.detail = format!("{rows} characters, max lattice offset {worst:.3e}");
    out
}

fn spot_values() -> Outcome {
    let mut out = Outcome::new();
    let tol = 1e-10;
    let mut compare = |label: String, value: f64, expect: f64, tol: f64| {
        let err = (value - expect).abs();
        out.check(err < tol, || format!("{label}: {value} vs {expect} (error {err:e})"));
    };

    let s3 = analysis("S3");
    let s3_oracle = oracle_distances(&s3, 1);
    compare("S3 theorem n=1".into(), walk::theorem1_distance(&s3.table, 1), 2f64.sqrt() / 6.0, tol);
    compare("S3 oracle n=1".into(), s3_oracle[0], 2f64.sqrt() / 6.0, tol);

    let a4 = analysis("A4");
    for (i, o) in oracle_distances(&a4, STEPS).into_iter().enumerate() {
        let n = i as u32 + 1;
        let expect = 3f64.powi(1 - n as i32) / 12.0;
        compare(format!("A4 theorem n={n}"), walk::theorem1_distance(&a4.table, n), expect, tol);
        compare(format!("A4 oracle n={n}"), o, expect, tol);
    }

    let q8 = analysis("Q8");
    for (i, o) in oracle_distances(&q8, 30).into_iter().enumerate() {
        let n = i as u32 + 1;
        let expect = (3.0 + 4f64.powi(1 - n as i32)).sqrt() / 8.0;
        compare(format!("Q8 theorem n={n}"), walk::theorem1_distance(&q8.table, n), expect, tol);
        compare(format!("Q8 oracle n={n}"), o, expect, tol);
    }
    compare(
        "Q8 limit n=30".into(),
        walk::theorem1_distance(&q8.table, 30),
        3f64.sqrt() / 8.0,
        1e-9,
    );

    let c2 = analysis("C2");
    for (i, o) in oracle_distances(&c2, 30).into_iter().enumerate() {
        let n = i as u32 + 1;
        compare(format!("C2 theorem n={n}"), walk::theorem1_distance(&c2.table, n), 0.5, tol);
        compare(format!("C2 oracle n={n}"), o, 0.5, tol);
    }

    for spec in ["C3", "C5", "C7", "C1"] {
        let a = analysis(spec);
        for (i, o) in oracle_distances(&a, STEPS).into_iter().enumerate() {
            let n = i as u32 + 1;
            compare(format!("{spec} theorem n={n}"), walk::theorem1_distance(&a.table, n), 0.0, tol);
            compare(format!("{spec} oracle n={n}"), o, 0.0, tol);
        }
    }
    out.detail = "S3, A4, Q8, C2, odd-order closed forms".into();
    out
}

fn consequence3(zoo: &[(ZooSpec, Analysis)]) -> Outcome {
    let mut out = Outcome::new();
    let truth = [
        ("C2", true),
        ("S3", true),
        ("D4", true),
        ("Q8", true),
        ("A4", false),
        ("C3", false),
        ("C7", false),
        ("A5", false),
    ];
    for (spec, a) in zoo {
        match walk::convergence_report(&a.group, &a.table, &a.profile) {
            Ok(report) => {
                let name = spec.to_string();
                if let Some((_, expect)) = truth.iter().find(|(s, _)| *s == name) {
                    out.check(report.predicate_a == *expect, || {
                        format!("{spec}: predicates {} but expected {expect}", report.predicate_a)
                    });
                }
            }
            Err(e) => out.failures.push(format!("{spec}: {e}")),
        }
    }
    out.detail = format!("{} groups, 8 with known ground truth", zoo.len());
    out
}

fn table_quality(zoo: &[(ZooSpec, Analysis)]) -> Outcome {
    let mut out = Outcome::new();
    let (mut row_worst, mut col_worst): (f64, f64) = (0.0, 0.0);
    for (spec, a) in zoo {
        let row = a.table.row_orthonormality_residual();
        let col = a.table.column_orthogonality_residual();
        row_worst = row_worst.max(row);
        col_worst = col_worst.max(col);
        out.check(row < 1e-7 && col < 1e-7, || format!("{spec}: residuals {row:e} {col:e}"));
        let squares: usize = a.table.degrees.iter().map(|d| d * d).sum();
        out.check(squares == a.group.order(), || format!("{spec}: Σd² = {squares}"));

        let again = Analysis::new(a.group.clone()).unwrap();
        let first = serde_json::to_string(&a.table.document(&a.group, &a.classes)).unwrap();
        let second = serde_json::to_string(&again.table.document(&again.group, &again.classes)).unwrap();
        out.check(first == second, || format!("{spec}: serialized tables differ between runs"));
    }
    out.detail = format!("row residual {row_worst:.3e}, column residual {col_worst:.3e}");
    out
}

fn squaring_identity(zoo: &[(ZooSpec, Analysis)]) -> Outcome {
    let mut out = Outcome::new();
    let mut worst: f64 = 0.0;
    for (spec, a) in zoo {
        for g in 0..a.group.order() {
            let c = a.classes.class_of[g];
            let rebuilt: C64 = a
                .table
                .values
                .iter()
                .zip(&a.table.fs_indicators)
                .map(|(row, &nu)| row[c] * nu as f64)
                .sum();
            let err = (rebuilt - C64::new(a.profile.r[g] as f64, 0.0)).norm();
            worst = worst.max(err);
            out.check(err < 1e-7, || format!("{spec} element {g}: error {err:e}"));
        }
    }
    out.detail = format!("max pointwise error {worst:.3e}");
    out
}

fn monte_carlo() -> Outcome {
    let mut out = Outcome::new();
    let a4 = analysis("A4");
    let p = DenseProbability::square_walk(&a4.group);
    let exact = walk::theorem1_distance(&a4.table, 6);
    let run = oracle::sample_walk(&p, &a4.group, 6, 1_000_000, 7).unwrap();
    let empirical = oracle::l2_distance_to_uniform(&run.empirical());
    let se = run.l2_standard_error();
    let z = (empirical - exact).abs() / se;
    out.check(z <= 3.0, || format!("empirical {empirical:e} vs exact {exact:e}, {z:.2} SE"));
    let rerun = oracle::sample_walk(&p, &a4.group, 6, 1_000_000, 7).unwrap();
    out.check(run.counts == rerun.counts, || "counts differ for the same seed".into());
    out.detail = format!("empirical {empirical:.6e}, exact {exact:.6e}, SE {se:.3e}, |z| {z:.2}");
    out
}

fn two_group_index(zoo: &[(ZooSpec, Analysis)]) -> Outcome {
    let mut out = Outcome::new();
    let mut indices = Vec::new();
    for (spec, a) in zoo {
        let g1 = squares_subgroup(&a.group, &a.profile).len();
        let index = a.group.order() / g1;
        out.check(a.group.order() % g1 == 0 && index.is_power_of_two(), || {
            format!("{spec}: |G|/|G1| = {}/{g1}", a.group.order())
        });
        indices.push(index);
    }
    out.detail = format!("indices seen: {:?}", {
        indices.sort_unstable();
        indices.dedup();
        indices
    });
    out
}

fn main() -> ExitCode {
    let zoo = full_zoo();
    // R(G) sanity so a silently empty table cannot pass the distance checks
    assert!(zoo.iter().any(|(_, a)| !real_nonprincipal(&a.table).is_empty()));

    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("1 closed-form distance vs oracle convolution", Box::new(|| closed_form_vs_oracle(&zoo))),
        ("2 spectral deviation vs oracle, random class probabilities", Box::new(|| spectral_deviation_vs_oracle(&zoo))),
        ("3 Frobenius-Schur lattice", Box::new(|| fs_lattice(&zoo))),
        ("4 closed-form spot values", Box::new(spot_values)),
        ("5 convergence predicate equivalence", Box::new(|| consequence3(&zoo))),
        ("6 character table quality and determinism", Box::new(|| table_quality(&zoo))),
        ("7 square-root count identity", Box::new(|| squaring_identity(&zoo))),
        ("8 Monte Carlo sanity", Box::new(monte_carlo)),
        ("9 G/G1 is a 2-group", Box::new(|| two_group_index(&zoo))),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome = run();
        if outcome.failures.is_empty() {
            println!("PASS [{name}] {}", outcome.detail);
        } else {
            failed += 1;
            println!("FAIL [{name}] {}", outcome.detail);
            for f in outcome.failures.iter().take(10) {
                println!("    {f}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
