//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria that cannot be met are reported as FAIL without failing the test
//! binary. Set `SIMPLEGRP_ACCEPTANCE_QUICK=1` to skip the long training runs
//! and the million-pair samples; skipped checks print SKIP.

use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use simplegrp::dataset::{enumerate_labeled, PairFilter};
use simplegrp::nn::{softmax_f64, Activation, Mlp, MlpConfig, Workspace};
use simplegrp::{flatten_pair, Permutation};

const SEED: &str = "0";
const FRACTION_DIGITS: usize = 4;
const N7_FRACTION_TOL: f64 = 0.005;
const N8_FRACTION_TOL: f64 = 0.01;
const MIN_ACC_N5: f64 = 0.85;
const MIN_ACC_N6: f64 = 0.90;
const MIN_ACC_N7_SUBSET: f64 = 0.78;
const EXP2_TARGET: [f64; 2] = [0.97, 0.86];
const EXP2_TOL: f64 = 0.07;
const EXP3_MIN: f64 = 0.95;
const GRADIENT_TOL: f64 = 1e-5;
const SOFTMAX_TOL: f64 = 1e-9;

const CENSUS_BUDGET: Duration = Duration::from_secs(120);
const FRACTION_BUDGET: Duration = Duration::from_secs(30 * 60);
const TRAIN_BUDGET: Duration = Duration::from_secs(20 * 60);
const EXP2_BUDGET: Duration = Duration::from_secs(5 * 60);
const EXP3_BUDGET: Duration = Duration::from_secs(2 * 60);

const S4_COUNTS: [(&str, u64, u64); 8] = [
    ("C2", 18, 27),
    ("C3", 24, 32),
    ("C4", 30, 36),
    ("C2 x C2", 24, 24),
    ("S3", 72, 72),
    ("D8", 72, 72),
    ("A4", 96, 96),
    ("S4", 216, 216),
];

const S5_COUNTS: [(&str, u64, u64); 15] = [
    ("C2", 50, 75),
    ("C3", 60, 80),
    ("C4", 150, 180),
    ("C2 x C2", 120, 120),
    ("C5", 120, 144),
    ("C6", 220, 240),
    ("S3", 360, 360),
    ("D8", 360, 360),
    ("D10", 360, 360),
    ("A4", 480, 480),
    ("D12", 360, 360),
    ("C5 : C4", 1440, 1440),
    ("S4", 1080, 1080),
    ("A5", 2280, 2280),
    ("S5", 6840, 6840),
];

struct Run {
    code: Option<i32>,
    stdout: String,
    stderr: String,
    elapsed: Duration,
    timed_out: bool,
}

/// Runs the binary, killing it once `budget` has passed.
fn run(args: &[&str], budget: Duration) -> Run {
    let t = Instant::now();
    let mut child = Command::new(env!("CARGO_BIN_EXE_simplegrp"))
        .args(args)
        .env_remove("SIMPLEGRP_SEED")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn simplegrp");
    let out_pipe = child.stdout.take().unwrap();
    let err_pipe = child.stderr.take().unwrap();
    let read = |mut r: Box<dyn std::io::Read + Send>| {
        std::thread::spawn(move || {
            let mut s = String::new();
            let _ = r.read_to_string(&mut s);
            s
        })
    };
    let (out_t, err_t) = (read(Box::new(out_pipe)), read(Box::new(err_pipe)));
    let mut timed_out = false;
    let status = loop {
        if let Some(s) = child.try_wait().unwrap() {
            break Some(s);
        }
        if t.elapsed() > budget {
            let _ = child.kill();
            let _ = child.wait();
            timed_out = true;
            break None;
        }
        std::thread::sleep(Duration::from_millis(100));
    };
    Run {
        code: status.and_then(|s| s.code()),
        stdout: out_t.join().unwrap(),
        stderr: err_t.join().unwrap(),
        elapsed: t.elapsed(),
        timed_out,
    }
}

fn report(path: &Path) -> Option<Value> {
    serde_json::from_str(&std::fs::read_to_string(path).ok()?).ok()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            details: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl Into<String>) {
        self.pass &= ok;
        let d = detail.into();
        self.details.push(if ok { d } else { format!("[x] {d}") });
    }

    fn note(&mut self, detail: impl Into<String>) {
        self.details.push(detail.into());
    }
}

fn census_matches(dir: &Path, n: usize, table: &[(&str, u64, u64)], o: &mut Outcome) {
    let rep = dir.join(format!("census{n}.json"));
    let r = run(
        &[
            "dataset",
            "census",
            "--n",
            &n.to_string(),
            "--report",
            s(&rep),
        ],
        CENSUS_BUDGET,
    );
    let Some(v) = report(&rep).filter(|_| r.code == Some(0)) else {
        o.check(
            false,
            format!("census n={n} did not complete: {}", r.stderr.trim()),
        );
        return;
    };
    let rows: Vec<(String, u64, u64)> = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["name"].as_str().unwrap().to_string(),
                r["filtered"].as_u64().unwrap(),
                r["unfiltered"].as_u64().unwrap(),
            )
        })
        // The trivial group is produced only by the pair (e, e).
        .filter(|(name, _, _)| name != "1")
        .collect();
    let mismatched: Vec<String> = table
        .iter()
        .filter(|(name, f, u)| !rows.iter().any(|(m, g, w)| m == name && g == f && w == u))
        .map(|(name, f, u)| format!("{name} {f}/{u}"))
        .collect();
    o.check(
        mismatched.is_empty() && rows.len() == table.len(),
        format!(
            "n={n}: {} of {} rows exact in {:.1?}{}",
            table.len() - mismatched.len(),
            table.len(),
            r.elapsed,
            if mismatched.is_empty() {
                String::new()
            } else {
                format!(" (missing {mismatched:?})")
            }
        ),
    );
    o.check(
        r.elapsed <= CENSUS_BUDGET,
        format!("n={n} within {CENSUS_BUDGET:?}"),
    );
}

fn criterion_1(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    census_matches(dir, 4, &S4_COUNTS, &mut o);
    census_matches(dir, 5, &S5_COUNTS, &mut o);
    o
}

fn simple_fraction(dir: &Path, args: &[&str], name: &str) -> (Option<f64>, Run) {
    let rep = dir.join(format!("{name}.json"));
    let out = dir.join(format!("{name}.tsv"));
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--out", s(&out), "--report", s(&rep)]);
    let r = run(&full, FRACTION_BUDGET);
    let f = report(&rep).and_then(|v| v["result"]["simple_fraction"].as_f64());
    let _ = std::fs::remove_file(out);
    (f.filter(|_| r.code == Some(0)), r)
}

fn criterion_2(dir: &Path, quick: bool) -> Outcome {
    let mut o = Outcome::new();
    for (n, expected) in [(5, "0.1758"), (6, "0.2027")] {
        let (f, r) = simple_fraction(
            dir,
            &["dataset", "generate", "--n", &n.to_string()],
            &format!("gen{n}"),
        );
        let got = f.map(|f| format!("{f:.FRACTION_DIGITS$}"));
        o.check(
            got.as_deref() == Some(expected),
            format!(
                "n={n} fraction {} vs {expected} in {:.1?}",
                got.unwrap_or_default(),
                r.elapsed
            ),
        );
    }
    for n in [5, 6] {
        let rep = dir.join(format!("census_all{n}.json"));
        run(
            &[
                "dataset",
                "census",
                "--n",
                &n.to_string(),
                "--report",
                s(&rep),
            ],
            FRACTION_BUDGET,
        );
        if let Some(v) = report(&rep) {
            let rows = v["result"]["rows"].as_array().unwrap();
            let count = |simple_only: bool| -> u64 {
                rows.iter()
                    .filter(|r| !simple_only || r["simple"].as_bool() == Some(true))
                    .map(|r| r["unfiltered"].as_u64().unwrap())
                    .sum()
            };
            let f = count(true) as f64 / count(false) as f64;
            o.note(format!(
                "n={n} fraction over all ordered pairs, r1 = r2 included: {f:.4}"
            ));
        }
    }
    if quick {
        o.note("SKIP n=7 and n=8 samples (quick mode)");
        return o;
    }
    for (n, expected, tol) in [(7, 0.2315, N7_FRACTION_TOL), (8, 0.2133, N8_FRACTION_TOL)] {
        let (f, r) = simple_fraction(
            dir,
            &[
                "dataset",
                "sample",
                "--n",
                &n.to_string(),
                "--sample",
                "1000000",
                "--seed",
                SEED,
            ],
            &format!("sample{n}"),
        );
        o.check(
            f.is_some_and(|f| (f - expected).abs() <= tol) && r.elapsed <= FRACTION_BUDGET,
            format!(
                "n={n} sampled fraction {} vs {expected} +/- {tol} in {:.1?}",
                f.map_or("none".into(), |f| format!("{f:.4}")),
                r.elapsed
            ),
        );
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let p = Permutation::unrank(6, 4).unwrap();
    let q = Permutation::unrank(19, 4).unwrap();
    o.check(
        p.images() == [2, 1, 0, 3] && q.images() == [3, 1, 2, 0],
        format!("(6, 19) -> {:?}, {:?}", p.images(), q.images()),
    );
    let expected: [u8; 32] = [
        0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, //
        0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0,
    ];
    o.check(
        flatten_pair(&p, &q).unwrap() == expected,
        "32-entry flattened vector",
    );
    let mut bad = 0;
    let mut total = 0u64;
    for n in 1..=5usize {
        let f: u64 = (1..=n as u64).product();
        for k in 0..f {
            total += 1;
            if Permutation::unrank(k, n).unwrap().rank() != k {
                bad += 1;
            }
        }
    }
    o.check(
        bad == 0,
        format!("rank(unrank(k)) = k for all {total} ranks with n <= 5"),
    );
    o
}

fn sweep_line(r: &Run) -> String {
    let count = r
        .stdout
        .lines()
        .rev()
        .find(|l| l.ends_with(" counterexamples"))
        .unwrap_or("no summary");
    let clauses: Vec<&str> = r
        .stdout
        .lines()
        .filter(|l| l.contains(" clause="))
        .collect();
    format!("{count} ({})", clauses.join(", "))
}

fn criterion_4(quick: bool) -> Outcome {
    let mut o = Outcome::new();
    let long = Duration::from_secs(60 * 60);
    for n in ["5", "6"] {
        let r = run(&["verify", "proposition", "--n", n], long);
        o.check(
            r.code == Some(0),
            format!("proposition n={n} exhaustive: {}", sweep_line(&r)),
        );
    }
    if quick {
        o.note("SKIP proposition n=7 sample (quick mode)");
    } else {
        let r = run(
            &[
                "verify",
                "proposition",
                "--n",
                "7",
                "--mode",
                "sample",
                "--sample",
                "1000000",
                "--seed",
                SEED,
            ],
            long,
        );
        o.check(
            r.code == Some(0),
            format!("proposition n=7 sampled: {}", sweep_line(&r)),
        );
    }
    let r = run(&["verify", "involution"], long);
    o.check(
        r.code == Some(0),
        format!("involution lemma 4..=9: exit {:?}", r.code),
    );
    let r = run(&["verify", "dihedral"], long);
    o.check(
        r.code == Some(0),
        format!("dihedral consequence 5..=6: exit {:?}", r.code),
    );
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let r = run(&["verify", "mathieu"], Duration::from_secs(600));
    for line in r.stdout.lines().filter(|l| l.contains("MISMATCH")) {
        o.note(line.trim_start_matches("mathieu ").to_string());
    }
    let summary = r.stdout.lines().last().unwrap_or("").to_string();
    o.check(r.code == Some(0), summary);
    o
}

/// Returns the mean validation accuracy and per-class accuracies from a
/// training report.
fn train_result(v: &Value) -> (f64, [Option<f64>; 2]) {
    let res = &v["result"];
    let cls = &res["mean_class_accuracy"];
    (
        res["mean_val_acc"].as_f64().unwrap_or(0.0),
        [cls[0].as_f64(), cls[1].as_f64()],
    )
}

fn criterion_6(dir: &Path, quick: bool) -> Outcome {
    let mut o = Outcome::new();
    let runs: [(&str, &str, &str, f64); 3] = [
        ("5", "n5", "100", MIN_ACC_N5),
        ("6", "n6", "100", MIN_ACC_N6),
        ("7", "n7", "5", MIN_ACC_N7_SUBSET),
    ];
    for (n, preset, percent, min) in runs {
        if quick && n != "5" {
            o.note(format!("SKIP {preset} at {percent}% (quick mode)"));
            continue;
        }
        let rep = dir.join(format!("exp1_{preset}.json"));
        let r = run(
            &[
                "crossval",
                "--n",
                n,
                "--preset",
                preset,
                "--percent",
                percent,
                "--folds",
                "5",
                "--features",
                "matrices",
                "--seed",
                SEED,
                "--report",
                s(&rep),
            ],
            TRAIN_BUDGET,
        );
        if r.timed_out {
            o.check(
                false,
                format!("{preset} at {percent}%: stopped after {TRAIN_BUDGET:?} budget"),
            );
            continue;
        }
        match report(&rep).filter(|_| r.code == Some(0)) {
            Some(v) => {
                let (acc, _) = train_result(&v);
                o.check(
                    acc >= min,
                    format!(
                        "{preset} at {percent}%: mean accuracy {acc:.4} (>= {min}) in {:.1?}",
                        r.elapsed
                    ),
                );
            }
            None => o.check(false, format!("{preset}: {}", r.stderr.trim())),
        }
    }
    o
}

fn holdout(
    dir: &Path,
    name: &str,
    features: &str,
    preset: &str,
    train_size: &str,
    budget: Duration,
) -> Option<(Run, [Option<f64>; 2])> {
    let rep = dir.join(format!("{name}.json"));
    let r = run(
        &[
            "train",
            "--n",
            "6",
            "--sample",
            "8500",
            "--features",
            features,
            "--preset",
            preset,
            "--train-size",
            train_size,
            "--seed",
            SEED,
            "--report",
            s(&rep),
        ],
        budget,
    );
    let cls = report(&rep)
        .filter(|_| r.code == Some(0))
        .map(|v| train_result(&v).1)?;
    Some((r, cls))
}

fn fmt_cls(c: [Option<f64>; 2]) -> String {
    let f = |x: Option<f64>| x.map_or("n/a".into(), |x| format!("{x:.4}"));
    format!("simple {} non-simple {}", f(c[0]), f(c[1]))
}

fn criterion_7(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    match holdout(dir, "exp2", "invariants", "exp2", "1000", EXP2_BUDGET) {
        Some((r, cls)) => {
            let within =
                (0..2).all(|i| cls[i].is_some_and(|a| (a - EXP2_TARGET[i]).abs() <= EXP2_TOL));
            o.check(
                within && r.elapsed <= EXP2_BUDGET,
                format!(
                    "{} vs {EXP2_TARGET:?} +/- {EXP2_TOL} in {:.1?}",
                    fmt_cls(cls),
                    r.elapsed
                ),
            );
        }
        None => o.check(false, "exp2 run did not complete"),
    }
    o
}

fn criterion_8(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    match holdout(dir, "exp3", "order-profile", "exp3", "100", EXP3_BUDGET) {
        Some((r, cls)) => {
            let ok = cls.iter().all(|c| c.is_some_and(|a| a >= EXP3_MIN));
            o.check(
                ok && r.elapsed <= EXP3_BUDGET,
                format!("{} (>= {EXP3_MIN}) in {:.1?}", fmt_cls(cls), r.elapsed),
            );
        }
        None => o.check(false, "exp3 run did not complete"),
    }
    o
}

/// Largest relative error between backpropagated and finite-difference
/// gradients over random networks.
///
/// A five-point stencil with a wide step keeps rounding noise well below the
/// tolerance even for gradients near 1e-6. For ReLU, coordinates whose one-sided
/// differences disagree, or whose stencil changes at half the step, straddle a
/// kink and are skipped.
fn gradient_error() -> (f64, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let (mut worst, mut checked, mut skipped) = (0.0f64, 0, 0);
    for case in 0..24 {
        let activation = if case % 2 == 0 {
            Activation::Sigmoid
        } else {
            Activation::Relu
        };
        let hidden: Vec<usize> = (0..rng.gen_range(0..=3))
            .map(|_| rng.gen_range(1..=12))
            .collect();
        let cfg = MlpConfig {
            input_dim: rng.gen_range(1..=8),
            hidden_layers: hidden,
            hidden_activation: activation,
        };
        let net = Mlp::<f64>::init(&cfg, &mut rng).unwrap();
        let mut params = net.params().to_vec();
        let batch = rng.gen_range(1..8);
        let x: Vec<f64> = (0..batch * cfg.input_dim)
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let labels: Vec<u8> = (0..batch).map(|_| rng.gen_range(0..2)).collect();
        let mut ws = Workspace::default();
        let mut grads = vec![0.0; params.len()];
        net.loss_and_gradients(&params, &x, &labels, &mut grads, &mut ws);
        let mut scratch = vec![0.0; params.len()];
        let mut loss_at = |params: &mut Vec<f64>, i: usize, v: f64| {
            let keep = params[i];
            params[i] = v;
            let (l, _) = net.loss_and_gradients(params, &x, &labels, &mut scratch, &mut ws);
            params[i] = keep;
            l
        };
        for i in 0..params.len() {
            let p = params[i];
            let w = 1e-3;
            let [f2, f1, f0, m1, m2] =
                [2.0, 1.0, 0.0, -1.0, -2.0].map(|k| loss_at(&mut params, i, p + k * w));
            let numeric = (-f2 + 8.0 * f1 - 8.0 * m1 + m2) / (12.0 * w);
            if activation == Activation::Relu {
                let (fwd, bwd) = (
                    (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * w),
                    (3.0 * f0 - 4.0 * m1 + m2) / (2.0 * w),
                );
                let [h1, h2, h3, h4] =
                    [w, w / 2.0, -w / 2.0, -w].map(|d| loss_at(&mut params, i, p + d));
                let half = (-h1 + 8.0 * h2 - 8.0 * h3 + h4) / (6.0 * w);
                let scale = numeric.abs().max(1e-6);
                if (fwd - bwd).abs() > 1e-2 * scale || (numeric - half).abs() > 1e-7 * scale {
                    skipped += 1;
                    continue;
                }
            }
            let err = (grads[i] - numeric).abs() / grads[i].abs().max(numeric.abs()).max(1e-6);
            worst = worst.max(err);
            checked += 1;
        }
    }
    (worst, checked, skipped)
}

fn closure(gens: &[Permutation]) -> Vec<Permutation> {
    let mut elems = vec![Permutation::identity(gens[0].degree()).unwrap()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let x = elems[i].compose(g).unwrap();
            if !elems.contains(&x) {
                elems.push(x);
            }
        }
        i += 1;
    }
    elems
}

/// Simplicity from the list of subgroups `⟨x, y⟩`, `x, y ∈ G`, which covers
/// every subgroup of `S_4`.
fn simple_by_subgroups(gens: &[Permutation]) -> bool {
    let g = closure(gens);
    g.len() > 1
        && !g.iter().any(|x| {
            g.iter().any(|y| {
                let h = closure(&[*x, *y]);
                h.len() > 1
                    && h.len() < g.len()
                    && g.iter().all(|s| {
                        h.iter().all(|k| {
                            h.contains(&s.inverse().compose(k).unwrap().compose(s).unwrap())
                        })
                    })
            })
        })
}

fn deterministic(dir: &Path) -> Vec<(String, bool)> {
    let jobs: [(&str, Vec<&str>); 4] = [
        (
            "dataset sample",
            vec![
                "dataset",
                "sample",
                "--n",
                "6",
                "--sample",
                "3000",
                "--seed",
                "3",
                "--out",
                "{d}/data.tsv",
                "--report",
                "{d}/r.json",
            ],
        ),
        (
            "dataset census",
            vec![
                "dataset",
                "census",
                "--n",
                "4",
                "--out",
                "{d}/c.csv",
                "--report",
                "{d}/r.json",
            ],
        ),
        (
            "verify proposition",
            vec![
                "verify",
                "proposition",
                "--n",
                "6",
                "--mode",
                "sample",
                "--sample",
                "20000",
                "--seed",
                "3",
                "--report",
                "{d}/r.json",
            ],
        ),
        (
            "train",
            vec![
                "train",
                "--n",
                "5",
                "--preset",
                "exp3",
                "--features",
                "order-profile",
                "--epochs",
                "5",
                "--folds",
                "3",
                "--seed",
                "3",
                "--curves",
                "{d}/c.csv",
                "--report",
                "{d}/r.json",
            ],
        ),
    ];
    let mut out = Vec::new();
    for (name, args) in jobs {
        let mut artifacts: Vec<Vec<(PathBuf, Vec<u8>)>> = Vec::new();
        // Same paths both times; the report records its own arguments.
        let d = dir.join(format!("det_{}", name.replace(' ', "_")));
        for _ in 0..2 {
            let _ = std::fs::remove_dir_all(&d);
            std::fs::create_dir_all(&d).unwrap();
            let args: Vec<String> = args.iter().map(|a| a.replace("{d}", s(&d))).collect();
            let refs: Vec<&str> = args.iter().map(String::as_str).collect();
            run(&refs, Duration::from_secs(600));
            let mut files: Vec<(PathBuf, Vec<u8>)> = std::fs::read_dir(&d)
                .unwrap()
                .map(|e| {
                    let p = e.unwrap().path();
                    (
                        PathBuf::from(p.file_name().unwrap()),
                        std::fs::read(&p).unwrap(),
                    )
                })
                .collect();
            files.sort();
            artifacts.push(files);
        }
        out.push((
            name.to_string(),
            !artifacts[0].is_empty() && artifacts[0] == artifacts[1],
        ));
    }
    out
}

fn criterion_9(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    let (worst, checked, skipped) = gradient_error();
    o.check(
        worst <= GRADIENT_TOL,
        format!("gradient relative error {worst:.2e} over {checked} coordinates ({skipped} at ReLU kinks)"),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let worst_sum = (0..100_000)
        .map(|_| {
            let scale = 10f64.powi(rng.gen_range(-3..=3));
            let p = softmax_f64([
                rng.gen_range(-1.0..1.0) * scale,
                rng.gen_range(-1.0..1.0) * scale,
            ]);
            (p[0] + p[1] - 1.0).abs()
        })
        .fold(0.0, f64::max);
    o.check(
        worst_sum <= SOFTMAX_TOL,
        format!("softmax sum error {worst_sum:.2e}"),
    );

    let entries = enumerate_labeled(4, PairFilter::Distinct).unwrap();
    let disagree = entries
        .iter()
        .filter(|e| e.simple != simple_by_subgroups(&e.generators().unwrap()))
        .count();
    o.check(
        disagree == 0,
        format!(
            "S4 subgroup oracle: {disagree} of {} disagree",
            entries.len()
        ),
    );

    for (name, same) in deterministic(dir) {
        o.check(same, format!("{name} reruns byte-identical"));
    }
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    let r = run(&["verify", "theorem1"], Duration::from_secs(3600));
    let lines: Vec<&str> = r
        .stdout
        .lines()
        .filter(|l| l.contains("separated="))
        .collect();
    o.check(
        r.code == Some(0),
        format!("{} in {:.1?}", lines.join(", "), r.elapsed),
    );
    o
}

fn main() {
    let quick = std::env::var("SIMPLEGRP_ACCEPTANCE_QUICK").is_ok_and(|v| v == "1");
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Check)> = vec![
        ("census exactness", Box::new(|| criterion_1(d))),
        ("simple fractions", Box::new(|| criterion_2(d, quick))),
        ("unranking fidelity", Box::new(criterion_3)),
        ("proposition verification", Box::new(|| criterion_4(quick))),
        ("Mathieu fixtures", Box::new(criterion_5)),
        ("matrix classifiers", Box::new(|| criterion_6(d, quick))),
        ("invariant features", Box::new(|| criterion_7(d))),
        ("order-profile features", Box::new(|| criterion_8(d))),
        ("property suite", Box::new(|| criterion_9(d))),
        (
            "separation by order and element orders",
            Box::new(criterion_10),
        ),
    ];
    let mut passed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        passed += usize::from(o.pass);
        println!(
            "{} criterion {} {name} ({:.1?})",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed()
        );
        for d in &o.details {
            println!("    {d}");
        }
    }
    println!("acceptance: {passed} of {} criteria passed", criteria.len());
}
