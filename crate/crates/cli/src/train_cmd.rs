use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use serde::Serialize;
use simplegrp::dataset::{
    balance, balanced_sample, enumerate_labeled, kfold_split, load, subset_percent,
    train_test_split, DatasetEntry, FeatureMode, PairFilter,
};
use simplegrp::nn::{
    crossval, render_curves_csv, train, MlpConfig, Optimizer, Preset, Samples, TrainReport,
};

use crate::args::TrainArgs;
use crate::{report, Outcome};

/// Simple fraction of distinct pairs, used to size percentage subsets of
/// degrees too large to enumerate.
const REFERENCE_SIMPLE_FRACTION: [(usize, f64); 2] = [(7, 0.2315), (8, 0.2133)];

#[derive(Serialize)]
struct DataSummary {
    degree: usize,
    source: String,
    entries: usize,
    simple: usize,
}

#[derive(Serialize)]
struct TrainResult {
    data: DataSummary,
    features: &'static str,
    preset: Preset,
    mlp: MlpConfig,
    mode: &'static str,
    runs: Vec<TrainReport>,
    mean_val_acc: f64,
    /// Mean over runs of the per-class accuracy; class 0 is simple.
    mean_class_accuracy: [Option<f64>; 2],
}

fn build_data(a: &TrainArgs) -> Result<(usize, Vec<DatasetEntry>, String)> {
    let seed = a.seed.seed;
    let filter = PairFilter::from(a.filter);
    ensure!(
        a.percent > 0.0 && a.percent <= 100.0,
        "--percent {} must be in (0, 100]",
        a.percent
    );
    if let Some(path) = &a.input {
        ensure!(a.sample.is_none(), "--sample cannot be combined with --in");
        let (header, mut entries) =
            load(path).with_context(|| format!("cannot read {}", path.display()))?;
        if a.percent < 100.0 {
            entries = subset_percent(&entries, a.percent, seed)?;
        }
        return Ok((header.degree, entries, format!("file {}", path.display())));
    }
    let n = a.n.context("either --in or --n is required")?;
    if let Some(count) = a.sample {
        ensure!(
            count >= 2 && count % 2 == 0,
            "--sample {count} must be a positive even count"
        );
        ensure!(
            a.percent == 100.0,
            "--percent cannot be combined with --sample"
        );
        let entries = balanced_sample(n, count / 2, seed, filter)?;
        return Ok((n, entries, format!("balanced sample of {count}")));
    }
    if n <= 6 {
        let all = enumerate_labeled(n, filter)?;
        let mut entries = balance(&all, seed)?;
        if a.percent < 100.0 {
            entries = subset_percent(&entries, a.percent, seed)?;
        }
        return Ok((
            n,
            entries,
            format!("{}% of the balanced enumeration", a.percent),
        ));
    }
    let Some(&(_, fraction)) = REFERENCE_SIMPLE_FRACTION.iter().find(|(d, _)| *d == n) else {
        bail!("degree {n} needs --in or --sample");
    };
    let per_class = (a.percent / 100.0 * fraction * filter.pair_count(n) as f64).round() as usize;
    ensure!(per_class > 0, "{}% of degree {n} is empty", a.percent);
    let entries = balanced_sample(n, per_class, seed, filter)?;
    Ok((
        n,
        entries,
        format!("{}% of the balanced set, sampled", a.percent),
    ))
}

fn resolve_preset(a: &TrainArgs, degree: usize) -> Result<Preset> {
    let name = a.preset.clone().unwrap_or_else(|| format!("n{degree}"));
    let mut preset = Preset::by_name(&name)?;
    if let Some(d) = preset.degree {
        ensure!(
            d == degree,
            "preset {name} is for degree {d}, but the data has degree {degree}"
        );
    }
    let cfg = &mut preset.train;
    cfg.seed = a.seed.seed;
    if let Some(e) = a.epochs {
        cfg.epochs = e;
    }
    if let Some(b) = a.batch {
        cfg.batch_size = b;
    }
    if let Some(lr) = a.lr {
        cfg.learning_rate = lr;
    }
    if let Some(g) = a.gamma {
        cfg.decay_gamma = g;
    }
    if let Some(m) = a.momentum {
        match &mut cfg.optimizer {
            Optimizer::SgdNesterov { momentum } => *momentum = m,
            Optimizer::Adam { .. } => bail!("--momentum applies only to SGD presets"),
        }
    }
    cfg.validate()?;
    Ok(preset)
}

pub fn run(a: &TrainArgs, kfold_only: bool) -> Result<Outcome> {
    if kfold_only {
        ensure!(
            a.train_size.is_none(),
            "crossval does not take --train-size; use train"
        );
    }
    ensure!(
        !(a.train_size.is_some() && a.folds.is_some()),
        "--folds and --train-size are mutually exclusive"
    );
    if let Some(n) = a.n {
        resolve_preset(a, n)?;
    }
    let t = Instant::now();
    let (degree, entries, source) = build_data(a)?;
    let preset = resolve_preset(a, degree)?;
    let mode = FeatureMode::from(a.features);
    let samples = Samples::from_entries(&entries, mode)?;
    let mlp = preset.mlp(samples.dim());
    mlp.validate()?;
    let simple = entries.iter().filter(|e| e.simple).count();
    eprintln!(
        "{} entries ({simple} simple) of degree {degree}, {} features, ready in {:.1?}",
        entries.len(),
        samples.dim(),
        t.elapsed()
    );

    let t = Instant::now();
    let (mode_name, runs) = match a.train_size {
        Some(m) => {
            let (train_idx, test_idx) = train_test_split(samples.len(), m, a.seed.seed)?;
            let (_, r) = train(&samples, &train_idx, &test_idx, &mlp, &preset.train, 0)?;
            ("holdout", vec![r])
        }
        None => {
            let folds = a.folds.unwrap_or(5);
            let plan = kfold_split(samples.len(), folds, a.seed.seed)?;
            (
                "kfold",
                crossval(&samples, &plan, &mlp, &preset.train)?.folds,
            )
        }
    };
    eprintln!("trained {} run(s) in {:.1?}", runs.len(), t.elapsed());

    let mean = |f: &dyn Fn(&TrainReport) -> Option<f64>| -> Option<f64> {
        let vals: Option<Vec<f64>> = runs.iter().map(f).collect();
        vals.map(|v| v.iter().sum::<f64>() / v.len() as f64)
    };
    let mean_val_acc = mean(&|r| Some(r.final_val_acc())).unwrap_or(0.0);
    let mean_class_accuracy = [0, 1].map(|c| mean(&|r| r.evaluation.class_accuracy[c]));
    for r in &runs {
        let [c0, c1] = r.evaluation.class_accuracy;
        println!(
            "run {} accuracy {:.4} simple {} non-simple {}",
            r.fold,
            r.final_val_acc(),
            fmt_opt(c0),
            fmt_opt(c1)
        );
    }
    println!(
        "mean accuracy {mean_val_acc:.4} simple {} non-simple {}",
        fmt_opt(mean_class_accuracy[0]),
        fmt_opt(mean_class_accuracy[1])
    );

    if let Some(path) = &a.curves {
        report::write_text(path, &render_curves_csv(&runs))?;
    }
    let result = TrainResult {
        data: DataSummary {
            degree,
            source,
            entries: entries.len(),
            simple,
        },
        features: mode.as_str(),
        preset,
        mlp,
        mode: mode_name,
        runs,
        mean_val_acc,
        mean_class_accuracy,
    };
    let command = if kfold_only { "crossval" } else { "train" };
    report::maybe_write(
        a.report.as_deref(),
        command,
        a,
        &[("master", a.seed.seed)],
        &result,
    )?;
    Ok(Outcome::Ok)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.4}"))
}
