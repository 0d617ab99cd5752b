use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::net::{predict_class, Mlp, Workspace};
use super::optim::{lr_schedule, OptimizerState};
use super::{MlpConfig, Optimizer, TrainConfig};
use crate::dataset::{featurize, DatasetEntry, FeatureMode, SplitPlan};
use crate::error::{Error, Result};
use crate::rng;

/// Rows evaluated per forward pass.
const EVAL_CHUNK: usize = 1024;

/// Featurized dataset held as a dense row-major `f32` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Samples {
    dim: usize,
    x: Vec<f32>,
    /// 0 for simple, 1 for non-simple.
    labels: Vec<u8>,
    /// Class predicted by [`parity_baseline`].
    parity: Vec<u8>,
}

impl Samples {
    pub fn from_entries(entries: &[DatasetEntry], mode: FeatureMode) -> Result<Self> {
        let first = entries
            .first()
            .ok_or_else(|| Error::domain("cannot featurize an empty dataset"))?;
        let dim = mode.dimension(first.degree);
        let rows: Vec<Vec<f64>> = entries
            .par_iter()
            .map(|e| featurize(e, mode).map(|v| v.values))
            .collect::<Result<_>>()?;
        if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
            return Err(Error::domain(format!(
                "entry {bad} has {} features, expected {dim}; mixed degrees?",
                rows[bad].len()
            )));
        }
        Ok(Self {
            dim,
            x: rows.into_iter().flatten().map(|v| v as f32).collect(),
            labels: entries.iter().map(|e| u8::from(!e.simple)).collect(),
            parity: entries.iter().map(parity_baseline).collect::<Result<_>>()?,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    fn row(&self, i: usize) -> &[f32] {
        &self.x[i * self.dim..(i + 1) * self.dim]
    }

    fn gather(&self, idx: &[usize], x: &mut Vec<f32>, y: &mut Vec<u8>) {
        x.clear();
        y.clear();
        for &i in idx {
            x.extend_from_slice(self.row(i));
            y.push(self.labels[i]);
        }
    }
}

/// Predicts class 0 ("simple") exactly when both generators are even.
pub fn parity_baseline(entry: &DatasetEntry) -> Result<u8> {
    let [p, q] = entry.generators()?;
    Ok(u8::from(p.sign() < 0 || q.sign() < 0))
}

/// Counts indexed `[actual][predicted]`; class 0 is "simple".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 2]; 2],
}

impl ConfusionMatrix {
    pub fn record(&mut self, actual: u8, predicted: u8) {
        self.counts[actual as usize][predicted as usize] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn accuracy(&self) -> f64 {
        (self.counts[0][0] + self.counts[1][1]) as f64 / self.total() as f64
    }

    /// Diagonal over row sum; `None` when the class is absent.
    pub fn class_accuracy(&self, class: usize) -> Option<f64> {
        let row = self.counts[class][0] + self.counts[class][1];
        (row > 0).then(|| self.counts[class][class] as f64 / row as f64)
    }
}

/// Predictions of a network on part of a dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub confusion: ConfusionMatrix,
    pub accuracy: f64,
    pub class_accuracy: [Option<f64>; 2],
    /// Percentage of rows where the prediction differs from the parity baseline.
    pub parity_err: f64,
    /// Percentage of rows where the prediction differs from the label.
    pub simplicity_err: f64,
}

pub fn evaluate(net: &Mlp<f32>, samples: &Samples, idx: &[usize]) -> Result<Evaluation> {
    if idx.is_empty() {
        return Err(Error::domain("cannot evaluate on an empty set"));
    }
    if net.config().input_dim != samples.dim {
        return Err(Error::domain(format!(
            "network expects {} features, dataset has {}",
            net.config().input_dim,
            samples.dim
        )));
    }
    let mut confusion = ConfusionMatrix::default();
    let mut parity_disagree = 0u64;
    let (mut x, mut y) = (Vec::new(), Vec::new());
    let mut ws = Workspace::default();
    for chunk in idx.chunks(EVAL_CHUNK) {
        samples.gather(chunk, &mut x, &mut y);
        let logits = net.logits_into(net.params(), &x, chunk.len(), &mut ws);
        for ((z, &label), &i) in logits.chunks_exact(2).zip(&y).zip(chunk) {
            let predicted = predict_class(z[0], z[1]) as u8;
            confusion.record(label, predicted);
            parity_disagree += u64::from(predicted != samples.parity[i]);
        }
    }
    let n = idx.len() as f64;
    let accuracy = confusion.accuracy();
    Ok(Evaluation {
        confusion,
        accuracy,
        class_accuracy: [confusion.class_accuracy(0), confusion.class_accuracy(1)],
        parity_err: 100.0 * parity_disagree as f64 / n,
        simplicity_err: 100.0 * (1.0 - accuracy),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpochRecord {
    pub epoch: usize,
    pub learning_rate: f64,
    /// Mean batch loss over the epoch.
    pub train_loss: f64,
    /// Accuracy of the pre-update predictions made during the epoch.
    pub train_acc: f64,
    pub val_acc: f64,
    pub parity_err: f64,
    pub simplicity_err: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    pub fold: usize,
    pub train_size: usize,
    pub eval_size: usize,
    pub epochs: Vec<EpochRecord>,
    pub steps: u64,
    /// Evaluation of the final network on the held-out rows.
    pub evaluation: Evaluation,
}

impl TrainReport {
    pub fn final_val_acc(&self) -> f64 {
        self.evaluation.accuracy
    }
}

/// Trains a fresh network on `train_idx` and evaluates it on `eval_idx` after
/// every epoch.
///
/// Initial weights come from the seed and fold; each epoch's shuffle is drawn
/// from a stream derived from the seed, fold and epoch, so a run is a pure
/// function of its inputs.
pub fn train(
    samples: &Samples,
    train_idx: &[usize],
    eval_idx: &[usize],
    mlp: &MlpConfig,
    cfg: &TrainConfig,
    fold: usize,
) -> Result<(Mlp<f32>, TrainReport)> {
    cfg.validate()?;
    if mlp.input_dim != samples.dim {
        return Err(Error::domain(format!(
            "architecture expects {} features, dataset has {}",
            mlp.input_dim, samples.dim
        )));
    }
    if train_idx.is_empty() {
        return Err(Error::domain("training set is empty"));
    }
    let mut net = Mlp::<f32>::init(mlp, &mut rng::init_stream(cfg.seed, fold))?;
    let mut trainer = match cfg.optimizer {
        Optimizer::SgdNesterov { momentum } => Stepper::Nesterov {
            velocity: vec![0.0; net.param_count()],
            momentum: momentum as f32,
            steps: 0,
        },
        Optimizer::Adam { .. } => Stepper::Generic {
            state: OptimizerState::new(cfg.optimizer, net.param_count()),
            grads: vec![0.0; net.param_count()],
        },
    };
    let mut ws = Workspace::default();
    let (mut x, mut y) = (Vec::new(), Vec::new());
    let mut order = train_idx.to_vec();
    let mut lr = cfg.learning_rate;
    let mut epochs = Vec::with_capacity(cfg.epochs);

    for epoch in 1..=cfg.epochs {
        order.copy_from_slice(train_idx);
        order.shuffle(&mut rng::epoch_stream(cfg.seed, fold, epoch));
        let (mut loss_sum, mut correct) = (0.0, 0usize);
        for batch in order.chunks(cfg.batch_size) {
            samples.gather(batch, &mut x, &mut y);
            let (loss, hits) = trainer.step(&mut net, &x, &y, lr, &mut ws);
            if !loss.is_finite() {
                return Err(Error::domain(format!(
                    "training diverged in fold {fold}, epoch {epoch}"
                )));
            }
            loss_sum += loss * batch.len() as f64;
            correct += hits;
        }
        let eval = evaluate(&trainer.weights(&net), samples, eval_idx)?;
        epochs.push(EpochRecord {
            epoch,
            learning_rate: lr,
            train_loss: loss_sum / order.len() as f64,
            train_acc: correct as f64 / order.len() as f64,
            val_acc: eval.accuracy,
            parity_err: eval.parity_err,
            simplicity_err: eval.simplicity_err,
        });
        lr = lr_schedule(lr, cfg.decay_gamma);
    }
    let net = trainer.weights(&net);
    let evaluation = evaluate(&net, samples, eval_idx)?;
    let report = TrainReport {
        fold,
        train_size: train_idx.len(),
        eval_size: eval_idx.len(),
        epochs,
        steps: trainer.steps(),
        evaluation,
    };
    Ok((net, report))
}

enum Stepper {
    /// Fused SGD with Nesterov momentum; the network holds the look-ahead point.
    Nesterov {
        velocity: Vec<f32>,
        momentum: f32,
        steps: u64,
    },
    Generic {
        state: OptimizerState<f32>,
        grads: Vec<f32>,
    },
}

impl Stepper {
    fn step(
        &mut self,
        net: &mut Mlp<f32>,
        x: &[f32],
        y: &[u8],
        lr: f64,
        ws: &mut Workspace<f32>,
    ) -> (f64, usize) {
        match self {
            Stepper::Nesterov {
                velocity,
                momentum,
                steps,
            } => {
                *steps += 1;
                net.nesterov_step(x, y, velocity, lr as f32, *momentum, ws)
            }
            Stepper::Generic { state, grads } => {
                let mut ahead = Vec::new();
                let at: &[f32] = if state.lookahead(net.params(), &mut ahead) {
                    &ahead
                } else {
                    net.params()
                };
                let out = net.loss_and_gradients(at, x, y, grads, ws);
                state.step(net.params_mut(), grads, lr);
                out
            }
        }
    }

    /// The trained weights, as opposed to the stored look-ahead point.
    fn weights(&self, net: &Mlp<f32>) -> Mlp<f32> {
        match self {
            Stepper::Nesterov {
                velocity, momentum, ..
            } => net.nesterov_weights(velocity, *momentum),
            Stepper::Generic { .. } => net.clone(),
        }
    }

    fn steps(&self) -> u64 {
        match self {
            Stepper::Nesterov { steps, .. } => *steps,
            Stepper::Generic { state, .. } => state.steps(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossValReport {
    pub folds: Vec<TrainReport>,
    pub mean_val_acc: f64,
}

/// One training run per fold of `plan`, each validated on its held-out fold.
/// Folds run in parallel; results do not depend on the worker count.
pub fn crossval(
    samples: &Samples,
    plan: &SplitPlan,
    mlp: &MlpConfig,
    cfg: &TrainConfig,
) -> Result<CrossValReport> {
    if plan.fold_assignments.len() != samples.len() {
        return Err(Error::domain(format!(
            "split covers {} entries, dataset has {}",
            plan.fold_assignments.len(),
            samples.len()
        )));
    }
    let folds: Vec<TrainReport> = (0..plan.fold_count)
        .into_par_iter()
        .map(|fold| {
            train(
                samples,
                &plan.training_indices(fold),
                &plan.validation_indices(fold),
                mlp,
                cfg,
                fold,
            )
            .map(|(_, report)| report)
        })
        .collect::<Result<_>>()?;
    let mean_val_acc =
        folds.iter().map(TrainReport::final_val_acc).sum::<f64>() / folds.len() as f64;
    Ok(CrossValReport {
        folds,
        mean_val_acc,
    })
}

pub fn render_curves_csv(reports: &[TrainReport]) -> String {
    let mut out =
        String::from("epoch,fold,train_loss,train_acc,val_acc,parity_err,simplicity_err\n");
    for r in reports {
        for e in &r.epochs {
            let _ = writeln!(
                out,
                "{},{},{:.6},{:.6},{:.6},{:.4},{:.4}",
                e.epoch,
                r.fold,
                e.train_loss,
                e.train_acc,
                e.val_acc,
                e.parity_err,
                e.simplicity_err
            );
        }
    }
    out
}
