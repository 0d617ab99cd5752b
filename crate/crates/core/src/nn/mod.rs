//! Dense feed-forward classifiers trained from scratch.
//!
//! Networks map a feature vector to two softmax outputs; class 0 is "simple"
//! and class 1 "non-simple". Two regimes are supported: SGD with Nesterov
//! momentum on a squared-error loss with per-epoch learning-rate decay, and
//! Adam. Training runs in `f32`; the network code is generic so that gradient
//! checks can run in `f64`.

mod net;
mod optim;
mod train;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use net::{predict_class, softmax_f64, Mlp, Real, Workspace, OUTPUTS};
pub use optim::{lr_schedule, Optimizer, OptimizerState};
pub use train::{
    crossval, evaluate, parity_baseline, render_curves_csv, train, ConfusionMatrix, CrossValReport,
    EpochRecord, Evaluation, Samples, TrainReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Activation {
    Relu,
    Sigmoid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MlpConfig {
    pub input_dim: usize,
    pub hidden_layers: Vec<usize>,
    pub hidden_activation: Activation,
}

impl MlpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.input_dim == 0 {
            return Err(Error::domain("input dimension must be at least 1"));
        }
        if self.hidden_layers.contains(&0) {
            return Err(Error::domain("hidden layer widths must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub optimizer: Optimizer,
    pub learning_rate: f64,
    /// Per-epoch decay factor γ; see [`lr_schedule`].
    pub decay_gamma: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub seed: u64,
}

impl TrainConfig {
    pub fn momentum(&self) -> f64 {
        match self.optimizer {
            Optimizer::SgdNesterov { momentum } => momentum,
            Optimizer::Adam { .. } => 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::domain(format!(
                "learning rate {} must be positive",
                self.learning_rate
            )));
        }
        if !(0.0..1.0).contains(&self.momentum()) {
            return Err(Error::domain(format!(
                "momentum {} must be in [0, 1)",
                self.momentum()
            )));
        }
        if !(0.0..1.0).contains(&self.decay_gamma) {
            return Err(Error::domain(format!(
                "decay {} must be in [0, 1)",
                self.decay_gamma
            )));
        }
        if self.batch_size == 0 {
            return Err(Error::domain("batch size must be at least 1"));
        }
        Ok(())
    }
}

/// Hidden width used by every experiment-one preset.
pub const PRESET_WIDTH: usize = 256;
/// Experiment-one presets update after every example.
pub const SGD_PRESET_BATCH: usize = 1;
pub const DEFAULT_BATCH: usize = 32;

/// Named architecture and training hyperparameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub name: String,
    /// Degree the preset was tuned for, if any.
    pub degree: Option<usize>,
    pub hidden_layers: Vec<usize>,
    pub hidden_activation: Activation,
    pub train: TrainConfig,
}

impl Preset {
    pub const NAMES: [&'static str; 6] = ["n5", "n6", "n7", "n8", "exp2", "exp3"];

    pub fn by_name(name: &str) -> Result<Self> {
        let sgd = |degree, lr, momentum, layers, gamma, epochs| Preset {
            name: name.to_string(),
            degree: Some(degree),
            hidden_layers: vec![PRESET_WIDTH; layers],
            hidden_activation: Activation::Relu,
            train: TrainConfig {
                optimizer: Optimizer::SgdNesterov { momentum },
                learning_rate: lr,
                decay_gamma: gamma,
                epochs,
                batch_size: SGD_PRESET_BATCH,
                seed: 0,
            },
        };
        let adam = |hidden: &[usize], epochs| Preset {
            name: name.to_string(),
            degree: None,
            hidden_layers: hidden.to_vec(),
            hidden_activation: Activation::Sigmoid,
            train: TrainConfig {
                optimizer: Optimizer::ADAM_DEFAULT,
                learning_rate: 1e-3,
                decay_gamma: 0.0,
                epochs,
                batch_size: DEFAULT_BATCH,
                seed: 0,
            },
        };
        Ok(match name {
            "n5" => sgd(5, 0.05, 0.0, 1, 0.1, 30),
            "n6" => sgd(6, 0.001, 0.01, 3, 0.05, 30),
            "n7" => sgd(7, 0.01, 0.1, 9, 0.05, 6),
            "n8" => sgd(8, 0.01, 0.1, 9, 0.05, 6),
            "exp2" => adam(&[1000, 500, 200], 100),
            "exp3" => adam(&[100, 50, 20], 300),
            _ => {
                return Err(Error::domain(format!(
                    "unknown preset {name:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn mlp(&self, input_dim: usize) -> MlpConfig {
        MlpConfig {
            input_dim,
            hidden_layers: self.hidden_layers.clone(),
            hidden_activation: self.hidden_activation,
        }
    }
}
