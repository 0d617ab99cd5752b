use serde::{Deserialize, Serialize};

use super::net::Real;

/// Update rule and its constants.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Optimizer {
    /// Gradient evaluated at the look-ahead point `w + μv`, then
    /// `v ← μv − lr·g` and `w ← w + v`.
    SgdNesterov { momentum: f64 },
    Adam {
        beta1: f64,
        beta2: f64,
        epsilon: f64,
    },
}

impl Optimizer {
    pub const ADAM_DEFAULT: Optimizer = Optimizer::Adam {
        beta1: 0.9,
        beta2: 0.999,
        epsilon: 1e-8,
    };

    pub fn as_str(&self) -> &'static str {
        match self {
            Optimizer::SgdNesterov { .. } => "sgd_nesterov",
            Optimizer::Adam { .. } => "adam",
        }
    }
}

/// Per-parameter optimizer memory.
#[derive(Clone, Debug)]
pub struct OptimizerState<T> {
    optimizer: Optimizer,
    /// Velocity for Nesterov, first moment for Adam.
    first: Vec<T>,
    /// Second moment (Adam only).
    second: Vec<T>,
    steps: u64,
}

impl<T: Real> OptimizerState<T> {
    pub fn new(optimizer: Optimizer, params: usize) -> Self {
        let second = match optimizer {
            Optimizer::Adam { .. } => vec![T::zero(); params],
            Optimizer::SgdNesterov { .. } => Vec::new(),
        };
        Self {
            optimizer,
            first: vec![T::zero(); params],
            second,
            steps: 0,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Writes the point at which the next gradient should be evaluated into
    /// `buf`. Returns `false`, leaving `buf` alone, when that point is `params` itself.
    pub fn lookahead(&self, params: &[T], buf: &mut Vec<T>) -> bool {
        match self.optimizer {
            Optimizer::SgdNesterov { momentum } if momentum != 0.0 && self.steps > 0 => {
                let mu = T::from(momentum).expect("finite");
                buf.clear();
                buf.extend(params.iter().zip(&self.first).map(|(&w, &v)| w + mu * v));
                true
            }
            _ => false,
        }
    }

    /// Applies one update with gradients taken at the look-ahead point.
    pub fn step(&mut self, params: &mut [T], grads: &[T], lr: f64) {
        assert_eq!(params.len(), grads.len());
        assert_eq!(params.len(), self.first.len());
        self.steps += 1;
        match self.optimizer {
            Optimizer::SgdNesterov { momentum } => {
                let (mu, lr) = (
                    T::from(momentum).expect("finite"),
                    T::from(lr).expect("finite"),
                );
                for ((w, v), &g) in params.iter_mut().zip(&mut self.first).zip(grads) {
                    *v = mu * *v - lr * g;
                    *w = *w + *v;
                }
            }
            Optimizer::Adam {
                beta1,
                beta2,
                epsilon,
            } => {
                let t = self.steps as i32;
                let step = lr / (1.0 - beta1.powi(t));
                let correction2 = 1.0 - beta2.powi(t);
                let [b1, b2, step, c2, eps] =
                    [beta1, beta2, step, correction2, epsilon].map(|v| T::from(v).expect("finite"));
                for (((w, m), v), &g) in params
                    .iter_mut()
                    .zip(&mut self.first)
                    .zip(&mut self.second)
                    .zip(grads)
                {
                    *m = b1 * *m + (T::one() - b1) * g;
                    *v = b2 * *v + (T::one() - b2) * g * g;
                    *w = *w - step * *m / ((*v / c2).sqrt() + eps);
                }
            }
        }
    }
}

/// Per-epoch decay: `lr_{i+1} = (1 − γ)·lr_i`.
pub fn lr_schedule(lr: f64, gamma: f64) -> f64 {
    (1.0 - gamma) * lr
}
