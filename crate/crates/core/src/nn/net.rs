use num_traits::Float;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Activation, MlpConfig};
use crate::error::{Error, Result};

/// Number of output classes. Class 0 is "simple".
pub const OUTPUTS: usize = 2;

/// Floating-point type a network can be trained in.
pub trait Real: Float + std::iter::Sum + Send + Sync + std::fmt::Debug + 'static {
    /// `c = a·b + beta·c` for a row-major `m×n` output `c`, with `a` (`m×k`)
    /// and `b` (`k×n`) addressed through explicit row and column strides.
    #[allow(clippy::too_many_arguments)]
    fn gemm(
        m: usize,
        k: usize,
        n: usize,
        a: &[Self],
        a_strides: (usize, usize),
        b: &[Self],
        b_strides: (usize, usize),
        beta: Self,
        c: &mut [Self],
    );
}

fn check_extent(len: usize, rows: usize, cols: usize, (rs, cs): (usize, usize)) {
    if rows > 0 && cols > 0 {
        assert!(
            (rows - 1) * rs + (cols - 1) * cs < len,
            "matrix view out of bounds"
        );
    }
}

macro_rules! impl_real {
    ($t:ty, $gemm:path) => {
        impl Real for $t {
            fn gemm(
                m: usize,
                k: usize,
                n: usize,
                a: &[Self],
                a_strides: (usize, usize),
                b: &[Self],
                b_strides: (usize, usize),
                beta: Self,
                c: &mut [Self],
            ) {
                check_extent(a.len(), m, k, a_strides);
                check_extent(b.len(), k, n, b_strides);
                check_extent(c.len(), m, n, (n, 1));
                if m == 0 || n == 0 {
                    return;
                }
                // SAFETY: every view was bounds-checked above and `c` does not alias `a` or `b`.
                unsafe {
                    $gemm(
                        m,
                        k,
                        n,
                        1.0,
                        a.as_ptr(),
                        a_strides.0 as isize,
                        a_strides.1 as isize,
                        b.as_ptr(),
                        b_strides.0 as isize,
                        b_strides.1 as isize,
                        beta,
                        c.as_mut_ptr(),
                        n as isize,
                        1,
                    )
                }
            }
        }
    };
}

impl_real!(f32, matrixmultiply::sgemm);
impl_real!(f64, matrixmultiply::dgemm);

/// Position of one dense layer inside the flat parameter vector.
/// Weights are stored `inputs × outputs`, row-major, followed by the biases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct LayerShape {
    inputs: usize,
    outputs: usize,
    offset: usize,
}

impl LayerShape {
    fn weights(self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.inputs * self.outputs
    }

    fn biases(self) -> std::ops::Range<usize> {
        let start = self.offset + self.inputs * self.outputs;
        start..start + self.outputs
    }
}

/// Dense feed-forward classifier with a two-way softmax output.
#[derive(Clone, Debug, PartialEq)]
pub struct Mlp<T> {
    config: MlpConfig,
    layers: Vec<LayerShape>,
    params: Vec<T>,
}

impl<T: Real> Mlp<T> {
    /// A network with every weight and bias zero.
    pub fn zeros(config: &MlpConfig) -> Result<Self> {
        config.validate()?;
        let mut layers = Vec::new();
        let mut offset = 0;
        let mut inputs = config.input_dim;
        for &outputs in config.hidden_layers.iter().chain(&[OUTPUTS]) {
            layers.push(LayerShape {
                inputs,
                outputs,
                offset,
            });
            offset += inputs * outputs + outputs;
            inputs = outputs;
        }
        Ok(Self {
            config: config.clone(),
            layers,
            params: vec![T::zero(); offset],
        })
    }

    /// Random initialisation: uniform in `±1/sqrt(fan_in)` for ReLU and output
    /// layers and `±sqrt(6/(fan_in+fan_out))` for sigmoid layers. Biases start at zero.
    pub fn init(config: &MlpConfig, rng: &mut impl Rng) -> Result<Self> {
        let mut net = Self::zeros(config)?;
        let last = net.layers.len() - 1;
        for (l, shape) in net.layers.clone().into_iter().enumerate() {
            let limit = match config.hidden_activation {
                Activation::Sigmoid if l < last => {
                    (6.0 / (shape.inputs + shape.outputs) as f64).sqrt()
                }
                _ => 1.0 / (shape.inputs as f64).sqrt(),
            };
            for w in &mut net.params[shape.weights()] {
                *w = T::from(rng.gen_range(-limit..limit)).expect("finite");
            }
        }
        Ok(net)
    }

    pub fn config(&self) -> &MlpConfig {
        &self.config
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [T] {
        &mut self.params
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    /// Output probabilities for one feature vector. Softmax is taken in `f64`.
    pub fn forward(&self, features: &[T]) -> Result<[f64; 2]> {
        if features.len() != self.config.input_dim {
            return Err(Error::domain(format!(
                "feature length {} does not match input dimension {}",
                features.len(),
                self.config.input_dim
            )));
        }
        let mut ws = Workspace::default();
        let logits = self.logits_into(&self.params, features, 1, &mut ws);
        Ok(softmax_f64([logits[0], logits[1]]))
    }

    /// Logits of a row-major batch, using `params` in place of the network's own.
    pub(crate) fn logits_into<'w>(
        &self,
        params: &[T],
        x: &[T],
        batch: usize,
        ws: &'w mut Workspace<T>,
    ) -> &'w [T] {
        debug_assert_eq!(params.len(), self.params.len());
        debug_assert_eq!(x.len(), batch * self.config.input_dim);
        ws.activations.resize_with(self.layers.len(), Vec::new);
        let last = self.layers.len() - 1;
        for (l, shape) in self.layers.iter().enumerate() {
            let (done, rest) = ws.activations.split_at_mut(l);
            let input: &[T] = if l == 0 { x } else { &done[l - 1] };
            let out = &mut rest[0];
            out.clear();
            out.resize(batch * shape.outputs, T::zero());
            for row in out.chunks_exact_mut(shape.outputs) {
                row.copy_from_slice(&params[shape.biases()]);
            }
            affine_accumulate(batch, input, &params[shape.weights()], shape.outputs, out);
            if l < last {
                let act = self.config.hidden_activation;
                out.iter_mut().for_each(|z| *z = activate(act, *z));
            }
        }
        &ws.activations[last]
    }

    /// Mean squared error between softmax outputs and one-hot targets over a
    /// batch, and its gradient with respect to `params` written into `grads`.
    ///
    /// `labels[i]` is the target class of row `i`. Returns the loss and the
    /// number of rows whose argmax matched the label.
    pub fn loss_and_gradients(
        &self,
        params: &[T],
        x: &[T],
        labels: &[u8],
        grads: &mut [T],
        ws: &mut Workspace<T>,
    ) -> (f64, usize) {
        let batch = labels.len();
        assert!(batch > 0, "empty batch");
        assert_eq!(grads.len(), params.len());
        self.logits_into(params, x, batch, ws);
        let (loss, correct) = output_delta(labels, ws);
        let act = self.config.hidden_activation;
        let Workspace {
            activations,
            delta,
            scratch,
        } = ws;
        for (l, shape) in self.layers.iter().enumerate().rev() {
            let input: &[T] = if l == 0 { x } else { &activations[l - 1] };
            let (gw, gb) =
                grads[shape.offset..shape.biases().end].split_at_mut(shape.inputs * shape.outputs);
            weight_gradient(batch, input, delta, gw);
            gb.iter_mut().for_each(|g| *g = T::zero());
            for row in delta.chunks_exact(shape.outputs) {
                axpy(T::one(), row, gb);
            }
            if l > 0 {
                backpropagate(batch, delta, &params[shape.weights()], input, act, scratch);
                std::mem::swap(delta, scratch);
            }
        }
        (loss, correct)
    }

    /// One step of SGD with Nesterov momentum, fused into backpropagation.
    ///
    /// The stored parameters are the look-ahead point `u = w + μv`, so the
    /// gradient is taken at the network's own parameters and the update
    /// `v' = μv − lr·g`, `w' = w + v'` becomes `u' = u + (1+μ)v' − μv`.
    /// [`Mlp::nesterov_weights`] recovers `w`. With `μ = 0` this is plain SGD.
    pub fn nesterov_step(
        &mut self,
        x: &[T],
        labels: &[u8],
        velocity: &mut [T],
        lr: T,
        momentum: T,
        ws: &mut Workspace<T>,
    ) -> (f64, usize) {
        let batch = labels.len();
        assert!(batch > 0, "empty batch");
        assert_eq!(velocity.len(), self.params.len());
        self.logits_into(&self.params, x, batch, ws);
        let (loss, correct) = output_delta(labels, ws);
        let act = self.config.hidden_activation;
        let Workspace {
            activations,
            delta,
            scratch,
        } = ws;
        // Decaying velocities are flushed to zero well before they or their
        // products turn subnormal; subnormal arithmetic is slow enough to dominate a step.
        let tiny = T::min_positive_value() / T::epsilon();
        let flush = |v: T| if v.abs() < tiny { T::zero() } else { v };
        let update = |u: &mut [T], v: &mut [T], g: Option<&[T]>| match g {
            Some(g) => {
                for ((u, v), &g) in u.iter_mut().zip(v.iter_mut()).zip(g) {
                    let vn = flush(momentum * *v - lr * g);
                    *u = *u + (T::one() + momentum) * vn - momentum * *v;
                    *v = vn;
                }
            }
            // A zero gradient still moves the parameters while momentum is on.
            None if momentum != T::zero() => {
                for (u, v) in u.iter_mut().zip(v.iter_mut()) {
                    let vn = flush(momentum * *v);
                    *u = *u + (T::one() + momentum) * vn - momentum * *v;
                    *v = vn;
                }
            }
            None => {}
        };
        let mut row = Vec::new();
        for (l, &shape) in self.layers.iter().enumerate().rev() {
            let input: &[T] = if l == 0 { x } else { &activations[l - 1] };
            if l > 0 {
                // Uses this layer's weights before they are updated.
                backpropagate(
                    batch,
                    delta,
                    &self.params[shape.weights()],
                    input,
                    act,
                    scratch,
                );
            }
            for i in 0..shape.inputs {
                row.clear();
                row.resize(shape.outputs, T::zero());
                let mut touched = false;
                for (xr, dr) in input
                    .chunks_exact(shape.inputs)
                    .zip(delta.chunks_exact(shape.outputs))
                {
                    if xr[i] != T::zero() {
                        axpy(xr[i], dr, &mut row);
                        touched = true;
                    }
                }
                let span = shape.offset + i * shape.outputs..shape.offset + (i + 1) * shape.outputs;
                update(
                    &mut self.params[span.clone()],
                    &mut velocity[span],
                    touched.then_some(&row[..]),
                );
            }
            row.clear();
            row.resize(shape.outputs, T::zero());
            for dr in delta.chunks_exact(shape.outputs) {
                axpy(T::one(), dr, &mut row);
            }
            update(
                &mut self.params[shape.biases()],
                &mut velocity[shape.biases()],
                Some(&row),
            );
            if l > 0 {
                std::mem::swap(delta, scratch);
            }
        }
        (loss, correct)
    }

    /// The weights `w = u − μv` of a network trained with [`Mlp::nesterov_step`].
    pub fn nesterov_weights(&self, velocity: &[T], momentum: T) -> Self {
        let mut out = self.clone();
        if momentum != T::zero() {
            for (w, &v) in out.params.iter_mut().zip(velocity) {
                *w = *w - momentum * v;
            }
        }
        out
    }
}

/// Writes `d loss / d logits` into `ws.delta` for the logits in the last
/// activation buffer. Returns the mean loss and the number of correct argmaxes.
fn output_delta<T: Real>(labels: &[u8], ws: &mut Workspace<T>) -> (f64, usize) {
    let batch = labels.len();
    let scale = T::from(2.0 / batch as f64).expect("finite");
    let logits = ws.activations.last().expect("network has an output layer");
    let mut loss = 0.0;
    let mut correct = 0;
    ws.delta.clear();
    ws.delta.resize(batch * OUTPUTS, T::zero());
    for ((z, d), &y) in logits
        .chunks_exact(OUTPUTS)
        .zip(ws.delta.chunks_exact_mut(OUTPUTS))
        .zip(labels)
    {
        let y = y as usize;
        let p = softmax([z[0], z[1]]);
        if predict_class(z[0], z[1]) == y {
            correct += 1;
        }
        let mut dp = [T::zero(); OUTPUTS];
        for j in 0..OUTPUTS {
            let target = if j == y { T::one() } else { T::zero() };
            let diff = p[j] - target;
            let diff64 = diff.to_f64().expect("finite");
            loss += diff64 * diff64;
            dp[j] = scale * diff;
        }
        let dot = p[0] * dp[0] + p[1] * dp[1];
        for j in 0..OUTPUTS {
            d[j] = p[j] * (dp[j] - dot);
        }
    }
    (loss / batch as f64, correct)
}

/// Reusable buffers for batched passes.
#[derive(Debug)]
pub struct Workspace<T> {
    activations: Vec<Vec<T>>,
    delta: Vec<T>,
    scratch: Vec<T>,
}

impl<T> Default for Workspace<T> {
    fn default() -> Self {
        Self {
            activations: Vec::new(),
            delta: Vec::new(),
            scratch: Vec::new(),
        }
    }
}

/// Below this many rows the per-call packing inside `gemm` costs more than
/// it saves, and plain row loops are used instead.
const GEMM_MIN_ROWS: usize = 8;

/// `out += x · w` for `x` of `batch` rows and `w` of shape `inputs × outputs`.
fn affine_accumulate<T: Real>(batch: usize, x: &[T], w: &[T], outputs: usize, out: &mut [T]) {
    let inputs = w.len() / outputs;
    if batch >= GEMM_MIN_ROWS {
        T::gemm(
            batch,
            inputs,
            outputs,
            x,
            (inputs, 1),
            w,
            (outputs, 1),
            T::one(),
            out,
        );
        return;
    }
    for (xr, or) in x.chunks_exact(inputs).zip(out.chunks_exact_mut(outputs)) {
        for (&xi, wr) in xr.iter().zip(w.chunks_exact(outputs)) {
            // Zero inputs are common: one-hot matrix features and inactive ReLUs.
            if xi != T::zero() {
                axpy(xi, wr, or);
            }
        }
    }
}

/// `gw = xᵀ · delta`.
fn weight_gradient<T: Real>(batch: usize, x: &[T], delta: &[T], gw: &mut [T]) {
    let outputs = delta.len() / batch;
    let inputs = x.len() / batch;
    if batch >= GEMM_MIN_ROWS {
        T::gemm(
            inputs,
            batch,
            outputs,
            x,
            (1, inputs),
            delta,
            (outputs, 1),
            T::zero(),
            gw,
        );
        return;
    }
    gw.iter_mut().for_each(|g| *g = T::zero());
    for (xr, dr) in x.chunks_exact(inputs).zip(delta.chunks_exact(outputs)) {
        for (&xi, gr) in xr.iter().zip(gw.chunks_exact_mut(outputs)) {
            if xi != T::zero() {
                axpy(xi, dr, gr);
            }
        }
    }
}

/// `out = (delta · wᵀ) ⊙ act'(input)`: the delta of the layer below.
fn backpropagate<T: Real>(
    batch: usize,
    delta: &[T],
    w: &[T],
    input: &[T],
    act: Activation,
    out: &mut Vec<T>,
) {
    let outputs = delta.len() / batch;
    let inputs = w.len() / outputs;
    out.clear();
    out.resize(batch * inputs, T::zero());
    if batch >= GEMM_MIN_ROWS {
        T::gemm(
            batch,
            outputs,
            inputs,
            delta,
            (outputs, 1),
            w,
            (1, outputs),
            T::zero(),
            out,
        );
        for (o, &a) in out.iter_mut().zip(input) {
            *o = *o * activation_slope(act, a);
        }
        return;
    }
    for ((dr, or), xr) in delta
        .chunks_exact(outputs)
        .zip(out.chunks_exact_mut(inputs))
        .zip(input.chunks_exact(inputs))
    {
        for ((o, wr), &a) in or.iter_mut().zip(w.chunks_exact(outputs)).zip(xr) {
            let slope = activation_slope(act, a);
            if slope != T::zero() {
                *o = dot(wr, dr) * slope;
            }
        }
    }
}

fn axpy<T: Real>(a: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = *yi + a * xi;
    }
}

fn dot<T: Real>(x: &[T], y: &[T]) -> T {
    const LANES: usize = 8;
    let mut acc = [T::zero(); LANES];
    let (xc, yc) = (x.chunks_exact(LANES), y.chunks_exact(LANES));
    let tail = xc
        .remainder()
        .iter()
        .zip(yc.remainder())
        .fold(T::zero(), |s, (&a, &b)| s + a * b);
    for (a, b) in xc.zip(yc) {
        for k in 0..LANES {
            acc[k] = acc[k] + a[k] * b[k];
        }
    }
    acc.iter().fold(tail, |s, &v| s + v)
}

fn activate<T: Real>(act: Activation, z: T) -> T {
    match act {
        Activation::Relu => z.max(T::zero()),
        Activation::Sigmoid => T::one() / (T::one() + (-z).exp()),
    }
}

/// Derivative of the activation expressed through its output value.
fn activation_slope<T: Real>(act: Activation, a: T) -> T {
    match act {
        Activation::Relu => {
            if a > T::zero() {
                T::one()
            } else {
                T::zero()
            }
        }
        Activation::Sigmoid => a * (T::one() - a),
    }
}

pub(crate) fn softmax<T: Real>(z: [T; 2]) -> [T; 2] {
    let m = z[0].max(z[1]);
    let e = [(z[0] - m).exp(), (z[1] - m).exp()];
    let s = e[0] + e[1];
    [e[0] / s, e[1] / s]
}

pub fn softmax_f64<T: Real>(z: [T; 2]) -> [f64; 2] {
    softmax([
        z[0].to_f64().expect("finite"),
        z[1].to_f64().expect("finite"),
    ])
}

/// Index of the larger output; ties go to class 0.
pub fn predict_class<T: PartialOrd>(a: T, b: T) -> usize {
    usize::from(b > a)
}
