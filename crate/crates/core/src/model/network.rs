use super::{Gradients, ModelConfig, ModelParams};
use crate::encoding::{embed_backward, embed_forward};
use crate::nn::{
    conv1d_backward, conv1d_forward, dense_backward, dense_forward, dropout, dropout_backward,
    global_max_pool, global_max_pool_backward, grad_check, relu, relu_backward,
    relu_backward_slice, relu_slice, softmax_xent, GradCheckReport, Mode,
};
use crate::{Error, Result, Tensor2D};

/// Intermediates kept by [`forward`] for [`backward`].
#[derive(Debug, Clone)]
pub struct Cache {
    indices: Vec<u32>,
    /// Input of each conv layer (the embedding output for the first).
    conv_inputs: Vec<Tensor2D>,
    /// Pre-activation output of each conv layer.
    conv_pre: Vec<Tensor2D>,
    pool_argmax: Vec<usize>,
    /// Input of each dense layer.
    dense_inputs: Vec<Vec<f64>>,
    /// Pre-activation and dropout mask of each hidden dense layer.
    hidden_pre: Vec<Vec<f64>>,
    dropout_masks: Vec<Vec<f64>>,
}

/// Runs the network on one encoded sample and returns the logits.
///
/// `dropout_seed` fixes the dropout mask in train mode and is ignored in
/// eval mode.
pub fn forward(
    params: &ModelParams,
    config: &ModelConfig,
    indices: &[u32],
    mode: Mode,
    dropout_seed: u64,
) -> Result<(Vec<f64>, Cache)> {
    if indices.len() != config.max_length {
        return Err(Error::shape(format!(
            "sample has {} indices, model expects {}",
            indices.len(),
            config.max_length
        )));
    }
    let mut x = embed_forward(indices, &params.embedding)?;
    let mut conv_inputs = Vec::with_capacity(params.convs.len());
    let mut conv_pre = Vec::with_capacity(params.convs.len());
    for layer in &params.convs {
        let pre = conv1d_forward(&x, layer)?;
        let post = relu(&pre);
        conv_inputs.push(x);
        conv_pre.push(pre);
        x = post;
    }
    let pooled = global_max_pool(&x)?;

    let (hidden, output) = params.denses.split_at(params.denses.len() - 1);
    let mut v = pooled.values;
    let mut dense_inputs = Vec::with_capacity(params.denses.len());
    let mut hidden_pre = Vec::with_capacity(hidden.len());
    let mut dropout_masks = Vec::with_capacity(hidden.len());
    for (i, layer) in hidden.iter().enumerate() {
        let pre = dense_forward(&v, layer)?;
        let (h, mask) = dropout(
            &relu_slice(&pre),
            config.dropout_rate,
            mode,
            dropout_seed.wrapping_add(i as u64),
        )?;
        dense_inputs.push(v);
        hidden_pre.push(pre);
        dropout_masks.push(mask);
        v = h;
    }
    let logits = dense_forward(&v, &output[0])?;
    dense_inputs.push(v);

    Ok((
        logits,
        Cache {
            indices: indices.to_vec(),
            conv_inputs,
            conv_pre,
            pool_argmax: pooled.argmax,
            dense_inputs,
            hidden_pre,
            dropout_masks,
        },
    ))
}

/// Adds the gradient of `loss + L2 penalty` to `grads`, given the loss
/// gradient with respect to the logits.
pub fn backward(
    params: &ModelParams,
    cache: &Cache,
    grad_logits: &[f64],
    grads: &mut Gradients,
) -> Result<()> {
    let n_conv = params.convs.len();
    let n_dense = params.denses.len();
    // Canonical slots: embedding, then (weight, bias) per conv, then per dense.
    let conv_slot = |i: usize| 1 + 2 * i;
    let dense_slot = |i: usize| 1 + 2 * n_conv + 2 * i;

    let mut g = grad_logits.to_vec();
    for i in (0..n_dense).rev() {
        if i + 1 < n_dense {
            g = dropout_backward(&cache.dropout_masks[i], &g);
            g = relu_backward_slice(&cache.hidden_pre[i], &g);
        }
        let dg = dense_backward(&cache.dense_inputs[i], &params.denses[i], &g)?;
        add(&mut grads.arrays[dense_slot(i)], dg.weights.as_slice());
        add(&mut grads.arrays[dense_slot(i) + 1], &dg.bias);
        g = dg.input;
    }

    let len = cache.indices.len();
    let mut gx = global_max_pool_backward(&cache.pool_argmax, len, &g)?;
    for i in (0..n_conv).rev() {
        let g_pre = relu_backward(&cache.conv_pre[i], &gx)?;
        let cg = conv1d_backward(&cache.conv_inputs[i], &params.convs[i], &g_pre)?;
        add(&mut grads.arrays[conv_slot(i)], cg.weights.as_slice());
        add(&mut grads.arrays[conv_slot(i) + 1], &cg.bias);
        gx = cg.input;
    }

    let eg = embed_backward(&cache.indices, &gx, &params.embedding)?;
    let dim = params.embedding.dim();
    let emb = &mut grads.arrays[0];
    for (&row, values) in &eg.rows {
        add(
            &mut emb[row as usize * dim..(row as usize + 1) * dim],
            values,
        );
    }
    Ok(())
}

fn add(dst: &mut [f64], src: &[f64]) {
    debug_assert_eq!(dst.len(), src.len());
    for (d, s) in dst.iter_mut().zip(src) {
        *d += s;
    }
}

/// Cross-entropy loss (without the L2 penalty), logits, and the gradient of
/// `loss + L2 penalty` accumulated into `grads`.
pub fn sample_gradients(
    params: &ModelParams,
    config: &ModelConfig,
    indices: &[u32],
    label: usize,
    mode: Mode,
    dropout_seed: u64,
    grads: &mut Gradients,
) -> Result<(f64, Vec<f64>)> {
    let (logits, cache) = forward(params, config, indices, mode, dropout_seed)?;
    let xent = softmax_xent(&logits, label)?;
    backward(params, &cache, &xent.grad_logits, grads)?;
    Ok((xent.loss, logits))
}

/// Finite-difference check of the full-model gradient of `loss + L2` for
/// one sample, over every parameter except the fixed padding row.
///
/// In train mode the dropout masks are pinned by `dropout_seed`, so the
/// loss is a deterministic function of the parameters.
pub fn check_gradients(
    params: &ModelParams,
    config: &ModelConfig,
    indices: &[u32],
    label: usize,
    mode: Mode,
    dropout_seed: u64,
    tolerance: f64,
) -> Result<GradCheckReport> {
    let mut grads = Gradients::zeros_like(params);
    sample_gradients(
        params,
        config,
        indices,
        label,
        mode,
        dropout_seed,
        &mut grads,
    )?;
    let pad = params.embedding.dim();
    let analytic = grads.flatten()[pad..].to_vec();

    let flat = |p: &ModelParams| -> Vec<f64> {
        let mut out = Vec::new();
        p.for_each_array(|a| out.extend_from_slice(a.data));
        out
    };
    let point = flat(params)[pad..].to_vec();
    let mut probe = params.clone();
    let mut failure = None;
    let loss = |x: &[f64]| -> f64 {
        let mut rest = x;
        for (i, arr) in probe.arrays_mut().into_iter().enumerate() {
            let skip = if i == 0 { pad } else { 0 };
            let n = arr.len() - skip;
            arr[skip..].copy_from_slice(&rest[..n]);
            rest = &rest[n..];
        }
        match forward(&probe, config, indices, mode, dropout_seed)
            .and_then(|(l, _)| softmax_xent(&l, label))
        {
            Ok(x) => x.loss + probe.l2_penalty(),
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let report = grad_check(loss, &point, &analytic, tolerance);
    match failure {
        Some(e) => Err(e),
        None => Ok(report),
    }
}
