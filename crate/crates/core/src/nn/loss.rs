use crate::{Error, Result};

/// Numerically stable softmax (max subtracted before exponentiation).
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&z| (z - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Xent {
    pub loss: f64,
    pub probs: Vec<f64>,
    pub grad_logits: Vec<f64>,
}

/// Softmax followed by categorical cross-entropy against `target`.
pub fn softmax_xent(logits: &[f64], target: usize) -> Result<Xent> {
    if logits.len() < 2 {
        return Err(Error::invalid(format!(
            "softmax_xent needs at least 2 classes, got {}",
            logits.len()
        )));
    }
    if target >= logits.len() {
        return Err(Error::invalid(format!(
            "target class {target} out of range for {} classes",
            logits.len()
        )));
    }
    // Log-sum-exp form keeps the loss finite even when probs[target] underflows.
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let log_total = logits.iter().map(|&z| (z - max).exp()).sum::<f64>().ln();
    let loss = (log_total - (logits[target] - max)).max(0.0);
    let probs = softmax(logits);
    let mut grad_logits = probs.clone();
    grad_logits[target] -= 1.0;
    Ok(Xent {
        loss,
        probs,
        grad_logits,
    })
}
