use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::SparseVector;
use crate::nn::{adam_step, softmax_xent, AdamState};
use crate::{Error, Result, Tensor2D};

/// Softmax regression over sparse features.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearClassifier {
    /// `dim x classes`.
    pub weights: Tensor2D,
    pub bias: Vec<f64>,
    pub trained: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearTrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
    pub l2: f64,
    pub batch_size: usize,
    pub seed: u64,
}

impl Default for LinearTrainConfig {
    fn default() -> Self {
        LinearTrainConfig {
            epochs: 30,
            learning_rate: 0.01,
            l2: crate::nn::DEFAULT_L2,
            batch_size: 32,
            seed: 0,
        }
    }
}

impl LinearClassifier {
    pub fn zeros(dim: usize, num_classes: usize) -> Self {
        LinearClassifier {
            weights: Tensor2D::zeros(dim, num_classes),
            bias: vec![0.0; num_classes],
            trained: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.rows()
    }

    pub fn scores(&self, x: &SparseVector) -> Result<Vec<f64>> {
        let mut out = self.bias.clone();
        for (col, v) in x.iter() {
            if col >= self.dim() {
                return Err(Error::shape(format!(
                    "feature column {col} outside dimension {}",
                    self.dim()
                )));
            }
            for (o, &w) in out.iter_mut().zip(self.weights.row(col)) {
                *o += v * w;
            }
        }
        Ok(out)
    }
}

/// Argmax score, first index on ties.
pub fn predict(classifier: &LinearClassifier, x: &SparseVector) -> Result<usize> {
    let scores = classifier.scores(x)?;
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if s > scores[best] {
            best = i;
        }
    }
    Ok(best)
}

/// Mini-batch training of cross-entropy plus `l2 * |W|^2`, Adam updates.
pub fn train_linear(
    features: &[SparseVector],
    labels: &[usize],
    dim: usize,
    num_classes: usize,
    cfg: &LinearTrainConfig,
) -> Result<LinearClassifier> {
    if features.len() != labels.len() {
        return Err(Error::shape(format!(
            "{} feature rows but {} labels",
            features.len(),
            labels.len()
        )));
    }
    if num_classes < 2 || dim == 0 || cfg.batch_size == 0 {
        return Err(Error::invalid(
            "need dim >= 1, at least 2 classes and batch size >= 1",
        ));
    }
    if let Some(&l) = labels.iter().find(|&&l| l >= num_classes) {
        return Err(Error::invalid(format!(
            "label {l} outside {num_classes} classes"
        )));
    }
    let mut clf = LinearClassifier::zeros(dim, num_classes);
    let mut w_state = AdamState::with_lr(dim * num_classes, cfg.learning_rate);
    let mut b_state = AdamState::with_lr(num_classes, cfg.learning_rate);
    let mut gw = Tensor2D::zeros(dim, num_classes);
    let mut gb = vec![0.0; num_classes];
    let mut order: Vec<usize> = (0..features.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    for _ in 0..cfg.epochs {
        order.shuffle(&mut rng);
        for batch in order.chunks(cfg.batch_size) {
            gw.fill(0.0);
            gb.fill(0.0);
            for &i in batch {
                let x = &features[i];
                let xent = softmax_xent(&clf.scores(x)?, labels[i])?;
                for (col, v) in x.iter() {
                    for (g, d) in gw.row_mut(col).iter_mut().zip(&xent.grad_logits) {
                        *g += v * d;
                    }
                }
                gb.iter_mut()
                    .zip(&xent.grad_logits)
                    .for_each(|(g, d)| *g += d);
            }
            let inv = 1.0 / batch.len() as f64;
            gw.scale(inv);
            gb.iter_mut().for_each(|g| *g *= inv);
            gw.add_scaled(&clf.weights, 2.0 * cfg.l2)?;
            adam_step(clf.weights.as_mut_slice(), gw.as_slice(), &mut w_state)?;
            adam_step(&mut clf.bias, &gb, &mut b_state)?;
        }
    }
    clf.trained = true;
    Ok(clf)
}
