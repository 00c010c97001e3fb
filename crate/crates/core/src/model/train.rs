use rand::seq::SliceRandom;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{evaluate, sample_gradients, Gradients, ModelConfig, ModelParams, TrainConfig};
use crate::encoding::EncodedSample;
use crate::nn::{adam_step, AdamState, Mode};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct EpochLog {
    pub epoch: usize,
    /// Mean cross-entropy over the epoch's training samples (train mode).
    pub mean_loss: f64,
    /// Misclassified fraction of the training samples during the epoch.
    pub train_error: f64,
    pub test_error: Option<f64>,
}

impl EpochLog {
    /// `epoch<TAB>mean loss<TAB>train error[<TAB>test error]`.
    pub fn to_line(&self) -> String {
        let mut line = format!(
            "{}\t{:.6}\t{:.6}",
            self.epoch, self.mean_loss, self.train_error
        );
        if let Some(t) = self.test_error {
            line.push_str(&format!("\t{t:.6}"));
        }
        line
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainLog {
    pub epochs: Vec<EpochLog>,
}

impl TrainLog {
    pub fn last(&self) -> Option<&EpochLog> {
        self.epochs.last()
    }
}

/// Mini-batch Adam training.
///
/// Each epoch visits the samples in a seeded shuffled order (when enabled)
/// in batches of `batch_size`, the last batch possibly shorter. The batch
/// gradient is the mean of per-sample gradients, L2 term included, and one
/// Adam step is taken per batch. When `test` is given, its error rate is
/// measured after each epoch on the parameters rounded to checkpoint
/// precision, so the last logged value matches an evaluation of the saved
/// model. `on_epoch` sees each log entry as it is produced.
pub fn train(
    params: &mut ModelParams,
    config: &ModelConfig,
    train_cfg: &TrainConfig,
    data: &[EncodedSample],
    test: Option<&[EncodedSample]>,
    mut on_epoch: impl FnMut(&EpochLog),
) -> Result<TrainLog> {
    config.validate()?;
    train_cfg.validate()?;
    if data.is_empty() {
        return Err(Error::invalid("training set is empty"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(train_cfg.seed);
    let mut optim: Vec<AdamState> = params
        .array_lens()
        .into_iter()
        .map(|n| AdamState::with_lr(n, train_cfg.learning_rate))
        .collect();
    let mut grads = Gradients::zeros_like(params);
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut log = TrainLog::default();

    for epoch in 1..=train_cfg.epochs {
        if train_cfg.shuffle {
            order.shuffle(&mut rng);
        }
        let mut loss_sum = 0.0;
        let mut wrong = 0usize;
        for batch in order.chunks(train_cfg.batch_size) {
            grads.fill_zero();
            for &i in batch {
                let sample = &data[i];
                let seed = rng.next_u64();
                let (loss, logits) = sample_gradients(
                    params,
                    config,
                    &sample.indices,
                    sample.label,
                    Mode::Train,
                    seed,
                    &mut grads,
                )?;
                loss_sum += loss;
                if argmax(&logits) != sample.label {
                    wrong += 1;
                }
            }
            grads.scale(1.0 / batch.len() as f64);
            for ((p, g), state) in params
                .arrays_mut()
                .into_iter()
                .zip(&grads.arrays)
                .zip(&mut optim)
            {
                adam_step(p, g, state)?;
            }
        }
        let test_error = match test {
            Some(set) if !set.is_empty() => {
                Some(evaluate(&params.rounded_to_f32(), config, set)?.error_rate)
            }
            _ => None,
        };
        let entry = EpochLog {
            epoch,
            mean_loss: loss_sum / data.len() as f64,
            train_error: wrong as f64 / data.len() as f64,
            test_error,
        };
        on_epoch(&entry);
        log.epochs.push(entry);
    }
    Ok(log)
}

/// Index of the largest value; ties go to the first.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}
