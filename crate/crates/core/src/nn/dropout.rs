use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Train,
    Eval,
}

/// Inverted dropout. Returns the output and the per-unit scale mask
/// (`0` for dropped units, `1 / (1 - rate)` for survivors) for the backward
/// pass. Eval mode is the identity with an all-ones mask.
pub fn dropout(input: &[f64], rate: f64, mode: Mode, seed: u64) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    dropout_with_rng(input, rate, mode, &mut rng)
}

pub fn dropout_with_rng<R: Rng + ?Sized>(
    input: &[f64],
    rate: f64,
    mode: Mode,
    rng: &mut R,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if !(0.0..1.0).contains(&rate) {
        return Err(Error::invalid(format!(
            "dropout rate must be in [0, 1), got {rate}"
        )));
    }
    if mode == Mode::Eval || rate == 0.0 {
        return Ok((input.to_vec(), vec![1.0; input.len()]));
    }
    let keep_scale = 1.0 / (1.0 - rate);
    let mask: Vec<f64> = input
        .iter()
        .map(|_| {
            if rng.random::<f64>() < rate {
                0.0
            } else {
                keep_scale
            }
        })
        .collect();
    let out = input.iter().zip(&mask).map(|(x, m)| x * m).collect();
    Ok((out, mask))
}

pub fn dropout_backward(mask: &[f64], grad_out: &[f64]) -> Vec<f64> {
    debug_assert_eq!(mask.len(), grad_out.len());
    mask.iter().zip(grad_out).map(|(m, g)| m * g).collect()
}
