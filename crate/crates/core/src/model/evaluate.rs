use super::train::argmax;
use super::{forward, ModelConfig, ModelParams};
use crate::encoding::EncodedSample;
use crate::nn::Mode;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub error_rate: f64,
    pub total: usize,
    pub errors: usize,
    /// `confusion[true][predicted]` counts.
    pub confusion: Vec<Vec<usize>>,
}

/// Predicted class (argmax of eval-mode logits, first index on ties).
pub fn predict(params: &ModelParams, config: &ModelConfig, indices: &[u32]) -> Result<usize> {
    let (logits, _) = forward(params, config, indices, Mode::Eval, 0)?;
    Ok(argmax(&logits))
}

pub fn evaluate(
    params: &ModelParams,
    config: &ModelConfig,
    data: &[EncodedSample],
) -> Result<Evaluation> {
    if data.is_empty() {
        return Err(Error::invalid("evaluation set is empty"));
    }
    let n = config.num_classes;
    let mut confusion = vec![vec![0usize; n]; n];
    let mut errors = 0;
    for sample in data {
        if sample.label >= n {
            return Err(Error::invalid(format!(
                "label {} outside {n} classes",
                sample.label
            )));
        }
        let pred = predict(params, config, &sample.indices)?;
        confusion[sample.label][pred] += 1;
        if pred != sample.label {
            errors += 1;
        }
    }
    Ok(Evaluation {
        error_rate: errors as f64 / data.len() as f64,
        total: data.len(),
        errors,
        confusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build, Layout};

    // Output bias decides the prediction when all weights are zero.
    fn constant_model(class: usize) -> (ModelParams, ModelConfig) {
        let mut cfg = ModelConfig::new(Layout::new(1, 1), 4, 6);
        cfg.embed_dim = 2;
        cfg.feature_maps = 2;
        cfg.num_classes = 3;
        let mut p = build(&cfg, 0).unwrap();
        p.denses[0].weights.fill(0.0);
        p.denses[0].bias[class] = 1.0;
        (p, cfg)
    }

    fn samples(labels: &[usize]) -> Vec<EncodedSample> {
        labels
            .iter()
            .map(|&label| EncodedSample {
                indices: vec![1, 2, 3, 0, 0, 0],
                label,
            })
            .collect()
    }

    #[test]
    fn all_correct() {
        let (p, cfg) = constant_model(2);
        assert_eq!(
            evaluate(&p, &cfg, &samples(&[2, 2, 2])).unwrap().error_rate,
            0.0
        );
    }

    #[test]
    fn three_of_ten_wrong() {
        let (p, cfg) = constant_model(1);
        let e = evaluate(&p, &cfg, &samples(&[1, 1, 1, 1, 1, 1, 1, 0, 2, 0])).unwrap();
        assert!((e.error_rate - 0.3).abs() < 1e-15);
        assert_eq!(e.errors, 3);
    }

    #[test]
    fn confusion_rows_sum_to_class_counts() {
        let (p, cfg) = constant_model(0);
        let labels = [0, 1, 1, 2, 2, 2];
        let e = evaluate(&p, &cfg, &samples(&labels)).unwrap();
        let sums: Vec<usize> = e.confusion.iter().map(|r| r.iter().sum()).collect();
        assert_eq!(sums, vec![1, 2, 3]);
    }

    #[test]
    fn tie_goes_to_first_class() {
        let (mut p, cfg) = constant_model(0);
        p.denses[0].bias = vec![0.0; 3];
        assert_eq!(predict(&p, &cfg, &[1, 0, 0, 0, 0, 0]).unwrap(), 0);
    }
}
