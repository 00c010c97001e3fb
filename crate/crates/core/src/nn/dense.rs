use crate::{Error, Result, Tensor2D};

/// Fully-connected layer, `out = input^T W + b` with `W` stored `in x out`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLayer {
    pub in_dim: usize,
    pub out_dim: usize,
    pub weights: Tensor2D,
    pub bias: Vec<f64>,
    pub l2_coeff: f64,
}

impl DenseLayer {
    pub fn zeros(in_dim: usize, out_dim: usize, l2_coeff: f64) -> Result<Self> {
        Self::new(
            Tensor2D::zeros(in_dim, out_dim),
            vec![0.0; out_dim],
            l2_coeff,
        )
    }

    pub fn new(weights: Tensor2D, bias: Vec<f64>, l2_coeff: f64) -> Result<Self> {
        if weights.rows() == 0 || weights.cols() == 0 {
            return Err(Error::shape("dense layer needs nonzero dimensions"));
        }
        if bias.len() != weights.cols() {
            return Err(Error::shape(format!(
                "dense bias has {} entries for {} outputs",
                bias.len(),
                weights.cols()
            )));
        }
        if !(l2_coeff >= 0.0) {
            return Err(Error::invalid(format!(
                "l2 coefficient must be >= 0, got {l2_coeff}"
            )));
        }
        Ok(DenseLayer {
            in_dim: weights.rows(),
            out_dim: weights.cols(),
            weights,
            bias,
            l2_coeff,
        })
    }

    fn check_input(&self, input: &[f64]) -> Result<()> {
        if input.len() != self.in_dim {
            return Err(Error::shape(format!(
                "dense layer expects {} inputs, got {}",
                self.in_dim,
                input.len()
            )));
        }
        Ok(())
    }
}

pub fn dense_forward(input: &[f64], layer: &DenseLayer) -> Result<Vec<f64>> {
    layer.check_input(input)?;
    let mut out = layer.bias.clone();
    for (i, &x) in input.iter().enumerate() {
        for (o, &w) in out.iter_mut().zip(layer.weights.row(i)) {
            *o += x * w;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct DenseGrads {
    pub input: Vec<f64>,
    pub weights: Tensor2D,
    pub bias: Vec<f64>,
}

/// Affine gradients plus `2 * l2_coeff * W` on the weights.
pub fn dense_backward(input: &[f64], layer: &DenseLayer, grad_out: &[f64]) -> Result<DenseGrads> {
    layer.check_input(input)?;
    if grad_out.len() != layer.out_dim {
        return Err(Error::shape(format!(
            "dense backward: grad has {} entries, layer has {} outputs",
            grad_out.len(),
            layer.out_dim
        )));
    }
    let mut weights = layer.weights.clone();
    weights.scale(2.0 * layer.l2_coeff);
    let mut grad_input = vec![0.0; layer.in_dim];
    for (i, &x) in input.iter().enumerate() {
        let w_row = layer.weights.row(i);
        grad_input[i] = w_row.iter().zip(grad_out).map(|(w, g)| w * g).sum();
        for (gw, &g) in weights.row_mut(i).iter_mut().zip(grad_out) {
            *gw += x * g;
        }
    }
    Ok(DenseGrads {
        input: grad_input,
        weights,
        bias: grad_out.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::nn::grad_check;

    #[test]
    fn identity_weights() {
        let layer = DenseLayer::new(
            Tensor2D::from_rows(&[[1.0, 0.0], [0.0, 1.0]]).unwrap(),
            vec![0.0, 0.0],
            0.0,
        )
        .unwrap();
        assert_eq!(dense_forward(&[1.0, 2.0], &layer).unwrap(), vec![1.0, 2.0]);
    }

    #[test]
    fn zero_input_gives_bias() {
        let layer = DenseLayer::new(Tensor2D::filled(3, 2, 0.7), vec![0.25, -1.0], 0.0).unwrap();
        assert_eq!(dense_forward(&[0.0; 3], &layer).unwrap(), vec![0.25, -1.0]);
    }

    #[test]
    fn dim_mismatch() {
        let layer = DenseLayer::zeros(3, 2, 0.0).unwrap();
        assert!(matches!(
            dense_forward(&[1.0], &layer),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            dense_backward(&[1.0, 2.0, 3.0], &layer, &[1.0]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn finite_difference_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut r =
            |n: usize| -> Vec<f64> { (0..n).map(|_| rng.random_range(-1.0..1.0)).collect() };
        let layer = DenseLayer::new(Tensor2D::from_vec(3, 4, r(12)).unwrap(), r(4), 0.05).unwrap();
        let input = r(3);
        let grad_out = r(4);
        let loss = |x: &[f64], l: &DenseLayer| -> f64 {
            let out = dense_forward(x, l).unwrap();
            out.iter().zip(&grad_out).map(|(a, b)| a * b).sum::<f64>()
                + l.l2_coeff * l.weights.sum_squares()
        };
        let g = dense_backward(&input, &layer, &grad_out).unwrap();

        assert!(grad_check(|x| loss(x, &layer), &input, &g.input, 1e-4).passed);
        let report = grad_check(
            |w| {
                let mut l = layer.clone();
                l.weights.as_mut_slice().copy_from_slice(w);
                loss(&input, &l)
            },
            layer.weights.as_slice(),
            g.weights.as_slice(),
            1e-4,
        );
        assert!(report.passed, "{report:?}");
        let report = grad_check(
            |b| {
                let mut l = layer.clone();
                l.bias.copy_from_slice(b);
                loss(&input, &l)
            },
            &layer.bias,
            &g.bias,
            1e-4,
        );
        assert!(report.passed, "{report:?}");
    }
}
