use std::collections::BTreeMap;

use rand::Rng;

use crate::nn::he_normal_with;
use crate::{Error, Result, Tensor2D};

pub const DEFAULT_EMBED_DIM: usize = 16;

/// Trainable lookup table with `alphabet_size + 1` rows; row 0 is the
/// padding row and stays zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable {
    weights: Tensor2D,
}

impl EmbeddingTable {
    pub fn zeros(alphabet_size: usize, dim: usize) -> Result<Self> {
        Self::from_weights(Tensor2D::zeros(alphabet_size + 1, dim))
    }

    /// He-normal rows (`fan_in = dim`) with the padding row zeroed.
    pub fn he_normal<R: Rng + ?Sized>(
        rng: &mut R,
        alphabet_size: usize,
        dim: usize,
    ) -> Result<Self> {
        let mut weights = he_normal_with(rng, alphabet_size + 1, dim, dim)?;
        weights.row_mut(0).fill(0.0);
        Self::from_weights(weights)
    }

    pub fn from_weights(weights: Tensor2D) -> Result<Self> {
        if weights.rows() < 2 || weights.cols() == 0 {
            return Err(Error::shape(format!(
                "embedding table needs at least 2 rows and 1 column, got {}x{}",
                weights.rows(),
                weights.cols()
            )));
        }
        if weights.row(0).iter().any(|&v| v != 0.0) {
            return Err(Error::invalid("embedding padding row must be zero"));
        }
        Ok(EmbeddingTable { weights })
    }

    pub fn dim(&self) -> usize {
        self.weights.cols()
    }

    /// Number of rows including the padding row.
    pub fn rows(&self) -> usize {
        self.weights.rows()
    }

    pub fn weights(&self) -> &Tensor2D {
        &self.weights
    }

    /// Mutable access to the trainable rows; the padding row is restored
    /// to zero by [`EmbeddingTable::reset_padding`].
    pub fn weights_mut(&mut self) -> &mut Tensor2D {
        &mut self.weights
    }

    pub fn reset_padding(&mut self) {
        self.weights.row_mut(0).fill(0.0);
    }

    fn check_indices(&self, indices: &[u32]) -> Result<()> {
        let max = self.rows() as u32 - 1;
        match indices.iter().find(|&&i| i > max) {
            Some(i) => Err(Error::invalid(format!(
                "embedding index {i} exceeds alphabet size {max}"
            ))),
            None => Ok(()),
        }
    }
}

/// Looks up each index; column `i` of the `dim x len` output is row
/// `indices[i]` of the table.
pub fn embed_forward(indices: &[u32], table: &EmbeddingTable) -> Result<Tensor2D> {
    table.check_indices(indices)?;
    let dim = table.dim();
    let mut out = Tensor2D::zeros(dim, indices.len());
    for (pos, &idx) in indices.iter().enumerate() {
        for (d, &v) in table.weights.row(idx as usize).iter().enumerate() {
            out.set(d, pos, v);
        }
    }
    Ok(out)
}

/// Sparse gradient: accumulated rows for every non-padding index seen.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EmbeddingGrad {
    pub rows: BTreeMap<u32, Vec<f64>>,
}

impl EmbeddingGrad {
    /// Adds the sparse rows into a dense `(size + 1) x dim` gradient.
    pub fn add_to(&self, dense: &mut Tensor2D) {
        for (&idx, row) in &self.rows {
            for (dst, &g) in dense.row_mut(idx as usize).iter_mut().zip(row) {
                *dst += g;
            }
        }
    }
}

/// Accumulates the columns of `grad_out` (`dim x len`) into their rows.
/// Padding positions contribute nothing.
pub fn embed_backward(
    indices: &[u32],
    grad_out: &Tensor2D,
    table: &EmbeddingTable,
) -> Result<EmbeddingGrad> {
    table.check_indices(indices)?;
    grad_out.ensure_shape((table.dim(), indices.len()), "embed_backward grad_out")?;
    let mut grad = EmbeddingGrad::default();
    for (pos, &idx) in indices.iter().enumerate() {
        if idx == 0 {
            continue;
        }
        let row = grad
            .rows
            .entry(idx)
            .or_insert_with(|| vec![0.0; table.dim()]);
        for (d, g) in row.iter_mut().enumerate() {
            *g += grad_out.get(d, pos);
        }
    }
    Ok(grad)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::nn::grad_check;

    fn table(seed: u64, size: usize, dim: usize) -> EmbeddingTable {
        EmbeddingTable::he_normal(&mut ChaCha8Rng::seed_from_u64(seed), size, dim).unwrap()
    }

    #[test]
    fn padding_row_is_zero() {
        let t = table(1, 5, 4);
        assert!(t.weights().row(0).iter().all(|&v| v == 0.0));
        let out = embed_forward(&[0, 0, 0], &t).unwrap();
        assert_eq!(out, Tensor2D::zeros(4, 3));
    }

    #[test]
    fn columns_are_rows() {
        let t = table(2, 5, 3);
        let out = embed_forward(&[3, 0, 5], &t).unwrap();
        for d in 0..3 {
            assert_eq!(out.get(d, 0), t.weights().get(3, d));
            assert_eq!(out.get(d, 2), t.weights().get(5, d));
        }
    }

    #[test]
    fn out_of_range_index() {
        let t = table(3, 5, 3);
        assert!(matches!(
            embed_forward(&[6], &t),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn repeated_index_accumulates() {
        let t = table(4, 5, 2);
        let g = Tensor2D::from_rows(&[[1.0, 2.0, 3.0], [10.0, 20.0, 30.0]]).unwrap();
        let grad = embed_backward(&[4, 0, 4], &g, &t).unwrap();
        assert_eq!(grad.rows.len(), 1);
        assert_eq!(grad.rows[&4], vec![4.0, 40.0]);
    }

    #[test]
    fn nonzero_padding_rejected() {
        assert!(EmbeddingTable::from_weights(Tensor2D::filled(3, 2, 1.0)).is_err());
    }

    #[test]
    fn finite_difference_agreement() {
        let t = table(5, 6, 3);
        let indices = [1u32, 4, 0, 6, 4, 2, 0];
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let grad_out = crate::nn::he_normal_with(&mut rng, 3, indices.len(), 1).unwrap();
        let mut dense = Tensor2D::zeros(t.rows(), t.dim());
        embed_backward(&indices, &grad_out, &t)
            .unwrap()
            .add_to(&mut dense);

        let loss = |w: &[f64]| {
            let mut probe = t.clone();
            probe.weights_mut().as_mut_slice().copy_from_slice(w);
            let out = embed_forward(&indices, &probe).unwrap();
            out.as_slice()
                .iter()
                .zip(grad_out.as_slice())
                .map(|(a, b)| a * b)
                .sum::<f64>()
        };
        // Only the non-padding rows are trainable.
        let stride = t.dim();
        let r = grad_check(
            |w| {
                let mut full = t.weights().as_slice().to_vec();
                full[stride..].copy_from_slice(w);
                loss(&full)
            },
            &t.weights().as_slice()[stride..],
            &dense.as_slice()[stride..],
            1e-4,
        );
        assert!(r.passed, "{r:?}");
        assert!(dense.row(0).iter().all(|&v| v == 0.0));
    }
}
