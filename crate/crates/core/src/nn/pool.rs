use crate::{Error, Result, Tensor2D};

/// Result of a global temporal max-pool: one value per feature map.
#[derive(Debug, Clone, PartialEq)]
pub struct Pooled {
    pub values: Vec<f64>,
    /// Position of the maximum in each row; ties go to the smallest index.
    pub argmax: Vec<usize>,
}

/// Max over the whole length axis of a `C x L` tensor.
pub fn global_max_pool(input: &Tensor2D) -> Result<Pooled> {
    if input.cols() == 0 {
        return Err(Error::invalid("global_max_pool: input has zero length"));
    }
    let (values, argmax) = (0..input.rows())
        .map(|c| {
            let row = input.row(c);
            let mut best = 0;
            for (i, &v) in row.iter().enumerate().skip(1) {
                if v > row[best] {
                    best = i;
                }
            }
            (row[best], best)
        })
        .unzip();
    Ok(Pooled { values, argmax })
}

/// Routes each map's gradient to its argmax position of a `C x len` input.
pub fn global_max_pool_backward(argmax: &[usize], len: usize, grad: &[f64]) -> Result<Tensor2D> {
    if argmax.len() != grad.len() {
        return Err(Error::shape(format!(
            "pool backward: {} argmax entries but {} gradients",
            argmax.len(),
            grad.len()
        )));
    }
    let mut out = Tensor2D::zeros(argmax.len(), len);
    for (c, (&pos, &g)) in argmax.iter().zip(grad).enumerate() {
        if pos >= len {
            return Err(Error::shape(format!(
                "pool backward: argmax {pos} outside length {len}"
            )));
        }
        out.set(c, pos, g);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_maximum() {
        let t = Tensor2D::from_rows(&[[3.0, -1.0, 5.0, 2.0]]).unwrap();
        let p = global_max_pool(&t).unwrap();
        assert_eq!(p.values, vec![5.0]);
        assert_eq!(p.argmax, vec![2]);
    }

    #[test]
    fn ties_take_first_index() {
        let t = Tensor2D::filled(2, 6, 4.0);
        let p = global_max_pool(&t).unwrap();
        assert_eq!(p.values, vec![4.0, 4.0]);
        assert_eq!(p.argmax, vec![0, 0]);
    }

    #[test]
    fn single_column() {
        let t = Tensor2D::from_rows(&[[1.5], [-2.0], [0.0]]).unwrap();
        let p = global_max_pool(&t).unwrap();
        assert_eq!(p.values, vec![1.5, -2.0, 0.0]);
        assert_eq!(p.argmax, vec![0, 0, 0]);
    }

    #[test]
    fn empty_length_rejected() {
        assert!(matches!(
            global_max_pool(&Tensor2D::zeros(3, 0)),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn backward_routes_to_argmax_only() {
        let g = global_max_pool_backward(&[2, 0], 4, &[1.5, -3.0]).unwrap();
        assert_eq!(g.row(0), &[0.0, 0.0, 1.5, 0.0]);
        assert_eq!(g.row(1), &[-3.0, 0.0, 0.0, 0.0]);
    }
}
