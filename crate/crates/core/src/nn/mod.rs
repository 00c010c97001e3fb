//! Layers, loss and optimizer of the network.
//!
//! Every layer is a pair of free functions: a forward pass over immutable
//! inputs and a backward pass returning gradients. There is no tape; the
//! model module wires the passes together by hand.

mod activation;
mod adam;
mod conv;
mod dense;
mod dropout;
mod gradcheck;
mod init;
mod loss;
mod pool;

pub use activation::{relu, relu_backward, relu_backward_slice, relu_slice};
pub use adam::{adam_step, AdamState};
pub use conv::{conv1d_backward, conv1d_forward, ConvGrads, ConvLayer};
pub use dense::{dense_backward, dense_forward, DenseGrads, DenseLayer};
pub use dropout::{dropout, dropout_backward, dropout_with_rng, Mode};
pub use gradcheck::{grad_check, GradCheckReport, FD_STEP};
pub use init::{he_normal, he_normal_with};
pub use loss::{softmax, softmax_xent, Xent};
pub use pool::{global_max_pool, global_max_pool_backward, Pooled};

/// Default L2 coefficient for conv and dense weights.
pub const DEFAULT_L2: f64 = 1e-4;
