//! The ConvNet: configuration, parameters, forward/backward passes,
//! training, evaluation, parameter accounting and checkpoints.
//!
//! ```text
//! indices -> embedding -> (conv -> relu) x n -> global max-pool
//!         -> [dense(hidden) -> relu -> dropout] (when m = 2) -> dense(classes)
//! ```

mod checkpoint;
mod config;
mod count;
mod evaluate;
mod network;
mod params;
mod train;

pub use checkpoint::{
    load_checkpoint, read_checkpoint, save_checkpoint, write_checkpoint, Checkpoint,
    CHECKPOINT_VERSION,
};
pub use config::{Layout, ModelConfig, TrainConfig, NAMED_LAYOUTS};
pub use count::{count_params, ParamCount};
pub use evaluate::{evaluate, predict, Evaluation};
pub use network::{backward, check_gradients, forward, sample_gradients, Cache};
pub use params::{build, Gradients, ModelParams, ParamArray};
pub use train::{train, EpochLog, TrainLog};
