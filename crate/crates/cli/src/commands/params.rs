use charcnn_core::model::count_params;

use crate::args::ParamsArgs;
use crate::config::model_config;
use crate::error::CliResult;
use crate::io::emit;

pub fn run(args: &ParamsArgs) -> CliResult<()> {
    args.model.alphabet.validate()?;
    let alphabet = args.model.alphabet.load()?;
    let (cfg, _) = model_config(&args.model, alphabet.size())?;
    let count = count_params(&cfg)?;
    emit("layout", cfg.layout_name());
    for (name, n) in &count.arrays {
        emit(name, n);
    }
    emit("total", count.total);
    emit("padding", count.padding);
    emit("trainable", count.trainable());
    Ok(())
}
