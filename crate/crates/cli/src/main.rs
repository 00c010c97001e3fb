fn main() {
    std::process::exit(charcnn_cli::run(std::env::args_os()));
}
