fn main() {
    std::process::exit(ggmnet_cli::run_cli(std::env::args_os()));
}
