fn main() {
    std::process::exit(cotor_cli::run_cli(std::env::args()));
}
