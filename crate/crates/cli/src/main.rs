fn main() {
    std::process::exit(pmcover_cli::run(std::env::args()));
}
