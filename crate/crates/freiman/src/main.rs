fn main() {
    std::process::exit(freiman::cli::run(std::env::args()));
}
