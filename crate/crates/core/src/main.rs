fn main() {
    std::process::exit(superllt::cli::run());
}
