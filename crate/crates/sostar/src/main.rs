fn main() {
    std::process::exit(sostar::cli::run());
}
