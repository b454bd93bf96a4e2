fn main() {
    std::process::exit(heightzeta::cli::run());
}
