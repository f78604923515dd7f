fn main() {
    std::process::exit(finitekit::cli::run());
}
