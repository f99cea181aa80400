fn main() {
    std::process::exit(uncrel::cli::run());
}
