fn main() {
    std::process::exit(braid_charts::cli::run());
}
