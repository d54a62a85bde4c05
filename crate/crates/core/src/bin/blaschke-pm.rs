fn main() {
    std::process::exit(blaschke_persistence::cli::main());
}
