fn main() {
    std::process::exit(curvepi::cli::main());
}
