fn main() {
    std::process::exit(equivar::cli::main());
}
