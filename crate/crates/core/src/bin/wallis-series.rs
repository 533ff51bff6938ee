fn main() {
    std::process::exit(wallis_series::cli::main());
}
