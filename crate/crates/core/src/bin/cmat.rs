fn main() {
    std::process::exit(compressed_matrix::cli::run(std::env::args_os()));
}
