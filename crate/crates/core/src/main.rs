fn main() {
    std::process::exit(fourier_circuit::cli::main_with_args(std::env::args_os()));
}
