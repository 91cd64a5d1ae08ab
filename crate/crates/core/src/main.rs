fn main() {
    std::process::exit(nilmult::io::cli::main_with_args(std::env::args_os()));
}
