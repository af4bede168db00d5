fn main() {
    std::process::exit(freefermion::cli::main_with_args(std::env::args_os()));
}
