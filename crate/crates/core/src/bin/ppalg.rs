fn main() {
    std::process::exit(ppalg::cli::main_with_args(std::env::args_os()));
}
