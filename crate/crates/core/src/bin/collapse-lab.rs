fn main() {
    std::process::exit(collapse_lab::cli::main_with_args(std::env::args_os()));
}
