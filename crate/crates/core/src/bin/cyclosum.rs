fn main() {
    std::process::exit(cyclosum::cli::main_with_args(std::env::args_os()));
}
