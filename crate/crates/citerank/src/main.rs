fn main() {
    std::process::exit(citerank::cli::main_with_args(std::env::args_os()));
}
