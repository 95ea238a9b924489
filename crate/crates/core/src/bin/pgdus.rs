fn main() {
    std::process::exit(pgdus::cli::main_with_args(std::env::args_os()));
}
