fn main() {
    std::process::exit(hypermatch::harness::cli::main_with_args(std::env::args_os()));
}
