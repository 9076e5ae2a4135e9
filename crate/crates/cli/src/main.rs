fn main() {
    std::process::exit(ghzppt_cli::main_with_args(std::env::args_os()));
}
