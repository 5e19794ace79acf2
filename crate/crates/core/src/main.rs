fn main() {
    std::process::exit(minorbit::cli::main_with_args(std::env::args_os()));
}
