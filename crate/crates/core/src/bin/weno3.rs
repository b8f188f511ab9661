fn main() {
    std::process::exit(weno3::cli::main_with_args(std::env::args_os()));
}
