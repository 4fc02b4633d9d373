fn main() {
    std::process::exit(biwkit::cli::main_with_args(std::env::args_os()));
}
