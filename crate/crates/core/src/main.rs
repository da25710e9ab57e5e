fn main() {
    std::process::exit(spinchain::cli::run(std::env::args_os()));
}
