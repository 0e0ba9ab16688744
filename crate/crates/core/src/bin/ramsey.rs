fn main() {
    std::process::exit(ramsey_core::cli::run(std::env::args_os()));
}
