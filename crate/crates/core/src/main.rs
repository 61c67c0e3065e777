fn main() {
    std::process::exit(zonomon::cli::run(std::env::args_os()));
}
