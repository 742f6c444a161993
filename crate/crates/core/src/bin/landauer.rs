fn main() {
    std::process::exit(landauer::cli::run(std::env::args_os()));
}
