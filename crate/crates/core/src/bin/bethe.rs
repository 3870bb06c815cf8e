fn main() {
    std::process::exit(bethe::cli::run(std::env::args_os()));
}
