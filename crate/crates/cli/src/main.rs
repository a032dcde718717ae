fn main() {
    std::process::exit(convexa_cli::run(std::env::args_os()));
}
