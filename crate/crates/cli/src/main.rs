fn main() {
    std::process::exit(polyquad_cli::run(std::env::args_os()));
}
