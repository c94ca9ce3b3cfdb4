fn main() {
    std::process::exit(terracini::cli::run(std::env::args_os()));
}
