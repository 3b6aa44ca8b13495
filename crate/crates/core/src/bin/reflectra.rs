fn main() {
    std::process::exit(reflectra::cli::run(std::env::args_os()));
}
