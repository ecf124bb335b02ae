fn main() {
    std::process::exit(quadprompt::cli::run(std::env::args_os()));
}
