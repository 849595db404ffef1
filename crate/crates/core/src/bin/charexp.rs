fn main() {
    std::process::exit(charexp::cli::run(std::env::args_os()));
}
