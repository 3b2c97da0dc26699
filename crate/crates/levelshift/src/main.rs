fn main() {
    std::process::exit(levelshift::cli::run(std::env::args_os()));
}
