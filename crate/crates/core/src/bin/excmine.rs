fn main() {
    std::process::exit(excmine::cli::run(std::env::args_os()));
}
