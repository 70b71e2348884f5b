fn main() {
    std::process::exit(blochdim::cli::run(std::env::args_os()));
}
