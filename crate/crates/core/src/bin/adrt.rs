fn main() {
    std::process::exit(adrt::cli::run(std::env::args_os()));
}
