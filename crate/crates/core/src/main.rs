fn main() {
    std::process::exit(bergdim::cli::run(std::env::args_os()));
}
