fn main() {
    std::process::exit(qhyper::cli::run_from_args(std::env::args_os()));
}
