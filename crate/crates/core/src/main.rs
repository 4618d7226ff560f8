fn main() {
    std::process::exit(vlab::cli::run(std::env::args_os()));
}
