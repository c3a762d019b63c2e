fn main() {
    std::process::exit(highconn_cli::run(std::env::args_os()));
}
