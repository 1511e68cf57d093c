fn main() {
    std::process::exit(sl2cb_cli::run(std::env::args_os()));
}
