fn main() {
    std::process::exit(dipolenet_cli::run(std::env::args_os()));
}
