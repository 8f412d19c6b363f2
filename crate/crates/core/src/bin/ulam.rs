fn main() {
    env_logger::init();
    std::process::exit(ulam::cli::run(std::env::args_os()));
}
