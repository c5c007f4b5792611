fn main() {
    std::process::exit(eliashberg_tc::cli::run(std::env::args_os()));
}
