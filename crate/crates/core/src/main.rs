fn main() {
    std::process::exit(subgrowth::cli::run(std::env::args_os()));
}
