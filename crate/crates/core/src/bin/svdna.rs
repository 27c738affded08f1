fn main() {
    std::process::exit(svdna::cli::run(std::env::args_os()));
}
