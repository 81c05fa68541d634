fn main() {
    std::process::exit(elemop::cli::run(std::env::args().skip(1)));
}
