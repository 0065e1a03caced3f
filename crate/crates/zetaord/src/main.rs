fn main() {
    std::process::exit(zetaord::cli::run());
}
