fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(approach::cli::run(&argv));
}
