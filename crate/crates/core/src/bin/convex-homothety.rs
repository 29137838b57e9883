fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(convex_homothety::cli::run(&argv));
}
