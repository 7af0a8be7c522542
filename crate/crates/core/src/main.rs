fn main() {
    std::process::exit(expgraph::cli::run(std::env::args_os()));
}
