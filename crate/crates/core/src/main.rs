fn main() {
    std::process::exit(odgraph::cli::run());
}
