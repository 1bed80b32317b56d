fn main() {
    std::process::exit(khovanov::cli::main_with_args(std::env::args()));
}
