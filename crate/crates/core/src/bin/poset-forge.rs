fn main() {
    std::process::exit(poset_forge::cli::run(std::env::args_os()));
}
