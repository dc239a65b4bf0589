fn main() {
    std::process::exit(rankdesigns::cli::main_from(std::env::args_os()));
}
