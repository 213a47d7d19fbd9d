fn main() {
    std::process::exit(modreg::cli::main_with_args(std::env::args_os()));
}
