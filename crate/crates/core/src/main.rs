fn main() {
    std::process::exit(explicit_zeros::cli::run(std::env::args_os()));
}
