fn main() {
    std::process::exit(aeromacs::cli::main_with_args(std::env::args_os()));
}
