fn main() {
    std::process::exit(ordscale::cli::main_with_exit_code());
}
