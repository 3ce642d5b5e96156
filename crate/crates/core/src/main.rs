fn main() {
    std::process::exit(jsp_sim::cli::main_with_args(std::env::args_os()));
}
