fn main() {
    std::process::exit(intrans_cli::cli_dispatch(std::env::args_os()));
}
