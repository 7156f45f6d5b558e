use std::process::exit;

fn main() {
    exit(hypercomplex::cli::run_from_args(std::env::args_os()));
}
