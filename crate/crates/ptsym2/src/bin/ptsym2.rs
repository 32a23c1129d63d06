fn main() { std::process::exit(ptsym2::cli::run(std::env::args_os())); }
