fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("HADOPT_LOG", "warn")).init();
    std::process::exit(hadopt_cli::main_with(std::env::args_os()));
}
