fn main() -> std::process::ExitCode {
    scdes::cli::run(std::env::args_os())
}
