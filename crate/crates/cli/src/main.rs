fn main() -> std::process::ExitCode {
    wex_cli::cli::main()
}
