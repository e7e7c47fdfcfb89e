fn main() -> std::process::ExitCode {
    dpcolor::cli::main()
}
