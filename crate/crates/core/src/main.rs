fn main() -> std::process::ExitCode {
    myciel::cli::main()
}
