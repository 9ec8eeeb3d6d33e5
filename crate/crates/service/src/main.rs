fn main() -> std::process::ExitCode {
    attrex_service::cli::main()
}
