fn main() -> std::process::ExitCode {
    sagin_core::cli::main()
}
