fn main() -> std::process::ExitCode {
    symsplit::cli::main_entry()
}
