fn main() -> std::process::ExitCode {
    gctlab::cli::main_entry()
}
