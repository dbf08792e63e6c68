fn main() {
    std::process::exit(dlpa_arg::cli::main_entry());
}
