fn main() {
    matilda::cli::configure_threads();
    let code = matilda::cli::run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    std::process::exit(code);
}
