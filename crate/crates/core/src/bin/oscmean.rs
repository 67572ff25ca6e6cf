use std::io;

fn main() {
    let env = std::env::var(oscmean::cli::PRECISION_ENV).ok();
    let status = oscmean::cli::run(
        std::env::args_os(),
        env.as_deref(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(status);
}
