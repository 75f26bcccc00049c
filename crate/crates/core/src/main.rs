use std::io;

fn main() {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = sigma_ratio::cli::run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut out,
        &mut io::stderr(),
    );
    drop(out);
    std::process::exit(code);
}
