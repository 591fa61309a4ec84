use std::io::Write;

fn main() -> anyhow::Result<()> {
    let out = stokes_core::cli::run(std::env::args_os(), &mut std::io::stdin());
    std::io::stdout().write_all(out.stdout.as_bytes())?;
    std::io::stderr().write_all(out.stderr.as_bytes())?;
    std::process::exit(out.code);
}
