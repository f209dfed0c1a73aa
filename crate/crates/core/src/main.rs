use clap::Parser;

fn main() {
    let cli = lcdk::cli::Cli::parse();
    let code = lcdk::cli::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
