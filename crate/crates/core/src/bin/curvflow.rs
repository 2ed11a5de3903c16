use clap::Parser;

fn main() {
    let cli = curvflow::cli::Cli::parse();
    match curvflow::cli::run(cli) {
        Ok(summary) => println!("{summary}"),
        Err(e) => {
            eprintln!("curvflow: {e}");
            std::process::exit(1);
        }
    }
}
