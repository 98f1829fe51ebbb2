//! Run a verification suite and print the report.
//!
//!     cargo run --release --example verify_suite -- [paper|properties] [--json]

use jetvar::paperlab::Lab;

fn main() -> jetvar::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let suite = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .map_or("paper", String::as_str);
    let report = Lab::new().run_suite(suite, None)?;
    if args.iter().any(|a| a == "--json") {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    std::process::exit(if report.all_passed() { 0 } else { 1 });
}
