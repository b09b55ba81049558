//! The full local-global check, rendered as text, JSON and DOT.

use berkhasse::cli::{analyze, parse_form, render, Format, Options};

fn main() -> berkhasse::Result<()> {
    let opts = Options::default();
    let covered = analyze(&parse_form("1, -(1+3*T), T, -(T+3)", 3)?.form, &opts)?;
    print!("{}", render(&covered, Format::Text));
    println!();

    let obstructed = analyze(&parse_form("1, -2, T, -2*T", 3)?.form, &opts)?;
    println!("exit code {}", obstructed.conclusion.exit_code());
    let json = render(&obstructed, Format::Json);
    println!("{}", json.lines().take(20).collect::<Vec<_>>().join("\n"));

    let modelled = analyze(&parse_form("T, T+1, -1", 5)?.form, &opts)?;
    print!("{}", render(&modelled, Format::Dot));
    Ok(())
}
