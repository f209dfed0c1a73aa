// Loading a model from JSON and evaluating formulas on it.

use lcdk::files::load_model;
use lcdk::{check, eval, Formula, Result};

pub fn run_example() -> Result<()> {
    let m = load_model(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/office.json"))?;
    println!("valid {} model with {} states", m.mode(), m.len());

    for text in ["[a]q", "[a*b]q", "[b+c]p", "<a+b>~q", "[a]q -> [b+c]q"] {
        let f: Formula = text.parse()?;
        let holds = m.state_names(&eval(&m, &f)?);
        println!("{text:<16} at w1: {:<5} extension {holds:?}", check(&m, "w1", &f)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
