// A semi-public reading event: the updated model against the compiled
// static formula.

use lcdk::files::{load_model, reading_map_from_json};
use lcdk::{eval, eval_with, parse_formula, reduce_bang, update_model, Definitions, Result};

pub fn run_example() -> Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let m = load_model(format!("{dir}/office.json"))?;
    let beta = reading_map_from_json(&std::fs::read_to_string(format!("{dir}/beta1.json"))?)?;
    let env = Definitions::new().with_reading_map(beta.clone());

    let updated = update_model(&m, &beta)?;
    for x in ["a", "b", "c"] {
        let r = updated.relation_of(&x.parse()?)?;
        println!("new {x} blocks: {:?}", r.blocks());
    }

    let f = parse_formula("[!beta1]([a]q -> [b+c]q)", &env)?;
    let compiled = reduce_bang(&f, &env)?;
    println!("{f}  compiles to  {compiled}");
    let inner = parse_formula("[a]q -> [b+c]q", &env)?;
    let via_update = updated.state_names(&eval(&updated, &inner)?);
    let via_compile = m.state_names(&eval(&m, &compiled)?);
    let direct = m.state_names(&eval_with(&m, &env, &f)?);
    println!("update {via_update:?} compiled {via_compile:?} direct {direct:?}");
    assert!(via_update == via_compile && via_compile == direct);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
