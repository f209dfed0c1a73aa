// Product update with a reading event model, and the reading terms that
// describe the new relations.

use lcdk::files::{event_model_from_json, load_model};
use lcdk::{eval, eval_with, gamma, parse_formula, product_update, reduce_event, Definitions, Result, Term};

pub fn run_example() -> Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let m = load_model(format!("{dir}/office.json"))?;
    let em = event_model_from_json(&std::fs::read_to_string(format!("{dir}/e1.json"))?)?;
    let env = Definitions::new().with_event_model(em.clone());

    let product = product_update(&m, &em)?;
    println!(
        "{} x {} = {} states, detected mode {:?}",
        m.len(),
        em.len(),
        product.len(),
        product.detect_mode()
    );

    for (event, text) in [("e", "a"), ("f", "a"), ("e", "a+b"), ("f", "b*c")] {
        let t: Term = text.parse()?;
        println!("gamma({event}, {t}) = {}", gamma(&em, event, &t)?);
    }

    let f = parse_formula("[E1.f][a+b]q", &env)?;
    let compiled = reduce_event(&f, &env)?;
    println!("{f}  compiles to  {compiled}");
    let direct = m.state_names(&eval_with(&m, &env, &f)?);
    let via_compile = m.state_names(&eval(&m, &compiled)?);
    println!("direct {direct:?} compiled {via_compile:?}");
    assert_eq!(direct, via_compile);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
