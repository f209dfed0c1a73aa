// Random instances of every axiom schema on random models, plus a model
// where schema 5 fails.

use lcdk::checker::{Schema, SuiteConfig};
use lcdk::files::model_from_json;
use lcdk::{valid_on_model, Formula, Mode, Result, Term};

pub fn run_example() -> Result<()> {
    for mode in [Mode::S5, Mode::S4] {
        let report = SuiteConfig::new(mode, 20, 7).run();
        println!("{report}\n");
    }

    let preorder = model_from_json(
        r#"{"mode":"S4","states":["w1","w2"],
            "atoms":{"a":[["w1","w1"],["w2","w2"],["w1","w2"]]},
            "valuation":{"p":["w2"]}}"#,
    )?;
    let a = Term::atom("a");
    let p = Formula::prop("p");
    let five = Schema::Five.instantiate(&a, &a, &a, &p, &p);
    println!("{five} valid on the preorder: {}", valid_on_model(&preorder, &five)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
