// Fischer-Ladner closures and pseudo-atoms.

use lcdk::{fl_closure, neg_fl_closure, pseudo_atoms, FormulaSet, Result};

pub fn run_example() -> Result<()> {
    for text in ["<a+b>p", "<(a+b)+c>p", "[a*b]p"] {
        let input: FormulaSet = [text.parse()?].into_iter().collect();
        let closure = fl_closure(&input)?;
        let negated = neg_fl_closure(&input)?;
        println!("{text}: closure {} formulas, with negations {}", closure.len(), negated.len());
        for f in &closure {
            println!("    {f}");
        }
    }

    let input: FormulaSet = ["<a+b>p".parse()?].into_iter().collect();
    let atoms = pseudo_atoms(&input)?;
    println!("{} pseudo-atoms over <a+b>p", atoms.len());
    for atom in &atoms {
        let shown: Vec<String> = atom.iter().map(ToString::to_string).collect();
        println!("    {{{}}}", shown.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
