// Deciding the term order and checking it against partition lattices.

use lcdk::checker::PartitionOracle;
use lcdk::{term_equiv, term_leq, Result, Term};

pub fn run_example() -> Result<()> {
    let left: Term = "b*a + c*a".parse()?;
    let right: Term = "(b+c)*a".parse()?;
    println!("{left} <= {right}: {}", term_leq(&left, &right)?);
    println!("{right} <= {left}: {}", term_leq(&right, &left)?);

    // the failing direction has a concrete countermodel on four points
    let oracle = PartitionOracle::new(left.atoms().into_iter().chain(right.atoms()), 4)?;
    if let Some(witness) = oracle.countermodel(&right, &left)? {
        println!("countermodel: {witness}");
    }

    let absorbed: Term = "a*(a+b)".parse()?;
    println!("{absorbed} == a: {}", term_equiv(&absorbed, &Term::atom("a"))?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
