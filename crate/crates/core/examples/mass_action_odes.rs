//! Mass-action ODEs in plain text and LaTeX, and an exact evaluation.

use crn_equiv::{evaluate_field, generate_field, parse, rv, stoichiometric_subspace};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse(
        "species: A B C
A + B -> C, k = 2
C -> A + B, k = 1/3
2 A -> 0, k = 5",
    )?;
    let (g, k) = doc.to_egraph_with_rates()?;
    let f = generate_field(&g, &k)?;

    for line in f.to_text(&doc.species) {
        println!("{line}");
    }
    for line in f.to_latex(&doc.species) {
        println!("{line}");
    }

    let x = rv![1, 2, 3];
    println!("f{x} = {}", evaluate_field(&f, &x)?);

    let basis = stoichiometric_subspace(&g);
    println!("stoichiometric subspace has dimension {}", basis.len());
    for b in basis {
        println!("  {b}");
    }
    Ok(())
}
