//! The planar construction: a strongly endotactic network with every source
//! on its hull boundary is embedded in a weakly reversible, strongly
//! endotactic one.

use crn_equiv::{classify, dynamics_included, ewr_realize_2d, parse, NetworkDocument};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse(
        "species: X1 X2
0 -> X1 + X2
2 X1 -> X2
2 X2 -> X1",
    )?;
    let (g, _) = doc.to_egraph()?;
    let before = classify(&g);
    println!("input: weakly reversible {}, strongly endotactic {}", before.weakly_reversible, before.strongly_endotactic);

    match ewr_realize_2d(&g) {
        Ok(r) => {
            print!("{}", NetworkDocument::from_egraph(&r.graph, &doc.species, None)?.serialize());
            for c in &r.checks {
                println!("{}: {}", c.name, c.holds);
            }
            println!("input dynamics included: {}", dynamics_included(&g, &r.graph)?.holds);
        }
        Err(e) => println!("rejected: {e}"),
    }

    let (interior, _) = parse("species: X1 X2\n0 -> 3 X1\n3 X1 -> 3 X2\n3 X2 -> 0\nX1 + X2 -> 0")?.to_egraph()?;
    if let Err(e) = ewr_realize_2d(&interior) {
        println!("interior source: {e}");
    }
    Ok(())
}
