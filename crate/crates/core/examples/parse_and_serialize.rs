//! The network text format: species line, reactions, optional rates.

use crn_equiv::parse;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "\
# comments and blank lines are ignored
species: A B

A + B <-> 2 B, k = 3/2, 1
B -> 0, k = 1/4
1/2 A -> A
";
    let doc = parse(text)?;
    println!("species: {:?}", doc.species);
    println!("{} reactions, all rated: {}", doc.num_edges(), doc.has_all_rates());
    let (g, k) = doc.to_egraph()?;
    for e in 0..g.num_edges() {
        let rate = k.as_ref().map(|k| k.rates()[e].to_string()).unwrap_or_else(|| "?".into());
        println!("  {} -> {}  k = {rate}", g.source(e), g.target(e));
    }

    let canonical = doc.serialize();
    print!("{canonical}");
    println!("round trip stable: {}", parse(&canonical)?.serialize() == canonical);

    for bad in ["species: X\nX -> X", "species: X\n-X -> 0", "species: X\nX -> 0, k = 0"] {
        match parse(bad).and_then(|d| d.to_egraph()) {
            Ok(_) => println!("accepted {bad:?}"),
            Err(e) => println!("rejected {bad:?}: {e}"),
        }
    }
    Ok(())
}
