//! Splits reactions until every product is also a source.

use crn_equiv::realize::make_source_only_with_rates;
use crn_equiv::{generate_field, make_source_only, parse, NetworkDocument, Provenance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse(
        "species: X1 X2
3 X1 -> 3 X2, k = 1
3 X2 -> 0, k = 1
0 -> 3 X1, k = 1
X1 + X2 -> 2 X1 + 2 X2, k = 1",
    )?;
    let (g, k) = doc.to_egraph_with_rates()?;

    let r = make_source_only(&g)?;
    print!("{}", NetworkDocument::from_egraph(&r.graph, &doc.species, None)?.serialize());
    for p in &r.provenance {
        if let Provenance::Split { original, edges, lambdas } = p {
            let parts: Vec<String> = edges
                .iter()
                .zip(lambdas)
                .map(|(&e, l)| format!("{l} * ({} -> {})", r.graph.source(e), r.graph.target(e)))
                .collect();
            println!("{} -> {} = {}", g.source(*original), g.target(*original), parts.join(" + "));
        }
    }

    let with_rates = make_source_only_with_rates(&g, Some(&k))?;
    let before = generate_field(&g, &k)?;
    let after = generate_field(&with_rates.graph, with_rates.rates.as_ref().expect("rates carried"))?;
    println!("field preserved: {}", before == after);
    for c in &with_rates.checks {
        println!("{}: {}", c.name, c.holds);
    }
    Ok(())
}
