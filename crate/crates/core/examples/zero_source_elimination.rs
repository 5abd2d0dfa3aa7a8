//! Removes sources whose monomial cancels out of the field.
//!
//! With rates `a, c, c, b` on `0 <-> X <-> 2X` the `x` term vanishes and the
//! network collapses to `0 <-> 2X`.

use crn_equiv::{eliminate_zero_sources, generate_field, parse, NetworkDocument, RateAssignment};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse("species: X\n0 <-> X\nX <-> 2 X")?;
    let (g, _) = doc.to_egraph()?;
    for (a, b, c) in [(1, 1, 1), (3, 2, 5), (1, 4, 2)] {
        let k = RateAssignment::from_ints(&[a, c, c, b])?;
        let f = generate_field(&g, &k)?;
        println!("a = {a}, b = {b}, c = {c}: {}", f.to_text(&doc.species).join("; "));
        let r = eliminate_zero_sources(&g, &k)?;
        let out = NetworkDocument::from_egraph(&r.graph, &doc.species, r.rates.as_ref())?;
        for line in out.serialize().lines().filter(|l| !l.starts_with("species")) {
            println!("  {line}");
        }
        let same = generate_field(&r.graph, r.rates.as_ref().expect("rates carried"))? == f;
        println!("  weakly reversible: {}, same field: {same}", r.graph.is_weakly_reversible());
    }
    Ok(())
}
