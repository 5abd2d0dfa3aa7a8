//! Classifies a network given as a file argument, or a built-in one.
//!
//! ```text
//! cargo run --example classify_network -- fixtures/ex3.crn
//! ```

use crn_equiv::{classify, parse};

const DEFAULT: &str = "\
species: X1 X2
3 X1 -> 3 X2
3 X2 -> 0
0 -> 3 X1
X1 + X2 -> 2 X1 + 2 X2
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_string(),
    };
    let doc = parse(&text)?;
    let (g, _) = doc.to_egraph()?;
    let r = classify(&g);

    println!("reversible                    {}", r.reversible);
    println!("weakly reversible             {}", r.weakly_reversible);
    println!("source-only                   {}", r.source_only);
    println!("consistent                    {}", r.consistent);
    println!("endotactic                    {}", r.endotactic);
    println!("strongly endotactic           {}", r.strongly_endotactic);
    println!("extremally weakly reversible  {}", r.extremally_weakly_reversible);

    if let Some(e) = r.unreversed_edge {
        println!("edge {} -> {} has no reverse", g.source(e), g.target(e));
    }
    if let Some(p) = &r.non_source_target {
        println!("{p} is a product but not a source");
    }
    for (name, v, strong) in [("endotactic", &r.endotactic_violation, false), ("strong", &r.strong_violation, true)] {
        if let Some(v) = v {
            println!(
                "{name} violation: w = {} against {} -> {} (rechecks: {})",
                v.w,
                g.source(v.edge),
                g.target(v.edge),
                v.recheck(&g, strong)
            );
        }
    }
    let extremal: Vec<String> = r.extremal_edges.iter().map(|&e| format!("{} -> {}", g.source(e), g.target(e))).collect();
    println!("extremal reactions: {}", extremal.join(", "));
    Ok(())
}
