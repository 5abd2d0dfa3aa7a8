//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (tolerance 0). Witnesses emitted anywhere in the
//! run are re-evaluated here against their defining inequalities, without
//! calling the library's own recheck code, and tallied for criterion 7.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{net, rates};
use crn_equiv::cone::ConeWitness;
use crn_equiv::random::{
    random_boundary_strongly_endotactic_2d, random_network, random_rates, random_reversible, random_split_pair,
    random_weakly_reversible, random_with_zero_sources,
};
use crn_equiv::rational::qr;
use crn_equiv::*;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

const TOLERANCE: i64 = 0;
const ORACLE_2D_INSTANCES: u64 = 600;
const SPLIT_PAIRS: u64 = 220;
const RATES_PER_PAIR: usize = 10;
const ZERO_SOURCE_INSTANCES: u64 = 120;
const EWR_INSTANCES: u64 = 60;
const CHAIN_INSTANCES: u64 = 1200;

#[derive(Default)]
struct Tally {
    emitted: usize,
    failed: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.emitted += 1;
        if !ok {
            self.failed.push(what());
        }
    }
}

fn combo(coeffs: &[Q], gens: &[RationalVector], dim: usize) -> RationalVector {
    gens.iter().zip(coeffs).fold(RationalVector::zeros(dim), |acc, (g, l)| acc.add_scaled(l, g))
}

/// Farkas: `lambda >= 0` with `sum lambda g = v`, or `w . g >= 0` for all g and `w . v < 0`.
fn cone_witness_ok(holds: bool, w: &ConeWitness, v: &RationalVector, gens: &[RationalVector]) -> bool {
    match w {
        ConeWitness::Coefficients { lambdas } => {
            holds
                && lambdas.len() == gens.len()
                && lambdas.iter().all(|l| !l.is_negative())
                && combo(lambdas, gens, v.dim()) == *v
        }
        ConeWitness::SeparatingDirection { w } => {
            !holds && gens.iter().all(|g| !w.dot(g).is_negative()) && w.dot(v).is_negative()
        }
    }
}

/// Stiemke: `lambda > 0` with `sum lambda g = v`, or `w . g <= 0`, `w . v >= 0`, one strict.
fn relint_witness_ok(holds: bool, w: &ConeWitness, v: &RationalVector, gens: &[RationalVector]) -> bool {
    match w {
        ConeWitness::Coefficients { lambdas } => {
            holds
                && lambdas.len() == gens.len()
                && lambdas.iter().all(|l| l.is_positive())
                && combo(lambdas, gens, v.dim()) == *v
        }
        ConeWitness::SeparatingDirection { w } => {
            let wv = w.dot(v);
            !holds
                && gens.iter().all(|g| !w.dot(g).is_positive())
                && !wv.is_negative()
                && (wv.is_positive() || gens.iter().any(|g| w.dot(g).is_negative()))
        }
    }
}

/// The defining condition, read literally: `w . v(e_i) < 0` and no `e_j` with
/// `w . (s(e_j) - s(e_i)) < 0`, `w . v(e_j) > 0` (and, for the strong form,
/// `w . (s(e_j) - s(e_k)) <= 0` for every `e_k`).
fn violation_ok(g: &EGraph, w: &RationalVector, i: usize, strong: bool) -> bool {
    if i >= g.num_edges() || !w.dot(&g.reaction_vector(i)).is_negative() {
        return false;
    }
    let n = g.num_edges();
    !(0..n).any(|j| {
        let lower = w.dot(&(g.source(j) - g.source(i))).is_negative();
        let inward = w.dot(&g.reaction_vector(j)).is_positive();
        let extreme = !strong || (0..n).all(|k| !w.dot(&(g.source(j) - g.source(k))).is_positive());
        lower && inward && extreme
    })
}

fn report_witnesses(g: &EGraph, r: &ClassificationReport, t: &mut Tally) {
    let zero = RationalVector::zeros(g.dim());
    t.record(relint_witness_ok(r.consistent, &r.consistency.witness, &zero, &g.reaction_vectors()), || {
        format!("consistency witness on {:?}", g.edge_labels())
    });
    if let Some(v) = &r.endotactic_violation {
        t.record(violation_ok(g, &v.w, v.edge, false), || format!("endotactic violation {v:?}"));
    }
    if let Some(v) = &r.strong_violation {
        t.record(violation_ok(g, &v.w, v.edge, true), || format!("strong violation {v:?}"));
    }
    if let Some(e) = r.unreversed_edge {
        t.record(!g.has_edge(g.target(e), g.source(e)), || format!("unreversed edge {e}"));
    }
    if let Some(p) = &r.non_source_target {
        t.record(g.node_index(p).is_some() && !g.is_source(p), || format!("non-source target {p}"));
    }
}

fn inclusion_witnesses(g2: &EGraph, g1: &EGraph, r: &InclusionReport, t: &mut Tally) {
    for c in &r.checks {
        let gens2 = g2.cone_generators_at(&c.source);
        let gens1 = g1.cone_generators_at(&c.source);
        let probe_ok = if gens2.is_empty() {
            c.containment.probe.is_zero()
        } else {
            c.containment.probe_coeffs.iter().all(|l| l.is_positive())
                && combo(&c.containment.probe_coeffs, &gens2, g2.dim()) == c.containment.probe
        };
        let d = &c.containment.decision;
        t.record(probe_ok && relint_witness_ok(d.holds, &d.witness, &c.containment.probe, &gens1), || {
            format!("containment at {}", c.source)
        });
    }
}

fn provenance_witnesses(input: &EGraph, r: &RealizationResult, t: &mut Tally) {
    for p in &r.provenance {
        if let Provenance::Split { original, edges, lambdas } = p {
            let gens: Vec<RationalVector> = edges.iter().map(|&e| r.graph.reaction_vector(e)).collect();
            let ok = lambdas.iter().all(|l| l.is_positive())
                && combo(lambdas, &gens, input.dim()) == input.reaction_vector(*original);
            t.record(ok, || format!("split of edge {original}"));
        }
    }
}

fn rate_witness(g: &EGraph, f: &VectorField, t: &mut Tally) -> bool {
    match find_rate_witness(g, f) {
        Ok(k) => {
            let ok = k.rates().iter().all(|x| x.is_positive()) && generate_field(g, &k).unwrap() == *f;
            t.record(ok, || "rate witness".into());
            ok
        }
        Err(_) => false,
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

struct Check(Vec<String>);

impl Check {
    fn that(&mut self, ok: bool, what: &str) {
        if !ok {
            self.0.push(what.to_string());
        }
    }

    fn finish(self, detail: String) -> Outcome {
        if self.0.is_empty() {
            Ok(detail)
        } else {
            Err(format!("{detail}; failed: {}", self.0.join("; ")))
        }
    }
}

fn criterion_worked_examples(t: &mut Tally) -> Outcome {
    let mut c = Check(vec![]);

    let (eq11, eq12) = (net("eq11"), net("eq12"));
    for (k1, k2) in [(1, 1), (2, 3), (7, 5), (4, 1)] {
        let f11 = generate_field(&eq11, &rates(&[k1, k2])).unwrap();
        let f12 = generate_field(&eq12, &RateAssignment::new(vec![qr(k1, 2), qr(k2, 2)]).unwrap()).unwrap();
        c.that(fields_equal(&f11, &f12).unwrap(), "eq11 and eq12 fields differ");
        c.that(f12.coefficient(&rv![0]) == rv![k1] && f12.coefficient(&rv![2]) == rv![-k2], "eq12 expansion");
    }
    c.that(eq12.is_reversible(), "eq12 reversible");
    c.that(!eq11.is_weakly_reversible(), "eq11 not weakly reversible");

    let (s1, s2) = (net("system1"), net("system2"));
    let f1 = generate_field(&s1, &RateAssignment::ones(2)).unwrap();
    let f2 = generate_field(&s2, &RateAssignment::ones(3)).unwrap();
    c.that(fields_equal(&f1, &f2).unwrap(), "system fields equal");
    let inc = dynamics_included(&s1, &s2).unwrap();
    inclusion_witnesses(&s1, &s2, &inc, t);
    c.that(inc.holds, "system1 included in system2");
    c.that(is_endotactic(&s1).holds, "system1 endotactic");
    let d2 = is_endotactic(&s2);
    c.that(!d2.holds, "system2 not endotactic");
    let e = (0..s2.num_edges()).find(|&e| s2.source(e) == &rv![1, 0] && s2.target(e) == &rv![1, 1]).unwrap();
    let ok = violation_ok(&s2, &rv![-1, -1], e, false);
    t.record(ok, || "w = (-1, -1) on system2".into());
    c.that(ok && Violation { w: rv![-1, -1], edge: e }.recheck(&s2, false), "w = (-1, -1) accepted");

    let (big, small) = (net("gbig"), net("gsmall"));
    let cap = capacity_for_equivalence(&big, &small).unwrap();
    c.that(cap.holds, "gbig and gsmall have capacity");
    for p in &cap.points {
        let (g1, g2) = (big.cone_generators_at(&p.source), small.cone_generators_at(&p.source));
        let i = &p.intersection;
        let ok = i.coeffs1.iter().chain(&i.coeffs2).all(|l| l.is_positive())
            && combo(&i.coeffs1, &g1, 2) == i.point
            && combo(&i.coeffs2, &g2, 2) == i.point;
        t.record(ok, || format!("shared point at {}", p.source));
    }
    for ks in [[2, 2, 3, 3], [1, 1, 1, 1], [5, 5, 2, 2], [1, 2, 3, 3], [2, 2, 3, 4], [1, 2, 1, 2]] {
        let f = generate_field(&big, &rates(&ks)).unwrap();
        let expect = ks[0] == ks[1] && ks[2] == ks[3];
        c.that(rate_witness(&small, &f, t) == expect, &format!("rate witness for gbig rates {ks:?}"));
    }
    c.that(!big.is_weakly_reversible() && !is_endotactic(&big).holds, "gbig neither WR nor endotactic");

    let ex1 = net("ex1");
    let r = make_source_only(&ex1).unwrap();
    provenance_witnesses(&ex1, &r, t);
    c.that(r.graph.same_network(&net("ex12")), "ex1 splits to ex12");
    let cl = classify(&ex1);
    report_witnesses(&ex1, &cl, t);
    c.that(cl.strongly_endotactic && cl.extremally_weakly_reversible && !cl.source_only, "ex1 flags");
    c.that(matches!(ewr_realize_2d(&ex1), Err(Error::InteriorSourcePresent(_))), "ex1 interior source");

    let ex3 = net("ex3");
    let cl = classify(&ex3);
    report_witnesses(&ex3, &cl, t);
    c.that(cl.endotactic && !cl.strongly_endotactic, "ex3 endotactic, not strongly");
    c.that(extremal_subnetwork(&ex3).unwrap() == ex3, "ex3 extremal subnetwork is whole");
    c.that(!cl.extremally_weakly_reversible, "ex3 not extremally WR");

    c.finish("eq11/eq12, system1/system2, gbig/gsmall, ex1/ex12, ex3".into())
}

fn criterion_oracle(t: &mut Tally) -> Outcome {
    let mut c = Check(vec![]);
    let mut cells = 0;
    for seed in 0..ORACLE_2D_INSTANCES {
        let mut r = rng(seed);
        let n = r.gen_range(1..=6);
        let g = random_network(&mut r, 2, n).unwrap();
        let d = is_endotactic(&g);
        if let Some(v) = &d.violation {
            t.record(violation_ok(&g, &v.w, v.edge, false), || format!("violation seed {seed}"));
        }
        c.that(d.holds == endotactic_2d_sweep_oracle(&g).unwrap(), &format!("seed {seed}"));
        if seed % 20 == 0 {
            let dirs = g.reaction_vectors();
            for cell in enumerate_sign_cells(&dirs, 2) {
                cells += 1;
                let ok = !cell.witness.is_zero()
                    && dirs.iter().zip(&cell.signs).all(|(dv, &s)| {
                        let x = cell.witness.dot(dv);
                        s == if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 }
                    });
                t.record(ok, || format!("sign cell seed {seed}"));
            }
        }
    }
    c.finish(format!("{ORACLE_2D_INSTANCES} planar networks agree with the sweep; {cells} sign cells rechecked"))
}

fn criterion_inclusion(t: &mut Tally) -> Outcome {
    let mut c = Check(vec![]);
    let mut fields = 0;
    for seed in 0..SPLIT_PAIRS {
        let d = 1 + (seed % 3) as usize;
        let mut r = rng(1_000 + seed);
        let (small, big) = random_split_pair(&mut r, d).unwrap();
        let inc = dynamics_included(&small, &big).unwrap();
        inclusion_witnesses(&small, &big, &inc, t);
        c.that(inc.holds, &format!("pair {seed} inclusion"));
        for _ in 0..RATES_PER_PAIR {
            let k2 = random_rates(&mut r, small.num_edges());
            let f = generate_field(&small, &k2).unwrap();
            c.that(rate_witness(&big, &f, t), &format!("pair {seed} rate witness"));
            fields += 1;
        }
    }
    c.finish(format!("{SPLIT_PAIRS} pairs, {fields} fields reproduced exactly"))
}

fn criterion_zero_sources(t: &mut Tally) -> Outcome {
    let mut c = Check(vec![]);
    let mut removed = 0;
    for seed in 0..ZERO_SOURCE_INSTANCES {
        let d = 1 + (seed % 3) as usize;
        let (g, k) = random_with_zero_sources(&mut rng(2_000 + seed), d).unwrap();
        let f = generate_field(&g, &k).unwrap();
        let zero = g.sources().into_iter().filter(|s| f.coefficient(s).is_zero()).count();
        c.that(g.is_weakly_reversible() && zero > 0, &format!("instance {seed} is engineered"));
        match eliminate_zero_sources(&g, &k) {
            Ok(r) => {
                provenance_witnesses(&g, &r, t);
                let out = generate_field(&r.graph, r.rates.as_ref().unwrap()).unwrap();
                let mut sources = r.graph.sources();
                sources.sort();
                c.that(r.graph.is_weakly_reversible(), &format!("instance {seed} weakly reversible"));
                c.that(sources == f.exponents(), &format!("instance {seed} sources"));
                c.that(out == f, &format!("instance {seed} field"));
                removed += g.sources().len() - sources.len();
            }
            Err(e) => c.that(false, &format!("instance {seed}: {e}")),
        }
    }
    c.finish(format!("{ZERO_SOURCE_INSTANCES} networks, {removed} zero sources eliminated"))
}

fn criterion_ewr(t: &mut Tally) -> Outcome {
    let mut c = Check(vec![]);
    for seed in 0..EWR_INSTANCES {
        let g = random_boundary_strongly_endotactic_2d(&mut rng(3_000 + seed), 5_000).unwrap();
        match ewr_realize_2d(&g) {
            Ok(r) => {
                let se = is_strongly_endotactic(&r.graph);
                if let Some(v) = &se.violation {
                    t.record(violation_ok(&r.graph, &v.w, v.edge, true), || "ewr strong violation".into());
                }
                let inc = dynamics_included(&g, &r.graph).unwrap();
                inclusion_witnesses(&g, &r.graph, &inc, t);
                c.that(r.checks.len() == 3 && r.all_checks_hold(), &format!("instance {seed} checks"));
                c.that(r.graph.is_weakly_reversible() && se.holds && inc.holds, &format!("instance {seed} recheck"));
            }
            Err(e) => c.that(false, &format!("instance {seed}: {e}")),
        }
    }
    c.finish(format!("{EWR_INSTANCES} planar boundary-source networks realized"))
}

fn criterion_chain(t: &mut Tally) -> Outcome {
    let mut c = Check(vec![]);
    let mut hits = [0usize; 4];
    for seed in 0..CHAIN_INSTANCES {
        let d = 1 + (seed % 3) as usize;
        let mut r = rng(4_000 + seed);
        let n = r.gen_range(1..=5);
        let g = match seed % 4 {
            0 => random_weakly_reversible(&mut r, d, n.max(2)).unwrap(),
            1 => random_reversible(&mut r, d, n.max(2)).unwrap(),
            _ => random_network(&mut r, d, n).unwrap(),
        };
        let cl = classify(&g);
        report_witnesses(&g, &cl, t);
        let chain = [
            (cl.reversible, cl.weakly_reversible),
            (cl.weakly_reversible, cl.endotactic),
            (cl.strongly_endotactic, cl.endotactic),
            (cl.endotactic, cl.consistent),
        ];
        for (i, (a, b)) in chain.into_iter().enumerate() {
            if a {
                hits[i] += 1;
                c.that(b, &format!("seed {seed} implication {i}"));
            }
        }
        if seed % 4 == 3 {
            let (small, big) = random_split_pair(&mut r, d).unwrap();
            if is_endotactic(&big).holds {
                c.that(is_endotactic(&small).holds, &format!("seed {seed} endotactic passes down"));
            }
            if is_strongly_endotactic(&big).holds {
                c.that(is_strongly_endotactic(&small).holds, &format!("seed {seed} strong passes down"));
            }
        }
    }
    c.finish(format!(
        "{CHAIN_INSTANCES} networks over d in 1..=3; antecedents hit {hits:?} (rev, wr, strong, endo)"
    ))
}

fn criterion_witnesses(t: &mut Tally) -> Outcome {
    let mut r = rng(5_000);
    for _ in 0..400 {
        let d = r.gen_range(1..=3);
        let m = r.gen_range(0..=4);
        let rand_vec = |r: &mut ChaCha8Rng| RationalVector::from_ints(&(0..d).map(|_| r.gen_range(-3..=3)).collect::<Vec<_>>());
        let gens: Vec<RationalVector> = (0..m).map(|_| rand_vec(&mut r)).collect();
        let v = rand_vec(&mut r);
        let cm = cone_member(&v, &gens).unwrap();
        t.record(cone_witness_ok(cm.holds, &cm.witness, &v, &gens), || format!("cone {v} {gens:?}"));
        let rm = relint_member(&v, &gens).unwrap();
        t.record(relint_witness_ok(rm.holds, &rm.witness, &v, &gens), || format!("relint {v} {gens:?}"));
    }
    for seed in 0..150u64 {
        let mut r = rng(6_000 + seed);
        let g = random_network(&mut r, 1 + (seed % 3) as usize, 4).unwrap();
        let json = serde_json::to_string(&classify(&g)).unwrap();
        let back: ClassificationReport = serde_json::from_str(&json).unwrap();
        report_witnesses(&g, &back, t);
        t.record(back.recheck(&g), || format!("round-tripped report seed {seed}"));
    }
    let ok = t.failed.is_empty();
    let detail = format!("{}/{} witnesses recheck exactly", t.emitted - t.failed.len(), t.emitted);
    if ok {
        Ok(detail)
    } else {
        Err(format!("{detail}; first failure: {}", t.failed[0]))
    }
}

type Criterion = fn(&mut Tally) -> Outcome;

fn main() {
    assert_eq!(TOLERANCE, 0);
    let started = Instant::now();
    let mut tally = Tally::default();
    let criteria: [(&str, Criterion); 7] = [
        ("1 worked example fixtures", criterion_worked_examples),
        ("2 planar sweep oracle agreement", criterion_oracle),
        ("3 constructive inclusion soundness", criterion_inclusion),
        ("4 zero-source elimination", criterion_zero_sources),
        ("5 planar extremally weakly reversible realization", criterion_ewr),
        ("6 implication chain", criterion_chain),
        ("7 witness integrity", criterion_witnesses),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let t0 = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| run(&mut tally)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = t0.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail}) [{secs:.1}s]"),
            Err(detail) => {
                failures += 1;
                println!("criterion {name}: FAIL ({detail}) [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} of 7 criteria pass in {:.1}s", 7 - failures, started.elapsed().as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
