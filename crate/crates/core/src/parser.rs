//! Line-oriented text format for reaction networks.
//!
//! ```text
//! # comment
//! species: X1 X2
//! X1 <-> X2, k = 1, 1
//! 0 -> 2 X1, k = 1/2 ; X1 + X2 -> 2 X2, k = 3
//! ```
//!
//! `0` is the empty complex, coefficients default to 1, `<->` takes a forward
//! and a backward rate, and rationals are written `p` or `p/q`. Several
//! reactions may share a line when separated by `;`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::egraph::{EGraph, RateAssignment};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, RationalVector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reversible,
}

/// Species with coefficients, merged by name in first-use order.
pub type Complex = Vec<(String, Q)>;

#[derive(Clone, Debug, Eq)]
pub struct Reaction {
    pub lhs: Complex,
    pub rhs: Complex,
    pub direction: Direction,
    /// Empty, or one rate per emitted edge.
    pub rates: Vec<Q>,
    /// 1-based line and column where the reaction starts.
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Reaction {
    fn eq(&self, other: &Self) -> bool {
        self.lhs == other.lhs && self.rhs == other.rhs && self.direction == other.direction && self.rates == other.rates
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct NetworkDocument {
    pub species: Vec<String>,
    pub reactions: Vec<Reaction>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Name(String),
    Plus,
    Arrow,
    BiArrow,
    Comma,
    Equals,
    Semi,
}

#[derive(Clone, Debug)]
struct Lexed {
    tok: Tok,
    col: usize,
}

fn syntax(line: usize, column: usize, expected: &str) -> Error {
    Error::Syntax { line, column, expected: expected.into() }
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str, line: usize) -> Result<(Vec<Lexed>, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let digits_from = |mut j: usize| {
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        let tok = match c {
            '+' => {
                i += 1;
                Tok::Plus
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '=' => {
                i += 1;
                Tok::Equals
            }
            ';' => {
                i += 1;
                Tok::Semi
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 2;
                Tok::Arrow
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                i += 3;
                Tok::BiArrow
            }
            '-' | '0'..='9' => {
                let start = i;
                let mut j = if c == '-' { i + 1 } else { i };
                let end = digits_from(j);
                if end == j {
                    return Err(syntax(line, col, "digits"));
                }
                j = end;
                if chars.get(j) == Some(&'/') {
                    let end = digits_from(j + 1);
                    if end == j + 1 {
                        return Err(syntax(line, j + 2, "denominator digits"));
                    }
                    j = end;
                }
                i = j;
                Tok::Num(chars[start..j].iter().collect())
            }
            c if is_name_start(c) => {
                let start = i;
                while i < chars.len() && is_name_char(chars[i]) {
                    i += 1;
                }
                Tok::Name(chars[start..i].iter().collect())
            }
            _ => return Err(syntax(line, col, "species, number, '+', '->', '<->', ',', '=' or ';'")),
        };
        out.push(Lexed { tok, col });
    }
    Ok((out, chars.len() + 1))
}

struct Cursor<'a> {
    toks: &'a [Lexed],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, expected: &str) -> Error {
        syntax(self.line, self.col(), expected)
    }

    fn complex(&mut self) -> Result<Complex> {
        if let (Some(Tok::Num(n)), next) = (self.peek(), self.toks.get(self.pos + 1).map(|t| &t.tok)) {
            if n == "0" && !matches!(next, Some(Tok::Name(_))) {
                self.pos += 1;
                return Ok(Vec::new());
            }
        }
        let mut out: Complex = Vec::new();
        loop {
            let coefficient = match self.peek() {
                Some(Tok::Num(n)) => {
                    let q = parse_rational(n).ok_or_else(|| self.err("rational coefficient"))?;
                    if q.is_negative() {
                        return Err(Error::NegativeCoefficient { line: self.line });
                    }
                    self.pos += 1;
                    q
                }
                _ => Q::one(),
            };
            let name = match self.peek() {
                Some(Tok::Name(n)) => n.clone(),
                _ => return Err(self.err("species name")),
            };
            self.pos += 1;
            if !coefficient.is_zero() {
                match out.iter_mut().find(|(s, _)| *s == name) {
                    Some((_, c)) => *c += coefficient,
                    None => out.push((name, coefficient)),
                }
            }
            if self.peek() == Some(&Tok::Plus) {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }

    fn rate(&mut self) -> Result<Q> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let q = parse_rational(n).ok_or_else(|| self.err("rate constant"))?;
                if !q.is_positive() {
                    return Err(Error::NonPositiveRateLiteral { line: self.line });
                }
                self.pos += 1;
                Ok(q)
            }
            _ => Err(self.err("rate constant")),
        }
    }

    fn reaction(&mut self) -> Result<Reaction> {
        let column = self.col();
        let lhs = self.complex()?;
        let direction = match self.peek() {
            Some(Tok::Arrow) => Direction::Forward,
            Some(Tok::BiArrow) => Direction::Reversible,
            _ => return Err(self.err("'+', '->' or '<->'")),
        };
        self.pos += 1;
        let rhs = self.complex()?;
        let mut rates = Vec::new();
        if self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Name(k)) if k == "k" => self.pos += 1,
                _ => return Err(self.err("'k'")),
            }
            if self.peek() != Some(&Tok::Equals) {
                return Err(self.err("'='"));
            }
            self.pos += 1;
            rates.push(self.rate()?);
            if direction == Direction::Reversible {
                if self.peek() != Some(&Tok::Comma) {
                    return Err(self.err("',' and a backward rate"));
                }
                self.pos += 1;
                rates.push(self.rate()?);
            }
        }
        match self.peek() {
            None | Some(Tok::Semi) => Ok(Reaction { lhs, rhs, direction, rates, line: self.line, column }),
            _ => Err(self.err(if rates.is_empty() { "'+', ',' or end of reaction" } else { "end of reaction" })),
        }
    }
}

fn valid_name(name: &str) -> bool {
    let mut cs = name.chars();
    cs.next().is_some_and(is_name_start) && cs.all(is_name_char)
}

/// Parses a whole document. Blank lines and `#` comments are ignored.
pub fn parse(text: &str) -> Result<NetworkDocument> {
    let mut doc = NetworkDocument::default();
    let mut declared: Vec<String> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_start();
        if let Some(rest) = trimmed.strip_prefix("species:") {
            let offset = raw.len() - trimmed.len() + "species:".len();
            let body = rest.split('#').next().unwrap_or("");
            for name in body.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                if !valid_name(name) {
                    let col = offset + body.find(name).unwrap_or(0) + 1;
                    return Err(syntax(line, col, "species name"));
                }
                if declared.iter().any(|d| d == name) {
                    return Err(Error::DuplicateSpeciesDeclaration(name.to_string()));
                }
                declared.push(name.to_string());
                if !doc.species.iter().any(|s| s == name) {
                    doc.species.push(name.to_string());
                }
            }
            continue;
        }
        let (toks, end_col) = lex(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { toks: &toks, pos: 0, line, end_col };
        loop {
            let r = cur.reaction()?;
            for (name, _) in r.lhs.iter().chain(&r.rhs) {
                if !doc.species.iter().any(|s| s == name) {
                    doc.species.push(name.clone());
                }
            }
            doc.reactions.push(r);
            match cur.peek() {
                Some(Tok::Semi) => {
                    cur.pos += 1;
                    if cur.peek().is_none() {
                        break;
                    }
                }
                _ => break,
            }
        }
    }
    Ok(doc)
}

fn write_complex(f: &mut fmt::Formatter<'_>, c: &Complex) -> fmt::Result {
    if c.is_empty() {
        return write!(f, "0");
    }
    for (i, (name, k)) in c.iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        if k.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{} {name}", format_rational(k))?;
        }
    }
    Ok(())
}

impl fmt::Display for NetworkDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.species.is_empty() {
            writeln!(f, "species: {}", self.species.join(" "))?;
        }
        for r in &self.reactions {
            write_complex(f, &r.lhs)?;
            write!(f, " {} ", if r.direction == Direction::Forward { "->" } else { "<->" })?;
            write_complex(f, &r.rhs)?;
            if !r.rates.is_empty() {
                let rates: Vec<String> = r.rates.iter().map(format_rational).collect();
                write!(f, ", k = {}", rates.join(", "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// One labelled edge per reaction direction, in document order.
struct ExpandedEdge {
    source: RationalVector,
    target: RationalVector,
    rate: Option<Q>,
}

impl NetworkDocument {
    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn num_edges(&self) -> usize {
        self.reactions.iter().map(|r| if r.direction == Direction::Forward { 1 } else { 2 }).sum()
    }

    pub fn has_all_rates(&self) -> bool {
        !self.reactions.is_empty() && self.reactions.iter().all(|r| !r.rates.is_empty())
    }

    /// Coordinates of a complex with respect to `species`.
    pub fn complex_vector(complex: &Complex, species: &[String]) -> Result<RationalVector> {
        let mut v = vec![Q::zero(); species.len()];
        for (name, k) in complex {
            let i = species
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| Error::UnknownSpecies(name.clone()))?;
            v[i] += k;
        }
        Ok(RationalVector::new(v))
    }

    fn expand(&self, species: &[String]) -> Result<Vec<ExpandedEdge>> {
        let mut out = Vec::with_capacity(self.num_edges());
        for r in &self.reactions {
            let a = Self::complex_vector(&r.lhs, species)?;
            let b = Self::complex_vector(&r.rhs, species)?;
            out.push(ExpandedEdge { source: a.clone(), target: b.clone(), rate: r.rates.first().cloned() });
            if r.direction == Direction::Reversible {
                out.push(ExpandedEdge { source: b, target: a, rate: r.rates.get(1).cloned() });
            }
        }
        Ok(out)
    }

    /// The network in this document's own species order, with rates when
    /// every reaction carries them.
    pub fn to_egraph(&self) -> Result<(EGraph, Option<RateAssignment>)> {
        self.to_egraph_over(&self.species, false)
    }

    /// As [`to_egraph`](Self::to_egraph) but every reaction must carry rates.
    pub fn to_egraph_with_rates(&self) -> Result<(EGraph, RateAssignment)> {
        if let Some(r) = self.reactions.iter().find(|r| r.rates.is_empty()) {
            return Err(Error::MissingRate { line: r.line });
        }
        let (g, k) = self.to_egraph()?;
        Ok((g, k.expect("all reactions carry rates")))
    }

    /// Builds the network over an explicit species list (a superset of this
    /// document's species); absent species get coordinate zero. With `merge`,
    /// parallel reactions are merged and their rates summed.
    pub fn to_egraph_over(&self, species: &[String], merge: bool) -> Result<(EGraph, Option<RateAssignment>)> {
        let edges = self.expand(species)?;
        if edges.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        let dim = species.len();
        if self.has_all_rates() {
            let weighted: Vec<_> =
                edges.iter().map(|e| (e.source.clone(), e.target.clone(), e.rate.clone().expect("rate"))).collect();
            if merge {
                let (g, k) = EGraph::from_weighted_reactions(dim, &weighted)?;
                return Ok((g, Some(k)));
            }
            let pairs: Vec<_> = weighted.iter().map(|(s, t, _)| (s.clone(), t.clone())).collect();
            let g = EGraph::from_reactions(dim, &pairs)?;
            let k = RateAssignment::new(weighted.into_iter().map(|(_, _, k)| k).collect())?;
            return Ok((g, Some(k)));
        }
        let mut pairs: Vec<_> = edges.iter().map(|e| (e.source.clone(), e.target.clone())).collect();
        if merge {
            let mut seen = std::collections::HashSet::new();
            pairs.retain(|p| seen.insert(p.clone()));
        }
        Ok((EGraph::from_reactions(dim, &pairs)?, None))
    }

    /// Replaces every rate, consuming them in edge order.
    pub fn apply_rates(&mut self, rates: &[Q]) -> Result<()> {
        let n = self.num_edges();
        if rates.len() != n {
            return Err(Error::RateLengthMismatch { expected: n, found: rates.len() });
        }
        if let Some(index) = rates.iter().position(|k| !k.is_positive()) {
            return Err(Error::NonPositiveRate { index });
        }
        let mut it = rates.iter().cloned();
        for r in &mut self.reactions {
            let m = if r.direction == Direction::Forward { 1 } else { 2 };
            r.rates = (0..m).map(|_| it.next().expect("length checked")).collect();
        }
        Ok(())
    }

    /// One forward reaction per edge.
    pub fn from_egraph(g: &EGraph, species: &[String], rates: Option<&RateAssignment>) -> Result<Self> {
        if species.len() != g.dim() {
            return Err(Error::DimensionMismatch { expected: g.dim(), found: species.len() });
        }
        if let Some(k) = rates {
            k.check_for(g)?;
        }
        let complex = |v: &RationalVector| -> Complex {
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (species[i].clone(), c.clone()))
                .collect()
        };
        let reactions = (0..g.num_edges())
            .map(|e| Reaction {
                lhs: complex(g.source(e)),
                rhs: complex(g.target(e)),
                direction: Direction::Forward,
                rates: rates.map(|k| vec![k.rates()[e].clone()]).unwrap_or_default(),
                line: e + 2,
                column: 1,
            })
            .collect();
        Ok(NetworkDocument { species: species.to_vec(), reactions })
    }
}

/// Default species names: `X` in one dimension, `X1..Xd` otherwise.
pub fn default_species(dim: usize) -> Vec<String> {
    if dim == 1 {
        vec!["X".into()]
    } else {
        (1..=dim).map(|i| format!("X{i}")).collect()
    }
}

/// Union of species in first-seen order across documents.
pub fn union_species<'a>(docs: impl IntoIterator<Item = &'a NetworkDocument>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for d in docs {
        for s in &d.species {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};
    use crate::rv;

    #[test]
    fn reversible_with_two_rates() {
        let doc = parse("X1 <-> X2 , k = 1, 1").unwrap();
        assert_eq!(doc.species, vec!["X1", "X2"]);
        let (g, k) = doc.to_egraph_with_rates().unwrap();
        assert_eq!(g.num_edges(), 2);
        assert_eq!(k.rates(), &[q(1), q(1)]);
    }

    #[test]
    fn empty_complex_and_fraction() {
        let doc = parse("0 -> 2 X , k = 1/2").unwrap();
        let (g, k) = doc.to_egraph().unwrap();
        assert_eq!(g.edge_labels(), vec![(rv![0], rv![2])]);
        assert_eq!(k.unwrap().rates(), &[qr(1, 2)]);
        let doc = parse("0 -> 2X").unwrap();
        assert_eq!(doc.reactions[0].rhs, vec![("X".to_string(), q(2))]);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("X1 + -> X2") {
            Err(Error::Syntax { line: 1, column: 6, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("\n-2 X -> Y"), Err(Error::NegativeCoefficient { line: 2 })));
        assert!(matches!(parse("X -> Y, k = 0"), Err(Error::NonPositiveRateLiteral { line: 1 })));
        assert!(matches!(parse("X -> Y, k = 1.5"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("X <-> Y, k = 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("species: A B A"), Err(Error::DuplicateSpeciesDeclaration(_))));
        assert!(matches!(parse("X -> Y").unwrap().to_egraph_with_rates(), Err(Error::MissingRate { line: 1 })));
    }

    #[test]
    fn semicolons_and_comments() {
        let doc = parse("# system\nX2 -> X1; X1 -> X1 + X2; X1 -> 0   # tail\n").unwrap();
        let (g, _) = doc.to_egraph().unwrap();
        assert_eq!(g.nodes().len(), 4);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(doc.species, vec!["X2", "X1"]);
    }

    #[test]
    fn header_fixes_coordinates() {
        let doc = parse("species: X1 X2\nX2 -> X1").unwrap();
        let (g, _) = doc.to_egraph().unwrap();
        assert_eq!(g.edge_labels(), vec![(rv![0, 1], rv![1, 0])]);
    }

    #[test]
    fn repeated_complex_is_one_node() {
        let doc = parse("2 X1 + 3 X2 -> X1\nX1 -> 2 X1 + 3 X2").unwrap();
        assert_eq!(doc.to_egraph().unwrap().0.nodes().len(), 2);
    }

    #[test]
    fn round_trip() {
        let text = "species: A B\nA + 1/2 B <-> 0, k = 3, 2/3\n2 A -> B, k = 1\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.serialize(), text);
        assert_eq!(parse(&doc.serialize()).unwrap(), doc);
    }

    #[test]
    fn parallel_reactions_need_merge() {
        let doc = parse("X -> Y, k = 1\nX -> Y, k = 2").unwrap();
        assert!(matches!(doc.to_egraph(), Err(Error::MergeableParallelEdges { .. })));
        let (g, k) = doc.to_egraph_over(&doc.species, true).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(k.unwrap().rates(), &[q(3)]);
    }

    #[test]
    fn rates_can_be_replaced() {
        let mut doc = parse("X <-> Y\nY -> 0").unwrap();
        doc.apply_rates(&[q(1), q(2), q(3)]).unwrap();
        assert_eq!(doc.reactions[0].rates, vec![q(1), q(2)]);
        assert!(doc.apply_rates(&[q(1)]).is_err());
    }
}
