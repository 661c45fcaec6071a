//! Propositional formulas evaluated to model sets.
//!
//! Worlds are the universe elements; an atom denotes the set of worlds where
//! it is true.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! imp  := or ( "->" imp )?
//! or   := and ( "|" and )*
//! and  := un ( "&" un )*
//! un   := "~" un | atom | "T" | "F" | "(" imp ")"
//! atom := [A-Za-z_][A-Za-z0-9_]*
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::setcore::{Subset, Universe};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Verum,
    Falsum,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn negation(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        fn go(f: &Formula, out: &mut Vec<String>) {
            match f {
                Formula::Atom(a) => {
                    if !out.contains(a) {
                        out.push(a.clone());
                    }
                }
                Formula::Verum | Formula::Falsum => {}
                Formula::Not(g) => go(g, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                    go(a, out);
                    go(b, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Verum | Formula::Falsum => 0,
            Formula::Not(g) => 1 + g.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for Formula {
    /// Fully parenthesised binary connectives; the output parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Verum => write!(f, "T"),
            Formula::Falsum => write!(f, "F"),
            Formula::Not(g) => write!(f, "~{g}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &str) -> Error {
        Error::Syntax { offset: self.pos, expected: expected.to_string() }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn grow(&self, d: usize) -> Result<usize> {
        if d > MAX_DEPTH {
            return Err(self.error("shallower nesting"));
        }
        Ok(d)
    }

    fn imp(&mut self, depth: usize) -> Result<(Formula, usize)> {
        let (lhs, dl) = self.or(depth)?;
        if self.eat("->") {
            let (rhs, dr) = self.imp(depth + 1)?;
            return Ok((Formula::implies(lhs, rhs), self.grow(1 + dl.max(dr))?));
        }
        Ok((lhs, dl))
    }

    fn or(&mut self, depth: usize) -> Result<(Formula, usize)> {
        let (mut lhs, mut dl) = self.and(depth)?;
        while self.eat("|") {
            let (rhs, dr) = self.and(depth)?;
            dl = self.grow(1 + dl.max(dr))?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok((lhs, dl))
    }

    fn and(&mut self, depth: usize) -> Result<(Formula, usize)> {
        let (mut lhs, mut dl) = self.unary(depth)?;
        while self.eat("&") {
            let (rhs, dr) = self.unary(depth)?;
            dl = self.grow(1 + dl.max(dr))?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok((lhs, dl))
    }

    fn unary(&mut self, depth: usize) -> Result<(Formula, usize)> {
        if depth > 2 * MAX_DEPTH + 1 {
            return Err(self.error("shallower nesting"));
        }
        match self.peek() {
            Some(b'~') => {
                self.pos += 1;
                let (g, d) = self.unary(depth + 1)?;
                Ok((Formula::negation(g), self.grow(1 + d)?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.imp(depth + 1)?;
                if !self.eat(")") {
                    return Err(self.error("')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
                let f = match word {
                    "T" => Formula::Verum,
                    "F" => Formula::Falsum,
                    _ => Formula::atom(word),
                };
                Ok((f, 0))
            }
            _ => Err(self.error("formula")),
        }
    }
}

/// Largest accepted formula depth; bracket nesting may reach twice this plus one.
const MAX_DEPTH: usize = 256;

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let (f, _) = p.imp(0)?;
    if p.peek().is_some() {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    universe: Universe,
    assignment: BTreeMap<String, Subset>,
}

impl Interpretation {
    pub fn new(universe: Universe) -> Self {
        Interpretation { universe, assignment: BTreeMap::new() }
    }

    pub fn bind(&mut self, atom: &str, ext: Subset) -> Result<()> {
        self.universe.check(&ext)?;
        if atom.is_empty()
            || !atom.chars().next().unwrap().is_ascii_alphabetic() && !atom.starts_with('_')
            || !atom.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            || atom == "T"
            || atom == "F"
        {
            return Err(Error::Input(format!("{atom:?} is not a usable atom name")));
        }
        self.assignment.insert(atom.to_string(), ext);
        Ok(())
    }

    pub fn with(mut self, atom: &str, ext: Subset) -> Result<Self> {
        self.bind(atom, ext)?;
        Ok(self)
    }

    /// Atoms `p0, p1, ...` with `p{i}` true exactly at element `i`.
    pub fn canonical(universe: &Universe) -> Self {
        let mut i = Interpretation::new(universe.clone());
        for k in 0..universe.len() {
            i.assignment.insert(format!("p{k}"), universe.singleton(k));
        }
        i
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn get(&self, atom: &str) -> Option<Subset> {
        self.assignment.get(atom).copied()
    }

    pub fn assignment(&self) -> &BTreeMap<String, Subset> {
        &self.assignment
    }
}

pub fn models(f: &Formula, i: &Interpretation) -> Result<Subset> {
    let u = &i.universe;
    Ok(match f {
        Formula::Atom(a) => i.get(a).ok_or_else(|| Error::UnboundAtom(a.clone()))?,
        Formula::Verum => u.full(),
        Formula::Falsum => u.empty(),
        Formula::Not(g) => models(g, i)?.complement(),
        Formula::And(a, b) => models(a, i)?.intersection(&models(b, i)?),
        Formula::Or(a, b) => models(a, i)?.union(&models(b, i)?),
        Formula::Implies(a, b) => models(a, i)?.complement().union(&models(b, i)?),
    })
}

pub fn classical_entails(f: &Formula, g: &Formula, i: &Interpretation) -> Result<bool> {
    Ok(models(f, i)?.is_subset_of(&models(g, i)?))
}

/// A formula whose models are exactly `a` under [`Interpretation::canonical`].
pub fn define(a: &Subset) -> Formula {
    let mut parts = a.elements().map(|k| Formula::atom(&format!("p{k}")));
    match parts.next() {
        None => Formula::Falsum,
        Some(first) => parts.fold(first, Formula::or),
    }
}
