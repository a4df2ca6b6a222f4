//! The `.bpm` text format.
//!
//! ```text
//! # comment
//! field 2
//! gen g 0 1
//! gen h 1 0
//! rel r 1 1 : 1*g + 1*h
//! ```
//!
//! `field` is optional and must precede every `gen`/`rel` line. Coefficients
//! are integers reduced modulo the field; monomials are implied by degrees.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactlinalg::PrimeField;

use super::bigrade::Bigrade;
use super::presentation::Presentation;

pub fn parse_bpm(text: &str) -> Result<Presentation> {
    parse_bpm_with_default(text, PrimeField::F2)
}

/// Parses with `default_field` used when no `field` line is present.
pub fn parse_bpm_with_default(text: &str, default_field: PrimeField) -> Result<Presentation> {
    let mut field = default_field;
    let mut seen_field = false;
    let mut gen_names: HashMap<String, usize> = HashMap::new();
    let mut gens = Vec::new();
    let mut relations: Vec<(Bigrade, Vec<(usize, i64)>)> = Vec::new();
    let mut rel_names: HashMap<String, usize> = HashMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Tokens::new(content, line);
        let Some((kw, kw_col)) = tokens.next() else {
            continue;
        };
        match kw {
            "field" => {
                if seen_field || !gens.is_empty() || !relations.is_empty() {
                    return Err(syntax(line, kw_col, "`field` must appear once, before any gen/rel"));
                }
                let (p, col) = tokens.expect("modulus")?;
                let p: u32 = p.parse().map_err(|_| syntax(line, col, "modulus must be an integer"))?;
                field = PrimeField::new(p)?;
                seen_field = true;
                tokens.end()?;
            }
            "gen" => {
                let (name, col) = tokens.expect("generator name")?;
                let x = tokens.degree()?;
                let y = tokens.degree()?;
                tokens.end()?;
                if gen_names.insert(name.to_string(), gens.len()).is_some() {
                    return Err(syntax(line, col, &format!("duplicate generator `{name}`")));
                }
                gens.push(Bigrade::new(x, y));
            }
            "rel" => {
                let (name, col) = tokens.expect("relation name")?;
                if rel_names.insert(name.to_string(), relations.len()).is_some() {
                    return Err(syntax(line, col, &format!("duplicate relation `{name}`")));
                }
                let x = tokens.degree()?;
                let y = tokens.degree()?;
                let (colon, ccol) = tokens.expect("`:`")?;
                if colon != ":" {
                    return Err(syntax(line, ccol, "expected `:`"));
                }
                let terms = parse_terms(tokens.rest(), line, &gen_names)?;
                relations.push((Bigrade::new(x, y), terms));
            }
            other => {
                return Err(syntax(line, kw_col, &format!("unknown declaration `{other}`")));
            }
        }
    }
    Presentation::from_relations(field, gens, relations)
}

fn parse_terms(
    (rest, offset): (&str, usize),
    line: usize,
    gen_names: &HashMap<String, usize>,
) -> Result<Vec<(usize, i64)>> {
    let mut terms = Vec::new();
    if rest.trim().is_empty() {
        return Ok(terms);
    }
    let mut pos = offset;
    for piece in rest.split('+') {
        let lead = piece.len() - piece.trim_start().len();
        let col = pos + lead + 1;
        let term = piece.trim();
        let (c, name) = term
            .split_once('*')
            .ok_or_else(|| syntax(line, col, "expected `<coefficient>*<generator>`"))?;
        let c: i64 = c
            .trim()
            .parse()
            .map_err(|_| syntax(line, col, &format!("bad coefficient `{}`", c.trim())))?;
        let name = name.trim();
        let idx = *gen_names.get(name).ok_or_else(|| Error::UnknownGenerator {
            line,
            col: col + term.find('*').unwrap_or(0) + 1,
            name: name.to_string(),
        })?;
        terms.push((idx, c));
        pos += piece.len() + 1;
    }
    Ok(terms)
}

fn syntax(line: usize, col: usize, msg: &str) -> Error {
    Error::Syntax {
        line,
        col,
        msg: msg.to_string(),
    }
}

/// Whitespace tokenizer tracking 1-based columns.
struct Tokens<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str, line: usize) -> Self {
        Self { text, pos: 0, line }
    }

    fn next(&mut self) -> Option<(&'a str, usize)> {
        let rest = &self.text[self.pos..];
        let start = self.pos + (rest.len() - rest.trim_start().len());
        let tail = &self.text[start..];
        if tail.is_empty() {
            self.pos = self.text.len();
            return None;
        }
        let len = if tail.starts_with(':') {
            1
        } else {
            tail.find(|c: char| c.is_whitespace() || c == ':').unwrap_or(tail.len())
        };
        self.pos = start + len;
        Some((&self.text[start..start + len], start + 1))
    }

    fn expect(&mut self, what: &str) -> Result<(&'a str, usize)> {
        let col = self.text.len() + 1;
        self.next()
            .ok_or_else(|| syntax(self.line, col, &format!("expected {what}")))
    }

    fn degree(&mut self) -> Result<u32> {
        let (tok, col) = self.expect("degree")?;
        tok.parse::<u32>()
            .ok()
            .filter(|&v| v != super::bigrade::INF)
            .ok_or_else(|| syntax(self.line, col, &format!("bad degree `{tok}`")))
    }

    fn end(&mut self) -> Result<()> {
        match self.next() {
            None => Ok(()),
            Some((tok, col)) => Err(syntax(self.line, col, &format!("unexpected `{tok}`"))),
        }
    }

    fn rest(&mut self) -> (&'a str, usize) {
        let r = (&self.text[self.pos..], self.pos);
        self.pos = self.text.len();
        r
    }
}

/// Prints a presentation as `.bpm`, naming generators `g0, g1, …` and
/// relations `r0, r1, …`. Zero coefficients are omitted.
pub fn to_bpm(pres: &Presentation) -> String {
    let mut out = String::new();
    writeln!(out, "field {}", pres.field().modulus()).unwrap();
    for (i, g) in pres.gens().iter().enumerate() {
        writeln!(out, "gen g{i} {} {}", g.x, g.y).unwrap();
    }
    for (j, q) in pres.rels().iter().enumerate() {
        let terms: Vec<String> = (0..pres.gens().len())
            .filter_map(|i| {
                let c = pres.coeffs().get(i, j);
                (c != 0).then(|| format!("{c}*g{i}"))
            })
            .collect();
        if terms.is_empty() {
            writeln!(out, "rel r{j} {} {} :", q.x, q.y).unwrap();
        } else {
            writeln!(out, "rel r{j} {} {} : {}", q.x, q.y, terms.join(" + ")).unwrap();
        }
    }
    out
}
