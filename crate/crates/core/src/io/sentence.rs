use std::fmt::Write;

use super::{err, keyed, parse_count, scalar_at, tokens, Lines, ParseError};
use crate::alphabet::is_valid_name;
use crate::automaton::format_word;
use crate::consistency::{Monomial, Polynomial, Sample, Sentence};
use crate::scalar::{parse_scalar, Exact};

/// `vars n`, then one line per polynomial of `coeff:e1,…,en` monomials.
pub fn write_sentence(s: &Sentence) -> String {
    let mut out = format!("vars {}\n", s.num_vars);
    for p in &s.polynomials {
        let monos: Vec<String> = p
            .monomials
            .iter()
            .map(|m| {
                let e: Vec<String> = m.exponents.iter().map(u32::to_string).collect();
                format!("{}:{}", Exact(&m.coeff), e.join(","))
            })
            .collect();
        writeln!(out, "{}", monos.join(" ")).unwrap();
    }
    out
}

pub fn parse_sentence(text: &str) -> Result<Sentence, ParseError> {
    let mut lines = Lines::new(text);
    let line = lines.next("`vars n`")?;
    let v = keyed(line, "vars")?;
    let [tok] = v.as_slice() else {
        return err(line.0, 1, "expected `vars n`");
    };
    let n = parse_count(line.0, *tok, "variable count")?;
    let mut polys = Vec::new();
    while let Some((ln, text)) = lines.peek() {
        lines.next("")?;
        let mut monos = Vec::new();
        for (col, tok) in tokens(text) {
            let Some((c, e)) = tok.split_once(':') else {
                return err(ln, col, format!("expected `coeff:e1,…,en`, found `{tok}`"));
            };
            let coeff = scalar_at(ln, (col, c))?;
            let ecol = col + c.chars().count() + 1;
            let exps: Vec<u32> = if e.is_empty() {
                Vec::new()
            } else {
                e.split(',')
                    .map(|x| x.parse().or_else(|_| err(ln, ecol, format!("malformed exponent `{x}`"))))
                    .collect::<Result<_, _>>()?
            };
            if exps.len() != n {
                return err(ln, ecol, format!("expected {n} exponents, found {}", exps.len()));
            }
            monos.push(Monomial::new(coeff, exps));
        }
        polys.push(Polynomial::new(monos));
    }
    Ok(Sentence::new(n, polys).expect("exponent counts checked"))
}

/// One `word<TAB>weight` line per pair; the empty word is an empty field.
pub fn write_sample(s: &Sample) -> String {
    let mut out = String::new();
    for (w, r) in s.pairs() {
        writeln!(out, "{}\t{}", format_word(w), Exact(r)).unwrap();
    }
    out
}

pub fn parse_sample(text: &str) -> Result<Sample, ParseError> {
    let mut lines = Lines::new(text);
    let mut pairs = Vec::new();
    let mut seen = std::collections::HashMap::new();
    while let Some((n, line)) = lines.peek() {
        lines.next("")?;
        let Some((word, weight)) = line.rsplit_once('\t') else {
            return err(n, 1, "expected `word<TAB>weight`");
        };
        let col = word.chars().count() + 2;
        let r = parse_scalar(weight).or_else(|e| err(n, col, format!("malformed rational: {e}")))?;
        let mut w = Vec::new();
        for (c, sym) in tokens(word) {
            if !is_valid_name(sym) {
                return err(n, c, format!("invalid symbol `{sym}`"));
            }
            w.push(sym.to_string());
        }
        match seen.get(&w) {
            Some(prev) if *prev != r => {
                return err(n, col, format!("word `{}` carries two different weights", format_word(&w)));
            }
            Some(_) => {}
            None => {
                seen.insert(w.clone(), r.clone());
            }
        }
        pairs.push((w, r));
    }
    Ok(Sample::new(pairs).expect("symbols and weights checked"))
}
