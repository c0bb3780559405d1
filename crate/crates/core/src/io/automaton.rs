use std::fmt::Write;

use super::{err, keyed, parse_count, scalar_at, tokens, Lines, ParseError};
use crate::alphabet::RankedAlphabet;
use crate::automaton::{Mta, Mwa};
use crate::linalg::Matrix;
use crate::scalar::Exact;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyAutomaton {
    Mta(Mta),
    Mwa(Mwa),
}

/// `rows cols`, then one line per row. A matrix without columns has no row
/// lines.
pub fn write_matrix(out: &mut String, m: &Matrix) {
    writeln!(out, "{} {}", m.rows(), m.cols()).unwrap();
    if m.cols() == 0 {
        return;
    }
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|v| Exact(v).to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
}

// Checks the declared shape against `expected` before reading the rows.
fn read_matrix(lines: &mut Lines, expected: Option<(usize, usize)>, name: &str) -> Result<Matrix, ParseError> {
    let (n, text) = lines.next(&format!("matrix header for `{name}`"))?;
    let toks = tokens(text);
    if toks.len() != 2 {
        return err(n, 1, format!("expected `rows cols` for `{name}`"));
    }
    let rows = parse_count(n, toks[0], "row count")?;
    let cols = parse_count(n, toks[1], "column count")?;
    if let Some(e) = expected {
        if e != (rows, cols) {
            return err(
                n,
                toks[0].0,
                format!("matrix for `{name}` has shape {rows}x{cols}, expected {}x{}", e.0, e.1),
            );
        }
    }
    let mut data = Vec::with_capacity(rows * cols);
    if cols > 0 {
        for r in 0..rows {
            let (n, text) = lines.next(&format!("row {} of `{name}`", r + 1))?;
            let toks = tokens(text);
            if toks.len() != cols {
                return err(n, 1, format!("row {} of `{name}` has {} entries, expected {cols}", r + 1, toks.len()));
            }
            for t in toks {
                data.push(scalar_at(n, t)?);
            }
        }
    }
    Ok(Matrix::new(rows, cols, data).expect("entry count checked"))
}

/// A standalone matrix in the text form.
pub fn parse_matrix(text: &str) -> Result<Matrix, ParseError> {
    let mut lines = Lines::new(text);
    let m = read_matrix(&mut lines, None, "matrix")?;
    lines.finish()?;
    Ok(m)
}

pub fn write_mta(a: &Mta) -> String {
    let mut out = String::from("mta\n");
    let decl: Vec<String> = a.alphabet().symbols().iter().map(|(s, k)| format!("{s}/{k}")).collect();
    writeln!(out, "alphabet: {}", decl.join(" ")).unwrap();
    writeln!(out, "dim: {}", a.dim()).unwrap();
    for (i, (s, _)) in a.alphabet().symbols().iter().enumerate() {
        writeln!(out, "symbol {s}").unwrap();
        write_matrix(&mut out, a.mu(i));
    }
    out.push_str("final:\n");
    write_matrix(&mut out, a.gamma());
    out
}

pub fn write_mwa(a: &Mwa) -> String {
    let mut out = String::from("mwa\n");
    writeln!(out, "alphabet: {}", a.alphabet().join(" ")).unwrap();
    writeln!(out, "dim: {}", a.dim()).unwrap();
    for (i, s) in a.alphabet().iter().enumerate() {
        writeln!(out, "symbol {s}").unwrap();
        write_matrix(&mut out, a.mu(i));
    }
    out.push_str("initial:\n");
    write_matrix(&mut out, a.alpha());
    out.push_str("final:\n");
    write_matrix(&mut out, a.gamma());
    out
}

struct Header<'a> {
    kind: &'a str,
    names: Vec<String>,
    arities: Vec<usize>,
    alphabet_line: usize,
    dim: usize,
}

fn read_header<'a>(lines: &mut Lines<'a>) -> Result<Header<'a>, ParseError> {
    let (n, text) = lines.next("`mta` or `mwa`")?;
    let toks = tokens(text);
    let kind = match toks.as_slice() {
        [(_, k @ ("mta" | "mwa"))] => *k,
        _ => return err(n, 1, "expected `mta` or `mwa`"),
    };
    let line = lines.next("`alphabet:`")?;
    let decl = keyed(line, "alphabet:")?;
    let mut names = Vec::new();
    let mut arities = Vec::new();
    for (col, tok) in decl {
        if kind == "mta" {
            let Some((name, k)) = tok.rsplit_once('/') else {
                return err(line.0, col, format!("expected `name/arity`, found `{tok}`"));
            };
            names.push(name.to_string());
            arities.push(parse_count(line.0, (col + name.len() + 1, k), "arity")?);
        } else {
            names.push(tok.to_string());
            arities.push(1);
        }
    }
    let dline = lines.next("`dim:`")?;
    let d = keyed(dline, "dim:")?;
    let [tok] = d.as_slice() else {
        return err(dline.0, 1, "expected `dim: n`");
    };
    let dim = parse_count(dline.0, *tok, "dimension")?;
    Ok(Header { kind, names, arities, alphabet_line: line.0, dim })
}

struct Body {
    mu: Vec<Matrix>,
    initial: Option<Matrix>,
    last: Matrix,
}

fn read_body(lines: &mut Lines, h: &Header) -> Result<Body, ParseError> {
    let mut mu: Vec<Option<Matrix>> = vec![None; h.names.len()];
    let mut initial = None;
    let mut last = None;
    while let Some((n, text)) = lines.peek() {
        let toks = tokens(text);
        match toks.as_slice() {
            [(_, "symbol"), (col, name)] => {
                lines.next("")?;
                let Some(i) = h.names.iter().position(|s| s == name) else {
                    return err(n, *col, format!("unknown symbol `{name}`"));
                };
                if mu[i].is_some() {
                    return err(n, *col, format!("duplicate block for `{name}`"));
                }
                let rows = h.dim.checked_pow(h.arities[i] as u32).unwrap_or(usize::MAX);
                mu[i] = Some(read_matrix(lines, Some((rows, h.dim)), name)?);
            }
            [(_, "initial:")] if h.kind == "mwa" && initial.is_none() => {
                lines.next("")?;
                initial = Some(read_matrix(lines, Some((1, h.dim)), "initial")?);
            }
            [(_, "final:")] if last.is_none() => {
                lines.next("")?;
                last = Some(read_matrix(lines, Some((h.dim, 1)), "final")?);
            }
            _ => return err(n, toks[0].0, format!("unexpected `{}`", toks[0].1)),
        }
    }
    let end = (h.alphabet_line, 1);
    let mu = mu
        .into_iter()
        .zip(&h.names)
        .map(|(m, s)| m.ok_or_else(|| missing(end, &format!("symbol {s}"))))
        .collect::<Result<Vec<_>, _>>()?;
    if h.kind == "mwa" && initial.is_none() {
        return Err(missing(end, "initial:"));
    }
    let last = last.ok_or_else(|| missing(end, "final:"))?;
    Ok(Body { mu, initial, last })
}

fn missing((line, column): (usize, usize), block: &str) -> ParseError {
    ParseError { line, column, message: format!("missing `{block}` block") }
}

/// An automaton in either format, told apart by its first line.
pub fn parse_automaton(text: &str) -> Result<AnyAutomaton, ParseError> {
    let mut lines = Lines::new(text);
    let h = read_header(&mut lines)?;
    let body = read_body(&mut lines, &h)?;
    let at = |e: crate::automaton::AutomatonError| ParseError { line: h.alphabet_line, column: 1, message: e.to_string() };
    if h.kind == "mta" {
        let alphabet = RankedAlphabet::new(h.names.iter().cloned().zip(h.arities.iter().copied()))
            .map_err(|e| at(e.into()))?;
        Ok(AnyAutomaton::Mta(Mta::new(h.dim, alphabet, body.mu, body.last).map_err(at)?))
    } else {
        let initial = body.initial.expect("checked in body");
        Ok(AnyAutomaton::Mwa(Mwa::new(h.dim, h.names.clone(), body.mu, initial, body.last).map_err(at)?))
    }
}

pub fn parse_mta(text: &str) -> Result<Mta, ParseError> {
    match parse_automaton(text)? {
        AnyAutomaton::Mta(a) => Ok(a),
        AnyAutomaton::Mwa(_) => err(1, 1, "expected an `mta` file"),
    }
}

pub fn parse_mwa(text: &str) -> Result<Mwa, ParseError> {
    match parse_automaton(text)? {
        AnyAutomaton::Mwa(a) => Ok(a),
        AnyAutomaton::Mta(_) => err(1, 1, "expected an `mwa` file"),
    }
}
