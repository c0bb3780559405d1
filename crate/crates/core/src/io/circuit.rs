use std::fmt::Write;

use super::{err, scalar_at, tokens, Lines, ParseError};
use crate::acit::{Circuit, Gate};
use crate::scalar::Exact;

/// One `g<k> = …` line per gate, then `output g<k>`. Variables are `x<i>`
/// with the 0-based index of [`Gate::Var`].
pub fn write_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    for (k, g) in c.gates().iter().enumerate() {
        let rhs = match g {
            Gate::Const(v) => format!("const {}", Exact(v)),
            Gate::Var(i) => format!("var x{i}"),
            Gate::Add(a, b) => format!("add g{a} g{b}"),
            Gate::Sub(a, b) => format!("sub g{a} g{b}"),
            Gate::Mul(a, b) => format!("mul g{a} g{b}"),
            Gate::Div(a, b) => format!("div g{a} g{b}"),
        };
        writeln!(out, "g{k} = {rhs}").unwrap();
    }
    writeln!(out, "output g{}", c.output()).unwrap();
    out
}

fn index(n: usize, (col, tok): (usize, &str), prefix: char) -> Result<usize, ParseError> {
    tok.strip_prefix(prefix)
        .and_then(|d| d.parse().ok())
        .map_or_else(|| err(n, col, format!("expected `{prefix}<index>`, found `{tok}`")), Ok)
}

fn operand(n: usize, t: (usize, &str), k: usize) -> Result<usize, ParseError> {
    let g = index(n, t, 'g')?;
    if g >= k {
        return err(n, t.0, format!("gate g{k} refers to later gate g{g}"));
    }
    Ok(g)
}

pub fn parse_circuit(text: &str) -> Result<Circuit, ParseError> {
    let mut lines = Lines::new(text);
    let mut gates = Vec::new();
    loop {
        let (n, line) = lines.next("gate or `output`")?;
        let toks = tokens(line);
        if toks[0].1 == "output" {
            let [_, g] = toks.as_slice() else {
                return err(n, 1, "expected `output g<k>`");
            };
            let out = index(n, *g, 'g')?;
            if out >= gates.len() {
                return err(n, g.0, format!("output gate g{out} does not exist"));
            }
            lines.finish()?;
            return Ok(Circuit::new(gates, out).expect("references checked"));
        }
        let k = gates.len();
        if index(n, toks[0], 'g')? != k {
            return err(n, toks[0].0, format!("expected gate g{k}"));
        }
        if toks.get(1).map(|t| t.1) != Some("=") {
            return err(n, toks.get(1).map_or(1, |t| t.0), "expected `=`");
        }
        let gate = match &toks[2..] {
            [(_, "const"), v] => Gate::Const(scalar_at(n, *v)?),
            [(_, "var"), x] => Gate::Var(index(n, *x, 'x')?),
            [(col, op @ ("add" | "sub" | "mul" | "div")), a, b] => {
                let (a, b) = (operand(n, *a, k)?, operand(n, *b, k)?);
                match *op {
                    "add" => Gate::Add(a, b),
                    "sub" => Gate::Sub(a, b),
                    "mul" => Gate::Mul(a, b),
                    "div" => Gate::Div(a, b),
                    _ => return err(n, *col, "unknown operation"),
                }
            }
            _ => return err(n, toks.get(2).map_or(1, |t| t.0), "expected `const`, `var`, `add`, `sub`, `mul` or `div`"),
        };
        gates.push(gate);
    }
}
