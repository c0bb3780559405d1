use num_bigint::{BigInt, Sign};
use num_traits::Zero;

use super::circuit::{Circuit, CircuitBuilder, Gate, GateId};
use crate::scalar::Scalar;

// A gate value as numerator over denominator; `None` stands for the
// denominator 1 and is decided by gate kind alone.
type Pair = (GateId, Option<GateId>);

fn integer(b: &mut CircuitBuilder, v: &BigInt) -> GateId {
    match v.sign() {
        Sign::Minus => {
            let zero = b.constant(Scalar::zero());
            let m = b.constant(Scalar::from_integer(-v));
            b.sub(zero, m)
        }
        _ => b.constant(Scalar::from_integer(v.clone())),
    }
}

fn times(b: &mut CircuitBuilder, x: Option<GateId>, y: Option<GateId>) -> Option<GateId> {
    match (x, y) {
        (None, d) | (d, None) => d,
        (Some(x), Some(y)) => Some(b.mul(x, y)),
    }
}

fn scale(b: &mut CircuitBuilder, g: GateId, d: Option<GateId>) -> GateId {
    match d {
        None => g,
        Some(d) => b.mul(g, d),
    }
}

/// The circuit over `{+, −, ×}` with nonnegative integer constants whose
/// output is the numerator `N` of the input circuit's value `N / D`.
///
/// Every gate becomes a numerator/denominator pair: `a/b ± c/d = (ad ± cb)/bd`,
/// `(a/b)(c/d) = ac/bd`, `(a/b)/(c/d) = ad/bc`. Where the input circuit has
/// no division by zero, `D ≠ 0` and the output is zero exactly when the
/// input's output is.
pub fn lower(c: &Circuit) -> Circuit {
    let mut b = CircuitBuilder::new();
    let mut pairs: Vec<Pair> = Vec::with_capacity(c.len());
    for g in &c.gates()[..=c.output()] {
        let pair = match g {
            Gate::Const(x) => {
                let num = integer(&mut b, x.numer());
                let den = if x.is_integer() { None } else { Some(integer(&mut b, x.denom())) };
                (num, den)
            }
            Gate::Var(i) => (b.var(*i), None),
            Gate::Add(x, y) | Gate::Sub(x, y) => {
                let ((a, bd), (c2, dd)) = (pairs[*x], pairs[*y]);
                let l = scale(&mut b, a, dd);
                let r = scale(&mut b, c2, bd);
                let num = if matches!(g, Gate::Add(..)) { b.add(l, r) } else { b.sub(l, r) };
                (num, times(&mut b, bd, dd))
            }
            Gate::Mul(x, y) => {
                let ((a, bd), (c2, dd)) = (pairs[*x], pairs[*y]);
                (b.mul(a, c2), times(&mut b, bd, dd))
            }
            Gate::Div(x, y) => {
                let ((a, bd), (c2, dd)) = (pairs[*x], pairs[*y]);
                (scale(&mut b, a, dd), Some(scale(&mut b, c2, bd)))
            }
        };
        pairs.push(pair);
    }
    let out = pairs[c.output()].0;
    b.finish(out)
}

/// Whether the circuit uses only `+`, `−`, `×` and nonnegative integer constants.
pub fn is_lowered(c: &Circuit) -> bool {
    c.gates().iter().all(|g| match g {
        Gate::Const(x) => x.is_integer() && !x.numer().sign().eq(&Sign::Minus),
        Gate::Div(..) => false,
        _ => true,
    })
}
