use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::AcitError;
use crate::scalar::Scalar;

pub type GateId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    Const(Scalar),
    Var(usize),
    Add(GateId, GateId),
    Sub(GateId, GateId),
    Mul(GateId, GateId),
    Div(GateId, GateId),
}

impl Gate {
    fn operands(&self) -> Option<(GateId, GateId)> {
        match *self {
            Gate::Add(a, b) | Gate::Sub(a, b) | Gate::Mul(a, b) | Gate::Div(a, b) => Some((a, b)),
            Gate::Const(_) | Gate::Var(_) => None,
        }
    }
}

/// An arithmetic circuit in topological order with one output gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    gates: Vec<Gate>,
    output: GateId,
}

impl Circuit {
    /// Checks that every operand refers to an earlier gate.
    pub fn new(gates: Vec<Gate>, output: GateId) -> Result<Self, AcitError> {
        for (id, g) in gates.iter().enumerate() {
            if let Some((a, b)) = g.operands() {
                if a >= id || b >= id {
                    return Err(AcitError::ForwardReference { gate: id });
                }
            }
        }
        if output >= gates.len() {
            return Err(AcitError::ForwardReference { gate: output });
        }
        Ok(Circuit { gates, output })
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> GateId {
        self.output
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// One more than the largest variable index, or 0.
    pub fn num_vars(&self) -> usize {
        self.gates
            .iter()
            .filter_map(|g| match g {
                Gate::Var(i) => Some(i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Largest number of multiplication or division gates on a path to the output.
    pub fn multiplicative_depth(&self) -> usize {
        let mut depth = vec![0usize; self.gates.len()];
        for (id, g) in self.gates.iter().enumerate() {
            depth[id] = match *g {
                Gate::Const(_) | Gate::Var(_) => 0,
                Gate::Add(a, b) | Gate::Sub(a, b) => depth[a].max(depth[b]),
                Gate::Mul(a, b) | Gate::Div(a, b) => depth[a].max(depth[b]) + 1,
            };
        }
        depth[self.output]
    }

    /// Exact values of gates `0..=last`.
    pub fn eval_all_exact(&self, assignment: &[Scalar], last: GateId) -> Result<Vec<Scalar>, AcitError> {
        let mut vals: Vec<Scalar> = Vec::with_capacity(last + 1);
        for (id, g) in self.gates[..=last].iter().enumerate() {
            let v = match g {
                Gate::Const(c) => c.clone(),
                Gate::Var(i) => assignment.get(*i).cloned().ok_or(AcitError::UnassignedVariable(*i))?,
                Gate::Add(a, b) => &vals[*a] + &vals[*b],
                Gate::Sub(a, b) => &vals[*a] - &vals[*b],
                Gate::Mul(a, b) => &vals[*a] * &vals[*b],
                Gate::Div(a, b) => {
                    if vals[*b].is_zero() {
                        return Err(AcitError::DivisionByZero { gate: id });
                    }
                    &vals[*a] / &vals[*b]
                }
            };
            vals.push(v);
        }
        Ok(vals)
    }
}

/// Exact rational value of the output gate.
pub fn eval_exact(c: &Circuit, assignment: &[Scalar]) -> Result<Scalar, AcitError> {
    let mut vals = c.eval_all_exact(assignment, c.output)?;
    Ok(vals.swap_remove(c.output))
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn int_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue below p")
}

/// Residue of `x` modulo the prime `p`; `None` when its denominator vanishes.
pub fn scalar_mod(x: &Scalar, p: u64) -> Option<u64> {
    let d = int_mod(x.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul_mod(int_mod(x.numer(), p), inv_mod(d, p), p))
}

/// Value of the output gate in the integers modulo the prime `p`.
pub fn eval_mod(c: &Circuit, assignment: &[u64], p: u64) -> Result<u64, AcitError> {
    let mut vals: Vec<u64> = Vec::with_capacity(c.output + 1);
    for (id, g) in c.gates[..=c.output].iter().enumerate() {
        let v = match g {
            Gate::Const(x) => scalar_mod(x, p).ok_or(AcitError::BadPrime(p))?,
            Gate::Var(i) => assignment.get(*i).copied().ok_or(AcitError::UnassignedVariable(*i))? % p,
            Gate::Add(a, b) => (vals[*a] + vals[*b]) % p,
            Gate::Sub(a, b) => (vals[*a] + p - vals[*b]) % p,
            Gate::Mul(a, b) => mul_mod(vals[*a], vals[*b], p),
            Gate::Div(a, b) => {
                if vals[*b] == 0 {
                    return Err(AcitError::DivisionByZero { gate: id });
                }
                mul_mod(vals[*a], inv_mod(vals[*b], p), p)
            }
        };
        vals.push(v);
    }
    Ok(vals[c.output])
}

/// Appends gates, sharing equal constants.
#[derive(Debug, Clone, Default)]
pub struct CircuitBuilder {
    gates: Vec<Gate>,
    consts: HashMap<Scalar, GateId>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    fn push(&mut self, g: Gate) -> GateId {
        self.gates.push(g);
        self.gates.len() - 1
    }

    pub fn constant(&mut self, v: Scalar) -> GateId {
        if let Some(&id) = self.consts.get(&v) {
            return id;
        }
        let id = self.push(Gate::Const(v.clone()));
        self.consts.insert(v, id);
        id
    }

    pub fn var(&mut self, i: usize) -> GateId {
        self.push(Gate::Var(i))
    }

    pub fn add(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Add(a, b))
    }

    pub fn sub(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Sub(a, b))
    }

    pub fn mul(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Mul(a, b))
    }

    pub fn div(&mut self, a: GateId, b: GateId) -> GateId {
        self.push(Gate::Div(a, b))
    }

    /// Left-to-right sum; the constant 0 for no terms.
    pub fn sum(&mut self, terms: &[GateId]) -> GateId {
        match terms.split_first() {
            None => self.constant(Scalar::zero()),
            Some((&first, rest)) => rest.iter().fold(first, |acc, &t| self.add(acc, t)),
        }
    }

    /// Sum of the present terms, `None` when there are none.
    pub fn sparse_sum(&mut self, terms: impl IntoIterator<Item = GateId>) -> Option<GateId> {
        terms.into_iter().fold(None, |acc, t| Some(acc.map_or(t, |a| self.add(a, t))))
    }

    pub fn finish(self, output: GateId) -> Circuit {
        assert!(output < self.gates.len(), "output gate exists");
        Circuit { gates: self.gates, output }
    }

    /// Exact values of every gate built so far.
    pub fn eval_all_exact(&self, assignment: &[Scalar]) -> Result<Vec<Scalar>, AcitError> {
        if self.gates.is_empty() {
            return Ok(Vec::new());
        }
        let c = Circuit { gates: self.gates.clone(), output: self.gates.len() - 1 };
        c.eval_all_exact(assignment, c.output)
    }
}
