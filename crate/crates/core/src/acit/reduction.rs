use num_traits::{One, Zero};

use super::circuit::{Circuit, CircuitBuilder, GateId};
use super::AcitError;
use crate::automaton::{Mta, Mwa};
use crate::constructions::product;
use crate::linalg::Matrix;
use crate::minimise::{advance, check_gram_size, DEFAULT_GRAM_LIMIT};
use crate::scalar::Scalar;

// A circuit value whose zero or one status follows from the input's sparsity
// pattern alone, so that skipping it never inspects a computed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    Zero,
    One,
    Gate(GateId),
}

fn mul(b: &mut CircuitBuilder, x: Term, y: Term) -> Term {
    match (x, y) {
        (Term::Zero, _) | (_, Term::Zero) => Term::Zero,
        (Term::One, t) | (t, Term::One) => t,
        (Term::Gate(x), Term::Gate(y)) => Term::Gate(b.mul(x, y)),
    }
}

fn gate(b: &mut CircuitBuilder, t: Term) -> GateId {
    match t {
        Term::Zero => b.constant(Scalar::zero()),
        Term::One => b.constant(Scalar::one()),
        Term::Gate(g) => g,
    }
}

fn sum(b: &mut CircuitBuilder, terms: impl IntoIterator<Item = Term>) -> Term {
    let mut acc: Option<GateId> = None;
    for t in terms {
        let g = match t {
            Term::Zero => continue,
            t => gate(b, t),
        };
        acc = Some(match acc {
            None => g,
            Some(a) => b.add(a, g),
        });
    }
    acc.map_or(Term::Zero, Term::Gate)
}

fn constant(b: &mut CircuitBuilder, v: &Scalar) -> Term {
    if v.is_zero() {
        Term::Zero
    } else {
        Term::Gate(b.constant(v.clone()))
    }
}

/// Gates computing `F · B` from the Gram recursions, sharing one builder.
#[derive(Debug, Clone)]
pub struct FbCircuit {
    pub builder: CircuitBuilder,
    /// `grid[i][j]` computes `(F · B)[i][j]`.
    pub grid: Vec<Vec<GateId>>,
}

// Per arity `k`, the rows of `M_k = Σ_{σ∈Σ_k} μ′(σ)` as sparse `(column, term)` lists.
fn summed_transitions(b: &mut CircuitBuilder, p: &Mta) -> Vec<Vec<Vec<(usize, Term)>>> {
    let n2 = p.dim();
    let alphabet = p.alphabet();
    (0..=alphabet.rank())
        .map(|k| {
            let symbols: Vec<usize> = alphabet.of_arity(k).collect();
            (0..n2.pow(k as u32))
                .map(|row| {
                    (0..n2)
                        .filter_map(|c| {
                            let terms: Vec<Term> =
                                symbols.iter().map(|&s| constant(b, p.mu(s).get(row, c))).collect();
                            match sum(b, terms) {
                                Term::Zero => None,
                                t => Some((c, t)),
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// A variable-free circuit whose designated gates compute the entries of
/// `F · B` for the Gram matrices of `a`.
///
/// Over the product automaton `A × A` with `M_k = Σ_{σ∈Σ_k} μ′(σ)`:
/// `f(1) = M_0`, `f(l+1) = Σ_k f(l)^{⊗k} · M_k`; with
/// `D = Σ_k Σ_j (f(n)^{⊗(j−1)} ⊗ I ⊗ f(n)^{⊗(k−j)}) · M_k` and `g = γ ⊗ γ`,
/// `β(1) = g`, `β(l+1) = g + D · β(l)` gives `β(n) = b(n) · g`.
/// `F[i][j] = f(n)[i·n + j]`, `B[i][j] = β(n)[i·n + j]`.
pub fn circuit_for_fb(a: &Mta) -> Result<FbCircuit, AcitError> {
    let n = a.dim();
    check_gram_size(n, a.alphabet().rank(), DEFAULT_GRAM_LIMIT)?;
    let p = product(a, a)?;
    let n2 = p.dim();
    let mut b = CircuitBuilder::new();
    let m = summed_transitions(&mut b, &p);

    let level = |b: &mut CircuitBuilder, f: &[Term]| -> Vec<Term> {
        let mut acc: Vec<Vec<Term>> = vec![Vec::new(); n2];
        let mut power = vec![Term::One];
        for (k, mk) in m.iter().enumerate() {
            if k > 0 {
                let mut next = Vec::with_capacity(power.len() * n2);
                for &x in &power {
                    for &y in f {
                        next.push(mul(b, x, y));
                    }
                }
                power = next;
            }
            for (row, entries) in mk.iter().enumerate() {
                for &(c, t) in entries {
                    let term = mul(b, power[row], t);
                    acc[c].push(term);
                }
            }
        }
        acc.into_iter().map(|terms| sum(b, terms)).collect()
    };

    let mut f: Vec<Term> = vec![Term::Zero; n2];
    for _ in 0..n {
        f = level(&mut b, &f);
    }

    let mut d: Vec<Vec<Vec<Term>>> = vec![vec![Vec::new(); n2]; n2];
    for (k, mk) in m.iter().enumerate().skip(1) {
        let mut tuple = vec![0usize; k];
        for (row, entries) in mk.iter().enumerate() {
            if row > 0 {
                advance(&mut tuple, n2);
            }
            if entries.is_empty() {
                continue;
            }
            for j in 0..k {
                let mut coef = Term::One;
                for (l, &t) in tuple.iter().enumerate() {
                    if l != j {
                        coef = mul(&mut b, coef, f[t]);
                    }
                }
                if coef == Term::Zero {
                    continue;
                }
                for &(c, t) in entries {
                    let term = mul(&mut b, coef, t);
                    d[tuple[j]][c].push(term);
                }
            }
        }
    }
    let d: Vec<Vec<Term>> =
        d.into_iter().map(|row| row.into_iter().map(|terms| sum(&mut b, terms)).collect()).collect();

    let gg = p.gamma_vec();
    let g: Vec<Term> = gg.iter().map(|x| constant(&mut b, x)).collect();
    let mut beta = g.clone();
    for _ in 1..n {
        let mut next = Vec::with_capacity(n2);
        for (row, gp) in d.iter().zip(&g) {
            let mut terms = vec![*gp];
            for (&dpc, &bc) in row.iter().zip(&beta) {
                terms.push(mul(&mut b, dpc, bc));
            }
            next.push(sum(&mut b, terms));
        }
        beta = next;
    }

    let mut grid = vec![Vec::with_capacity(n); n];
    for (i, row) in grid.iter_mut().enumerate() {
        for j in 0..n {
            let terms: Vec<Term> = (0..n).map(|k| mul(&mut b, f[i * n + k], beta[k * n + j])).collect();
            let t = sum(&mut b, terms);
            row.push(gate(&mut b, t));
        }
    }
    Ok(FbCircuit { builder: b, grid })
}

/// Appends gates whose output is zero exactly when `rank(M) ≤ d`.
///
/// With `A = Mᵀ·M` and `det(λI − A) = Σ c_k λ^k` computed by
/// Faddeev–LeVerrier gates, the output is `Σ_{k<n−d} c_k²`.
pub fn rank_le_to_acit(b: &mut CircuitBuilder, m: &[Vec<GateId>], d: usize) -> Result<GateId, AcitError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(AcitError::NotSquare);
    }
    if d > n {
        return Err(AcitError::ThresholdTooLarge { d, n });
    }
    let mut a = vec![vec![Term::Zero; n]; n];
    for i in 0..n {
        for j in 0..n {
            let terms: Vec<Term> = (0..n).map(|k| mul(b, Term::Gate(m[k][i]), Term::Gate(m[k][j]))).collect();
            a[i][j] = sum(b, terms);
        }
    }
    let mut coeffs = vec![Term::Zero; n + 1];
    coeffs[n] = Term::One;
    let mut mk = vec![vec![Term::Zero; n]; n];
    for k in 1..=n {
        let mut next = matmul(b, &a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = sum(b, [row[i], coeffs[n - k + 1]]);
        }
        mk = next;
        let terms: Vec<Term> =
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| mul(b, a[i][j], mk[j][i])).collect();
        let tr = sum(b, terms);
        let tr = gate(b, tr);
        let zero = b.constant(Scalar::zero());
        let neg = b.sub(zero, tr);
        let kk = b.constant(Scalar::from_integer(k.into()));
        coeffs[n - k] = Term::Gate(b.div(neg, kk));
    }
    let squares: Vec<Term> = coeffs[..n - d].iter().map(|&c| mul(b, c, c)).collect();
    let out = sum(b, squares);
    Ok(gate(b, out))
}

fn matmul(b: &mut CircuitBuilder, x: &[Vec<Term>], y: &[Vec<Term>]) -> Vec<Vec<Term>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let terms: Vec<Term> = (0..n).map(|k| mul(b, x[i][k], y[k][j])).collect();
                    sum(b, terms)
                })
                .collect()
        })
        .collect()
}

/// Circuit for `rank(m) ≤ d` over a constant matrix.
pub fn rank_le_circuit(m: &Matrix, d: usize) -> Result<Circuit, AcitError> {
    if !m.is_square() {
        return Err(AcitError::NotSquare);
    }
    let mut b = CircuitBuilder::new();
    let grid: Vec<Vec<GateId>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| b.constant(m.get(i, j).clone())).collect()).collect();
    let out = rank_le_to_acit(&mut b, &grid, d)?;
    Ok(b.finish(out))
}

/// A single circuit whose output is zero exactly when `a` has an equivalent
/// automaton of dimension at most `d`.
pub fn reduce_minimisation_to_acit(a: &Mta, d: usize) -> Result<Circuit, AcitError> {
    let FbCircuit { mut builder, grid } = circuit_for_fb(a)?;
    let out = rank_le_to_acit(&mut builder, &grid, d.min(a.dim()))?;
    Ok(builder.finish(out))
}

pub fn reduce_minimisation_to_acit_mwa(a: &Mwa, d: usize) -> Result<Circuit, AcitError> {
    reduce_minimisation_to_acit(&a.as_mta(), d)
}
