//! Finite fragments of Hankel matrices, built by brute-force enumeration.
//!
//! Rows are the trees of height `< h`, columns the contexts of hole depth
//! `< d` whose off-path subtrees come from a given pool. Trees are listed by
//! height, then by symbol declaration order, then lexicographically by child
//! indices; contexts by hole depth, then symbol, hole position, inner context
//! and off-path children.
//!
//! This is a desk-scale oracle. Every enumeration takes a count cap and fails
//! rather than run away.

use std::collections::HashSet;

use num_traits::{One, Zero};

use crate::alphabet::RankedAlphabet;
use crate::automaton::{AutomatonError, Mta, Mwa};
use crate::linalg::{dot, kron_vec, mat_vec, vec_mat, BasisBuilder, Matrix};
use crate::scalar::Scalar;
use crate::tree::{Context, Tree, HOLE};

pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HankelError {
    #[error("enumerating {what} would exceed the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// Trees of bounded height, stored as symbol index plus child indices.
#[derive(Debug, Clone)]
pub struct TreeEnumeration {
    nodes: Vec<(usize, Vec<usize>)>,
    names: Vec<String>,
}

impl TreeEnumeration {
    /// All trees of height `< max_height`; fails if there are more than `cap`.
    pub fn new(alphabet: &RankedAlphabet, max_height: usize, cap: usize) -> Result<Self, HankelError> {
        Self::build(alphabet, max_height, cap, false)
    }

    /// The first `limit` trees of height `< max_height` in enumeration order.
    pub fn truncated(alphabet: &RankedAlphabet, max_height: usize, limit: usize) -> Self {
        Self::build(alphabet, max_height, limit, true).expect("truncation never fails")
    }

    fn build(
        alphabet: &RankedAlphabet,
        max_height: usize,
        cap: usize,
        truncate: bool,
    ) -> Result<Self, HankelError> {
        let names = alphabet.symbols().iter().map(|s| s.0.clone()).collect();
        let mut out = TreeEnumeration { nodes: Vec::new(), names };
        if max_height == 0 {
            return Ok(out);
        }
        let overflow = |out: &mut TreeEnumeration| -> Result<bool, HankelError> {
            if out.nodes.len() < cap {
                return Ok(false);
            }
            if truncate {
                Ok(true)
            } else {
                Err(HankelError::CapExceeded { what: "trees", cap })
            }
        };
        for s in alphabet.of_arity(0) {
            if overflow(&mut out)? {
                return Ok(out);
            }
            out.nodes.push((s, Vec::new()));
        }
        let mut prev_start = 0;
        for _height in 1..max_height {
            let prior = out.nodes.len();
            if !truncate {
                let mut count: u128 = 0;
                for s in 0..alphabet.len() {
                    let k = alphabet.arity(s) as u32;
                    if k > 0 {
                        count += (prior as u128).pow(k) - (prev_start as u128).pow(k);
                    }
                }
                if prior as u128 + count > cap as u128 {
                    return Err(HankelError::CapExceeded { what: "trees", cap });
                }
            }
            for s in 0..alphabet.len() {
                let k = alphabet.arity(s);
                if k == 0 {
                    continue;
                }
                let mut tuple = vec![0usize; k];
                loop {
                    if tuple.iter().any(|&c| c >= prev_start) {
                        if overflow(&mut out)? {
                            return Ok(out);
                        }
                        out.nodes.push((s, tuple.clone()));
                    }
                    if !next_tuple(&mut tuple, prior) {
                        break;
                    }
                }
            }
            prev_start = prior;
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn tree(&self, i: usize) -> Tree {
        let (s, children) = &self.nodes[i];
        Tree::node(self.names[*s].clone(), children.iter().map(|&c| self.tree(c)).collect())
    }

    pub fn trees(&self) -> Vec<Tree> {
        (0..self.len()).map(|i| self.tree(i)).collect()
    }

    /// `μ(t)` for every enumerated tree, sharing work between subtrees.
    /// The automaton's alphabet must be the one used for enumeration.
    pub fn vectors(&self, a: &Mta) -> Vec<Vec<Scalar>> {
        let mut out: Vec<Vec<Scalar>> = Vec::with_capacity(self.len());
        for (s, children) in &self.nodes {
            let mut acc = vec![Scalar::one()];
            for &c in children {
                acc = kron_vec(&acc, &out[c]);
            }
            out.push(vec_mat(&acc, a.mu(*s)));
        }
        out
    }
}

// Advances a base-`n` counter (last position fastest); false on wrap-around.
fn next_tuple(t: &mut [usize], n: usize) -> bool {
    for x in t.iter_mut().rev() {
        *x += 1;
        if *x < n {
            return true;
        }
        *x = 0;
    }
    false
}

#[derive(Debug, Clone)]
enum CtxNode {
    Hole,
    Step { symbol: usize, pos: usize, inner: usize, others: Vec<usize> },
}

/// Contexts of bounded hole depth over a pool of off-path subtrees.
#[derive(Debug, Clone)]
pub struct ContextEnumeration {
    nodes: Vec<CtxNode>,
    pool: Vec<Tree>,
    names: Vec<String>,
}

/// Keeps the pool trees all of whose subtrees are themselves in the pool,
/// dropping duplicates and trees over foreign symbols.
pub fn closed_pool(alphabet: &RankedAlphabet, pool: &[Tree]) -> Vec<Tree> {
    let set: HashSet<&Tree> = pool.iter().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for t in pool {
        let mut ok = true;
        t.visit(&mut |s| {
            ok &= set.contains(s)
                && alphabet.index_of(&s.symbol).map(|i| alphabet.arity(i)) == Some(s.children.len());
        });
        if ok && seen.insert(t) {
            out.push(t.clone());
        }
    }
    out
}

impl ContextEnumeration {
    /// All contexts of hole depth `< max_depth` whose off-path subtrees lie in
    /// the subtree-closed part of `pool`.
    pub fn new(
        alphabet: &RankedAlphabet,
        max_depth: usize,
        pool: &[Tree],
        cap: usize,
    ) -> Result<Self, HankelError> {
        let pool = closed_pool(alphabet, pool);
        let names = alphabet.symbols().iter().map(|s| s.0.clone()).collect();
        let mut out = ContextEnumeration { nodes: Vec::new(), pool, names };
        if max_depth == 0 {
            return Ok(out);
        }
        out.nodes.push(CtxNode::Hole);
        let p = out.pool.len();
        let mut level = 0..1;
        for _depth in 1..max_depth {
            let mut count: u128 = 0;
            for s in 0..alphabet.len() {
                let k = alphabet.arity(s) as u32;
                if k > 0 {
                    count += k as u128 * level.len() as u128 * (p as u128).pow(k - 1);
                }
            }
            if out.nodes.len() as u128 + count > cap as u128 {
                return Err(HankelError::CapExceeded { what: "contexts", cap });
            }
            let start = out.nodes.len();
            for s in 0..alphabet.len() {
                let k = alphabet.arity(s);
                for pos in 0..k {
                    for inner in level.clone() {
                        let mut others = vec![0usize; k - 1];
                        if k > 1 && p == 0 {
                            continue;
                        }
                        loop {
                            out.nodes.push(CtxNode::Step { symbol: s, pos, inner, others: others.clone() });
                            if !next_tuple(&mut others, p) {
                                break;
                            }
                        }
                    }
                }
            }
            level = start..out.nodes.len();
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The pool actually used (subtree-closed, deduplicated).
    pub fn pool(&self) -> &[Tree] {
        &self.pool
    }

    fn tree(&self, i: usize) -> Tree {
        match &self.nodes[i] {
            CtxNode::Hole => Tree::leaf(HOLE),
            CtxNode::Step { symbol, pos, inner, others } => {
                let mut children: Vec<Tree> = others.iter().map(|&o| self.pool[o].clone()).collect();
                children.insert(*pos, self.tree(*inner));
                Tree::node(self.names[*symbol].clone(), children)
            }
        }
    }

    pub fn context(&self, i: usize) -> Context {
        Context::new(self.tree(i)).expect("enumerated contexts have one hole")
    }

    pub fn contexts(&self) -> Vec<Context> {
        (0..self.len()).map(|i| self.context(i)).collect()
    }

    /// `μ(c) · γ` for every enumerated context, via `μ(σ(…c′…)) = μ(c′) · μ(σ(…□…))`.
    pub fn vectors(&self, a: &Mta) -> Result<Vec<Vec<Scalar>>, AutomatonError> {
        let pool_vecs = self
            .pool
            .iter()
            .map(|t| a.mu_tree(t))
            .collect::<Result<Vec<_>, _>>()?;
        let n = a.dim();
        let mut mats: Vec<Matrix> = Vec::with_capacity(self.len());
        for node in &self.nodes {
            let m = match node {
                CtxNode::Hole => Matrix::identity(n),
                CtxNode::Step { symbol, pos, inner, others } => {
                    let mut acc = Matrix::identity(1);
                    for slot in 0..=others.len() {
                        let part = match slot.cmp(pos) {
                            std::cmp::Ordering::Less => Matrix::row_vector(pool_vecs[others[slot]].clone()),
                            std::cmp::Ordering::Equal => Matrix::identity(n),
                            std::cmp::Ordering::Greater => {
                                Matrix::row_vector(pool_vecs[others[slot - 1]].clone())
                            }
                        };
                        acc = acc.kron(&part);
                    }
                    let step = &acc * a.mu(*symbol);
                    &mats[*inner] * &step
                }
            };
            mats.push(m);
        }
        let gamma = a.gamma_vec();
        Ok(mats.iter().map(|m| mat_vec(m, &gamma)).collect())
    }
}

/// Materialised fragment with `values[i][j] = f(c_j[t_i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelFragment {
    pub row_labels: Vec<Tree>,
    pub col_labels: Vec<Context>,
    pub values: Matrix,
}

fn check_entries(rows: usize, cols: usize, cap: usize) -> Result<(), HankelError> {
    if rows.saturating_mul(cols) > cap {
        return Err(HankelError::CapExceeded { what: "fragment entries", cap });
    }
    Ok(())
}

/// Fragment over rows `T^{<max_tree_height}` and columns
/// `C^{<max_context_depth}` with off-path subtrees from `pool`; every entry is
/// the weight of the substituted tree `c[t]`.
pub fn hankel_fragment(
    a: &Mta,
    max_tree_height: usize,
    max_context_depth: usize,
    pool: &[Tree],
    cap: usize,
) -> Result<HankelFragment, HankelError> {
    let rows = TreeEnumeration::new(a.alphabet(), max_tree_height, cap)?;
    let cols = ContextEnumeration::new(a.alphabet(), max_context_depth, pool, cap)?;
    check_entries(rows.len(), cols.len(), cap)?;
    let row_labels = rows.trees();
    let col_labels = cols.contexts();
    let mut data = Vec::with_capacity(row_labels.len() * col_labels.len());
    for t in &row_labels {
        for c in &col_labels {
            data.push(a.eval_tree(&c.substitute(t))?);
        }
    }
    let values = Matrix::new(row_labels.len(), col_labels.len(), data).expect("sizes agree");
    Ok(HankelFragment { row_labels, col_labels, values })
}

/// Rank of the same fragment as [`hankel_fragment`], computed row by row
/// without materialising it. Entries are `μ(t) · (μ(c) · γ)`, which equals
/// `f(c[t])`.
pub fn hankel_rank(
    a: &Mta,
    max_tree_height: usize,
    max_context_depth: usize,
    pool: &[Tree],
    cap: usize,
) -> Result<usize, HankelError> {
    let rows = TreeEnumeration::new(a.alphabet(), max_tree_height, cap)?;
    let cols = ContextEnumeration::new(a.alphabet(), max_context_depth, pool, cap)?;
    check_entries(rows.len(), cols.len(), cap)?;
    let row_vecs = rows.vectors(a);
    let col_vecs = cols.vectors(a)?;
    let mut basis = BasisBuilder::new(col_vecs.len());
    let mut seen = HashSet::new();
    for r in &row_vecs {
        if basis.is_full() {
            break;
        }
        if r.iter().all(Zero::is_zero) || !seen.insert(r.clone()) {
            continue;
        }
        let row: Vec<Scalar> = col_vecs.iter().map(|c| dot(r, c)).collect();
        basis.insert(&row).expect("row length matches");
    }
    Ok(basis.len())
}

/// [`hankel_rank`] over trees of height `< n` and contexts of hole depth
/// `< n`, `n = a.dim()`, with the forward witnesses as off-path subtrees.
pub fn oracle_rank(a: &Mta, cap: usize) -> Result<usize, HankelError> {
    let pool = crate::minimise::forward_basis(a).witnesses;
    hankel_rank(a, a.dim(), a.dim(), &pool, cap)
}

/// Words over `alphabet` of length `< max_len`, shorter first, then
/// lexicographic in declaration order.
pub fn words_below(alphabet: &[String], max_len: usize) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    let mut level: Vec<Vec<String>> = vec![Vec::new()];
    out.push(Vec::new());
    for _ in 1..max_len {
        let mut next = Vec::with_capacity(level.len() * alphabet.len());
        for w in &level {
            for l in alphabet {
                let mut v = w.clone();
                v.push(l.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

/// Word fragment `H[x][y] = f(xy)`.
pub fn word_hankel<S: AsRef<str>>(a: &Mwa, rows: &[Vec<S>], cols: &[Vec<S>]) -> Result<Matrix, AutomatonError> {
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for x in rows {
        for y in cols {
            let w: Vec<&str> = x.iter().chain(y.iter()).map(AsRef::as_ref).collect();
            data.push(a.eval_word(&w)?);
        }
    }
    Ok(Matrix::new(rows.len(), cols.len(), data).expect("sizes agree"))
}
