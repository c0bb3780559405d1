#![allow(dead_code)]

use multiplicity::consistency::{Monomial, Polynomial, Sentence};
use multiplicity::hankel::TreeEnumeration;
use multiplicity::scalar::int;
use multiplicity::{Matrix, Mta, Mwa, RankedAlphabet, Scalar, Tree};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// Entries in -2..=2, zero with probability `sparsity` on top of the
// uniform draw.
pub fn entry(rng: &mut ChaCha8Rng, sparsity: f64) -> Scalar {
    if rng.gen_bool(sparsity) {
        int(0)
    } else {
        int(rng.gen_range(-2..=2))
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, sparsity: f64) -> Matrix {
    Matrix::new(rows, cols, (0..rows * cols).map(|_| entry(rng, sparsity)).collect()).unwrap()
}

/// 1 to `max_symbols` symbols of arity at most `max_rank`, the first nullary.
pub fn random_alphabet(rng: &mut ChaCha8Rng, max_rank: usize, max_symbols: usize) -> RankedAlphabet {
    let count = rng.gen_range(1..=max_symbols);
    let symbols: Vec<(String, usize)> = (0..count)
        .map(|i| {
            let k = if i == 0 { 0 } else { rng.gen_range(0..=max_rank) };
            (format!("s{i}"), k)
        })
        .collect();
    RankedAlphabet::new(symbols).unwrap()
}

pub fn random_mta_over(rng: &mut ChaCha8Rng, n: usize, alphabet: RankedAlphabet) -> Mta {
    let sparsity = rng.gen_range(0.0..0.7);
    let mu = alphabet
        .symbols()
        .iter()
        .map(|(_, k)| random_matrix(rng, n.pow(*k as u32), n, sparsity))
        .collect();
    let gamma = random_matrix(rng, n, 1, sparsity);
    Mta::new(n, alphabet, mu, gamma).unwrap()
}

/// Dimension `1..=max_dim`, rank `≤ max_rank`, at most `max_symbols` symbols.
pub fn random_mta(rng: &mut ChaCha8Rng, max_dim: usize, max_rank: usize, max_symbols: usize) -> Mta {
    let n = rng.gen_range(1..=max_dim);
    let alphabet = random_alphabet(rng, max_rank, max_symbols);
    random_mta_over(rng, n, alphabet)
}

pub fn letters(count: usize) -> Vec<String> {
    ["a", "b", "c", "d"][..count].iter().map(|s| s.to_string()).collect()
}

pub fn random_mwa(rng: &mut ChaCha8Rng, n: usize, letter_count: usize, sparsity: f64) -> Mwa {
    let mu = (0..letter_count).map(|_| random_matrix(rng, n, n, sparsity)).collect();
    Mwa::new(
        n,
        letters(letter_count),
        mu,
        random_matrix(rng, 1, n, sparsity),
        random_matrix(rng, n, 1, sparsity),
    )
    .unwrap()
}

/// Trees of height `≤ max_height`, at most `cap` of them.
pub fn trees(alphabet: &RankedAlphabet, max_height: usize, cap: usize) -> Vec<Tree> {
    TreeEnumeration::truncated(alphabet, max_height + 1, cap).trees()
}

/// Random sentence with `1..=max_vars` variables, `1..=3` polynomials and
/// `1..=max_monomials` monomials each.
pub fn random_sentence(rng: &mut ChaCha8Rng, max_vars: usize, max_monomials: usize) -> Sentence {
    let n = rng.gen_range(1..=max_vars);
    let polys = (0..rng.gen_range(1..=3))
        .map(|_| {
            let monos = (0..rng.gen_range(1..=max_monomials))
                .map(|_| {
                    let c = Scalar::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=3).into());
                    Monomial::new(c, (0..n).map(|_| rng.gen_range(0..=2)).collect())
                })
                .collect();
            Polynomial::new(monos)
        })
        .collect();
    Sentence::new(n, polys).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into())
}
