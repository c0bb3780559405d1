use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::circuit::{eval_mod, mul_mod, pow_mod, Circuit};
use super::AcitError;

pub const DEFAULT_TRIALS: usize = 20;

const MILLER_RABIN_ROUNDS: usize = 40;

// Fresh primes drawn per trial before giving up on a circuit whose every
// evaluation hits a vanishing denominator.
const MAX_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Zero,
    NonZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    Exact,
    /// A `Zero` outcome may be wrong with probability at most
    /// `(2^mult_depth / 2^61)^trials`, the per-trial bound of a nonzero
    /// polynomial of degree `≤ 2^mult_depth` vanishing at a random point.
    OneSided { trials: usize, mult_depth: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub confidence: Confidence,
}

/// Miller–Rabin with bases drawn from `rng`.
pub fn is_probable_prime(n: u64, rounds: usize, rng: &mut impl Rng) -> bool {
    if n < 4 {
        return n == 2 || n == 3;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for _ in 0..rounds {
        let a = rng.gen_range(2..n - 1);
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A probable prime in `[2^61, 2^62)`.
pub fn random_prime(rng: &mut impl Rng) -> u64 {
    loop {
        let candidate = rng.gen_range(1u64 << 61..1u64 << 62) | 1;
        if is_probable_prime(candidate, MILLER_RABIN_ROUNDS, rng) {
            return candidate;
        }
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Randomised identity test: evaluate modulo fresh random primes at random
/// points. A nonzero value is a certificate; only `Zero` can be wrong.
///
/// Each trial draws from its own stream of the seeded generator, so the
/// verdict does not depend on the order in which trials run.
pub fn acit_test(c: &Circuit, trials: usize, seed: u64) -> Result<Verdict, AcitError> {
    let vars = c.num_vars();
    for trial in 0..trials.max(1) {
        let mut rng = trial_rng(seed, trial);
        let mut value = None;
        for _ in 0..MAX_ATTEMPTS {
            let p = random_prime(&mut rng);
            let point: Vec<u64> = (0..vars).map(|_| rng.gen_range(0..p)).collect();
            match eval_mod(c, &point, p) {
                Ok(v) => {
                    value = Some(v);
                    break;
                }
                Err(AcitError::BadPrime(_)) | Err(AcitError::DivisionByZero { .. }) => continue,
                Err(e) => return Err(e),
            }
        }
        match value {
            None => return Err(AcitError::AttemptsExhausted(MAX_ATTEMPTS)),
            Some(0) => {}
            Some(_) => {
                return Ok(Verdict { outcome: Outcome::NonZero, confidence: Confidence::Exact });
            }
        }
    }
    Ok(Verdict {
        outcome: Outcome::Zero,
        confidence: Confidence::OneSided { trials: trials.max(1), mult_depth: c.multiplicative_depth() },
    })
}

/// Exact test by rational evaluation; only for variable-free circuits.
pub fn exact_test(c: &Circuit) -> Result<Verdict, AcitError> {
    if c.num_vars() > 0 {
        return Err(AcitError::HasVariables);
    }
    let v = super::circuit::eval_exact(c, &[])?;
    let outcome = if num_traits::Zero::is_zero(&v) { Outcome::Zero } else { Outcome::NonZero };
    Ok(Verdict { outcome, confidence: Confidence::Exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acit::circuit::CircuitBuilder;
    use crate::scalar::int;

    #[test]
    fn small_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let primes: Vec<u64> = (0..60).filter(|&n| is_probable_prime(n, 20, &mut rng)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        // Carmichael number and a known 61-bit prime.
        assert!(!is_probable_prime(561, 20, &mut rng));
        assert!(is_probable_prime((1 << 61) - 1, 20, &mut rng));
    }

    #[test]
    fn random_primes_are_deterministic() {
        let a = random_prime(&mut trial_rng(7, 0));
        let b = random_prime(&mut trial_rng(7, 0));
        assert_eq!(a, b);
        assert!(a >= 1 << 61);
    }

    #[test]
    fn verdicts() {
        let mut b = CircuitBuilder::new();
        let z = b.constant(int(0));
        let v = acit_test(&b.finish(z), 20, 1).unwrap();
        assert_eq!(v.outcome, Outcome::Zero);

        let mut b = CircuitBuilder::new();
        let x = b.var(0);
        let y = b.var(1);
        let one = b.constant(int(1));
        let xy = b.mul(x, y);
        let out = b.sub(xy, one);
        let v = acit_test(&b.finish(out), 20, 1).unwrap();
        assert_eq!(v, Verdict { outcome: Outcome::NonZero, confidence: Confidence::Exact });
    }

    #[test]
    fn identity_is_zero() {
        let mut b = CircuitBuilder::new();
        let x = b.var(0);
        let one = b.constant(int(1));
        let two = b.constant(int(2));
        let xp1 = b.add(x, one);
        let sq = b.mul(xp1, xp1);
        let x2 = b.mul(x, x);
        let tx = b.mul(two, x);
        let s1 = b.sub(sq, x2);
        let s2 = b.sub(s1, tx);
        let out = b.sub(s2, one);
        let v = acit_test(&b.finish(out), 20, 3).unwrap();
        assert_eq!(v.outcome, Outcome::Zero);
        assert_eq!(v.confidence, Confidence::OneSided { trials: 20, mult_depth: 1 });
    }

    #[test]
    fn exact_requires_constants() {
        let mut b = CircuitBuilder::new();
        let x = b.var(0);
        assert_eq!(exact_test(&b.finish(x)), Err(AcitError::HasVariables));
    }
}
