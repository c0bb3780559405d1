//! End-to-end acceptance criteria, one PASS/FAIL line each.
//!
//! Every comparison is exact rational equality.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use multiplicity::acit::{acit_test, equivalence_mwa, eval_exact, reduce_minimisation_to_acit, zeroness, Outcome};
use multiplicity::automaton::format_word;
use multiplicity::consistency::{build_figure_automaton, encode_word, figure_columns, figure_rows, learn_from_hankel, Sentence};
use multiplicity::constructions::difference;
use multiplicity::hankel::{oracle_rank, word_hankel, words_below};
use multiplicity::linalg::{rank, Matrix};
use multiplicity::minimise::{minimal_dimension_mwa, minimise, minimise_mwa, spanning_sets, Method};
use multiplicity::scalar::int;
use multiplicity::{Mta, Mwa, Scalar};
use rand::seq::SliceRandom;
use rand::Rng;

type Report = Result<String, String>;

// Binary symbols at height < 4 give about 1.5k trees against a few hundred
// contexts.
const ORACLE_CAP: usize = 5_000_000;

fn corpus(count: usize, seed: u64, max_dim: usize) -> Vec<Mta> {
    let mut r = rng(seed);
    (0..count).map(|_| random_mta(&mut r, max_dim, 2, 3)).collect()
}

fn check(ok: usize, total: usize, what: &str) -> Report {
    if ok == total {
        Ok(format!("{ok}/{total} {what}"))
    } else {
        Err(format!("{ok}/{total} {what}"))
    }
}

fn minimality(ac1: &[Mta]) -> Report {
    let start = Instant::now();
    let (mut ok, mut reduced) = (0, 0);
    for a in ac1 {
        let m = minimise(a, Method::Saturation).map_err(|e| e.to_string())?;
        reduced += usize::from(m.dim() < a.dim());
        if m.dim() == oracle_rank(a, ORACLE_CAP).map_err(|e| e.to_string())? {
            ok += 1;
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(300) {
        return Err(format!("took {t:?}"));
    }
    check(ok, ac1.len(), &format!("dimensions equal the Hankel rank, {reduced} strictly reduced ({:.1} s)", t.as_secs_f64()))
}

fn equivalence_preserved(ac1: &[Mta]) -> Report {
    let mut ok = 0;
    let mut checked = 0;
    for a in ac1 {
        let m = minimise(a, Method::Saturation).map_err(|e| e.to_string())?;
        let ts = trees(a.alphabet(), 3, 2000);
        checked += ts.len();
        if ts.iter().all(|t| m.eval_tree(t).unwrap() == a.eval_tree(t).unwrap()) {
            ok += 1;
        }
    }
    check(ok, ac1.len(), &format!("agree on all {checked} sampled trees"))
}

fn row_space_eq(a: &Matrix, b: &Matrix) -> bool {
    let r = rank(a);
    r == rank(b) && rank(&a.vstack(b).unwrap()) == r
}

fn route_agreement() -> Report {
    let mut ok = 0;
    let instances = corpus(100, 3, 3);
    for a in &instances {
        let (fs, bs) = spanning_sets(a, Method::Saturation).map_err(|e| e.to_string())?;
        let (fg, bg) = spanning_sets(a, Method::Gram).map_err(|e| e.to_string())?;
        if rank(&(&fs * &bs)) == rank(&(&fg * &bg))
            && row_space_eq(&fs, &fg)
            && row_space_eq(&bs.transpose(), &bg.transpose())
        {
            ok += 1;
        }
    }
    check(ok, instances.len(), "equal rank and spaces")
}

fn reduction_soundness() -> Report {
    let instances = corpus(100, 4, 3);
    let (mut exact_ok, mut random_ok, mut total) = (0, 0, 0);
    for (i, a) in instances.iter().enumerate() {
        let dim = minimise(a, Method::Saturation).map_err(|e| e.to_string())?.dim();
        for d in 0..=a.dim() {
            total += 1;
            let c = reduce_minimisation_to_acit(a, d).map_err(|e| e.to_string())?;
            let expect = dim <= d;
            let zero = num_traits::Zero::is_zero(&eval_exact(&c, &[]).map_err(|e| e.to_string())?);
            exact_ok += usize::from(zero == expect);
            let v = acit_test(&c, 20, i as u64).map_err(|e| e.to_string())?;
            random_ok += usize::from((v.outcome == Outcome::Zero) == expect);
        }
    }
    if exact_ok == total && random_ok == total {
        Ok(format!("{total}/{total} thresholds, exact and randomised"))
    } else {
        Err(format!("exact {exact_ok}/{total}, randomised {random_ok}/{total}"))
    }
}

// Table cell for the row word `u` and column word `v`, from the symbol
// names alone; `Err(k)` for the cell `s x_k t`.
fn table_cell(s: &Sentence, u: &[String], v: &[String]) -> Result<Scalar, usize> {
    let kind = |x: &str| x.chars().next().unwrap();
    let coeff = |x: &str| {
        let (i, j) = x[1..].split_once('_').unwrap();
        let (i, j): (usize, usize) = (i.parse().unwrap(), j.parse().unwrap());
        s.polynomials[i - 1].monomials[j - 1].coeff.clone()
    };
    let u: Vec<&str> = u.iter().map(String::as_str).collect();
    let col = match v.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
        ["s", "t"] => 0,
        ["t"] => 1,
        [] => 2,
        _ => unreachable!(),
    };
    let unit = |j: usize| Ok(int(i64::from(col == j)));
    match u.as_slice() {
        [] | ["s", "t"] => unit(if u.is_empty() { 0 } else { 2 }),
        ["s"] => unit(1),
        ["t"] | ["s", "s"] | ["s", "t", "s"] | ["s", "t", "t"] => Ok(int(0)),
        [x] if kind(x) == '#' => Ok(int(i64::from(col < 2))),
        [_] => unit(0),
        ["s", x] if kind(x) == '#' => unit(2),
        ["s", x] if kind(x) == 'c' => Ok(if col == 1 { coeff(x) } else { int(0) }),
        ["s", x] if col == 1 => Err(x[1..].parse::<usize>().unwrap() - 1),
        ["s", _] => Ok(int(0)),
        ["s", "t", _] => unit(2),
        _ => unreachable!("row {u:?}"),
    }
}

fn figure_reproduction() -> Report {
    let mut r = rng(5);
    let mut ok = 0;
    for _ in 0..50 {
        let s = random_sentence(&mut r, 3, 4);
        let a: Vec<Scalar> = (0..s.num_vars).map(|_| random_rational(&mut r)).collect();
        let m = build_figure_automaton(&s, &a).map_err(|e| e.to_string())?;
        let rows = figure_rows(&s);
        let cols = figure_columns();
        let h = word_hankel(&m, &rows, &cols).map_err(|e| e.to_string())?;
        let table_ok = rows.iter().enumerate().all(|(i, u)| {
            cols.iter().enumerate().all(|(j, v)| {
                let want = table_cell(&s, u, v).unwrap_or_else(|k| a[k].clone());
                *h.get(i, j) == want
            })
        });
        let runs_ok = (1..=s.polynomials.len()).all(|i| {
            let w = encode_word(&s, i).unwrap();
            m.eval_word(&w).unwrap() == s.polynomials[i - 1].eval(&a)
        });
        ok += usize::from(table_ok && runs_ok);
    }
    check(ok, 50, "fragments and word weights match")
}

fn minimal_mwa(r: &mut rand_chacha::ChaCha8Rng) -> Mwa {
    loop {
        let n = r.gen_range(1..=3);
        let sparsity = r.gen_range(0.0..0.5);
        let a = random_mwa(r, n, 2, sparsity);
        if minimal_dimension_mwa(&a, Method::Saturation).unwrap() == n {
            return a;
        }
    }
}

// Words, from `pool` in order, whose Hankel lines are independent.
fn greedy(a: &Mwa, pool: &[Vec<String>], rows: bool) -> Vec<Vec<String>> {
    let mut chosen: Vec<Vec<String>> = Vec::new();
    for w in pool {
        let mut trial = chosen.clone();
        trial.push(w.clone());
        let h = if rows { word_hankel(a, &trial, pool) } else { word_hankel(a, pool, &trial) }.unwrap();
        if rank(&h) == trial.len() {
            chosen = trial;
        }
    }
    chosen
}

fn learner_round_trip() -> Report {
    let mut r = rng(6);
    let mut ok = 0;
    for _ in 0..50 {
        let a = minimal_mwa(&mut r);
        let pool = words_below(a.alphabet(), 4);
        let x = greedy(&a, &pool, true);
        let y = greedy(&a, &pool, false);
        let hxy = word_hankel(&a, &x, &y).unwrap();
        let hxsy: Vec<(String, Matrix)> = a
            .alphabet()
            .iter()
            .map(|l| {
                let xs: Vec<Vec<String>> = x.iter().map(|u| u.iter().chain([l]).cloned().collect()).collect();
                (l.clone(), word_hankel(&a, &xs, &y).unwrap())
            })
            .collect();
        let learned = learn_from_hankel(&hxy, &hxsy, &x, &y).map_err(|e| {
            format!("{e} on rows {:?}", x.iter().map(|w| format_word(w)).collect::<Vec<_>>())
        })?;
        ok += usize::from(equivalence_mwa(&a, &learned).unwrap());
    }
    check(ok, 50, "learned automata equivalent")
}

fn canonicity() -> Report {
    let mut r = rng(7);
    let mut ok = 0;
    for _ in 0..50 {
        let a = random_mta(&mut r, 4, 2, 3);
        let names: Vec<&str> = a.alphabet().symbols().iter().map(|s| s.0.as_str()).collect();
        let mut shuffled = names.clone();
        shuffled.shuffle(&mut r);
        let b = a.with_symbol_order(&shuffled).unwrap();
        let m1 = minimise(&a, Method::Saturation).map_err(|e| e.to_string())?;
        let m2 = minimise(&b, Method::Saturation).map_err(|e| e.to_string())?;
        let m2 = m2.with_symbol_order(&names).unwrap();
        if m1.dim() == m2.dim() && zeroness(&difference(&m1, &m2).unwrap()) {
            ok += 1;
        }
    }
    check(ok, 50, "permuted runs agree")
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v[v.len() / 2]
}

fn scaling() -> Report {
    let mut r = rng(8);
    let sizes = [25usize, 50, 100];
    let mut times = Vec::new();
    for &n in &sizes {
        let mut samples = Vec::new();
        for _ in 0..3 {
            let a = random_mwa(&mut r, n, 2, 0.0);
            let start = Instant::now();
            minimise_mwa(&a, Method::Saturation).map_err(|e| e.to_string())?;
            let t = start.elapsed();
            if t > Duration::from_secs(60) {
                return Err(format!("n = {n} took {t:?}"));
            }
            samples.push(t.as_secs_f64());
        }
        times.push(median(samples));
    }
    // Least-squares slope of log t against log n.
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = num / den;
    let detail = format!(
        "median times {} s, log-log slope {slope:.2}",
        times.iter().map(|t| format!("{t:.3}")).collect::<Vec<_>>().join(" / ")
    );
    if slope <= 3.0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Report + 'a>);

#[test]
fn acceptance() {
    let ac1 = corpus(200, 1, 4);
    let criteria: Vec<Criterion> = vec![
        ("AC1 minimality oracle agreement", Box::new(|| minimality(&ac1))),
        ("AC2 equivalence preservation", Box::new(|| equivalence_preserved(&ac1))),
        ("AC3 route agreement", Box::new(route_agreement)),
        ("AC4 ACIT reduction soundness", Box::new(reduction_soundness)),
        ("AC5 figure reproduction", Box::new(figure_reproduction)),
        ("AC6 learner round-trip", Box::new(learner_round_trip)),
        ("AC7 canonicity via equivalence", Box::new(canonicity)),
        ("AC8 scaling smoke test", Box::new(scaling)),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (name, run) in &criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let line = match &result {
            Ok(d) => format!("PASS {name}: {d}"),
            Err(d) => {
                failed.push(*name);
                format!("FAIL {name}: {d}")
            }
        };
        writeln!(out, "{line}").unwrap();
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
