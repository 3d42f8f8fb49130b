#![allow(dead_code)]

use std::collections::HashSet;

use approach::catalog;
use approach::space::ClosureRelation;
use approach::{ExtValue, FiniteSpace, FnOverSpace, Matrix, PointSet, INF};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Entry code `None` stands for `∞`.
pub type Code = Option<u32>;

pub const ENTRIES_012: [Code; 4] = [Some(0), Some(1), Some(2), None];

fn add(a: Code, b: Code) -> Code {
    Some(a? + b?)
}

fn le(a: Code, b: Code) -> bool {
    match (a, b) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x <= y,
    }
}

fn triangle_ok(n: usize, q: &[Code]) -> bool {
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| le(q[i * n + j], add(q[i * n + k], q[k * n + j])))))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

fn key(c: Code) -> u32 {
    c.unwrap_or(u32::MAX)
}

fn to_space(n: usize, q: &[Code]) -> FiniteSpace {
    let mut m = Matrix::filled(n, INF);
    for i in 0..n {
        for j in 0..n {
            if let Some(v) = q[i * n + j] {
                m.set(i, j, ExtValue::int(v as i64));
            }
        }
    }
    let names = (0..n).map(|i| ["a", "b", "c", "d", "e", "f"][i].to_string()).collect();
    FiniteSpace::from_matrix(names, m).expect("enumerated matrices satisfy the axioms")
}

/// Every quasi-metric on `n` points with off-diagonal entries in `codes`.
/// With `up_to_iso`, one representative per relabelling class.
pub fn all_spaces(n: usize, codes: &[Code], up_to_iso: bool) -> Vec<FiniteSpace> {
    let offs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let perms = permutations(n);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    let mut digits = vec![0usize; offs.len()];
    let mut q: Vec<Code> = vec![Some(0); n * n];
    loop {
        for (d, &(i, j)) in digits.iter().zip(&offs) {
            q[i * n + j] = codes[*d];
        }
        if triangle_ok(n, &q) {
            if up_to_iso {
                let canon = perms
                    .iter()
                    .map(|p| (0..n * n).map(|ij| key(q[p[ij / n] * n + p[ij % n]])).collect::<Vec<u32>>())
                    .min()
                    .unwrap();
                if seen.insert(canon) {
                    out.push(to_space(n, &q));
                }
            } else {
                out.push(to_space(n, &q));
            }
        }
        // Next digit vector.
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return out;
            }
            digits[pos] += 1;
            if digits[pos] < codes.len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

/// Representatives for `1..=max_n` points.
pub fn sweep_spaces(max_n: usize, codes: &[Code]) -> Vec<FiniteSpace> {
    (1..=max_n).flat_map(|n| all_spaces(n, codes, true)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random space of `n` points from one of the catalog generators.
pub fn random_space(rng: &mut ChaCha8Rng, n: usize) -> FiniteSpace {
    let seed = rng.gen();
    match rng.gen_range(0..3) {
        0 => catalog::random_metric(n, seed),
        1 => catalog::random_quasimetric(n, seed),
        _ => catalog::random_topology(n, seed),
    }
}

pub fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> PointSet {
    PointSet::from_bits(rng.gen_range(0..(1u64 << n)))
}

pub fn random_nonempty(rng: &mut ChaCha8Rng, n: usize) -> PointSet {
    PointSet::from_bits(rng.gen_range(1..(1u64 << n)))
}

/// Values in `{0, 1/2, 1, …, 4, ∞}`.
pub fn random_function(rng: &mut ChaCha8Rng, n: usize, allow_inf: bool) -> FnOverSpace {
    FnOverSpace::new(
        (0..n)
            .map(|_| {
                let k = rng.gen_range(0..10);
                if k == 9 && allow_inf {
                    INF
                } else {
                    ExtValue::Finite(approach::value::rat(k.min(8) as i64, 2))
                }
            })
            .collect(),
    )
}

pub fn ints(v: &[i64]) -> FnOverSpace {
    FnOverSpace::new(v.iter().map(|&i| ExtValue::int(i)).collect())
}

/// Classical normality of a finite topology given by singleton closures:
/// disjoint closed sets have disjoint open neighbourhoods. Closed sets are
/// recomputed from the relation and the smallest open neighbourhood of a
/// set is the intersection of all open sets containing it.
pub fn topologically_normal(c: &ClosureRelation) -> bool {
    let n = c.size();
    let is_closed = |set: u64| {
        (0..n).all(|i| {
            set & (1 << i) != 0 || !(0..n).any(|j| set & (1 << j) != 0 && c.in_closure(i, j))
        })
    };
    let full = (1u64 << n) - 1;
    let closed: Vec<u64> = (0..=full).filter(|&s| is_closed(s)).collect();
    let open: Vec<u64> = closed.iter().map(|&s| full & !s).collect();
    let nbhd = |set: u64| open.iter().filter(|&&u| u & set == set).fold(full, |acc, &u| acc & u);
    closed.iter().all(|&f| {
        closed.iter().all(|&g| f & g != 0 || nbhd(f) & nbhd(g) == 0)
    })
}

pub fn random_relation(rng: &mut ChaCha8Rng, n: usize) -> ClosureRelation {
    catalog::random_preorder(n, rng.gen())
}
