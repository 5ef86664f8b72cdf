//! Exhaustive enumeration of boxed nonnegative kernel points.

use std::collections::HashSet;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::intlin::IntMatrix;
use crate::ExponentVector;

/// Largest `(box + 1)^n` the oracle will search by default.
pub const DEFAULT_ORACLE_CEILING: u128 = 200_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Nonzero solutions with every coordinate at most the box, in
    /// lexicographic order.
    pub solutions: Vec<ExponentVector>,
    /// Solutions with no other solution componentwise below them.
    pub minimal: Vec<ExponentVector>,
}

/// All nonzero `α` with `0 <= α_i <= bound` and `Aα = 0`.
pub fn oracle_enumerate(a: &IntMatrix, bound: u32, ceiling: u128) -> Result<OracleResult> {
    if bound == 0 {
        return Err(Error::invalid("oracle box must be at least 1"));
    }
    let n = a.cols();
    let size = (bound as u128 + 1)
        .checked_pow(n as u32)
        .unwrap_or(u128::MAX);
    if size > ceiling {
        return Err(Error::OracleCeiling { size, ceiling });
    }
    let rows: Vec<Vec<i64>> = (0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .map(|v| v.to_i64().ok_or_else(|| Error::invalid("oracle entries must fit in i64")))
                .collect()
        })
        .collect::<Result<_>>()?;
    let b = bound as i64;
    // suffix_lo[r][i]: least value coordinates i.. can add to row r.
    let mut suffix_lo = vec![vec![0i64; n + 1]; rows.len()];
    let mut suffix_hi = vec![vec![0i64; n + 1]; rows.len()];
    for (r, row) in rows.iter().enumerate() {
        for i in (0..n).rev() {
            let v = row[i] * b;
            suffix_lo[r][i] = suffix_lo[r][i + 1] + v.min(0);
            suffix_hi[r][i] = suffix_hi[r][i + 1] + v.max(0);
        }
    }

    let mut solutions = Vec::new();
    let mut current = vec![0u32; n];
    let mut partial = vec![0i64; rows.len()];
    search(
        0,
        &rows,
        &suffix_lo,
        &suffix_hi,
        bound,
        &mut current,
        &mut partial,
        &mut solutions,
    );
    solutions.retain(|s| s.iter().any(|&e| e > 0));
    solutions.sort();

    let mut by_degree = solutions.clone();
    by_degree.sort_by_key(|s| s.iter().map(|&e| e as u64).sum::<u64>());
    let mut minimal: Vec<ExponentVector> = Vec::new();
    for s in by_degree {
        let reducible = minimal
            .iter()
            .any(|m| m != &s && m.iter().zip(&s).all(|(x, y)| x <= y));
        if !reducible {
            minimal.push(s);
        }
    }
    minimal.sort();
    Ok(OracleResult { solutions, minimal })
}

#[allow(clippy::too_many_arguments)]
fn search(
    i: usize,
    rows: &[Vec<i64>],
    lo: &[Vec<i64>],
    hi: &[Vec<i64>],
    bound: u32,
    current: &mut Vec<u32>,
    partial: &mut Vec<i64>,
    out: &mut Vec<ExponentVector>,
) {
    let n = current.len();
    if i == n {
        if partial.iter().all(|&p| p == 0) {
            out.push(current.clone());
        }
        return;
    }
    for v in 0..=bound {
        let feasible = (0..rows.len()).all(|r| {
            let p = partial[r] + rows[r][i] * v as i64;
            p + lo[r][i + 1] <= 0 && p + hi[r][i + 1] >= 0
        });
        if feasible {
            for r in 0..rows.len() {
                partial[r] += rows[r][i] * v as i64;
            }
            current[i] = v;
            search(i + 1, rows, lo, hi, bound, current, partial, out);
            for r in 0..rows.len() {
                partial[r] -= rows[r][i] * v as i64;
            }
        }
    }
    current[i] = 0;
}

/// Whether `target` is a sum of (repeated) `generators`.
pub fn in_monoid(target: &[u32], generators: &[ExponentVector]) -> bool {
    let mut failed = HashSet::new();
    reachable(target.to_vec(), generators, &mut failed)
}

fn reachable(
    target: Vec<u32>,
    generators: &[ExponentVector],
    failed: &mut HashSet<Vec<u32>>,
) -> bool {
    if target.iter().all(|&e| e == 0) {
        return true;
    }
    if failed.contains(&target) {
        return false;
    }
    for g in generators {
        if g.iter().all(|&e| e == 0) {
            continue;
        }
        if g.iter().zip(&target).all(|(a, b)| a <= b) {
            let rest: Vec<u32> = target.iter().zip(g).map(|(a, b)| a - b).collect();
            if reachable(rest, generators, failed) {
                return true;
            }
        }
    }
    failed.insert(target);
    false
}
