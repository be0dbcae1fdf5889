//! Abelian invariants from the Smith normal form of an integer relation matrix.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    /// Invariant factors greater than one, each dividing the next. Factors beyond 64 bits are
    /// kept as decimal strings.
    pub torsion: Vec<String>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

/// Invariants of `Z^cols / rowspace(rows)`.
pub fn abelian_invariants(cols: usize, rows: &[Vec<i64>]) -> AbelianInvariants {
    let sparse: Vec<Vec<(usize, i64)>> = rows
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, &v)| (j, v)).collect())
        .collect();
    abelian_invariants_sparse(cols, &sparse)
}

/// As [`abelian_invariants`], with rows given as `(column, entry)` pairs.
pub fn abelian_invariants_sparse(cols: usize, rows: &[Vec<(usize, i64)>]) -> AbelianInvariants {
    let mut sparse: Vec<BTreeMap<usize, i128>> = rows
        .iter()
        .map(|r| r.iter().filter(|(_, v)| *v != 0).map(|&(j, v)| (j, v as i128)).collect())
        .collect();
    let Some(pivots) = eliminate_units(&mut sparse, cols) else {
        let dense = rows
            .iter()
            .map(|r| {
                let mut d = vec![BigInt::zero(); cols];
                for &(j, v) in r {
                    d[j] += v;
                }
                d
            })
            .collect();
        return dense_invariants(cols, dense);
    };
    // pivots have removed one column each with a unit invariant factor
    let live: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let index: BTreeMap<usize, usize> = live.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let rest: Vec<Vec<i128>> = sparse
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let mut dense = vec![0i128; live.len()];
            for (c, &v) in r {
                dense[index[c]] = v;
            }
            dense
        })
        .collect();
    match smith_diagonal(rest.clone()) {
        Some(d) => from_diagonal(live.len(), d.iter().map(|&v| BigInt::from(v)).collect()),
        None => dense_invariants(live.len(), rest.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect()),
    }
}

fn dense_invariants(cols: usize, rows: Vec<Vec<BigInt>>) -> AbelianInvariants {
    let d = smith_diagonal(rows).expect("big integers do not overflow");
    from_diagonal(cols, d)
}

fn from_diagonal(cols: usize, d: Vec<BigInt>) -> AbelianInvariants {
    let nonzero: Vec<BigInt> = d.into_iter().filter(|v| !v.is_zero()).map(|v| v.abs()).collect();
    AbelianInvariants {
        rank: cols - nonzero.len(),
        torsion: nonzero.iter().filter(|v| !v.is_one()).map(ToString::to_string).collect(),
    }
}

/// Repeatedly pivots on entries `±1`, removing the pivot row and column. Returns the pivot
/// columns, or `None` on overflow.
fn eliminate_units(rows: &mut [BTreeMap<usize, i128>], cols: usize) -> Option<BTreeSet<usize>> {
    let mut by_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); cols];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            by_col[c].insert(i);
        }
    }
    let mut pivots = BTreeSet::new();
    // shortest rows are popped first; they cause the least fill-in
    let mut candidates: Vec<usize> = (0..rows.len()).collect();
    candidates.sort_by_key(|&i| std::cmp::Reverse(rows[i].len()));
    while let Some(i) = candidates.pop() {
        // prefer the sparsest pivot column to limit fill-in
        let Some((&c, &v)) = rows[i]
            .iter()
            .filter(|(_, v)| v.abs() == 1)
            .min_by_key(|(c, _)| by_col[**c].len())
        else {
            continue;
        };
        let pivot_row = std::mem::take(&mut rows[i]);
        for &c2 in pivot_row.keys() {
            by_col[c2].remove(&i);
        }
        let others: Vec<usize> = by_col[c].iter().copied().collect();
        for k in others {
            // row_k -= (a_kc / v) * pivot_row, and v = ±1
            let factor = rows[k][&c].checked_mul(v)?;
            for (&c2, &p) in &pivot_row {
                let entry = rows[k].entry(c2).or_insert(0);
                *entry = entry.checked_sub(factor.checked_mul(p)?)?;
                if *entry == 0 {
                    rows[k].remove(&c2);
                    by_col[c2].remove(&k);
                } else {
                    by_col[c2].insert(k);
                }
            }
            candidates.push(k);
        }
        pivots.insert(c);
    }
    Some(pivots)
}

/// Diagonal of the Smith normal form, or `None` on overflow of `T`.
fn smith_diagonal<T>(mut m: Vec<Vec<T>>) -> Option<Vec<T>>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub + CheckedAdd + ToPrimitive,
{
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut k = 0;
    while k < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap(k, bi);
        for row in m.iter_mut() {
            row.swap(k, bj);
        }
        loop {
            let mut changed = false;
            let p = m[k][k].clone();
            for i in k + 1..rows {
                if !m[i][k].is_zero() {
                    let q = m[i][k].div_floor(&p);
                    for j in k..cols {
                        m[i][j] = m[i][j].checked_sub(&q.checked_mul(&m[k][j])?)?;
                    }
                    if !m[i][k].is_zero() {
                        changed = true;
                    }
                }
            }
            for j in k + 1..cols {
                if !m[k][j].is_zero() {
                    let q = m[k][j].div_floor(&p);
                    for row in m.iter_mut().skip(k) {
                        row[j] = row[j].checked_sub(&q.checked_mul(&row[k])?)?;
                    }
                    if !m[k][j].is_zero() {
                        changed = true;
                    }
                }
            }
            if changed {
                // a smaller remainder appeared in row or column k: move it to the pivot
                let mut best = (k, k);
                for i in k..rows {
                    if !m[i][k].is_zero() && m[i][k].abs() < m[best.0][best.1].abs() {
                        best = (i, k);
                    }
                }
                for j in k..cols {
                    if !m[k][j].is_zero() && m[k][j].abs() < m[best.0][best.1].abs() {
                        best = (k, j);
                    }
                }
                m.swap(k, best.0);
                for row in m.iter_mut() {
                    row.swap(k, best.1);
                }
                continue;
            }
            // the pivot must divide the whole trailing block
            let p = m[k][k].clone();
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    for j in k..cols {
                        m[k][j] = m[k][j].checked_add(&m[i][j])?;
                    }
                }
                None => break,
            }
        }
        diag.push(m[k][k].abs());
        k += 1;
    }
    Some(diag)
}
