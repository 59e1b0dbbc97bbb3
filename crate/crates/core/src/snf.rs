//! Smith normal form over the integers.
//!
//! Boundary matrices are large, sparse and mostly `±1`, so the sparse path
//! first pivots on unit entries (each contributes an invariant factor 1)
//! using checked `i64` arithmetic, then hands whatever is left to an exact
//! dense elimination over `BigInt`. If a checked operation ever overflows,
//! the whole matrix goes through the dense path instead.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Column-major sparse integer matrix; each column is sorted by row and
/// holds no zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Builds from per-column `(row, value)` entries; duplicates are summed
    /// and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, i64)>>) -> SparseMatrix {
        let cols = columns
            .into_iter()
            .map(|mut col| {
                col.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
                for (r, v) in col {
                    assert!((r as usize) < rows, "row {r} out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> SparseMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let columns = (0..ncols)
            .map(|j| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, r)| r[j] != 0)
                    .map(|(i, r)| (i as u32, r[j]))
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(nrows, columns)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j]
            .binary_search_by_key(&(i as u32), |e| e.0)
            .map_or(0, |k| self.cols[j][k].1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize][j] = v;
            }
        }
        out
    }

    /// `self * other`, or `None` on `i64` overflow.
    pub fn checked_mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.ncols(), other.nrows(), "dimension mismatch");
        let mut columns = Vec::with_capacity(other.ncols());
        for col in &other.cols {
            let mut acc: HashMap<u32, i64> = HashMap::new();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k as usize] {
                    let e = acc.entry(i).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            columns.push(acc.into_iter().collect());
        }
        Some(SparseMatrix::from_columns(self.rows, columns))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) and the rank `r`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    match eliminate_units(m) {
        Some((units, rest)) => {
            let mut form = smith_normal_form_dense(rest);
            let mut factors = vec![BigInt::one(); units];
            factors.append(&mut form.factors);
            SmithForm {
                rank: factors.len(),
                factors,
            }
        }
        None => smith_normal_form_dense(to_big(&m.to_dense())),
    }
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

// Pivots on unit entries, fewest-entries column first. Returns the number of
// pivots and the dense remainder, or None on overflow.
fn eliminate_units(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut cols = m.cols.clone();
    let mut active = vec![true; cols.len()];
    let mut row_cols: Vec<HashSet<u32>> = vec![HashSet::new(); m.rows];
    for (j, col) in cols.iter().enumerate() {
        for &(i, _) in col {
            row_cols[i as usize].insert(j as u32);
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> =
        cols.iter().enumerate().map(|(j, c)| Reverse((c.len(), j as u32))).collect();
    let mut units = 0;

    while let Some(Reverse((len, j))) = heap.pop() {
        let ju = j as usize;
        if !active[ju] || cols[ju].len() != len {
            continue;
        }
        if len == 0 {
            active[ju] = false;
            continue;
        }
        let Some(&(pr, ps)) = cols[ju]
            .iter()
            .filter(|e| e.1.abs() == 1)
            .min_by_key(|e| (row_cols[e.0 as usize].len(), e.0))
        else {
            // parked until a later update touches it
            continue;
        };
        let pivot_col = std::mem::take(&mut cols[ju]);
        let mut others: Vec<u32> = row_cols[pr as usize].iter().copied().filter(|&c| c != j).collect();
        others.sort_unstable();
        for c in others {
            let cu = c as usize;
            let a = cols[cu][cols[cu].binary_search_by_key(&pr, |e| e.0).ok()?].1;
            // col_c -= (a / ps) * pivot_col, and ps = ±1
            let factor = a.checked_mul(ps)?;
            let merged = axpy(&cols[cu], &pivot_col, factor)?;
            for &(r, _) in &cols[cu] {
                if merged.binary_search_by_key(&r, |e| e.0).is_err() {
                    row_cols[r as usize].remove(&c);
                }
            }
            for &(r, _) in &merged {
                row_cols[r as usize].insert(c);
            }
            cols[cu] = merged;
            heap.push(Reverse((cols[cu].len(), c)));
        }
        for &(r, _) in &pivot_col {
            row_cols[r as usize].remove(&j);
        }
        debug_assert!(row_cols[pr as usize].is_empty());
        active[ju] = false;
        units += 1;
    }

    let rest: Vec<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let mut row_ids: Vec<u32> = rest.iter().flat_map(|&j| cols[j].iter().map(|e| e.0)).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    let mut dense = vec![vec![BigInt::zero(); rest.len()]; row_ids.len()];
    for (jj, &j) in rest.iter().enumerate() {
        for &(r, v) in &cols[j] {
            let ii = row_ids.binary_search(&r).expect("row collected above");
            dense[ii][jj] = BigInt::from(v);
        }
    }
    Some((units, dense))
}

// a - factor * b over sorted sparse columns; None on overflow.
fn axpy(a: &[(u32, i64)], b: &[(u32, i64)], factor: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut k) = (0, 0);
    while i < a.len() || k < b.len() {
        let ra = a.get(i).map_or(u32::MAX, |e| e.0);
        let rb = b.get(k).map_or(u32::MAX, |e| e.0);
        if ra < rb {
            out.push(a[i]);
            i += 1;
        } else if rb < ra {
            out.push((rb, factor.checked_mul(b[k].1)?.checked_neg()?));
            k += 1;
        } else {
            let v = a[i].1.checked_sub(factor.checked_mul(b[k].1)?)?;
            if v != 0 {
                out.push((ra, v));
            }
            i += 1;
            k += 1;
        }
    }
    Some(out)
}

/// Exact Smith normal form of a dense integer matrix (rows of equal length).
pub fn smith_normal_form_dense(mut a: Vec<Vec<BigInt>>) -> SmithForm {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut diag: Vec<BigInt> = Vec::new();
    for t in 0..nrows.min(ncols) {
        while let Some((pi, pj)) = min_abs_entry(&a, t) {
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..ncols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for i in t..nrows {
                    let delta = &q * &a[i][t];
                    a[i][j] -= delta;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                diag.push(p.abs());
                break;
            }
        }
        if diag.len() <= t {
            break;
        }
    }
    // turn the diagonal into a divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    SmithForm {
        rank: diag.len(),
        factors: diag,
    }
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}
