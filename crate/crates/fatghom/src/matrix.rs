//! Sparse integer matrices and exact rank over the rationals.
//!
//! The primary rank path eliminates over prime fields with two random
//! word-sized primes and requires agreement; matrices with few enough
//! columns are additionally certified by exact integer elimination, which
//! also serves as the escalation path when the primes disagree.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// A sparse matrix with integer entries; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, i64)>,
}

/// Accumulating builder: repeated additions to the same entry sum up, and
/// entries that cancel to zero are dropped on finalization.
#[derive(Clone, Debug)]
pub struct MatrixBuilder {
    rows: usize,
    cols: usize,
    map: HashMap<(u32, u32), i64>,
}

impl MatrixBuilder {
    pub fn new(rows: usize, cols: usize) -> MatrixBuilder {
        MatrixBuilder {
            rows,
            cols,
            map: HashMap::new(),
        }
    }

    pub fn add(&mut self, row: usize, col: usize, value: i64) {
        assert!(row < self.rows && col < self.cols);
        *self.map.entry((row as u32, col as u32)).or_insert(0) += value;
    }

    pub fn finish(self) -> SparseIntMatrix {
        let mut entries: Vec<(u32, u32, i64)> = self
            .map
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        entries.sort_unstable();
        SparseIntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> SparseIntMatrix {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn from_dense(data: &[Vec<i64>]) -> SparseIntMatrix {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        let mut b = MatrixBuilder::new(rows, cols);
        for (r, row) in data.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    b.add(r, c, v);
                }
            }
        }
        b.finish()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries as `(row, col, value)`, sorted by row then column.
    pub fn entries(&self) -> &[(u32, u32, i64)] {
        &self.entries
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut entries: Vec<(u32, u32, i64)> =
            self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable();
        SparseIntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Coordinate text form: a `rows cols nnz` header followed by one
    /// `row col value` line per entry, all 0-based.
    pub fn to_coordinate_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.rows, self.cols, self.entries.len());
        for &(r, c, v) in &self.entries {
            out.push_str(&format!("{r} {c} {v}\n"));
        }
        out
    }

    pub fn from_coordinate_text(text: &str) -> Result<SparseIntMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty matrix text".into()))?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 3 {
            return Err(Error::Format(format!("bad header {header:?}")));
        }
        let parse = |s: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::Format(format!("bad integer {s:?}")))
        };
        let rows = parse(head[0])?;
        let cols = parse(head[1])?;
        let nnz = parse(head[2])?;
        let mut b = MatrixBuilder::new(rows, cols);
        let mut count = 0usize;
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Format(format!("bad entry line {line:?}")));
            }
            let r = parse(fields[0])?;
            let c = parse(fields[1])?;
            let v: i64 = fields[2]
                .parse()
                .map_err(|_| Error::Format(format!("bad value {:?}", fields[2])))?;
            if r >= rows || c >= cols {
                return Err(Error::Format(format!("entry ({r},{c}) out of bounds")));
            }
            b.add(r, c, v);
            count += 1;
        }
        if count != nnz {
            return Err(Error::Format(format!(
                "header claims {nnz} entries, found {count}"
            )));
        }
        Ok(b.finish())
    }

    /// Rows as sorted `(col, value)` lists, empty rows omitted from work.
    fn row_lists<T: Clone, F: Fn(i64) -> T>(&self, f: F) -> Vec<Vec<(u32, T)>> {
        let mut rows: Vec<Vec<(u32, T)>> = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            rows[r as usize].push((c, f(v)));
        }
        rows
    }

    /// Rank over the field with `p` elements.
    pub fn rank_mod(&self, p: u64) -> usize {
        let rows = self.row_lists(|v| v.rem_euclid(p as i64) as u64);
        let cleaned: Vec<Vec<(u32, u64)>> = rows
            .into_iter()
            .map(|row| row.into_iter().filter(|&(_, v)| v != 0).collect())
            .collect();
        eliminate(
            cleaned,
            self.cols,
            |v| *v == 0,
            |row_val, pivot_val, row, pivot_row| {
                let factor = mul_mod(*row_val, mod_inverse(*pivot_val, p), p);
                let mut merged = Vec::with_capacity(row.len() + pivot_row.len());
                let mut ok = true;
                merge_into(
                    row,
                    pivot_row,
                    &mut |a: Option<&u64>, b: Option<&u64>| {
                        let left = a.copied().unwrap_or(0);
                        let sub = mul_mod(factor, b.copied().unwrap_or(0), p);
                        Some((left + p - sub) % p)
                    },
                    &mut merged,
                    &mut ok,
                );
                debug_assert!(ok);
                Some(merged)
            },
        )
        .expect("field elimination cannot fail")
    }

    /// Exact rank over the rationals by integer elimination; rows are
    /// divided by their content after every update to control growth.
    pub fn rank_integer_exact(&self) -> usize {
        let rows128: Vec<Vec<(u32, i128)>> = self.row_lists(|v| v as i128);
        let attempt = eliminate(
            rows128,
            self.cols,
            |v| *v == 0,
            |row_val, pivot_val, row, pivot_row| {
                let g = gcd_i128(*row_val, *pivot_val);
                let ca = pivot_val / g;
                let cb = row_val / g;
                let mut merged: Vec<(u32, i128)> = Vec::with_capacity(row.len() + pivot_row.len());
                let mut ok = true;
                merge_into(
                    row,
                    pivot_row,
                    &mut |a: Option<&i128>, b: Option<&i128>| {
                        let left = a.map_or(Some(0), |x| x.checked_mul(ca));
                        let right = b.map_or(Some(0), |x| x.checked_mul(cb));
                        match (left, right) {
                            (Some(l), Some(r)) => l.checked_sub(r),
                            _ => None,
                        }
                    },
                    &mut merged,
                    &mut ok,
                );
                if !ok {
                    return None;
                }
                let content = merged.iter().fold(0i128, |acc, (_, v)| gcd_i128(acc, *v));
                if content > 1 {
                    for (_, v) in merged.iter_mut() {
                        *v /= content;
                    }
                }
                Some(merged)
            },
        );
        match attempt {
            Some(rank) => rank,
            None => self.rank_bigint(),
        }
    }

    /// Arbitrary-precision fallback for the exact path.
    fn rank_bigint(&self) -> usize {
        let rows: Vec<Vec<(u32, BigInt)>> = self.row_lists(BigInt::from);
        eliminate(
            rows,
            self.cols,
            |v: &BigInt| v.is_zero(),
            |row_val, pivot_val, row, pivot_row| {
                let g = row_val.gcd(pivot_val);
                let ca = pivot_val / &g;
                let cb = row_val / &g;
                let mut merged: Vec<(u32, BigInt)> =
                    Vec::with_capacity(row.len() + pivot_row.len());
                let mut ok = true;
                merge_into(
                    row,
                    pivot_row,
                    &mut |a: Option<&BigInt>, b: Option<&BigInt>| {
                        let left = a.map_or_else(BigInt::zero, |x| x * &ca);
                        let right = b.map_or_else(BigInt::zero, |x| x * &cb);
                        Some(left - right)
                    },
                    &mut merged,
                    &mut ok,
                );
                let mut content = BigInt::zero();
                for (_, v) in &merged {
                    content = content.gcd(v);
                }
                if content.abs() > BigInt::from(1) {
                    for (_, v) in merged.iter_mut() {
                        *v /= &content;
                    }
                }
                Some(merged)
            },
        )
        .expect("bigint elimination cannot overflow")
    }
}

/// Configuration for [`rank_with_config`]: the seed drives random prime
/// selection and must not affect any reported rank.
#[derive(Clone, Copy, Debug)]
pub struct RankConfig {
    pub seed: u64,
    /// Matrices with at most this many columns also run the exact integer
    /// path as certification.
    pub exact_max_cols: usize,
}

impl Default for RankConfig {
    fn default() -> RankConfig {
        RankConfig {
            seed: 0x00c0_ffee,
            exact_max_cols: 5000,
        }
    }
}

/// Exact rank with the default configuration.
pub fn rank_exact(m: &SparseIntMatrix) -> usize {
    rank_with_config(m, &RankConfig::default())
}

/// Rank over the rationals: eliminate modulo two independent random primes;
/// on agreement the value is accepted, and matrices within the exact-path
/// bound (or any prime disagreement) are settled by exact integer
/// elimination.
pub fn rank_with_config(m: &SparseIntMatrix, cfg: &RankConfig) -> usize {
    if m.is_zero() {
        return 0;
    }
    let (p1, p2) = prime_pair(cfg.seed);
    let r1 = m.rank_mod(p1);
    let r2 = m.rank_mod(p2);
    let modular = if r1 == r2 { Some(r1) } else { None };
    if m.cols() <= cfg.exact_max_cols || modular.is_none() {
        let exact = m.rank_integer_exact();
        if let Some(mr) = modular {
            debug_assert!(mr <= exact);
        }
        exact
    } else {
        modular.unwrap()
    }
}

/// True when the product `second * first` is the zero matrix, computed in
/// exact integer arithmetic.  `first` maps into the space `second` maps out
/// of, so `second.cols() == first.rows()`.
pub fn product_is_zero(second: &SparseIntMatrix, first: &SparseIntMatrix) -> bool {
    assert_eq!(second.cols(), first.rows());
    let mut by_col: Vec<Vec<(u32, i64)>> = vec![Vec::new(); second.cols()];
    for &(r, c, v) in second.entries() {
        by_col[c as usize].push((r, v));
    }
    let mut acc: HashMap<(u32, u32), i128> = HashMap::new();
    for &(r1, c1, v1) in first.entries() {
        for &(r2, v2) in &by_col[r1 as usize] {
            *acc.entry((r2, c1)).or_insert(0) += v2 as i128 * v1 as i128;
        }
    }
    acc.values().all(|&v| v == 0)
}

// ---- elimination skeleton -------------------------------------------------

/// Sparse Gaussian elimination with a Markowitz-style pivot heuristic:
/// columns are consumed in order of (live entry count, column index), and
/// within a column the shortest row pivots.  `combine` eliminates the pivot
/// column from one row, returning `None` to abort (arithmetic overflow).
fn eliminate<T: Clone, Z, C>(
    initial_rows: Vec<Vec<(u32, T)>>,
    num_cols: usize,
    is_zero: Z,
    combine: C,
) -> Option<usize>
where
    Z: Fn(&T) -> bool,
    C: Fn(&T, &T, &[(u32, T)], &[(u32, T)]) -> Option<Vec<(u32, T)>>,
{
    let mut rows: Vec<Option<Vec<(u32, T)>>> = initial_rows
        .into_iter()
        .map(|r| if r.is_empty() { None } else { Some(r) })
        .collect();
    let mut col_count = vec![0usize; num_cols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); num_cols];
    for (r, row) in rows.iter().enumerate() {
        if let Some(row) = row {
            for (c, _) in row {
                col_count[*c as usize] += 1;
                col_rows[*c as usize].push(r as u32);
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, u32)>> = (0..num_cols)
        .filter(|&c| col_count[c] > 0)
        .map(|c| Reverse((col_count[c], c as u32)))
        .collect();
    let mut rank = 0usize;

    while let Some(Reverse((count, c))) = heap.pop() {
        let c = c as usize;
        if col_count[c] != count || count == 0 {
            continue;
        }
        // Gather the live rows that still contain column c.
        let mut live: Vec<u32> = Vec::with_capacity(count);
        col_rows[c].sort_unstable();
        col_rows[c].dedup();
        for &r in &col_rows[c] {
            if let Some(row) = &rows[r as usize] {
                if row.binary_search_by_key(&(c as u32), |e| e.0).is_ok() {
                    live.push(r);
                }
            }
        }
        col_rows[c] = live.clone();
        debug_assert_eq!(live.len(), col_count[c]);

        // Shortest row pivots; ties to the smallest row index.
        let &pivot_id = live
            .iter()
            .min_by_key(|&&r| (rows[r as usize].as_ref().unwrap().len(), r))
            .expect("live rows exist");
        let pivot_row = rows[pivot_id as usize].take().expect("pivot is live");
        for (pc, _) in &pivot_row {
            col_count[*pc as usize] -= 1;
            heap.push(Reverse((col_count[*pc as usize], *pc)));
        }
        rank += 1;
        let pivot_val = pivot_row
            .iter()
            .find(|e| e.0 == c as u32)
            .map(|e| e.1.clone())
            .expect("pivot row contains pivot column");

        for &r in &live {
            if r == pivot_id {
                continue;
            }
            let row = rows[r as usize].take().expect("row is live");
            for (rc, _) in &row {
                col_count[*rc as usize] -= 1;
                heap.push(Reverse((col_count[*rc as usize], *rc)));
            }
            let row_val = row
                .iter()
                .find(|e| e.0 == c as u32)
                .map(|e| e.1.clone())
                .expect("row contains pivot column");
            let merged = combine(&row_val, &pivot_val, &row, &pivot_row)?;
            debug_assert!(merged.iter().all(|e| e.0 != c as u32 || is_zero(&e.1)));
            let merged: Vec<(u32, T)> = merged.into_iter().filter(|e| !is_zero(&e.1)).collect();
            for (mc, _) in &merged {
                col_count[*mc as usize] += 1;
                col_rows[*mc as usize].push(r);
                heap.push(Reverse((col_count[*mc as usize], *mc)));
            }
            if !merged.is_empty() {
                rows[r as usize] = Some(merged);
            }
        }
    }
    Some(rank)
}

/// Merge two sorted rows with a combining closure receiving optional
/// entries; a `None` result from the closure aborts (sets `ok = false`).
fn merge_into<T>(
    a: &[(u32, T)],
    b: &[(u32, T)],
    f: &mut impl FnMut(Option<&T>, Option<&T>) -> Option<T>,
    out: &mut Vec<(u32, T)>,
    ok: &mut bool,
) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, left, right) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            let r = (a[i].0, Some(&a[i].1), None);
            i += 1;
            r
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let r = (b[j].0, None, Some(&b[j].1));
            j += 1;
            r
        } else {
            let r = (a[i].0, Some(&a[i].1), Some(&b[j].1));
            i += 1;
            j += 1;
            r
        };
        match f(left, right) {
            Some(v) => out.push((col, v)),
            None => {
                *ok = false;
                return;
            }
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut out = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            out = mul_mod(out, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    out
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Two distinct random primes above 2^30, derived from the seed.
pub(crate) fn prime_pair(seed: u64) -> (u64, u64) {
    let mut state = seed ^ 0xfa7f_a7fa_7fa7_fa7f;
    let mut primes = Vec::with_capacity(2);
    while primes.len() < 2 {
        let raw = splitmix64(&mut state);
        let candidate = ((raw % (1 << 30)) + (1 << 30)) | 1;
        if is_prime_u64(candidate) && !primes.contains(&candidate) {
            primes.push(candidate);
        }
    }
    (primes[0], primes[1])
}
