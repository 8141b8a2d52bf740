//! Exact linear algebra over Z: dense `BigInt` matrices, Smith normal form
//! with accumulated unimodular transforms, cokernels presented as abelian
//! groups in invariant factor form, m-torsion, and fraction free
//! determinant and rank routines that serve as independent cross checks.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense row major matrix over Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> BigInt>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Row major construction from machine integers.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(rows, cols));
        }
        Ok(IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&e| BigInt::from(e)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(self.cols, rhs.rows));
        }
        if let Some(out) = self.mul_fast(rhs) {
            return Ok(out);
        }
        Ok(self.mul_bigint(rhs))
    }

    fn mul_bigint(&self, rhs: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    /// Machine arithmetic product for matrices whose entries fit in i64:
    /// each pairwise product then fits in i128 exactly, and the dot product
    /// accumulation is checked, so any overflow falls back to bigints.
    fn mul_fast(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        let a: Vec<i64> = self.data.iter().map(|e| e.to_i64()).collect::<Option<_>>()?;
        let b: Vec<i64> = rhs.data.iter().map(|e| e.to_i64()).collect::<Option<_>>()?;
        let (n, m, k) = (self.rows, rhs.cols, self.cols);
        let mut data = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                let mut acc: i128 = 0;
                for t in 0..k {
                    let prod = a[i * k + t] as i128 * b[t * m + j] as i128;
                    acc = acc.checked_add(prod)?;
                }
                data.push(BigInt::from(acc));
            }
        }
        Some(IntMatrix {
            rows: n,
            cols: m,
            data,
        })
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(rhs.rows, rhs.cols));
        }
        Ok(IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            &self[(i, j)] - &rhs[(i, j)]
        }))
    }

    /// Copies the block with the given half open row and column ranges.
    pub fn submatrix(
        &self,
        row_range: std::ops::Range<usize>,
        col_range: std::ops::Range<usize>,
    ) -> IntMatrix {
        IntMatrix::from_fn(row_range.len(), col_range.len(), |i, j| {
            self[(row_range.start + i, col_range.start + j)].clone()
        })
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += q * row_src
    fn row_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        debug_assert_ne!(dst, src);
        for j in 0..self.cols {
            let add = q * &self[(src, j)];
            self[(dst, j)] += add;
        }
    }

    /// col_dst += q * col_src
    fn col_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        debug_assert_ne!(dst, src);
        for i in 0..self.rows {
            let add = q * &self[(i, src)];
            self[(i, dst)] += add;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form decomposition: `u * a * v = d` with `u`, `v`
/// unimodular, `d` diagonal with nonnegative entries in a divisibility
/// chain, and `v_inv = v^-1` maintained alongside.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.d
            .diagonal()
            .iter()
            .filter(|e| !e.is_zero())
            .count()
    }

    /// The nontrivial invariant factors, i.e. diagonal entries > 1.
    pub fn invariant_factors(&self) -> Vec<BigUint> {
        self.d
            .diagonal()
            .iter()
            .filter(|e| **e > BigInt::one())
            .map(|e| e.magnitude().clone())
            .collect()
    }
}

fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs: Option<BigInt> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            let a = d[(i, j)].abs();
            match &best_abs {
                Some(b) if a >= *b => {}
                _ => {
                    best = Some((i, j));
                    best_abs = Some(a);
                }
            }
        }
    }
    best
}

/// Smith normal form by repeated pivot reduction. Pivots are chosen as the
/// entry of smallest absolute value in the trailing block (first in row
/// major order on ties), rows and columns are cleared with truncated
/// division, and a pivot that fails to divide some trailing entry absorbs
/// that entry's row and restarts, so every retry strictly shrinks the
/// pivot. The final sign normalization is folded into `u`.
///
/// Runs on checked machine integers when the input fits, with an
/// unconditional bigint fallback on any overflow; both paths follow the
/// same pivot rule, so they produce the identical decomposition.
pub fn snf(a: &IntMatrix) -> Snf {
    snf_with(a, true)
}

/// `snf` with optional transform tracking. With `track` false the
/// returned u, v and v_inv are empty 0 x 0 matrices and all work on them
/// is skipped; `d` is identical either way, since pivoting depends only
/// on it. Callers that need nothing but elementary divisors (cokernels)
/// use this to halve the reduction cost.
pub(crate) fn snf_with(a: &IntMatrix, track: bool) -> Snf {
    if let Some(s) = snf_fast(a, track) {
        return s;
    }
    snf_bigint(a, track)
}

fn snf_bigint(a: &IntMatrix, track: bool) -> Snf {
    let rows = a.rows();
    let cols = a.cols();
    let t_rows = if track { rows } else { 0 };
    let t_cols = if track { cols } else { 0 };
    let mut d = a.clone();
    // Row and column operations on the 0 x 0 transforms are no-ops, so the
    // untracked mode needs no branches in the algorithm body.
    let mut u = IntMatrix::identity(t_rows);
    let mut v = IntMatrix::identity(t_cols);
    let mut v_inv = IntMatrix::identity(t_cols);

    for t in 0..rows.min(cols) {
        if find_pivot(&d, t).is_none() {
            break;
        }
        loop {
            let (pi, pj) = match find_pivot(&d, t) {
                Some(pos) => pos,
                None => break,
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                if !q.is_zero() {
                    let nq = -q;
                    d.row_add(i, t, &nq);
                    u.row_add(i, t, &nq);
                }
                if !d[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                if !q.is_zero() {
                    let nq = -q;
                    d.col_add(j, t, &nq);
                    v.col_add(j, t, &nq);
                    // (I + q e_{t,j}) undoes the column move on v_inv.
                    let qq = -nq;
                    v_inv.row_add(t, j, &qq);
                }
                if !d[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // Column and row are clear; force the pivot to divide the rest.
            let pivot = d[(t, t)].clone();
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[(i, j)] % &pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.row_add(t, i, &one);
                    u.row_add(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }

    Snf { u, d, v, v_inv }
}

/// Dense i128 matrix used only inside the checked fast path of `snf`.
struct MatI128 {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl MatI128 {
    fn identity(n: usize) -> Self {
        let mut data = vec![0i128; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        MatI128 {
            rows: n,
            cols: n,
            data,
        }
    }

    fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += q * row_src, None on overflow.
    fn row_add(&mut self, dst: usize, src: usize, q: i128) -> Option<()> {
        debug_assert_ne!(dst, src);
        for j in 0..self.cols {
            let add = q.checked_mul(self.get(src, j))?;
            let v = self.get(dst, j).checked_add(add)?;
            self.data[dst * self.cols + j] = v;
        }
        Some(())
    }

    /// col_dst += q * col_src, None on overflow.
    fn col_add(&mut self, dst: usize, src: usize, q: i128) -> Option<()> {
        debug_assert_ne!(dst, src);
        for i in 0..self.rows {
            let add = q.checked_mul(self.get(i, src))?;
            let v = self.get(i, dst).checked_add(add)?;
            self.data[i * self.cols + dst] = v;
        }
        Some(())
    }

    fn negate_row(&mut self, r: usize) -> Option<()> {
        for j in 0..self.cols {
            let v = self.get(r, j).checked_neg()?;
            self.data[r * self.cols + j] = v;
        }
        Some(())
    }

    fn into_bigint(self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(BigInt::from).collect(),
        }
    }
}

fn find_pivot_i128(d: &MatI128, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs = u128::MAX;
    for i in t..d.rows {
        for j in t..d.cols {
            let e = d.get(i, j);
            if e == 0 {
                continue;
            }
            let a = e.unsigned_abs();
            if best.is_none() || a < best_abs {
                best = Some((i, j));
                best_abs = a;
            }
        }
    }
    best
}

/// Exact mirror of `snf_bigint` over checked i128 arithmetic. Returns
/// None if the input does not fit or any intermediate overflows; the
/// caller then redoes the whole computation with bigints. Truncated
/// division and remainder have the same semantics in both integer types,
/// so the pivot choices, and hence the outputs, coincide bit for bit.
fn snf_fast(a: &IntMatrix, track: bool) -> Option<Snf> {
    let rows = a.rows();
    let cols = a.cols();
    let data: Vec<i128> = a.data.iter().map(|e| e.to_i128()).collect::<Option<_>>()?;
    let mut d = MatI128 { rows, cols, data };
    let t_rows = if track { rows } else { 0 };
    let t_cols = if track { cols } else { 0 };
    // As in the bigint path, operations on 0 x 0 transforms are no-ops.
    let mut u = MatI128::identity(t_rows);
    let mut v = MatI128::identity(t_cols);
    let mut v_inv = MatI128::identity(t_cols);

    for t in 0..rows.min(cols) {
        if find_pivot_i128(&d, t).is_none() {
            break;
        }
        loop {
            let (pi, pj) = match find_pivot_i128(&d, t) {
                Some(pos) => pos,
                None => break,
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if d.get(i, t) == 0 {
                    continue;
                }
                let q = d.get(i, t).checked_div(d.get(t, t))?;
                if q != 0 {
                    let nq = q.checked_neg()?;
                    d.row_add(i, t, nq)?;
                    u.row_add(i, t, nq)?;
                }
                if d.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if d.get(t, j) == 0 {
                    continue;
                }
                let q = d.get(t, j).checked_div(d.get(t, t))?;
                if q != 0 {
                    let nq = q.checked_neg()?;
                    d.col_add(j, t, nq)?;
                    v.col_add(j, t, nq)?;
                    // (I + q e_{t,j}) undoes the column move on v_inv.
                    v_inv.row_add(t, j, q)?;
                }
                if d.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }

            // Column and row are clear; force the pivot to divide the rest.
            let pivot = d.get(t, t);
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if d.get(i, j).checked_rem(pivot)? != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    d.row_add(t, i, 1)?;
                    u.row_add(t, i, 1)?;
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t)?;
            u.negate_row(t)?;
        }
    }

    Some(Snf {
        u: u.into_bigint(),
        d: d.into_bigint(),
        v: v.into_bigint(),
        v_inv: v_inv.into_bigint(),
    })
}

/// Fraction free determinant (Bareiss). Square matrices only.
pub fn det_bareiss(a: &IntMatrix) -> Result<BigInt> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch(a.rows(), a.cols()));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m = a.clone();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
            match swap {
                Some(i) => {
                    m.swap_rows(k, i);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = num / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    let det = m[(n - 1, n - 1)].clone();
    Ok(if sign < 0 { -det } else { det })
}

/// Rank over Q by exact cross multiplication elimination, with per row
/// content removal to keep entries small. Independent of `snf`.
pub fn rational_rank(a: &IntMatrix) -> usize {
    let mut m = a.clone();
    let rows = m.rows();
    let cols = m.cols();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot_row = (r..rows).find(|&i| !m[(i, c)].is_zero());
        let pr = match pivot_row {
            Some(i) => i,
            None => continue,
        };
        m.swap_rows(r, pr);
        for i in r + 1..rows {
            if m[(i, c)].is_zero() {
                continue;
            }
            let (a_rc, a_ic) = (m[(r, c)].clone(), m[(i, c)].clone());
            let mut content = BigInt::zero();
            for j in 0..cols {
                let val = &m[(i, j)] * &a_rc - &m[(r, j)] * &a_ic;
                content = content.gcd(&val);
                m[(i, j)] = val;
            }
            if !content.is_zero() && !content.is_one() {
                for j in 0..cols {
                    let val = &m[(i, j)] / &content;
                    m[(i, j)] = val;
                }
            }
        }
        r += 1;
    }
    r
}

/// Finitely generated abelian group in invariant factor form:
/// Z^free_rank + Z/d_1 + ... + Z/d_k with 2 <= d_1 | d_2 | ... | d_k.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "AbGroupRecord")]
pub struct AbGroup {
    free_rank: usize,
    invariant_factors: Vec<BigUint>,
}

impl AbGroup {
    pub fn new(free_rank: usize, invariant_factors: Vec<BigUint>) -> Result<Self> {
        let two = BigUint::from(2u32);
        for (i, d) in invariant_factors.iter().enumerate() {
            if *d < two {
                return Err(Error::InvalidInvariantFactors(format_factors(
                    &invariant_factors,
                )));
            }
            if i > 0 && !(d % &invariant_factors[i - 1]).is_zero() {
                return Err(Error::InvalidInvariantFactors(format_factors(
                    &invariant_factors,
                )));
            }
        }
        Ok(AbGroup {
            free_rank,
            invariant_factors,
        })
    }

    pub fn trivial() -> Self {
        AbGroup {
            free_rank: 0,
            invariant_factors: vec![],
        }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup {
            free_rank: rank,
            invariant_factors: vec![],
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::InvalidInvariantFactors("0".to_string())),
            1 => Ok(AbGroup::trivial()),
            _ => AbGroup::new(0, vec![BigUint::from(n)]),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Finite and generated by at most one element.
    pub fn is_cyclic(&self) -> bool {
        self.is_finite() && self.invariant_factors.len() <= 1
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Order of the group, or `None` when infinite.
    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion_order())
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigUint {
        self.invariant_factors
            .iter()
            .fold(BigUint::one(), |acc, d| acc * d)
    }
}

fn format_factors(factors: &[BigUint]) -> String {
    factors
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.invariant_factors {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Wire form of `AbGroup` with machine sized factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbGroupRecord {
    pub free_rank: u64,
    pub invariant_factors: Vec<u64>,
}

impl TryFrom<AbGroupRecord> for AbGroup {
    type Error = Error;
    fn try_from(rec: AbGroupRecord) -> Result<Self> {
        AbGroup::new(
            rec.free_rank as usize,
            rec.invariant_factors
                .into_iter()
                .map(BigUint::from)
                .collect(),
        )
    }
}

impl TryFrom<&AbGroup> for AbGroupRecord {
    type Error = Error;
    fn try_from(g: &AbGroup) -> Result<Self> {
        let mut factors = Vec::with_capacity(g.invariant_factors.len());
        for d in &g.invariant_factors {
            let small: u64 = d.try_into().map_err(|_| {
                Error::Internal(format!("invariant factor {d} exceeds the u64 wire format"))
            })?;
            factors.push(small);
        }
        Ok(AbGroupRecord {
            free_rank: g.free_rank as u64,
            invariant_factors: factors,
        })
    }
}

impl Serialize for AbGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rec = AbGroupRecord::try_from(self).map_err(serde::ser::Error::custom)?;
        rec.serialize(serializer)
    }
}

/// Cokernel of the column action Z^cols -> Z^rows of `a`, as an abstract
/// abelian group. Only elementary divisors are needed, so the unimodular
/// transforms are not tracked.
pub fn cokernel(a: &IntMatrix) -> AbGroup {
    let s = snf_with(a, false);
    let rank = s.rank();
    let free = a.rows() - rank;
    AbGroup {
        free_rank: free,
        invariant_factors: s.invariant_factors(),
    }
}

/// m-torsion subgroup G[m] of a finitely generated group: Z summands
/// contribute nothing, Z/d contributes Z/gcd(d, m).
pub fn torsion_part(g: &AbGroup, m: u64) -> AbGroup {
    let m = BigUint::from(m);
    let factors: Vec<BigUint> = g
        .invariant_factors
        .iter()
        .map(|d| d.gcd(&m))
        .filter(|d| *d > BigUint::one())
        .collect();
    // gcd with a fixed m preserves the divisibility chain.
    AbGroup {
        free_rank: 0,
        invariant_factors: factors,
    }
}
