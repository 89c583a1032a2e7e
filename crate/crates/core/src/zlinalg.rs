//! Exact linear algebra over the integers.
//!
//! Dense [`IntMatrix`] carries Smith normal form with witnesses, kernels and
//! determinants. [`Lattice`] keeps a Hermite basis of an integer span for
//! membership tests. [`SparseMatrix`] feeds the unit-pivot elimination used for
//! large boundary matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.data[i * k + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols<T: Into<BigInt> + Clone>(
        rows: &[Vec<T>],
        cols: usize,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in {cols}-column matrix",
                    r.len()
                )));
            }
            data.extend(r.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column of length {} in {rows}-row matrix",
                    c.len()
                )));
            }
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(
                "hconcat with different row counts".into(),
            ));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(self.rows, &cols)
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

    /// `row[dst] -= q * row[src]`
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let delta = q * s;
                self.data[dst * self.cols + j] -= delta;
            }
        }
    }

    /// `col[dst] -= q * col[src]`
    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let delta = q * s;
                self.data[i * self.cols + dst] -= delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[i * self.cols + j];
            *v = -std::mem::take(v);
        }
    }

    pub fn rank(&self) -> usize {
        Lattice::from_generators(self.rows, &self.columns(), false).rank()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `u * m * v == d` with `d` diagonal, `d_1 | d_2 | ...`, and `u`, `v` unimodular.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
}

impl Snf {
    /// The `min(rows, cols)` diagonal entries, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let (rows, cols) = (m.rows, m.cols);
    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &d[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Snf { u, v, d };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = d[(i, t)].div_floor(&d[(t, t)]);
                    d.sub_row(i, t, &q);
                    u.sub_row(i, t, &q);
                    clean &= d[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = d[(t, j)].div_floor(&d[(t, t)]);
                    d.sub_col(j, t, &q);
                    v.sub_col(j, t, &q);
                    clean &= d[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold a row with an indivisible entry into the pivot row.
            let pivot = d[(t, t)].clone();
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    d.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, v, d }
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(
            "determinant of a non-square matrix".into(),
        ));
    }
    let k = m.rows;
    if k == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for t in 0..k - 1 {
        if a[(t, t)].is_zero() {
            let Some(p) = (t + 1..k).find(|&i| !a[(i, t)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(t, p);
            sign = -sign;
        }
        for i in t + 1..k {
            for j in t + 1..k {
                let val = &a[(i, j)] * &a[(t, t)] - &a[(i, t)] * &a[(t, j)];
                a[(i, j)] = val / &prev;
            }
        }
        prev = a[(t, t)].clone();
    }
    Ok(sign * &a[(k - 1, k - 1)])
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    determinant(m).is_ok_and(|d| d.abs().is_one())
}

/// A Hermite-reduced basis of the integer span of some generators.
///
/// Rows are in echelon form with positive pivots; entries above a pivot lie in
/// `[0, pivot)`. With tracking enabled, each basis row also stores its
/// coefficients in terms of the original generators.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    generators: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    transform: Option<Vec<Vec<BigInt>>>,
    relations: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Span of `generators` (each of length `dim`).
    pub fn from_generators(dim: usize, generators: &[Vec<BigInt>], track: bool) -> Self {
        let k = generators.len();
        let mut rows: Vec<Vec<BigInt>> = generators.to_vec();
        let mut trans: Vec<Vec<BigInt>> = if track {
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            if i == j {
                                BigInt::one()
                            } else {
                                BigInt::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };
        let sub = |rows: &mut Vec<Vec<BigInt>>, dst: usize, src: usize, q: &BigInt| {
            if q.is_zero() {
                return;
            }
            let (a, b) = if dst < src {
                let (lo, hi) = rows.split_at_mut(src);
                (&mut lo[dst], &hi[0])
            } else {
                let (lo, hi) = rows.split_at_mut(dst);
                (&mut hi[0], &lo[src])
            };
            for (x, y) in a.iter_mut().zip(b.iter()) {
                if !y.is_zero() {
                    *x -= q * y;
                }
            }
        };
        let mut r = 0;
        let mut pivots = Vec::new();
        for col in 0..dim {
            if r == k {
                break;
            }
            loop {
                let best = (r..k)
                    .filter(|&i| !rows[i][col].is_zero())
                    .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
                let Some(p) = best else { break };
                rows.swap(r, p);
                if track {
                    trans.swap(r, p);
                }
                let mut done = true;
                for i in r + 1..k {
                    if !rows[i][col].is_zero() {
                        let q = rows[i][col].div_floor(&rows[r][col]);
                        sub(&mut rows, i, r, &q);
                        if track {
                            sub(&mut trans, i, r, &q);
                        }
                        done &= rows[i][col].is_zero();
                    }
                }
                if done {
                    break;
                }
            }
            if rows.get(r).is_some_and(|row| !row[col].is_zero()) {
                if rows[r][col].is_negative() {
                    for x in rows[r].iter_mut() {
                        *x = -std::mem::take(x);
                    }
                    if track {
                        for x in trans[r].iter_mut() {
                            *x = -std::mem::take(x);
                        }
                    }
                }
                for i in 0..r {
                    let q = rows[i][col].div_floor(&rows[r][col]);
                    sub(&mut rows, i, r, &q);
                    if track {
                        sub(&mut trans, i, r, &q);
                    }
                }
                pivots.push(col);
                r += 1;
            }
        }
        let relations = if track {
            trans.split_off(r)
        } else {
            Vec::new()
        };
        rows.truncate(r);
        Lattice {
            dim,
            generators: k,
            basis: rows,
            pivots,
            transform: track.then_some(trans),
            relations,
        }
    }

    /// Span of the columns of `m`.
    pub fn from_columns(m: &IntMatrix, track: bool) -> Self {
        Self::from_generators(m.rows, &m.columns(), track)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The canonical Hermite basis rows.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Integer relations among the generators (a basis of them); only with tracking.
    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }

    /// Reduces `v` against the basis; returns the residual and the basis coefficients used.
    fn reduce(&self, v: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>, bool) {
        let mut v = v.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.basis.len()];
        let mut exact = true;
        for (i, (row, &p)) in self.basis.iter().zip(&self.pivots).enumerate() {
            if v[p].is_zero() {
                continue;
            }
            let (q, r) = v[p].div_rem(&row[p]);
            if !r.is_zero() {
                exact = false;
                break;
            }
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &q * y;
                }
            }
            coeffs[i] = q;
        }
        (v, coeffs, exact)
    }

    /// Canonical coset representative of `v` modulo the lattice: entries at
    /// pivot columns land in `[0, pivot)`. Two vectors differ by a lattice
    /// element iff their residues agree.
    pub fn residue(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let q = v[p].div_floor(&row[p]);
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &q * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim);
        let (res, _, exact) = self.reduce(v);
        exact && res.iter().all(Zero::is_zero)
    }

    /// Coefficients `c` over the original generators with `sum c_i g_i == v`.
    ///
    /// Panics if the lattice was built without tracking.
    pub fn coefficients(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let trans = self
            .transform
            .as_ref()
            .expect("lattice built without coefficient tracking");
        let (res, coeffs, exact) = self.reduce(v);
        if !exact || !res.iter().all(Zero::is_zero) {
            return None;
        }
        let mut out = vec![BigInt::zero(); self.generators];
        for (q, row) in coeffs.iter().zip(trans) {
            if q.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(row) {
                if !t.is_zero() {
                    *o += q * t;
                }
            }
        }
        Some(out)
    }

    /// Equal spans have equal Hermite bases.
    pub fn same_span(&self, other: &Lattice) -> bool {
        self.dim == other.dim && self.basis == other.basis
    }

    /// True iff every basis row of `other` lies in this lattice.
    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }
}

/// Columns form a basis of `{v : m v = 0}` over the integers.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let lattice = Lattice::from_generators(m.rows, &m.columns(), true);
    let rel = lattice.relations();
    let mut out = IntMatrix::zeros(m.cols, rel.len());
    for (j, r) in rel.iter().enumerate() {
        for (i, x) in r.iter().enumerate() {
            out[(i, j)] = x.clone();
        }
    }
    out
}

/// Coefficients `c` with `basis * c == v`, if `v` lies in the column span.
pub fn lattice_contains(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    if v.len() != basis.rows {
        return None;
    }
    Lattice::from_columns(basis, true).coefficients(v)
}

/// Column spans are equal.
pub fn lattice_equal(b1: &IntMatrix, b2: &IntMatrix) -> bool {
    b1.rows == b2.rows
        && Lattice::from_columns(b1, false).same_span(&Lattice::from_columns(b2, false))
}

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<BTreeMap<usize, BigInt>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix {
            rows,
            columns: Vec::new(),
        }
    }

    pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, BigInt)>) {
        let mut col = BTreeMap::new();
        for (i, v) in entries {
            assert!(i < self.rows, "row index {i} out of range");
            let e: &mut BigInt = col.entry(i).or_default();
            *e += v;
            if e.is_zero() {
                col.remove(&i);
            }
        }
        self.columns.push(col);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &BTreeMap<usize, BigInt> {
        &self.columns[j]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(BTreeMap::len).sum()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.columns.len());
        for (j, c) in self.columns.iter().enumerate() {
            for (&i, v) in c {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        let mut s = SparseMatrix::new(m.rows);
        for j in 0..m.cols {
            s.push_column(
                (0..m.rows)
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone())),
            );
        }
        s
    }

    /// `self * other` where `other` is dense with compatible shape.
    pub fn mul_sparse(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols() != other.rows {
            return Err(Error::DimensionMismatch("sparse product shapes".into()));
        }
        let mut out = SparseMatrix::new(self.rows);
        for c in &other.columns {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (&k, b) in c {
                for (&i, a) in &self.columns[k] {
                    *acc.entry(i).or_default() += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.columns.push(acc);
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, x) in self.columns.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (&i, a) in c {
                out[i] += a * x;
            }
        }
        out
    }
}

/// Nonzero invariant factors, ascending in the divisibility chain.
///
/// Unit pivots are eliminated sparsely (choosing the entry with the smallest
/// fill-in estimate); whatever remains goes through dense Smith form.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
    let mut cols: Vec<BTreeMap<usize, BigInt>> = m.columns.clone();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &i in c.keys() {
            row_cols[i].insert(j);
        }
    }
    let mut active: BTreeSet<usize> = (0..cols.len()).filter(|&j| !cols[j].is_empty()).collect();
    let mut units = 0usize;

    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for &j in &active {
            let clen = cols[j].len();
            for (&i, v) in &cols[j] {
                if v.abs().is_one() {
                    let cost = (clen - 1) * (row_cols[i].len() - 1);
                    if best.is_none_or(|(c, _, _)| cost < c) {
                        best = Some((cost, j, i));
                    }
                }
            }
            if best.is_some_and(|(c, _, _)| c == 0) {
                break;
            }
        }
        let Some((_, pj, pi)) = best else { break };
        let pivot_col = cols[pj].clone();
        let pivot_val = pivot_col[&pi].clone();
        let others: Vec<usize> = row_cols[pi].iter().copied().filter(|&c| c != pj).collect();
        for c in others {
            let factor = &cols[c][&pi] * &pivot_val;
            for (&i, v) in &pivot_col {
                let e = cols[c].entry(i).or_default();
                *e -= &factor * v;
                if e.is_zero() {
                    cols[c].remove(&i);
                    row_cols[i].remove(&c);
                } else {
                    row_cols[i].insert(c);
                }
            }
            if cols[c].is_empty() {
                active.remove(&c);
            }
        }
        for &i in pivot_col.keys() {
            row_cols[i].remove(&pj);
        }
        cols[pj].clear();
        active.remove(&pj);
        units += 1;
    }

    let mut factors = vec![BigInt::one(); units];
    if !active.is_empty() {
        let rows: Vec<usize> = (0..m.rows).filter(|&i| !row_cols[i].is_empty()).collect();
        let index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut dense = IntMatrix::zeros(rows.len(), active.len());
        for (k, &j) in active.iter().enumerate() {
            for (i, v) in &cols[j] {
                dense[(index[i], k)] = v.clone();
            }
        }
        let snf = smith_normal_form(&dense);
        factors.extend(snf.diagonal().into_iter().filter(|x| !x.is_zero()));
    }
    factors
}

pub fn sparse_rank(m: &SparseMatrix) -> usize {
    invariant_factors(m).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_snf(m: &IntMatrix) -> Snf {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).unwrap().mul(&snf.v).unwrap(), snf.d);
        assert!(is_unimodular(&snf.u) && is_unimodular(&snf.v));
        for i in 0..snf.d.rows() {
            for j in 0..snf.d.cols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero());
                }
            }
        }
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]), "{diag:?}");
        }
        snf
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            check_snf(&mat(&[vec![2, 0], vec![0, 3]])).diagonal(),
            big(&[1, 6])
        );
        assert_eq!(check_snf(&IntMatrix::zeros(2, 3)).diagonal(), big(&[0, 0]));
        assert_eq!(
            check_snf(&IntMatrix::identity(3)).diagonal(),
            big(&[1, 1, 1])
        );
        let m = mat(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check_snf(&m).diagonal(), big(&[2, 6, 12]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            kernel_basis(&mat(&[vec![1, -1]])).columns(),
            vec![big(&[1, 1])]
        );
        assert_eq!(kernel_basis(&IntMatrix::identity(2)).cols(), 0);
        let k = kernel_basis(&mat(&[vec![2, -2]]));
        assert_eq!(k.cols(), 1);
        let c = k.column(0);
        assert!(c == big(&[1, 1]) || c == big(&[-1, -1]));
    }

    #[test]
    fn lattice_examples() {
        let b = IntMatrix::from_columns(2, &[big(&[1, 1])]).unwrap();
        assert_eq!(lattice_contains(&b, &big(&[3, 3])), Some(big(&[3])));
        assert_eq!(lattice_contains(&b, &big(&[1, 0])), None);
        let b1 = IntMatrix::from_columns(2, &[big(&[2, 0]), big(&[0, 2]), big(&[1, 1])]).unwrap();
        let b2 = IntMatrix::from_columns(2, &[big(&[1, 1]), big(&[2, 0])]).unwrap();
        assert!(lattice_equal(&b1, &b2));
        let b3 = IntMatrix::from_columns(2, &[big(&[1, 0]), big(&[0, 1])]).unwrap();
        assert!(!lattice_equal(&b1, &b3));
    }

    #[test]
    fn determinant_values() {
        assert_eq!(
            determinant(&mat(&[vec![2, 1], vec![7, 4]])).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            determinant(&mat(&[vec![0, 1], vec![1, 0]])).unwrap(),
            -BigInt::one()
        );
        assert_eq!(
            determinant(&mat(&[vec![1, 2], vec![2, 4]])).unwrap(),
            BigInt::zero()
        );
    }

    /// Brute force over small vectors: every kernel vector with entries in [-2, 2]
    /// is an integer combination of the computed basis.
    #[test]
    fn kernel_is_saturated_on_small_box() {
        let m = mat(&[vec![2, -2, 0], vec![0, 4, -4]]);
        let k = kernel_basis(&m);
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                for c in -2..=2i64 {
                    let v = big(&[a, b, c]);
                    let zero = m.mul_vec(&v).unwrap().iter().all(Zero::is_zero);
                    assert_eq!(zero, lattice_contains(&k, &v).is_some(), "{v:?}");
                }
            }
        }
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r).prop_map(|rows| mat(&rows))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn snf_witnesses_are_valid(m in arb_matrix()) {
            check_snf(&m);
        }

        #[test]
        fn kernel_is_annihilated(m in arb_matrix()) {
            let k = kernel_basis(&m);
            prop_assert!(m.mul(&k).unwrap().is_zero());
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
        }

        #[test]
        fn membership_recovers_coefficients(m in arb_matrix(), c in prop::collection::vec(-5i64..6, 6)) {
            let c: Vec<BigInt> = c[..m.cols()].iter().map(|&x| BigInt::from(x)).collect();
            let v = m.mul_vec(&c).unwrap();
            let found = lattice_contains(&m, &v).expect("v is in the span");
            prop_assert_eq!(m.mul_vec(&found).unwrap(), v);
        }

        #[test]
        fn sparse_factors_match_dense(m in arb_matrix()) {
            let dense: Vec<BigInt> = smith_normal_form(&m).diagonal().into_iter().filter(|x| !x.is_zero()).collect();
            prop_assert_eq!(invariant_factors(&SparseMatrix::from_dense(&m)), dense);
        }
    }
}
