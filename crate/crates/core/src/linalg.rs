//! Exact integer matrix algebra.
//!
//! Everything here works over ℤ with explicit transformation tracking, and
//! residue-class problems are reduced to integer ones by appending modulus
//! rows. Vectors are row vectors and matrices act on the right (`x ↦ x·A`).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix data has {found} entries, expected {rows}x{cols}")]
    BadShape { rows: usize, cols: usize, found: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus {0} is not positive")]
    BadModulus(i64),
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::BadShape { rows, cols, found: data.len() });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Diagonal `rows x cols` matrix; `diag` may be shorter than `min(rows, cols)`.
    pub fn diagonal(rows: usize, cols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.data[i * cols + i] = d;
        }
        m
    }

    /// Builds a matrix from explicit rows. `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Ragged { row: i, expected: cols, found: r.len() });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: i64) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Matrix product `self · other`.
    ///
    /// Panics if the inner dimensions disagree.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product with mismatched inner dimension");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = checked_fma(out.data[idx], a, other.get(k, j));
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.rows, "vector length does not match row count");
        let mut out = vec![0i64; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = checked_fma(*o, xi, self.get(i, j));
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vstack of {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(IntMatrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Keeps the listed rows, in the listed order.
    pub fn select_rows(&self, rows: &[usize]) -> IntMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        IntMatrix { rows: rows.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, cols: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j) == 0))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Panics on non-square input.
    pub fn determinant(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&i| m[i * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
                }
            }
            prev = m[k * n + k];
        }
        i64::try_from(sign * m[n * n - 1]).expect("determinant overflows i64")
    }

    /// Inverse of a unimodular matrix.
    ///
    /// Panics if the matrix is not square with determinant ±1.
    pub fn unimodular_inverse(&self) -> IntMatrix {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let s = snf(self);
        assert_eq!(s.d, IntMatrix::identity(self.rows), "matrix is not unimodular");
        // U·A·V = I  ⟹  A⁻¹ = V·U
        s.v.mul(&s.u)
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

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let v = self.get(src, j);
            let idx = dst * self.cols + j;
            self.data[idx] = checked_fma(self.data[idx], k, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let v = self.get(i, src);
            let idx = i * self.cols + dst;
            self.data[idx] = checked_fma(self.data[idx], k, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = -self.data[idx];
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[inline]
fn checked_fma(acc: i64, a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .and_then(|p| acc.checked_add(p))
        .expect("integer overflow in exact matrix arithmetic")
}

/// Smith normal form `U·A·V = D` with unimodular `U`, `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// The nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i)).take_while(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by integer elimination.
///
/// Pivots are chosen by smallest absolute value, ties broken by lowest row
/// and then lowest column, so the result is deterministic.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = smallest_entry(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = d.get(t, t);
            let mut dirty = false;
            for i in t + 1..m {
                let x = d.get(i, t);
                if x != 0 {
                    let q = x / p;
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                    dirty |= d.get(i, t) != 0;
                }
            }
            for j in t + 1..n {
                let x = d.get(t, j);
                if x != 0 {
                    let q = x / p;
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                    dirty |= d.get(t, j) != 0;
                }
            }
            if dirty {
                // A remainder smaller than the pivot survived; promote it.
                let mut best: Option<(i64, bool, usize)> = None;
                for i in t + 1..m {
                    let x = d.get(i, t).abs();
                    if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                        best = Some((x, true, i));
                    }
                }
                for j in t + 1..n {
                    let x = d.get(t, j).abs();
                    if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                        best = Some((x, false, j));
                    }
                }
                match best {
                    Some((_, true, i)) => {
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                    }
                    Some((_, false, j)) => {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                    }
                    None => unreachable!("dirty elimination left no nonzero entry"),
                }
                continue;
            }
            // Row and column are clear; enforce divisibility of the remainder block.
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| d.get(i, j) % p != 0);
            match offender {
                Some((i, _)) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { u, d, v }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j).abs();
            if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                best = Some((x, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Solves `z·A = b` over ℤ. Returns `None` when no integer solution exists.
pub fn solve_int(a: &IntMatrix, b: &[i64]) -> Result<Option<Vec<i64>>, LinalgError> {
    if b.len() != a.cols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "right-hand side has {} entries, system has {} columns",
            b.len(),
            a.cols()
        )));
    }
    let s = snf(a);
    Ok(solve_with_snf(&s, b))
}

fn solve_with_snf(s: &SnfResult, b: &[i64]) -> Option<Vec<i64>> {
    // z·A = b  ⟺  (z·U⁻¹)·D = b·V
    let c = s.v.left_mul_vec(b);
    let r = s.rank();
    let mut y = vec![0i64; s.u.rows()];
    for (j, &cj) in c.iter().enumerate() {
        if j < r {
            let dj = s.d.get(j, j);
            if cj % dj != 0 {
                return None;
            }
            y[j] = cj / dj;
        } else if cj != 0 {
            return None;
        }
    }
    Some(s.u.left_mul_vec(&y))
}

/// Basis (as rows) of the integer left kernel `{z : z·A = 0}`.
pub fn left_kernel(a: &IntMatrix) -> IntMatrix {
    let s = snf(a);
    let r = s.rank();
    let rows: Vec<usize> = (r..a.rows()).collect();
    s.u.select_rows(&rows)
}

/// A basis (as rows) of the lattice spanned by the rows of `generators`.
pub fn lattice_basis(generators: &IntMatrix) -> IntMatrix {
    let s = snf(generators);
    let r = s.rank();
    let reduced = s.u.mul(generators);
    let rows: Vec<usize> = (0..r).collect();
    reduced.select_rows(&rows)
}

/// A prepared system `x·A ≡ b (mod m)`, one modulus per column of `A`.
///
/// The Smith form of the augmented integer matrix `[A; diag(m)]` is computed
/// once, so many right-hand sides can be decided cheaply.
#[derive(Debug, Clone)]
pub struct ModSystem {
    vars: usize,
    moduli: Vec<i64>,
    snf: SnfResult,
}

impl ModSystem {
    pub fn new(a: &IntMatrix, moduli: &[i64]) -> Result<Self, LinalgError> {
        if moduli.len() != a.cols() {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} moduli for {} equations",
                moduli.len(),
                a.cols()
            )));
        }
        if let Some(&bad) = moduli.iter().find(|&&m| m <= 0) {
            return Err(LinalgError::BadModulus(bad));
        }
        let e = moduli.len();
        let augmented = a
            .vstack(&IntMatrix::diagonal(e, e, moduli))
            .expect("column counts agree by construction");
        Ok(Self { vars: a.rows(), moduli: moduli.to_vec(), snf: snf(&augmented) })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn equations(&self) -> usize {
        self.moduli.len()
    }

    fn check_rhs(&self, b: &[i64]) -> Result<(), LinalgError> {
        if b.len() != self.moduli.len() {
            return Err(LinalgError::DimensionMismatch(format!(
                "right-hand side has {} entries, system has {} equations",
                b.len(),
                self.moduli.len()
            )));
        }
        Ok(())
    }

    /// Returns some solution `x` (one entry per variable) or `None`.
    pub fn solve(&self, b: &[i64]) -> Result<Option<Vec<i64>>, LinalgError> {
        self.check_rhs(b)?;
        Ok(solve_with_snf(&self.snf, b).map(|mut z| {
            z.truncate(self.vars);
            z
        }))
    }

    /// Decides solvability without reconstructing a solution.
    pub fn is_solvable(&self, b: &[i64]) -> Result<bool, LinalgError> {
        self.check_rhs(b)?;
        let c = self.snf.v.left_mul_vec(b);
        let d = &self.snf.d;
        // [A; diag(m)] has full column rank, so every column has a pivot.
        Ok(c.iter().enumerate().all(|(j, &cj)| cj % d.get(j, j) == 0))
    }

    /// Number of solutions of the homogeneous system when variable `i` is
    /// read modulo `periods[i]`.
    ///
    /// The caller guarantees that each variable's coefficient row vanishes
    /// modulo the equation moduli when scaled by its period, so the solution
    /// set is a well-defined subgroup of `⊕ ℤ/periods[i]`.
    pub fn homogeneous_solution_count(&self, periods: &[i64]) -> u128 {
        assert_eq!(periods.len(), self.vars, "one period per variable");
        let domain: u128 = periods.iter().map(|&p| p as u128).product();
        let cokernel: u128 = self.snf.invariant_factors().iter().map(|&d| d as u128).product();
        let target: u128 = self.moduli.iter().map(|&m| m as u128).product();
        let num = domain * cokernel;
        assert_eq!(num % target, 0, "variable periods are inconsistent with the system");
        num / target
    }
}

/// Decides `x·A ≡ b (mod moduli)` exactly. Any valid solution is returned.
pub fn solve_mod(a: &IntMatrix, b: &[i64], moduli: &[i64]) -> Result<Option<Vec<i64>>, LinalgError> {
    if b.len() != a.cols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "right-hand side has {} entries, system has {} columns",
            b.len(),
            a.cols()
        )));
    }
    ModSystem::new(a, moduli)?.solve(b)
}
