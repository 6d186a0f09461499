//! Exact integer and rational linear algebra.
//!
//! Matrices are dense and row-major and act on column vectors from the left.
//! Everything here is exact: entries are `BigInt` or `BigRational`, so no
//! operation can overflow.
//!
//! Canonical forms used throughout the crate:
//!
//! * Smith form `U·A·V = D` with `d₁ | d₂ | …` and every `dᵢ ≥ 0`.
//! * Column Hermite form `A·T = H` with `H` upper triangular, positive
//!   pivots on the diagonal, and every entry to the right of a pivot reduced
//!   into `[0, pivot)`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::IntPoly;
use crate::polyring::RatPoly;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<T>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return Err(Error::DimensionMismatch("ragged columns".into()));
        }
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn ensure_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
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

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(m)
    }

    pub fn trace(&self) -> T {
        let n = self.rows.min(self.cols);
        (0..n).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.clone() * other[(k, j)].clone();
                    let cell = &mut m[(i, j)];
                    *cell = cell.clone() + prod;
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch("matrix-vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(T::zero(), |acc, j| acc + self[(i, j)].clone() * v[j].clone())
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    fn zip_with<F: Fn(&T, &T) -> T>(&self, other: &Self, f: F) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    /// `self^k` by repeated squaring (square matrices only).
    pub fn pow(&self, mut k: u64) -> Result<Self> {
        let n = self.ensure_square()?;
        let mut result = Self::identity(n);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl<T: Clone + Zero + One + std::ops::Sub<Output = T>> Matrix<T> {
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }
}

impl fmt::Display for IntMatrix {
    /// Repo-wide text format: dimension line, then one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.rows)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// gcd of all entries (0 for the zero matrix).
    pub fn content(&self) -> BigInt {
        self.data.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        let n = self.ensure_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = v / &prev;
                }
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * m[(n - 1, n - 1)].clone())
    }

    /// Characteristic polynomial `det(xI − A)`, monic of degree `n`.
    pub fn char_poly(&self) -> Result<IntPoly> {
        Ok(self.leverrier()?.0)
    }

    /// Faddeev–LeVerrier: returns `det(xI − A)` together with the matrices
    /// `M₁ = I, …, Mₙ` such that `adj(xI − A) = Σₖ Mₖ x^(n−k)`.
    pub fn leverrier(&self) -> Result<(IntPoly, Vec<IntMatrix>)> {
        let n = self.ensure_square()?;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut adj_terms = Vec::with_capacity(n);
        let mut m = IntMatrix::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m)?;
            for i in 0..n {
                m[(i, i)] += &coeffs[n - k + 1];
            }
            adj_terms.push(m.clone());
            let t = self.mul(&m)?.trace();
            // exact: the coefficients of an integer char poly are integers
            coeffs[n - k] = -(t / BigInt::from(k));
        }
        Ok((IntPoly::new(coeffs), adj_terms))
    }

    /// Smith normal form `U·A·V = D`.
    pub fn smith_normal_form(&self) -> SmithDecomposition {
        smith(self)
    }

    /// Column Hermite normal form of a square matrix: `A·T = H`.
    pub fn hermite_normal_form(&self) -> Result<HermiteBasis> {
        let n = self.ensure_square()?;
        let (h, t, pivots) = column_hermite(self, true);
        if pivots < n {
            return Err(Error::SingularMatrix);
        }
        Ok(HermiteBasis { h, t: t.expect("transform tracked") })
    }

    pub fn rational_inverse(&self) -> Result<RatMatrix> {
        self.to_rational().inverse()
    }

    /// Generators of `{x ∈ (Z/m)ⁿ : A·x ≡ 0 (mod m)}`, each reduced into `[0, m)`.
    pub fn kernel_mod_m(&self, m: &BigInt) -> Result<Vec<Vec<BigInt>>> {
        if !m.is_positive() {
            return Err(Error::DimensionMismatch("modulus must be positive".into()));
        }
        let snf = self.smith_normal_form();
        let n = self.cols;
        let mut gens = Vec::new();
        for i in 0..n {
            // y_i must satisfy d_i·y_i ≡ 0 (mod m)
            let d = if i < self.rows { snf.d[(i, i)].clone() } else { BigInt::zero() };
            let step = m / d.gcd(m);
            let v: Vec<BigInt> = (0..n).map(|r| (&snf.v[(r, i)] * &step).mod_floor(m)).collect();
            if v.iter().any(|x| !x.is_zero()) {
                gens.push(v);
            }
        }
        Ok(gens)
    }

    /// True when the matrix is square with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }
}

impl RatMatrix {
    /// Returns `Some` when every entry is an integer.
    pub fn to_integer(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }

    /// Least common multiple of the entry denominators.
    pub fn common_denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()))
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.ensure_square()?;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            a.swap_rows(p, col);
            inv.swap_rows(p, col);
            let pv = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] / &pv;
                inv[(col, j)] = &inv[(col, j)] / &pv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= t;
                    let t = &f * &inv[(col, j)];
                    inv[(r, j)] -= t;
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<BigRational> {
        let n = self.ensure_square()?;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pv = a[(col, col)].clone();
            det *= &pv;
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = &a[(r, col)] / &pv;
                for j in col..n {
                    let t = &f * &a[(col, j)];
                    a[(r, j)] -= t;
                }
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial over Q (Faddeev–LeVerrier).
    pub fn char_poly(&self) -> Result<RatPoly> {
        let n = self.ensure_square()?;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = RatMatrix::zeros(n, n);
        for k in 1..=n {
            m = self.mul(&m)?;
            for i in 0..n {
                m[(i, i)] += &coeffs[n - k + 1];
            }
            let t = self.mul(&m)?.trace();
            coeffs[n - k] = -(t / BigRational::from_integer(BigInt::from(k)));
        }
        Ok(RatPoly::new(coeffs))
    }
}

/// `U·A·V = D` with `U`, `V` unimodular and `D` diagonal in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d₁ | d₂ | …` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// `A·T = H` with `H` in column Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    pub h: IntMatrix,
    pub t: IntMatrix,
}

fn row_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    // row_dst -= q·row_src
    for j in 0..m.cols {
        let t = q * &m[(src, j)];
        m[(dst, j)] -= t;
    }
}

fn col_axpy(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    // col_dst -= q·col_src
    for i in 0..m.rows {
        let t = q * &m[(i, src)];
        m[(i, dst)] -= t;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for j in 0..m.cols {
        let v = -std::mem::take(&mut m[(r, j)]);
        m[(r, j)] = v;
    }
}

fn negate_col(m: &mut IntMatrix, c: usize) {
    for i in 0..m.rows {
        let v = -std::mem::take(&mut m[(i, c)]);
        m[(i, c)] = v;
    }
}

fn smith(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
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
                return finish_smith(d, u, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if !d[(i, t)].is_zero() {
                    let q = &d[(i, t)] / &d[(t, t)];
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clean &= d[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !d[(t, j)].is_zero() {
                    let q = &d[(t, j)] / &d[(t, t)];
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clean &= d[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offending = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&d[(i, j)] % &d[(t, t)]).is_zero()));
            if let Some(i) = offending {
                let minus_one = -BigInt::one();
                row_axpy(&mut d, t, i, &minus_one);
                row_axpy(&mut u, t, i, &minus_one);
                continue;
            }
            break;
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    finish_smith(d, u, v)
}

fn finish_smith(d: IntMatrix, u: IntMatrix, v: IntMatrix) -> SmithDecomposition {
    SmithDecomposition { d, u, v }
}

/// Column Hermite reduction of an arbitrary `m×k` matrix.
///
/// Returns the reduced matrix (same shape; pivot columns are packed to the
/// right, zero columns to the left), the optional column transform and the
/// number of pivots. For a full-row-rank input the last `m` columns form the
/// upper-triangular Hermite basis.
pub(crate) fn column_hermite(a: &IntMatrix, track: bool) -> (IntMatrix, Option<IntMatrix>, usize) {
    let (rows, cols) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut t = track.then(|| IntMatrix::identity(cols));
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = cols; // columns next..cols hold pivots
    for i in (0..rows).rev() {
        if next == 0 {
            break;
        }
        let c = next - 1;
        loop {
            let mut best: Option<usize> = None;
            for j in 0..=c {
                let x = &h[(i, j)];
                if !x.is_zero() && best.is_none_or(|b| x.abs() < h[(i, b)].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            h.swap_cols(b, c);
            if let Some(t) = t.as_mut() {
                t.swap_cols(b, c);
            }
            let mut done = true;
            for j in 0..c {
                if !h[(i, j)].is_zero() {
                    let q = &h[(i, j)] / &h[(i, c)];
                    col_axpy(&mut h, j, c, &q);
                    if let Some(t) = t.as_mut() {
                        col_axpy(t, j, c, &q);
                    }
                    done &= h[(i, j)].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if h[(i, c)].is_zero() {
            continue;
        }
        if h[(i, c)].is_negative() {
            negate_col(&mut h, c);
            if let Some(t) = t.as_mut() {
                negate_col(t, c);
            }
        }
        pivots.push((i, c));
        next = c;
    }
    // reduce entries right of each pivot, bottom pivot first
    for &(i, c) in &pivots {
        for j in c + 1..cols {
            let q = h[(i, j)].div_floor(&h[(i, c)]);
            if !q.is_zero() {
                col_axpy(&mut h, j, c, &q);
                if let Some(t) = t.as_mut() {
                    col_axpy(t, j, c, &q);
                }
            }
        }
    }
    let count = pivots.len();
    (h, t, count)
}

/// Hermite basis (`m×m`, upper triangular) of the lattice spanned by the
/// columns of `a`, or `None` when the columns do not span a full-rank lattice.
pub fn hermite_basis_of_span(a: &IntMatrix) -> Option<IntMatrix> {
    let (h, _, pivots) = column_hermite(a, false);
    let m = a.rows;
    if pivots < m {
        return None;
    }
    let offset = h.cols - m;
    let mut out = IntMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = h[(i, offset + j)].clone();
        }
    }
    Some(out)
}

/// Checks the Hermite-form conventions documented at the module level.
pub fn is_hermite(h: &IntMatrix) -> bool {
    if !h.is_square() {
        return false;
    }
    let n = h.rows;
    for i in 0..n {
        if !h[(i, i)].is_positive() {
            return false;
        }
        for j in 0..i {
            if !h[(i, j)].is_zero() {
                return false;
            }
        }
        for j in i + 1..n {
            if h[(i, j)].is_negative() || h[(i, j)] >= h[(i, i)] {
                return false;
            }
        }
    }
    true
}

/// Evaluates a rational polynomial at an integer matrix, requiring the
/// result to be an integer matrix.
pub fn eval_poly_at_matrix(g: &RatPoly, a: &IntMatrix) -> Result<IntMatrix> {
    let n = a.ensure_square()?;
    let denom = g.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let scaled: Vec<BigInt> =
        g.coeffs().iter().map(|c| (c * BigRational::from_integer(denom.clone())).to_integer()).collect();
    // Horner over the integers on denom·g
    let mut acc = IntMatrix::zeros(n, n);
    for c in scaled.iter().rev() {
        acc = acc.mul(a)?;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    if denom.is_one() {
        return Ok(acc);
    }
    if acc.data.iter().any(|x| !(x % &denom).is_zero()) {
        return Err(Error::NonIntegralResult);
    }
    Ok(acc.map(|x| x / &denom))
}
