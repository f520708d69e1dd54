//! Dense exact rational matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{lcm_of_denominators, rational_sqrt, to_short};
use crate::error::{dim, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

/// `g = L·D·Lᵀ` with `L` unit lower-triangular.
#[derive(Clone, Debug)]
pub struct Ldl {
    pub lower: RatMatrix,
    pub diag: Vec<BigRational>,
    /// `square_roots[i]` is `Some(√D_i)` when `D_i` is a rational square.
    pub square_roots: Vec<Option<BigRational>>,
}

impl Ldl {
    pub fn all_square(&self) -> bool {
        self.square_roots.iter().all(Option::is_some)
    }

    /// Exact Cholesky factor `L·√D` when every pivot is a rational square.
    pub fn cholesky(&self) -> Option<RatMatrix> {
        let k = self.diag.len();
        let mut out = self.lower.clone();
        for c in 0..k {
            let s = self.square_roots[c].as_ref()?;
            for r in 0..k {
                let v = out.get(r, c) * s;
                out.set(r, c, v);
            }
        }
        Some(out)
    }
}

/// Reduced row echelon form with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(dim(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(dim("ragged rows"));
        }
        Ok(Self { rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        Self::from_rows(data).expect("rectangular literal")
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

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(dim("shape mismatch"));
        }
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(dim("vector length mismatch"));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&r| self.row(r).iter().cloned()).collect();
        Self { rows: rows.len(), cols: self.cols, entries }
    }

    pub fn stack(&self, below: &Self) -> Result<Self> {
        if self.cols != below.cols {
            return Err(dim("column count mismatch in stack"));
        }
        let mut entries = self.entries.clone();
        entries.extend(below.entries.iter().cloned());
        Ok(Self { rows: self.rows + below.rows, cols: self.cols, entries })
    }

    /// Determinant by Bareiss elimination on the integer lift.
    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(dim(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|r| {
                let row = self.row(r);
                let l = lcm_of_denominators(row);
                scale *= &l;
                row.iter().map(|e| (e * &l).to_integer()).collect()
            })
            .collect();
        let det = bareiss_det(&mut m);
        Ok(BigRational::new(det, scale))
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..self.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..self.cols {
                    let v = m.get(r, c) - &f * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right null space as rows, one per free column, each
    /// with a 1 at its free column (the reduced kernel basis).
    pub fn kernel(&self) -> Self {
        let Rref { matrix, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, BigRational::one());
            for (r, &p) in pivots.iter().enumerate() {
                out.set(i, p, -matrix.get(r, f));
            }
        }
        out
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(dim("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, BigRational::one());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Precondition("matrix is singular".into()));
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(matrix.select_columns(&cols))
    }

    /// Solves `self · x = rhs` for a unique `x`.
    pub fn solve(&self, rhs: &[BigRational]) -> Result<Vec<BigRational>> {
        let inv = self.inverse()?;
        inv.mul_vec(rhs)
    }

    /// `L·D·Lᵀ` without pivoting; a zero pivot is reported as an error.
    pub fn ldl(&self) -> Result<Ldl> {
        if !self.is_symmetric() {
            return Err(Error::Precondition("LDL of a non-symmetric matrix".into()));
        }
        let n = self.rows;
        let mut lower = Self::identity(n);
        let mut diag: Vec<BigRational> = Vec::with_capacity(n);
        for j in 0..n {
            let mut dj = self.get(j, j).clone();
            for k in 0..j {
                dj -= lower.get(j, k) * lower.get(j, k) * &diag[k];
            }
            if dj.is_zero() {
                return Err(Error::ZeroPivot { index: j });
            }
            for i in j + 1..n {
                let mut v = self.get(i, j).clone();
                for k in 0..j {
                    v -= lower.get(i, k) * lower.get(j, k) * &diag[k];
                }
                lower.set(i, j, v / &dj);
            }
            diag.push(dj);
        }
        let square_roots = diag.iter().map(rational_sqrt).collect();
        Ok(Ldl { lower, diag, square_roots })
    }

    pub fn leading_minors_positive(&self) -> bool {
        (1..=self.rows).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            let sub = self.select_rows(&idx).select_columns(&idx);
            sub.det().map(|d| d.is_positive()).unwrap_or(false)
        })
    }
}

/// Fraction-free determinant of an integer matrix; consumes the work area.
pub fn bareiss_det(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(to_short).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>w$}", cells[r * self.cols + c]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}
