//! Dense matrices over cyclotomic fields.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloNum;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloNum>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![CycloNum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycloNum::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloNum>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidParameter("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix; handy in tests and for random modules.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Matrix {
            rows,
            cols,
            data: entries.iter().map(|&x| CycloNum::from_integer(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloNum {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloNum) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[CycloNum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<CycloNum>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CycloNum::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidParameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].checked_add(&a.checked_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidParameter("shape mismatch in addition".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &CycloNum) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|a| a.checked_mul(c))
            .collect::<Result<_>>()?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Kronecker product; basis e_i ⊗ f_j sits at index i·dim(f) + j.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for a in 0..self.rows {
            for b in 0..self.cols {
                let x = self.get(a, b);
                if x.is_zero() {
                    continue;
                }
                for c in 0..other.rows {
                    for d in 0..other.cols {
                        let y = other.get(c, d);
                        if y.is_zero() {
                            continue;
                        }
                        out.set(a * other.rows + c, b * other.cols + d, x.checked_mul(y)?);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>)> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).inv()?;
            for c in col..m.cols {
                let v = m.get(row, c).checked_mul(&inv)?;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let pv = m.get(row, c);
                    if pv.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c).checked_sub(&factor.checked_mul(pv)?)?;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        if self.rows == 0 || self.cols == 0 {
            return Ok(0);
        }
        Ok(self.rref()?.1.len())
    }

    /// A basis of {x : A x = 0}, as column vectors.
    pub fn nullspace(&self) -> Result<Vec<Vec<CycloNum>>> {
        let (r, pivots) = self.rref()?;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![CycloNum::zero(); self.cols];
                v[f] = CycloNum::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect();
        Ok(basis)
    }

    pub fn apply(&self, v: &[CycloNum]) -> Result<Vec<CycloNum>> {
        if v.len() != self.cols {
            return Err(Error::InvalidParameter("vector length mismatch".into()));
        }
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .try_fold(CycloNum::zero(), |acc, (a, b)| acc.checked_add(&a.checked_mul(b)?))
            })
            .collect()
    }

    pub fn trace(&self) -> Result<CycloNum> {
        (0..self.rows.min(self.cols)).try_fold(CycloNum::zero(), |acc, i| acc.checked_add(self.get(i, i)))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Serialized as a list of rows, with the shape recorded so that empty
/// matrices keep their column count.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<CycloNum>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = MatrixJson::deserialize(d)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(D::Error::custom("matrix shape does not match its entries"));
        }
        Ok(Matrix {
            rows: raw.rows,
            cols: raw.cols,
            data: raw.entries.into_iter().flatten().collect(),
        })
    }
}
