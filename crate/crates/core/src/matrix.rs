//! Dense exact matrices, reduced row-echelon form, kernels and row spaces.

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A dense matrix whose entries all live in one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row vectors, checking shape and field agreement.
    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry over {} in a matrix over {field}",
                        s.field()
                    )));
                }
                data.push(s);
            }
        }
        Ok(ExactMatrix { field, rows: n, cols, data })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    fn validate(&self) -> Result<()> {
        if let Some(bad) = self.data.iter().find(|s| s.field() != self.field) {
            return Err(Error::FieldMismatch(format!(
                "entry over {} in a matrix over {}",
                bad.field(),
                self.field
            )));
        }
        Ok(())
    }

    /// Reduced row-echelon form with its pivot columns. Zero rows are kept
    /// at the bottom so the shape is preserved.
    pub fn rref(&self) -> Result<(ExactMatrix, Vec<usize>)> {
        self.validate()?;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(src) = (prow..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(src, prow);
            let inv = m.get(prow, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(prow, c) * &inv;
                m.set(prow, c, v);
            }
            for r in 0..m.rows {
                if r == prow || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let sub = &factor * m.get(prow, c);
                    let v = m.get(r, c) - &sub;
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rref()?.1.len())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Basis of the right null space `{v : m v = 0}`; empty iff the matrix has
    /// full column rank.
    pub fn kernel_basis(&self) -> Result<Vec<Vec<Scalar>>> {
        let (r, pivots) = self.rref()?;
        let mut is_pivot = vec![None; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| is_pivot[c].is_none()) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).try_fold(self.field.zero(), |acc, (a, b)| {
                    acc.try_add(&a.try_mul(b)?)
                })
            })
            .collect()
    }
}

/// A subspace of `field^ambient`, stored as a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Row space of the given vectors.
    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = ExactMatrix::from_rows(field, ambient, vectors)?;
        Self::row_space(&m)
    }

    pub fn row_space(m: &ExactMatrix) -> Result<Self> {
        let (r, pivots) = m.rref()?;
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace {
            field: m.field(),
            ambient: m.cols(),
            basis,
            pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient {} vs {}",
                self.ambient, other.ambient
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    /// Membership by elimination against the echelon basis.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient {}",
                v.len(),
                self.ambient
            )));
        }
        let mut w = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            if w[pc].field() != self.field {
                return Err(Error::FieldMismatch("vector entry".into()));
            }
            if w[pc].is_zero() {
                continue;
            }
            let f = w[pc].clone();
            for (wi, ri) in w.iter_mut().zip(row) {
                *wi = &*wi - &(&f * ri);
            }
        }
        Ok(w.iter().all(Scalar::is_zero))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, rows)
    }

    /// Intersection through the left kernel of the stacked bases.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let stacked = ExactMatrix::from_rows(self.field, self.ambient, rows)?;
        let relations = stacked.transpose().kernel_basis()?;
        let mut out = Vec::with_capacity(relations.len());
        for rel in relations {
            let mut v = vec![self.field.zero(); self.ambient];
            for (coef, row) in rel.iter().take(self.dim()).zip(&self.basis) {
                if coef.is_zero() {
                    continue;
                }
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = &*vi + &(coef * ri);
                }
            }
            out.push(v);
        }
        Subspace::span(self.field, self.ambient, out)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
