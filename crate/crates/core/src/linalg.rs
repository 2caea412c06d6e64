//! Exact dense linear algebra with deterministic pivoting.
//!
//! Elimination always chooses the leftmost available pivot column and the
//! topmost unused row, so reduced forms, kernel bases and particular
//! solutions are canonical: identical inputs produce identical outputs on
//! every run and platform.

use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;

/// A dense matrix of exact rationals in row-major storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AlgebraError::DimensionMismatch(
                "rows of unequal length".into(),
            ));
        }
        let nrows = rows.len();
        let data = rows.into_iter().flatten().collect();
        Ok(DenseMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self.at(r, c).is_zero() {
                        acc += &(self.at(r, c) * x);
                    }
                }
                acc
            })
            .collect())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    m.data.swap(src * m.cols + c, pivot_row * m.cols + c);
                }
            }
            let inv = m.at(pivot_row, col).recip();
            if !inv.is_one() {
                for c in col..m.cols {
                    let v = m.at(pivot_row, c) * &inv;
                    m.set(pivot_row, c, v);
                }
            }
            for r in 0..m.rows {
                if r == pivot_row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c) - &(m.at(pivot_row, c) * &factor);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis: one vector per free column in ascending
    /// order, with a 1 in the free position.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Scalar::zero(); self.cols];
            vec[free] = Scalar::one();
            for (i, &p) in pivots.iter().enumerate() {
                vec[p] = -r.at(i, free);
            }
            basis.push(vec);
        }
        basis
    }

    /// Solves `self * x = rhs`.  Returns the canonical particular solution
    /// (free variables zero) or `Ok(None)` if the system is inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let order: Vec<usize> = (0..self.cols).collect();
        self.solve_with_col_order(rhs, &order)
    }

    /// Like [`solve`](Self::solve), but eliminates columns in the supplied
    /// order, yielding a (generally different) canonical solution.  The
    /// order must be a permutation of `0..cols`.
    pub fn solve_with_col_order(
        &self,
        rhs: &[Scalar],
        order: &[usize],
    ) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "matrix has {} rows, right-hand side has {} entries",
                self.rows,
                rhs.len()
            )));
        }
        if order.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch(
                "column order is not a permutation".into(),
            ));
        }
        let mut seen = vec![false; self.cols];
        for &c in order {
            if c >= self.cols || seen[c] {
                return Err(AlgebraError::DimensionMismatch(
                    "column order is not a permutation".into(),
                ));
            }
            seen[c] = true;
        }
        // Augmented system with permuted columns.
        let mut aug = DenseMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for (j, &c) in order.iter().enumerate() {
                aug.set(r, j, self.at(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[order[p]] = red.at(i, self.cols).clone();
        }
        Ok(Some(x))
    }
}

/// Incrementally maintained row space in reduced echelon form.
///
/// Accepted vectors stay available as an index, and every reduced row
/// remembers its expression in terms of the accepted inputs, so a vector in
/// the span can be rewritten as an explicit linear combination of them.
pub struct SpanBuilder {
    dim: usize,
    /// Rows in reduced echelon form, ordered by pivot column.
    rows: Vec<SpanRow>,
    accepted: usize,
}

struct SpanRow {
    vec: Vec<Scalar>,
    pivot: usize,
    /// Sparse combination over accepted-vector indices.
    combo: Vec<(usize, Scalar)>,
}

fn combo_add(acc: &mut Vec<(usize, Scalar)>, other: &[(usize, Scalar)], factor: &Scalar) {
    for (idx, c) in other {
        let add = c * factor;
        match acc.binary_search_by_key(idx, |e| e.0) {
            Ok(i) => {
                acc[i].1 += &add;
                if acc[i].1.is_zero() {
                    acc.remove(i);
                }
            }
            Err(i) => acc.insert(i, (*idx, add)),
        }
    }
}

impl SpanBuilder {
    pub fn new(dim: usize) -> Self {
        SpanBuilder {
            dim,
            rows: Vec::new(),
            accepted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduces `v` against the current rows, tracking the combination of
    /// accepted vectors subtracted along the way.
    fn reduce(&self, mut v: Vec<Scalar>) -> (Vec<Scalar>, Vec<(usize, Scalar)>) {
        let mut combo: Vec<(usize, Scalar)> = Vec::new();
        for row in &self.rows {
            let c = v[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (i, rv) in row.vec.iter().enumerate() {
                if !rv.is_zero() {
                    v[i] -= &(rv * &c);
                }
            }
            combo_add(&mut combo, &row.combo, &c);
        }
        (v, combo)
    }

    /// Adds a vector to the span.  Returns `true` if it enlarged the span
    /// (the vector is then recorded as accepted input number
    /// `accepted_count() - 1`), `false` if it was already in the span.
    pub fn add(&mut self, v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.dim, "vector has wrong dimension");
        let (mut v, mut combo) = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let idx = self.accepted;
        self.accepted += 1;
        // Normalize: new = (input - combo) / lead.
        let lead = v[pivot].clone();
        let inv = lead.recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, c) in combo.iter_mut() {
            *c = -&(&*c * &inv);
        }
        combo_add(&mut combo, &[(idx, Scalar::one())], &inv);
        // Eliminate the new pivot from existing rows to keep full reduction.
        let new_row = SpanRow {
            vec: v,
            pivot,
            combo,
        };
        for row in self.rows.iter_mut() {
            let c = row.vec[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (i, nv) in new_row.vec.iter().enumerate() {
                if !nv.is_zero() {
                    row.vec[i] -= &(nv * &c);
                }
            }
            let neg = -&c;
            combo_add(&mut row.combo, &new_row.combo, &neg);
        }
        let pos = self
            .rows
            .binary_search_by_key(&pivot, |r| r.pivot)
            .unwrap_err();
        self.rows.insert(pos, new_row);
        true
    }

    /// Number of accepted (span-enlarging) vectors so far.
    pub fn accepted_count(&self) -> usize {
        self.accepted
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let (res, _) = self.reduce(v.to_vec());
        res.iter().all(Scalar::is_zero)
    }

    /// Expresses `v` as a combination of accepted vectors, or `None` if it
    /// lies outside the span.  The result lists `(accepted_index, coeff)`.
    pub fn express(&self, v: &[Scalar]) -> Option<Vec<(usize, Scalar)>> {
        let (res, combo) = self.reduce(v.to_vec());
        if res.iter().all(Scalar::is_zero) {
            Some(combo)
        } else {
            None
        }
    }
}
