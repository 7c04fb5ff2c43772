//! Exact dense linear algebra over a [`Field`]: reduced echelon forms,
//! rank, null spaces, determinants, linear solves and the structured
//! builders (Vandermonde, Cauchy) the code constructions rely on.
//!
//! Pivoting is deterministic — leftmost column, topmost nonzero row — so
//! echelon forms and null-space bases are reproducible across runs.

mod poly;

pub use poly::{
    elementary_symmetric, elementary_symmetric_all, monic_from_sigmas, pencil_determinant,
    roots_in_field, Poly,
};

use crate::gf::{Field, FieldElement, GfError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("evaluation points must be pairwise distinct")]
    RepeatedPoints,
    #[error("Cauchy point sets must be disjoint and duplicate-free")]
    CauchyOverlap,
    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,
    #[error("pencil determinant limited to matrices of size at most {limit}, got {size}")]
    PencilTooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Dense row-major matrix over a single field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Result of a full row reduction.
pub struct Reduction {
    pub rank: usize,
    pub rref: Matrix,
    /// Rows form a basis of the right null space; (cols - rank) of them.
    pub nullspace: Matrix,
}

/// Outcome of solving `M x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solve {
    Unique(Vec<FieldElement>),
    Inconsistent,
    Underdetermined {
        particular: Vec<FieldElement>,
        /// rows span the solution-space directions
        nullspace: Matrix,
    },
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from raw packed values (row-major); values must be in range.
    pub fn from_values(
        field: &Field,
        rows: usize,
        cols: usize,
        values: &[u64],
    ) -> Result<Matrix, LinalgError> {
        if values.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                values.len()
            )));
        }
        for &v in values {
            if v >= field.q() {
                return Err(GfError::ValueOutOfRange {
                    value: v,
                    q: field.q(),
                }
                .into());
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data: values.to_vec(),
        })
    }

    pub fn from_fn(
        field: &Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(e.field() == field, "from_fn produced a foreign element");
                data.push(e.value());
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.field
            .element(self.at(i, j))
            .expect("stored values are reduced")
    }

    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> u64 {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.cols + j] = v;
    }

    /// Row-major packed values.
    pub fn values(&self) -> &[u64] {
        &self.data
    }

    /// Rows as vectors of packed values (wire form).
    pub fn rows_packed(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field, "field mismatch in matmul");
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.at(i, j);
                    out.set(i, j, f.add_raw(cur, f.mul_raw(a, other.at(k, j))));
                }
            }
        }
        out
    }

    pub fn select_cols(&self, sel: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, sel.len());
        for i in 0..self.rows {
            for (jj, &j) in sel.iter().enumerate() {
                out.set(i, jj, self.at(i, j));
            }
        }
        out
    }

    pub fn select_rows(&self, sel: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, sel.len(), self.cols);
        for (ii, &i) in sel.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.at(i, j));
            }
        }
        out
    }

    /// Stack vertically: `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert!(self.field == other.field && self.cols == other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Reduced row-echelon form, rank and right null-space basis, with
    /// deterministic pivoting.
    pub fn reduce(&self) -> Reduction {
        let f = self.field.clone();
        let mut a = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut row = 0usize;
        for col in 0..a.cols {
            let Some(piv) = (row..a.rows).find(|&r| a.at(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for j in 0..a.cols {
                    let t = a.at(piv, j);
                    a.set(piv, j, a.at(row, j));
                    a.set(row, j, t);
                }
            }
            let inv = f.inv_raw(a.at(row, col)).expect("pivot nonzero");
            for j in 0..a.cols {
                a.set(row, j, f.mul_raw(a.at(row, j), inv));
            }
            for r in 0..a.rows {
                if r != row && a.at(r, col) != 0 {
                    let factor = a.at(r, col);
                    for j in 0..a.cols {
                        let sub = f.mul_raw(factor, a.at(row, j));
                        a.set(r, j, f.sub_raw(a.at(r, j), sub));
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == a.rows {
                break;
            }
        }
        let rank = row;
        let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
        let mut nullspace = Matrix::zeros(&f, free.len(), a.cols);
        for (bi, &fc) in free.iter().enumerate() {
            nullspace.set(bi, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                nullspace.set(bi, pc, f.neg_raw(a.at(pr, fc)));
            }
        }
        Reduction {
            rank,
            rref: a,
            nullspace,
        }
    }

    pub fn rank(&self) -> usize {
        // plain forward elimination; cheaper than full reduce
        let f = &self.field;
        let mut a = self.clone();
        let mut row = 0usize;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(piv) = (row..a.rows).find(|&r| a.at(r, col) != 0) else {
                continue;
            };
            if piv != row {
                for j in col..a.cols {
                    let t = a.at(piv, j);
                    a.set(piv, j, a.at(row, j));
                    a.set(row, j, t);
                }
            }
            let inv = f.inv_raw(a.at(row, col)).expect("pivot nonzero");
            for r in row + 1..a.rows {
                if a.at(r, col) != 0 {
                    let factor = f.mul_raw(a.at(r, col), inv);
                    for j in col..a.cols {
                        let sub = f.mul_raw(factor, a.at(row, j));
                        a.set(r, j, f.sub_raw(a.at(r, j), sub));
                    }
                }
            }
            row += 1;
        }
        row
    }

    /// Basis of the right null space, as rows.
    pub fn nullspace(&self) -> Matrix {
        self.reduce().nullspace
    }

    pub fn determinant(&self) -> Result<FieldElement, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let f = &self.field;
        let n = self.rows;
        let mut a = self.clone();
        let mut det = f.one().value();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a.at(r, col) != 0) else {
                return Ok(f.zero());
            };
            if piv != col {
                for j in 0..n {
                    let t = a.at(piv, j);
                    a.set(piv, j, a.at(col, j));
                    a.set(col, j, t);
                }
                det = f.neg_raw(det);
            }
            let pivot = a.at(col, col);
            det = f.mul_raw(det, pivot);
            let inv = f.inv_raw(pivot).expect("pivot nonzero");
            for r in col + 1..n {
                if a.at(r, col) != 0 {
                    let factor = f.mul_raw(a.at(r, col), inv);
                    for j in col..n {
                        let sub = f.mul_raw(factor, a.at(col, j));
                        a.set(r, j, f.sub_raw(a.at(r, j), sub));
                    }
                }
            }
        }
        f.element(det).map_err(Into::into)
    }

    /// Solve `M x = b` for a column vector.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Solve, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix has {} rows but right-hand side has {} entries",
                self.rows,
                b.len()
            )));
        }
        for e in b {
            if e.field() != &self.field {
                return Err(GfError::FieldMismatch.into());
            }
        }
        // reduce the augmented matrix
        let mut aug = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j));
            }
            aug.set(i, self.cols, b[i].value());
        }
        let red = aug.reduce();
        // inconsistent iff some pivot sits in the augmented column, i.e. a
        // row of the rref is zero on the left with nonzero last entry
        for i in 0..self.rows {
            let lhs_zero = (0..self.cols).all(|j| red.rref.at(i, j) == 0);
            if lhs_zero && red.rref.at(i, self.cols) != 0 {
                return Ok(Solve::Inconsistent);
            }
        }
        // particular solution: read off pivot columns
        let mut x = vec![0u64; self.cols];
        let mut row = 0usize;
        for col in 0..self.cols {
            if row < self.rows && red.rref.at(row, col) == 1
                && (0..col).all(|j| red.rref.at(row, j) == 0)
            {
                x[col] = red.rref.at(row, self.cols);
                row += 1;
            }
        }
        let particular: Vec<FieldElement> = x
            .iter()
            .map(|&v| self.field.element(v).expect("reduced"))
            .collect();
        let ns = self.reduce().nullspace;
        if ns.rows == 0 {
            Ok(Solve::Unique(particular))
        } else {
            Ok(Solve::Underdetermined {
                particular,
                nullspace: ns,
            })
        }
    }
}

/// Vandermonde matrix: entry (i, j) = points[j]^i, i from 0.
pub fn vandermonde(points: &[FieldElement], nrows: usize) -> Result<Matrix, LinalgError> {
    if points.is_empty() {
        return Err(LinalgError::DimensionMismatch(
            "vandermonde needs at least one point".into(),
        ));
    }
    let field = points[0].field().clone();
    for p in points {
        if p.field() != &field {
            return Err(GfError::FieldMismatch.into());
        }
    }
    if !all_distinct(points) {
        return Err(LinalgError::RepeatedPoints);
    }
    let mut m = Matrix::zeros(&field, nrows, points.len());
    for (j, pt) in points.iter().enumerate() {
        let mut acc = 1u64;
        for i in 0..nrows {
            m.set(i, j, acc);
            acc = field.mul_raw(acc, pt.value());
        }
    }
    Ok(m)
}

/// Cauchy matrix: entry (i, j) = 1 / (xs[i] - ys[j]).
pub fn cauchy(xs: &[FieldElement], ys: &[FieldElement]) -> Result<Matrix, LinalgError> {
    if xs.is_empty() || ys.is_empty() {
        return Err(LinalgError::DimensionMismatch(
            "cauchy needs nonempty point sets".into(),
        ));
    }
    let field = xs[0].field().clone();
    for p in xs.iter().chain(ys) {
        if p.field() != &field {
            return Err(GfError::FieldMismatch.into());
        }
    }
    if !all_distinct(xs) || !all_distinct(ys) {
        return Err(LinalgError::CauchyOverlap);
    }
    if xs
        .iter()
        .any(|x| ys.iter().any(|y| x.value() == y.value()))
    {
        return Err(LinalgError::CauchyOverlap);
    }
    let mut m = Matrix::zeros(&field, xs.len(), ys.len());
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            let diff = field.sub_raw(x.value(), y.value());
            m.set(i, j, field.inv_raw(diff).expect("points disjoint"));
        }
    }
    Ok(m)
}

fn all_distinct(points: &[FieldElement]) -> bool {
    let mut vals: Vec<u64> = points.iter().map(|p| p.value()).collect();
    vals.sort_unstable();
    vals.windows(2).all(|w| w[0] != w[1])
}

// ---- text serialisation (used by the CLI verify subcommands) -----------

impl Matrix {
    /// Text form: first line `rows cols field-descriptor`, then row-major
    /// packed entries separated by whitespace.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.rows, self.cols, self.field.descriptor());
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Matrix, LinalgError> {
        let mut tokens = text.split_whitespace();
        let bad =
            |what: &str| LinalgError::DimensionMismatch(format!("matrix text: missing {what}"));
        let rows: usize = tokens
            .next()
            .ok_or_else(|| bad("row count"))?
            .parse()
            .map_err(|_| bad("row count"))?;
        let cols: usize = tokens
            .next()
            .ok_or_else(|| bad("column count"))?
            .parse()
            .map_err(|_| bad("column count"))?;
        let field = Field::from_descriptor(tokens.next().ok_or_else(|| bad("field descriptor"))?)?;
        let mut values = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            let v: u64 = tokens
                .next()
                .ok_or_else(|| bad("matrix entry"))?
                .parse()
                .map_err(|_| bad("matrix entry"))?;
            values.push(v);
        }
        Matrix::from_values(&field, rows, cols, &values)
    }
}
