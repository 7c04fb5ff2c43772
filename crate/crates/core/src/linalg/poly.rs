//! Univariate polynomials over a field, elementary symmetric functions,
//! exhaustive root finding, and determinants of pencils `M0 + X*M1`.

use super::{LinalgError, Matrix};
use crate::gf::{Field, FieldElement, GfError};

/// Cofactor expansion of pencil determinants is factorial in the size;
/// the constructions never need more than this.
pub const PENCIL_SIZE_LIMIT: usize = 8;

/// Polynomial with coefficient index = degree. The zero polynomial has an
/// empty coefficient vector and `degree() == None` (the "minus infinity"
/// sentinel), never a fake numeric degree.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    /// packed coefficient values, least-significant first, trimmed
    coeffs: Vec<u64>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::from_packed(field, vec![1])
    }

    /// The monomial x.
    pub fn x(field: &Field) -> Poly {
        Poly::from_packed(field, vec![0, 1])
    }

    pub fn constant(c: &FieldElement) -> Poly {
        Poly::from_packed(c.field(), vec![c.value()])
    }

    pub(crate) fn from_packed(field: &Field, mut coeffs: Vec<u64>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From coefficients, least-significant first.
    pub fn from_coeffs(field: &Field, coeffs: &[FieldElement]) -> Result<Poly, LinalgError> {
        for c in coeffs {
            if c.field() != field {
                return Err(GfError::FieldMismatch.into());
            }
        }
        Ok(Poly::from_packed(
            field,
            coeffs.iter().map(|c| c.value()).collect(),
        ))
    }

    /// Monic product of (x - r) over the given roots.
    pub fn from_roots(field: &Field, roots: &[FieldElement]) -> Result<Poly, LinalgError> {
        let mut acc = Poly::one(field);
        for r in roots {
            if r.field() != field {
                return Err(GfError::FieldMismatch.into());
            }
            let lin = Poly::from_packed(field, vec![field.neg_raw(r.value()), 1]);
            acc = acc.mul(&lin);
        }
        Ok(acc)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        let v = self.coeffs.get(i).copied().unwrap_or(0);
        self.field.element(v).expect("reduced")
    }

    pub(crate) fn coeff_raw(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field, "field mismatch in poly add");
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self
                .field
                .add_raw(self.coeff_raw(i), other.coeff_raw(i));
        }
        Poly::from_packed(&self.field, out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert!(self.field == other.field, "field mismatch in poly mul");
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.field.add_raw(out[i + j], self.field.mul_raw(a, b));
            }
        }
        Poly::from_packed(&self.field, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        assert!(c.field() == &self.field, "field mismatch in poly scale");
        let out = self
            .coeffs
            .iter()
            .map(|&a| self.field.mul_raw(a, c.value()))
            .collect();
        Poly::from_packed(&self.field, out)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.field, "field mismatch in poly eval");
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = self
                .field
                .add_raw(self.field.mul_raw(acc, x.value()), c);
        }
        self.field.element(acc).expect("reduced")
    }
}

/// Elementary symmetric function sigma_t of a multiset, by the stable
/// one-element-at-a-time recurrence. sigma_0 = 1; sigma_t = 0 for t > |S|.
pub fn elementary_symmetric(field: &Field, elems: &[FieldElement], t: usize) -> FieldElement {
    let all = elementary_symmetric_all(field, elems);
    all.get(t).cloned().unwrap_or_else(|| field.zero())
}

/// All sigma_0..sigma_n of a multiset at once.
pub fn elementary_symmetric_all(field: &Field, elems: &[FieldElement]) -> Vec<FieldElement> {
    let mut sig = vec![0u64; elems.len() + 1];
    sig[0] = 1;
    for (k, e) in elems.iter().enumerate() {
        assert!(e.field() == field, "field mismatch in symmetric function");
        let x = e.value();
        // sigma_t(S + x) = sigma_t(S) + x * sigma_(t-1)(S), descending t
        for t in (1..=k + 1).rev() {
            sig[t] = field.add_raw(sig[t], field.mul_raw(x, sig[t - 1]));
        }
    }
    sig.into_iter()
        .map(|v| field.element(v).expect("reduced"))
        .collect()
}

/// The monic polynomial whose roots have the given elementary symmetric
/// values sigma_1..sigma_k: x^k - s1 x^(k-1) + s2 x^(k-2) - ...
pub fn monic_from_sigmas(field: &Field, sigmas: &[FieldElement]) -> Poly {
    let k = sigmas.len();
    let mut coeffs = vec![0u64; k + 1];
    coeffs[k] = 1;
    for (t, s) in sigmas.iter().enumerate() {
        let mut v = s.value();
        if (t + 1) % 2 == 1 {
            v = field.neg_raw(v);
        }
        coeffs[k - (t + 1)] = v;
    }
    Poly::from_packed(field, coeffs)
}

/// All roots of a nonzero polynomial lying in its field, found by
/// exhaustive evaluation (set semantics, ascending element order).
pub fn roots_in_field(f: &Poly) -> Result<Vec<FieldElement>, LinalgError> {
    if f.is_zero() {
        return Err(LinalgError::ZeroPolynomial);
    }
    let field = f.field().clone();
    Ok(field
        .elements()
        .filter(|x| f.eval(x).is_zero())
        .collect())
}

/// Determinant of the pencil `M0 + X*M1` as a polynomial in X, by cofactor
/// expansion over the polynomial ring (exact; sizes are tiny by design).
pub fn pencil_determinant(m0: &Matrix, m1: &Matrix) -> Result<Poly, LinalgError> {
    if m0.rows() != m0.cols() {
        return Err(LinalgError::NotSquare {
            rows: m0.rows(),
            cols: m0.cols(),
        });
    }
    if m0.rows() != m1.rows() || m0.cols() != m1.cols() {
        return Err(LinalgError::DimensionMismatch(
            "pencil matrices must have identical shapes".into(),
        ));
    }
    if m0.field() != m1.field() {
        return Err(GfError::FieldMismatch.into());
    }
    let n = m0.rows();
    if n > PENCIL_SIZE_LIMIT {
        return Err(LinalgError::PencilTooLarge {
            size: n,
            limit: PENCIL_SIZE_LIMIT,
        });
    }
    let field = m0.field().clone();
    if n == 0 {
        return Ok(Poly::one(&field));
    }
    let entries: Vec<Poly> = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            Poly::from_packed(&field, vec![m0.at(i, j), m1.at(i, j)])
        })
        .collect();
    Ok(det_poly(&field, &entries, n, &(0..n).collect::<Vec<_>>()))
}

/// Laplace expansion along the top remaining row; `cols` names the live
/// columns of the n x n entry grid, rows n-|cols|..n are still in play.
fn det_poly(field: &Field, entries: &[Poly], n: usize, cols: &[usize]) -> Poly {
    let row = n - cols.len();
    if cols.len() == 1 {
        return entries[row * n + cols[0]].clone();
    }
    let mut acc = Poly::zero(field);
    for (pos, &col) in cols.iter().enumerate() {
        let e = &entries[row * n + col];
        if e.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&c| c != col).collect();
        let minor = det_poly(field, entries, n, &sub_cols);
        let term = e.mul(&minor);
        if pos % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.add(&term.scale(&-field.one()));
        }
    }
    acc
}
