//! Degree-2/3 extension towers F_{q^t} over a base field F_q, represented
//! over the prime field with an explicit ring embedding of the base.
//!
//! The extension is a plain [`Field`] of order q^t (so all scalar machinery
//! applies unchanged); the [`Extension`] handle carries the embedding
//! F_q -> F_{q^t}, the distinguished root `xi` of the chosen degree-t
//! modulus over the base, and an exact decomposition of extension elements
//! on the basis {1, xi, ..., xi^(t-1)} over the embedded base field.

use super::{Field, FieldElement, GfError};

/// A base field together with a degree-t extension and the embedding data.
pub struct Extension {
    base: Field,
    ext: Field,
    degree: u32,
    /// images of the base generators x^i, i in 0..m, as extension values
    rho_powers: Vec<u64>,
    /// root of the degree-t modulus over the base, as an extension value
    xi: u64,
    /// monic degree-t modulus over the base, most-significant first (base values)
    modulus_over_base: Vec<u64>,
    /// inverse of the GF(p)-linear basis matrix, row-major, size (mt)^2
    decomp_inv: Vec<u64>,
}

impl Extension {
    /// Extend `base` by an irreducible degree-t polynomial. When `modulus`
    /// is omitted the canonically first irreducible (coefficients scanned
    /// most-significant first in element order) is used. Only t = 2 and
    /// t = 3 are supported; irreducibility of those degrees is exactly the
    /// absence of roots in the base field.
    pub fn new(
        base: &Field,
        degree: u32,
        modulus: Option<&[FieldElement]>,
    ) -> Result<Extension, GfError> {
        if !(2..=3).contains(&degree) {
            return Err(GfError::UnsupportedExtensionDegree(degree));
        }
        let t = degree as usize;
        let q = base.q();

        let modulus_over_base: Vec<u64> = match modulus {
            Some(coeffs) => {
                if coeffs.len() != t + 1 {
                    return Err(GfError::BadModulus {
                        expected: degree,
                        p: base.p(),
                    });
                }
                for c in coeffs {
                    if c.field() != base {
                        return Err(GfError::FieldMismatch);
                    }
                }
                if coeffs[0].value() != 1 {
                    return Err(GfError::BadModulus {
                        expected: degree,
                        p: base.p(),
                    });
                }
                let vals: Vec<u64> = coeffs.iter().map(|c| c.value()).collect();
                if has_root_over(base, &vals) {
                    return Err(GfError::ReducibleModulus(q));
                }
                vals
            }
            None => canonical_modulus_over(base, t),
        };

        let ext = Field::new(base.p(), base.m() * degree)?;

        // rho: canonically first root in the extension of the base modulus,
        // which has prime-subfield coefficients.
        let base_mod_prime: Vec<u64> = base.modulus_msb().to_vec();
        let rho = first_root(&ext, &base_mod_prime)
            .expect("base modulus splits in the extension field");
        let m = base.m() as usize;
        let mut rho_powers = Vec::with_capacity(m);
        let mut acc = 1u64;
        for _ in 0..m {
            rho_powers.push(acc);
            acc = ext.mul_raw(acc, rho);
        }

        let mut tower = Extension {
            base: base.clone(),
            ext,
            degree,
            rho_powers,
            xi: 0,
            modulus_over_base,
            decomp_inv: Vec::new(),
        };

        // xi: canonically first root in the extension of the embedded modulus
        let embedded: Vec<u64> = tower
            .modulus_over_base
            .iter()
            .map(|&c| tower.embed_raw(c))
            .collect();
        tower.xi = first_root(&tower.ext, &embedded)
            .expect("irreducible modulus over the base splits in the extension");
        debug_assert_eq!(tower.min_poly_degree_raw(tower.xi), degree);

        tower.decomp_inv = tower.build_decomposition()?;
        Ok(tower)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The distinguished root of the modulus over the base.
    pub fn xi(&self) -> FieldElement {
        self.ext.element(self.xi).expect("xi is in range")
    }

    /// Modulus over the base field, most-significant first.
    pub fn modulus_over_base(&self) -> Vec<FieldElement> {
        self.modulus_over_base
            .iter()
            .map(|&v| self.base.element(v).expect("in range"))
            .collect()
    }

    fn embed_raw(&self, v: u64) -> u64 {
        // v's base-p digits are prime-subfield scalars; prime-subfield
        // values coincide in both representations.
        let p = self.base.p();
        let mut out = 0u64;
        let mut rest = v;
        for rp in &self.rho_powers {
            let digit = rest % p;
            rest /= p;
            if digit != 0 {
                out = self.ext.add_raw(out, self.ext.mul_raw(digit, *rp));
            }
        }
        out
    }

    /// Injective ring embedding of the base field into the extension.
    pub fn embed(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        if a.field() != &self.base {
            return Err(GfError::FieldMismatch);
        }
        self.ext.element(self.embed_raw(a.value()))
    }

    fn min_poly_degree_raw(&self, v: u64) -> u32 {
        let q = self.base.q();
        for d in 1..=self.degree {
            if !self.degree.is_multiple_of(d) {
                continue;
            }
            let e = q.pow(d); // q^d <= q^t = ext order, fits
            if self.ext.pow_raw(v, e) == v {
                return d;
            }
        }
        unreachable!("minimal polynomial degree divides the extension degree")
    }

    /// Degree over the base of the minimal polynomial of an extension element.
    pub fn min_poly_degree(&self, v: &FieldElement) -> Result<u32, GfError> {
        if v.field() != &self.ext {
            return Err(GfError::FieldMismatch);
        }
        Ok(self.min_poly_degree_raw(v.value()))
    }

    fn build_decomposition(&self) -> Result<Vec<u64>, GfError> {
        let p = self.base.p();
        let m = self.base.m() as usize;
        let t = self.degree as usize;
        let n = m * t;
        // columns: digits of xi^s * rho^i over GF(p)
        let mut cols = Vec::with_capacity(n);
        let mut xi_pow = 1u64;
        for _ in 0..t {
            for i in 0..m {
                let v = self.ext.mul_raw(xi_pow, self.rho_powers[i]);
                cols.push(digits(v, p, n));
            }
            xi_pow = self.ext.mul_raw(xi_pow, self.xi);
        }
        // invert the n x n matrix over GF(p); columns are basis vectors
        let mut a = vec![0u64; n * n];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..n {
                a[i * n + j] = col[i];
            }
        }
        invert_mod_p(&mut a, n, p).ok_or(GfError::ReducibleModulus(self.base.q()))
    }

    /// Coordinates of `v` on the basis {1, xi, .., xi^(t-1)} over the base:
    /// returns base elements c_0..c_(t-1) with v = sum embed(c_s) xi^s.
    pub fn decompose(&self, v: &FieldElement) -> Result<Vec<FieldElement>, GfError> {
        if v.field() != &self.ext {
            return Err(GfError::FieldMismatch);
        }
        let p = self.base.p();
        let m = self.base.m() as usize;
        let t = self.degree as usize;
        let n = m * t;
        let d = digits(v.value(), p, n);
        let mut coords = vec![0u64; n];
        for i in 0..n {
            let mut acc = 0u64;
            for j in 0..n {
                acc = (acc + self.decomp_inv[i * n + j] * d[j]) % p;
            }
            coords[i] = acc;
        }
        let mut out = Vec::with_capacity(t);
        for s in 0..t {
            let val = coords[s * m..(s + 1) * m]
                .iter()
                .rev()
                .fold(0u64, |acc, &c| acc * p + c);
            out.push(self.base.element(val)?);
        }
        Ok(out)
    }

    /// Inverse of [`Extension::decompose`].
    pub fn compose(&self, coords: &[FieldElement]) -> Result<FieldElement, GfError> {
        if coords.len() != self.degree as usize {
            return Err(GfError::FieldMismatch);
        }
        let mut acc = 0u64;
        let mut xi_pow = 1u64;
        for c in coords {
            if c.field() != &self.base {
                return Err(GfError::FieldMismatch);
            }
            let term = self.ext.mul_raw(self.embed_raw(c.value()), xi_pow);
            acc = self.ext.add_raw(acc, term);
            xi_pow = self.ext.mul_raw(xi_pow, self.xi);
        }
        self.ext.element(acc)
    }
}

fn digits(mut v: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
    out
}

/// Does the polynomial (values over `field`, msb-first) have a root in `field`?
fn has_root_over(field: &Field, coeffs_msb: &[u64]) -> bool {
    (0..field.q()).any(|x| eval_raw(field, coeffs_msb, x) == 0)
}

fn eval_raw(field: &Field, coeffs_msb: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs_msb {
        acc = field.add_raw(field.mul_raw(acc, x), c);
    }
    acc
}

/// Canonically first root of a polynomial (msb-first values) in `field`.
fn first_root(field: &Field, coeffs_msb: &[u64]) -> Option<u64> {
    (0..field.q()).find(|&x| eval_raw(field, coeffs_msb, x) == 0)
}

/// Canonically first monic irreducible of degree t over an arbitrary base
/// field, for t in {2, 3}: scan non-leading coefficients most-significant
/// first in element order and take the first polynomial without a root.
fn canonical_modulus_over(base: &Field, t: usize) -> Vec<u64> {
    let q = base.q();
    let mut digits = vec![0u64; t];
    loop {
        let mut f = Vec::with_capacity(t + 1);
        f.push(1);
        f.extend_from_slice(&digits);
        if !has_root_over(base, &f) {
            return f;
        }
        let mut i = t;
        loop {
            assert!(i > 0, "irreducible polynomials of every degree exist");
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// In-place Gauss-Jordan inverse of an n x n matrix over GF(p).
fn invert_mod_p(a: &mut [u64], n: usize, p: u64) -> Option<Vec<u64>> {
    let mut inv = vec![0u64; n * n];
    for i in 0..n {
        inv[i * n + i] = 1;
    }
    let modinv = |x: u64| -> u64 {
        // Fermat inverse mod p
        let mut acc = 1u64;
        let mut b = x % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let pinv = modinv(a[col * n + col]);
        for j in 0..n {
            a[col * n + j] = a[col * n + j] * pinv % p;
            inv[col * n + j] = inv[col * n + j] * pinv % p;
        }
        for r in 0..n {
            if r == col || a[r * n + col] == 0 {
                continue;
            }
            let factor = a[r * n + col];
            for j in 0..n {
                let sub = factor * a[col * n + j] % p;
                a[r * n + j] = (a[r * n + j] + p - sub) % p;
                let sub2 = factor * inv[col * n + j] % p;
                inv[r * n + j] = (inv[r * n + j] + p - sub2) % p;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn gf16_cubic_tower() {
        let base = Field::new(2, 4).unwrap();
        let tower = Extension::new(&base, 3, None).unwrap();
        assert_eq!(tower.ext().q(), 1 << 12);

        // embedding preserves the identities
        assert_eq!(tower.embed(&base.one()).unwrap(), tower.ext().one());
        assert_eq!(tower.embed(&base.zero()).unwrap(), tower.ext().zero());

        // xi has minimal polynomial of degree 3 over the base
        assert_eq!(tower.min_poly_degree(&tower.xi()).unwrap(), 3);
        // embedded base elements have degree 1
        let a = tower.embed(&base.element(7).unwrap()).unwrap();
        assert_eq!(tower.min_poly_degree(&a).unwrap(), 1);
    }

    #[test]
    fn embedding_is_ring_homomorphism() {
        let base = Field::new(2, 4).unwrap();
        let tower = Extension::new(&base, 3, None).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let a = base.element(rng.gen_range(0..base.q())).unwrap();
            let b = base.element(rng.gen_range(0..base.q())).unwrap();
            let ea = tower.embed(&a).unwrap();
            let eb = tower.embed(&b).unwrap();
            assert_eq!(tower.embed(&(&a * &b)).unwrap(), &ea * &eb);
            assert_eq!(tower.embed(&(&a + &b)).unwrap(), &ea + &eb);
        }
    }

    #[test]
    fn embedding_is_injective() {
        let base = Field::new(2, 4).unwrap();
        let tower = Extension::new(&base, 3, None).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for a in base.elements() {
            assert!(seen.insert(tower.embed(&a).unwrap().value()));
        }
    }

    #[test]
    fn decompose_compose_round_trip() {
        let base = Field::new(2, 4).unwrap();
        let tower = Extension::new(&base, 3, None).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let v = tower.ext().element(rng.gen_range(0..tower.ext().q())).unwrap();
            let coords = tower.decompose(&v).unwrap();
            assert_eq!(coords.len(), 3);
            assert_eq!(tower.compose(&coords).unwrap(), v);
        }
        // xi itself decomposes as (0, 1, 0)
        let coords = tower.decompose(&tower.xi()).unwrap();
        assert_eq!(
            coords.iter().map(|c| c.value()).collect::<Vec<_>>(),
            vec![0, 1, 0]
        );
    }

    #[test]
    fn explicit_reducible_modulus_rejected() {
        let base = Field::prime(7).unwrap();
        // x^2 - 2 has roots 3, 4 mod 7
        let coeffs = vec![
            base.one(),
            base.zero(),
            base.element(5).unwrap(),
        ];
        assert!(matches!(
            Extension::new(&base, 2, Some(&coeffs)),
            Err(GfError::ReducibleModulus(7))
        ));
        // x^2 - 3 is irreducible mod 7
        let good = vec![base.one(), base.zero(), base.element(4).unwrap()];
        let tower = Extension::new(&base, 2, Some(&good)).unwrap();
        assert_eq!(tower.ext().q(), 49);
        // xi^2 = 3 under the embedding
        let xi2 = tower.xi().pow(2).unwrap();
        assert_eq!(xi2, tower.embed(&base.element(3).unwrap()).unwrap());
    }

    #[test]
    fn quadratic_tower_of_prime_field() {
        let base = Field::prime(13).unwrap();
        let tower = Extension::new(&base, 2, None).unwrap();
        assert_eq!(tower.ext().q(), 169);
        assert_eq!(tower.min_poly_degree(&tower.xi()).unwrap(), 2);
        for a in base.elements() {
            for b in base.elements() {
                if a.value() < 4 && b.value() < 4 {
                    let ea = tower.embed(&a).unwrap();
                    let eb = tower.embed(&b).unwrap();
                    assert_eq!(tower.embed(&(&a * &b)).unwrap(), &ea * &eb);
                }
            }
        }
    }
}
