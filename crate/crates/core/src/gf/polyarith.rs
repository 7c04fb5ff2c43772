//! Polynomial arithmetic over prime fields GF(p), used for modulus
//! validation and canonical-modulus search. Coefficient vectors are
//! least-significant first and kept trimmed.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn deg(v: &[u64]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    trim(&mut out);
    out
}

fn modinv_p(a: u64, p: u64) -> u64 {
    // Fermat; p prime, a != 0 mod p
    powmod_p(a % p, p - 2, p)
}

fn powmod_p(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Remainder of `a` modulo `f` (f nonzero, any leading coefficient).
fn pmod(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let fd = deg(f).expect("modulus polynomial must be nonzero");
    let lead_inv = modinv_p(f[fd], p);
    let mut r = a.to_vec();
    trim(&mut r);
    while let Some(rd) = deg(&r) {
        if rd < fd {
            break;
        }
        let c = r[rd] * lead_inv % p;
        let shift = rd - fd;
        for j in 0..=fd {
            let sub = c * f[j] % p;
            r[j + shift] = (r[j + shift] + p - sub) % p;
        }
        trim(&mut r);
    }
    r
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = pmod(&x, &y, p);
        x = y;
        y = r;
    }
    // normalise to monic
    if let Some(d) = deg(&x) {
        let inv = modinv_p(x[d], p);
        for c in x.iter_mut() {
            *c = *c * inv % p;
        }
    }
    x
}

fn pmodpow(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = pmod(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = pmod(&pmul(&acc, &b, p), f, p);
        }
        b = pmod(&pmul(&b, &b, p), f, p);
        e >>= 1;
    }
    acc
}

/// x^(p^k) mod f, via k successive Frobenius powers.
fn frobenius_power(k: u32, f: &[u64], p: u64) -> Vec<u64> {
    let mut h = vec![0u64, 1]; // x
    for _ in 0..k {
        h = pmodpow(&h, p, f, p);
    }
    h
}

/// Exact irreducibility over GF(p) for a monic polynomial of degree >= 1:
/// x^(p^d) = x mod f, and gcd(x^(p^(d/l)) - x, f) = 1 for every prime l | d.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = match deg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if d == 1 {
        return true;
    }
    let top = frobenius_power(d as u32, f, p);
    // top must equal x
    let x = pmod(&[0, 1], f, p);
    if top != x {
        return false;
    }
    for l in prime_factors(d as u64) {
        let h = frobenius_power((d as u64 / l) as u32, f, p);
        // gcd(h - x, f) must be 1
        let mut diff = vec![0u64; h.len().max(2)];
        for (i, &c) in h.iter().enumerate() {
            diff[i] = c;
        }
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = pgcd(&diff, f, p);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m over GF(p):
/// candidates are ordered by their non-leading coefficient vector read
/// most-significant first.
pub(crate) fn canonical_modulus(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    if m == 1 {
        return vec![0, 1]; // x
    }
    let mut digits = vec![0u64; m]; // msb-first non-leading coefficients
    loop {
        let mut f = vec![0u64; m + 1];
        f[m] = 1;
        for (i, &c) in digits.iter().enumerate() {
            f[m - 1 - i] = c;
        }
        if is_irreducible(&f, p) {
            return f;
        }
        // increment msb-first digit vector
        let mut i = m;
        loop {
            assert!(i > 0, "no irreducible polynomial found, impossible");
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}
