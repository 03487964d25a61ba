//! Arithmetic for `GF(p^k)` field factors.
//!
//! Field elements are encoded as base-`p` digit strings: the value
//! `v = c_0 + c_1 p + ... + c_{k-1} p^{k-1}` stands for the polynomial
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` over `Z_p`. Multiplication
//! reduces modulo a fixed monic irreducible polynomial of degree `k`.

/// A `GF(p^k)` factor with its reduction modulus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GfArith {
    pub p: u64,
    pub k: u32,
    /// Coefficients `c_0..c_k` of the monic modulus, `c_k = 1`.
    pub modulus: Vec<u64>,
}

impl GfArith {
    /// Builds the field with the least monic irreducible modulus of
    /// degree `k` (least when its digit string is read as a base-`p`
    /// integer).
    pub fn new(p: u64, k: u32) -> Self {
        let modulus = least_irreducible(p, k);
        GfArith { p, k, modulus }
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.k)
    }

    /// The modulus encoded as a base-`p` integer (including the leading 1).
    pub fn modulus_value(&self) -> u64 {
        encode(&self.modulus, self.p)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let mut out = 0;
        let mut weight = 1;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.k {
            out += (a % self.p + b % self.p) % self.p * weight;
            a /= self.p;
            b /= self.p;
            weight *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let mut out = 0;
        let mut weight = 1;
        let mut a = a;
        for _ in 0..self.k {
            out += (self.p - a % self.p) % self.p * weight;
            a /= self.p;
            weight *= self.p;
        }
        out
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let pa = decode(a, self.p, self.k as usize);
        let pb = decode(b, self.p, self.k as usize);
        let mut prod = vec![0u64; 2 * self.k as usize];
        for (i, &ca) in pa.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in pb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ca * cb) % self.p;
            }
        }
        // Reduce modulo the monic modulus: x^k = -(low part).
        for d in (self.k as usize..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (j, &m) in self.modulus.iter().enumerate().take(self.k as usize) {
                let idx = d - self.k as usize + j;
                prod[idx] = (prod[idx] + c * (self.p - m % self.p)) % self.p;
            }
        }
        prod.truncate(self.k as usize);
        encode(&prod, self.p)
    }
}

fn decode(v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    let mut v = v;
    for c in out.iter_mut() {
        *c = v % p;
        v /= p;
    }
    out
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    let mut out = 0;
    for &c in coeffs.iter().rev() {
        out = out * p + c;
    }
    out
}

/// Degree of a coefficient vector, or None for the zero polynomial.
fn degree(poly: &[u64]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` modulo monic `m`, coefficients over `Z_p`.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let md = degree(m).expect("nonzero divisor");
    let mut r = a.to_vec();
    while let Some(rd) = degree(&r) {
        if rd < md {
            break;
        }
        let c = r[rd];
        for (j, &mj) in m.iter().enumerate().take(md + 1) {
            r[rd - md + j] = (r[rd - md + j] + c * (p - mj % p)) % p;
        }
    }
    r
}

fn is_zero(poly: &[u64]) -> bool {
    degree(poly).is_none()
}

/// Irreducibility by trial division over all monic polynomials of degree
/// `1..=k/2`; fine at the sizes this crate works with.
fn is_irreducible(poly: &[u64], p: u64, k: u32) -> bool {
    for d in 1..=(k / 2) {
        let count = p.pow(d);
        for low in 0..count {
            let mut div = decode(low, p, d as usize);
            div.push(1);
            if is_zero(&poly_rem(poly, &div, p)) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    for low in 0..p.pow(k) {
        let mut cand = decode(low, p, k as usize);
        cand.push(1);
        if is_irreducible(&cand, p, k) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of each degree exists over Z_p")
}
