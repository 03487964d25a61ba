//! Ring presentations: products of `Z_n` and `GF(p^k)` base factors.

use super::RingError;
use serde::{Deserialize, Serialize};
use std::fmt;

/// One base factor of a ring presentation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum BaseSpec {
    /// The ring of integers modulo `n`, `n >= 2`.
    Zn(u64),
    /// The finite field with `p^k` elements, `p` prime, `k >= 1`.
    Gf { p: u64, k: u32 },
}

impl BaseSpec {
    pub fn size(&self) -> u64 {
        match *self {
            BaseSpec::Zn(n) => n,
            BaseSpec::Gf { p, k } => p.pow(k),
        }
    }

    pub fn validate(&self) -> Result<(), RingError> {
        match *self {
            BaseSpec::Zn(n) if n < 2 => Err(RingError::ModulusTooSmall(n)),
            BaseSpec::Zn(_) => Ok(()),
            BaseSpec::Gf { k: 0, .. } => Err(RingError::ZeroDegree),
            BaseSpec::Gf { p, .. } if !is_prime(p) => Err(RingError::NotPrime(p)),
            BaseSpec::Gf { .. } => Ok(()),
        }
    }
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BaseSpec::Zn(n) => write!(f, "Z{n}"),
            BaseSpec::Gf { p, k } => write!(f, "GF({})", p.pow(k)),
        }
    }
}

/// A finite commutative ring presented as an ordered product of base factors.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RingSpec {
    pub factors: Vec<BaseSpec>,
}

impl RingSpec {
    pub fn new(factors: Vec<BaseSpec>) -> Self {
        RingSpec { factors }
    }

    pub fn zn(n: u64) -> Self {
        RingSpec::new(vec![BaseSpec::Zn(n)])
    }

    pub fn size(&self) -> u64 {
        self.factors.iter().map(|f| f.size()).product()
    }

    pub fn validate(&self, size_cap: u64) -> Result<(), RingError> {
        if self.factors.is_empty() {
            return Err(RingError::EmptySpec);
        }
        let mut size: u64 = 1;
        for f in &self.factors {
            f.validate()?;
            size = size.saturating_mul(f.size());
            if size > size_cap {
                return Err(RingError::SizeCapExceeded {
                    size,
                    cap: size_cap,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingSpec {
    /// Canonical text form, e.g. `Z2 x GF(4)`. Round-trips through the
    /// CLI grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

/// One factor of the canonical local decomposition of a ring spec.
///
/// Every `Z_n` splits into `Z_{p^e}` pieces; `GF(p^k)` is already local.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LocalFactor {
    /// A field of the given order.
    Field { order: u64 },
    /// `Z_{p^e}` with `e >= 2`: local but not a field.
    ZPrimePower { p: u64, e: u32 },
}

impl LocalFactor {
    pub fn is_field(&self) -> bool {
        matches!(self, LocalFactor::Field { .. })
    }

    pub fn size(&self) -> u64 {
        match *self {
            LocalFactor::Field { order } => order,
            LocalFactor::ZPrimePower { p, e } => p.pow(e),
        }
    }

    /// A ring spec presenting this local factor on its own.
    pub fn as_spec(&self) -> RingSpec {
        match *self {
            LocalFactor::Field { order } => {
                let (p, k) = prime_power(order).expect("field order is a prime power");
                if k == 1 {
                    RingSpec::new(vec![BaseSpec::Zn(p)])
                } else {
                    RingSpec::new(vec![BaseSpec::Gf { p, k }])
                }
            }
            LocalFactor::ZPrimePower { p, e } => RingSpec::new(vec![BaseSpec::Zn(p.pow(e))]),
        }
    }
}

/// Canonical multiset (sorted list) of local factors of a spec.
pub fn local_profile(spec: &RingSpec) -> Vec<LocalFactor> {
    let mut out = Vec::new();
    for f in &spec.factors {
        match *f {
            BaseSpec::Gf { p, k } => out.push(LocalFactor::Field { order: p.pow(k) }),
            BaseSpec::Zn(n) => {
                for (p, e) in factorize(n) {
                    if e == 1 {
                        out.push(LocalFactor::Field { order: p });
                    } else {
                        out.push(LocalFactor::ZPrimePower { p, e });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// `R` is local iff its profile has a single local factor.
pub fn profile_is_local(profile: &[LocalFactor]) -> bool {
    profile.len() == 1
}

/// `R ≅ Z2 x F` for some field `F` (including `F = Z2`).
pub fn profile_is_z2_times_field(profile: &[LocalFactor]) -> bool {
    profile.len() == 2
        && profile.iter().all(|f| f.is_field())
        && profile.iter().any(|f| f.size() == 2)
}

/// `R ≅ Z2 x Z2 x Z2`.
pub fn profile_is_z2_cubed(profile: &[LocalFactor]) -> bool {
    profile.len() == 3
        && profile
            .iter()
            .all(|f| *f == LocalFactor::Field { order: 2 })
}

/// `R ≅ F1 x F2` for fields `F1`, `F2`.
pub fn profile_is_two_fields(profile: &[LocalFactor]) -> bool {
    profile.len() == 2 && profile.iter().all(|f| f.is_field())
}

/// `R ≅ F x T` with `F` a field and `T` local.
pub fn profile_is_field_times_local(profile: &[LocalFactor]) -> bool {
    profile.len() == 2 && profile.iter().any(|f| f.is_field())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Decomposes `n = p^k` if it is a prime power, `n >= 2`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let (p, e) = factorize(n)[0];
    if p.pow(e) == n {
        Some((p, e))
    } else {
        None
    }
}

/// Prime factorization of `n >= 2` as `(p, exponent)` pairs, `p` ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 2);
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
