//! Finite commutative rings and the algebraic data the graphs depend on:
//! units, principal ideals, the ideal lattice, maximal ideals, the
//! Jacobson radical, and co-maximality.

mod poly;
mod spec;

pub use poly::GfArith;
pub use spec::{
    factorize, is_prime, local_profile, prime_power, profile_is_field_times_local,
    profile_is_local, profile_is_two_fields, profile_is_z2_cubed, profile_is_z2_times_field,
    BaseSpec, LocalFactor, RingSpec,
};

use crate::bits::BitSet;
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingError {
    #[error("ring spec must have at least one factor")]
    EmptySpec,
    #[error("Z modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("GF extension degree must be at least 1")]
    ZeroDegree,
    #[error("ring size {size} exceeds cap {cap}")]
    SizeCapExceeded { size: u64, cap: u64 },
    #[error("ideal lattice exceeds guard of {guard} ideals")]
    LatticeGuardExceeded { guard: usize },
    #[error("quotient ideal is not contained in the Jacobson radical")]
    IdealNotInRadical,
    #[error("cannot take the quotient by the whole ring")]
    QuotientByWholeRing,
}

/// Size caps and solver guards. All configurable; the defaults keep the
/// full verification sweep at desk scale.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub ring_size_cap: u64,
    pub lattice_guard: usize,
    /// Max vertices (after twin collapse) for the clique/coloring solvers.
    pub solver_guard: usize,
    /// Max vertices for retract/core-graph searches.
    pub retract_guard: usize,
    /// Max vertices for generic isomorphism backtracking.
    pub iso_guard: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            ring_size_cap: 4096,
            lattice_guard: 100_000,
            solver_guard: 64,
            retract_guard: 12,
            iso_guard: 16,
        }
    }
}

/// A ring element, identified by its canonical index in `0..size`.
///
/// For product rings the index is the mixed-radix rank of the component
/// tuple (first factor most significant), so index order is lexicographic
/// tuple order. Quotient rings index cosets by their least member.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ideal, stored as its sorted member set plus a recorded generating set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Ideal {
    pub members: Vec<Elem>,
    pub generators: Vec<Elem>,
}

impl Ideal {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    fn from_mask(mask: &BitSet, generators: Vec<Elem>) -> Ideal {
        Ideal {
            members: mask.iter_ones().map(|i| Elem(i as u32)).collect(),
            generators,
        }
    }

    pub fn member_mask(&self, size: usize) -> BitSet {
        let mut m = BitSet::new(size);
        for e in &self.members {
            m.set(e.index());
        }
        m
    }
}

/// Which maximal ideals contain a given element: bit `i` is set iff the
/// element lies in `maximal_ideals()[i]`.
///
/// Units have the empty signature, radical elements the full one, and two
/// elements are co-maximal exactly when their signatures are disjoint.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SSignature(pub u64);

impl SSignature {
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self, n_max: usize) -> bool {
        self.0 == full_mask(n_max)
    }

    pub fn is_disjoint(self, other: SSignature) -> bool {
        self.0 & other.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 != 0
    }
}

fn full_mask(n: usize) -> u64 {
    debug_assert!(n < 64);
    (1u64 << n) - 1
}

/// Per-factor arithmetic of a product ring.
#[derive(Clone, Debug)]
enum FactorArith {
    Zn(u64),
    Gf(GfArith),
}

impl FactorArith {
    fn size(&self) -> u64 {
        match self {
            FactorArith::Zn(n) => *n,
            FactorArith::Gf(gf) => gf.size(),
        }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        match self {
            FactorArith::Zn(n) => (a + b) % n,
            FactorArith::Gf(gf) => gf.add(a, b),
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        match self {
            FactorArith::Zn(n) => a * b % n,
            FactorArith::Gf(gf) => gf.mul(a, b),
        }
    }

    fn neg(&self, a: u64) -> u64 {
        match self {
            FactorArith::Zn(n) => (n - a) % n,
            FactorArith::Gf(gf) => gf.neg(a),
        }
    }

    fn is_unit(&self, a: u64) -> bool {
        match self {
            FactorArith::Zn(n) => gcd(a, *n) == 1,
            FactorArith::Gf(_) => a != 0,
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Clone, Debug)]
struct ProductBackend {
    factors: Vec<FactorArith>,
    /// weights[i] = product of the sizes of factors i+1.., so the index is
    /// the mixed-radix rank of the component tuple.
    weights: Vec<u64>,
    size: usize,
    /// Flattened decode table: components of element e at e*m..e*m+m.
    comps: Vec<u64>,
}

impl ProductBackend {
    fn new(spec: &RingSpec) -> ProductBackend {
        let factors: Vec<FactorArith> = spec
            .factors
            .iter()
            .map(|f| match *f {
                BaseSpec::Zn(n) => FactorArith::Zn(n),
                BaseSpec::Gf { p, k } => FactorArith::Gf(GfArith::new(p, k)),
            })
            .collect();
        let m = factors.len();
        let mut weights = vec![1u64; m];
        for i in (0..m.saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * factors[i + 1].size();
        }
        let size = (weights[0] * factors[0].size()) as usize;
        let mut comps = vec![0u64; size * m];
        for e in 0..size {
            let mut rem = e as u64;
            for i in 0..m {
                comps[e * m + i] = rem / weights[i];
                rem %= weights[i];
            }
        }
        ProductBackend {
            factors,
            weights,
            size,
            comps,
        }
    }

    #[inline]
    fn components(&self, e: usize) -> &[u64] {
        let m = self.factors.len();
        &self.comps[e * m..(e + 1) * m]
    }

    fn encode(&self, comps: &[u64]) -> usize {
        comps
            .iter()
            .zip(&self.weights)
            .map(|(c, w)| c * w)
            .sum::<u64>() as usize
    }

    fn zip_op(&self, a: usize, b: usize, f: impl Fn(&FactorArith, u64, u64) -> u64) -> usize {
        let ca = self.components(a);
        let cb = self.components(b);
        let mut out = 0u64;
        for i in 0..self.factors.len() {
            out += f(&self.factors[i], ca[i], cb[i]) * self.weights[i];
        }
        out as usize
    }
}

#[derive(Clone, Debug)]
struct QuotientBackend {
    parent: Arc<Backend>,
    /// Quotient index -> least parent element of the coset.
    rep: Vec<u32>,
    /// Parent element -> quotient index.
    coset_of: Vec<u32>,
    one: usize,
}

#[derive(Clone, Debug)]
enum Backend {
    Product(ProductBackend),
    Quotient(QuotientBackend),
}

impl Backend {
    fn size(&self) -> usize {
        match self {
            Backend::Product(p) => p.size,
            Backend::Quotient(q) => q.rep.len(),
        }
    }

    fn one(&self) -> usize {
        match self {
            Backend::Product(p) => {
                let ones: Vec<u64> = p.factors.iter().map(|_| 1).collect();
                p.encode(&ones)
            }
            Backend::Quotient(q) => q.one,
        }
    }

    fn add(&self, a: usize, b: usize) -> usize {
        match self {
            Backend::Product(p) => p.zip_op(a, b, |f, x, y| f.add(x, y)),
            Backend::Quotient(q) => {
                let sum = q.parent.add(q.rep[a] as usize, q.rep[b] as usize);
                q.coset_of[sum] as usize
            }
        }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match self {
            Backend::Product(p) => p.zip_op(a, b, |f, x, y| f.mul(x, y)),
            Backend::Quotient(q) => {
                let prod = q.parent.mul(q.rep[a] as usize, q.rep[b] as usize);
                q.coset_of[prod] as usize
            }
        }
    }

    fn neg(&self, a: usize) -> usize {
        match self {
            Backend::Product(p) => p.zip_op(a, a, |f, x, _| f.neg(x)),
            Backend::Quotient(q) => {
                let n = q.parent.neg(q.rep[a] as usize);
                q.coset_of[n] as usize
            }
        }
    }
}

/// A constructed ring with all algebraic caches populated.
///
/// Immutable after construction; safe for unrestricted concurrent reads.
#[derive(Clone, Debug)]
pub struct Ring {
    label: String,
    spec: Option<RingSpec>,
    backend: Backend,
    size: usize,
    one: Elem,
    limits: Limits,
    units: Vec<Elem>,
    unit_mask: BitSet,
    principal_masks: Vec<BitSet>,
    ideals: Vec<Ideal>,
    ideal_masks: Vec<BitSet>,
    maximal_ideals: Vec<Ideal>,
    radical: Ideal,
    radical_mask: BitSet,
    signatures: Vec<SSignature>,
}

impl Ring {
    /// Builds the ring described by `spec` with default [`Limits`].
    pub fn new(spec: RingSpec) -> Result<Ring, RingError> {
        Ring::with_limits(spec, Limits::default())
    }

    pub fn with_limits(spec: RingSpec, limits: Limits) -> Result<Ring, RingError> {
        spec.validate(limits.ring_size_cap)?;
        let backend = Backend::Product(ProductBackend::new(&spec));
        let label = spec.to_string();
        Ring::finish(backend, label, Some(spec), limits)
    }

    fn finish(
        backend: Backend,
        label: String,
        spec: Option<RingSpec>,
        limits: Limits,
    ) -> Result<Ring, RingError> {
        let size = backend.size();
        let one = Elem(backend.one() as u32);

        let (units, unit_mask) = compute_units(&backend, one.index());
        if size <= 512 {
            // Oracle: exhaustive inverse search must agree with the
            // componentwise unit rule.
            let by_search = units_by_inverse_search(&backend, one.index());
            assert_eq!(
                units.iter().map(|e| e.index()).collect::<Vec<_>>(),
                by_search,
                "unit criteria disagree in {label}"
            );
        }

        let principal_masks = compute_principal_masks(&backend, &unit_mask);
        let lattice_masks = ideal_lattice(&backend, &principal_masks, limits.lattice_guard)?;

        // Sort lattice by (size, member lex); both components are
        // determined by the masks so the order is reproducible.
        let mut members: Vec<Vec<usize>> = lattice_masks.iter().map(|m| m.to_vec()).collect();
        members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let ideal_masks: Vec<BitSet> = members
            .iter()
            .map(|m| {
                let mut bs = BitSet::new(size);
                for &i in m {
                    bs.set(i);
                }
                bs
            })
            .collect();
        let ideals: Vec<Ideal> = ideal_masks
            .iter()
            .map(|m| {
                let gens = canonical_generators(&backend, &principal_masks, m);
                Ideal::from_mask(m, gens)
            })
            .collect();

        // Maximal elements of the proper-ideal poset, sorted by member lex.
        let mut maximal_idx: Vec<usize> = (0..ideals.len())
            .filter(|&i| ideal_masks[i].count() < size)
            .filter(|&i| {
                !(0..ideals.len()).any(|j| {
                    j != i
                        && ideal_masks[j].count() < size
                        && ideal_masks[i].is_subset(&ideal_masks[j])
                })
            })
            .collect();
        maximal_idx.sort_by(|&a, &b| ideals[a].members.cmp(&ideals[b].members));
        let maximal_ideals: Vec<Ideal> = maximal_idx.iter().map(|&i| ideals[i].clone()).collect();
        let maximal_masks: Vec<BitSet> = maximal_idx
            .iter()
            .map(|&i| ideal_masks[i].clone())
            .collect();
        assert!(
            maximal_ideals.len() < 64,
            "more than 63 maximal ideals cannot occur under the size cap"
        );

        if let (Some(spec), Backend::Product(prod)) = (&spec, &backend) {
            // Oracle: the lattice-derived maximal ideals must match the
            // structural list built from the local factorization.
            let structural = structural_maximal_masks(spec, prod);
            let mut lhs = maximal_masks.clone();
            let mut rhs = structural;
            lhs.sort_by_key(|m| m.to_vec());
            rhs.sort_by_key(|m| m.to_vec());
            assert_eq!(
                lhs, rhs,
                "lattice and structural maximal ideals disagree in {label}"
            );
        }

        let mut radical_mask = BitSet::full(size);
        for m in &maximal_masks {
            radical_mask.intersect_with(m);
        }
        if size <= 512 {
            // Oracle: x is in the radical iff 1 + rx is a unit for all r.
            let by_test = radical_by_unit_test_impl(&backend, &unit_mask, one.index());
            assert_eq!(
                radical_mask.to_vec(),
                by_test,
                "radical criteria disagree in {label}"
            );
        }
        let radical_gens = canonical_generators(&backend, &principal_masks, &radical_mask);
        let radical = Ideal::from_mask(&radical_mask, radical_gens);

        let mut signatures = vec![SSignature(0); size];
        for (bit, mask) in maximal_masks.iter().enumerate() {
            for e in mask.iter_ones() {
                signatures[e].0 |= 1 << bit;
            }
        }

        Ok(Ring {
            label,
            spec,
            backend,
            size,
            one,
            limits,
            units,
            unit_mask,
            principal_masks,
            ideals,
            ideal_masks,
            maximal_ideals,
            radical,
            radical_mask,
            signatures,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The product presentation, if this ring was built from one
    /// (quotient rings have none).
    pub fn spec(&self) -> Option<&RingSpec> {
        self.spec.as_ref()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size as u32).map(Elem)
    }

    #[inline]
    fn check(&self, e: Elem) -> usize {
        assert!(e.index() < self.size, "element index {e} out of range");
        e.index()
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.backend.add(self.check(a), self.check(b)) as u32)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.backend.mul(self.check(a), self.check(b)) as u32)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.backend.neg(self.check(a)) as u32)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        let nb = self.neg(b);
        self.add(a, nb)
    }

    /// Component tuple of an element (product-backed rings only).
    pub fn component_values(&self, e: Elem) -> Option<Vec<u64>> {
        match &self.backend {
            Backend::Product(p) => Some(p.components(self.check(e)).to_vec()),
            Backend::Quotient(_) => None,
        }
    }

    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    pub fn is_unit(&self, e: Elem) -> bool {
        self.unit_mask.test(self.check(e))
    }

    pub fn unit_mask(&self) -> &BitSet {
        &self.unit_mask
    }

    pub fn principal_ideal(&self, x: Elem) -> Ideal {
        Ideal::from_mask(&self.principal_masks[self.check(x)], vec![x])
    }

    pub fn principal_mask(&self, x: Elem) -> &BitSet {
        &self.principal_masks[self.check(x)]
    }

    /// `I + J = { a + b : a in I, b in J }`; generators concatenate.
    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mi = i.member_mask(self.size);
        let mj = j.member_mask(self.size);
        let sum = sum_masks(&self.backend, &mi, &mj);
        let mut gens = i.generators.clone();
        gens.extend_from_slice(&j.generators);
        Ideal::from_mask(&sum, gens)
    }

    /// The full ideal lattice, sorted by (size, member lex); includes the
    /// zero ideal and the whole ring.
    pub fn all_ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub(crate) fn ideal_masks(&self) -> &[BitSet] {
        &self.ideal_masks
    }

    pub fn maximal_ideals(&self) -> &[Ideal] {
        &self.maximal_ideals
    }

    pub fn n_maximal(&self) -> usize {
        self.maximal_ideals.len()
    }

    pub fn is_local(&self) -> bool {
        self.maximal_ideals.len() == 1
    }

    pub fn jacobson_radical(&self) -> &Ideal {
        &self.radical
    }

    pub fn radical_mask(&self) -> &BitSet {
        &self.radical_mask
    }

    pub fn in_radical(&self, e: Elem) -> bool {
        self.radical_mask.test(self.check(e))
    }

    /// Radical members by the element test `{ x : 1 + rx is a unit for all r }`.
    pub fn radical_by_unit_test(&self) -> Vec<Elem> {
        radical_by_unit_test_impl(&self.backend, &self.unit_mask, self.one.index())
            .into_iter()
            .map(|i| Elem(i as u32))
            .collect()
    }

    /// Structural maximal-ideal member sets derived from the local
    /// factorization of the spec, without touching the lattice.
    /// `None` for quotient-backed rings.
    pub fn structural_maximal_members(&self) -> Option<Vec<Vec<Elem>>> {
        match (&self.spec, &self.backend) {
            (Some(spec), Backend::Product(prod)) => Some(
                structural_maximal_masks(spec, prod)
                    .iter()
                    .map(|m| m.iter_ones().map(|i| Elem(i as u32)).collect())
                    .collect(),
            ),
            _ => None,
        }
    }

    pub fn signature(&self, e: Elem) -> SSignature {
        self.signatures[self.check(e)]
    }

    /// A vertex of `gamma(R)`: neither a unit nor in the radical.
    pub fn is_gamma_element(&self, e: Elem) -> bool {
        let i = self.check(e);
        !self.unit_mask.test(i) && !self.radical_mask.test(i)
    }

    pub fn comaximal_by_signatures(&self, x: Elem, y: Elem) -> bool {
        self.signature(x).is_disjoint(self.signature(y))
    }

    /// `1 ∈ Rx + Ry`, decided by scanning the smaller principal ideal.
    pub fn comaximal_by_ideal_sum(&self, x: Elem, y: Elem) -> bool {
        let rx = &self.principal_masks[self.check(x)];
        let ry = &self.principal_masks[self.check(y)];
        let (scan, probe) = if rx.count() <= ry.count() {
            (rx, ry)
        } else {
            (ry, rx)
        };
        let one = self.one.index();
        scan.iter_ones()
            .any(|a| probe.test(self.backend.add(one, self.backend.neg(a))))
    }

    /// Both co-maximality criteria, which must agree; a mismatch is a bug
    /// in the ring construction and panics.
    pub fn is_comaximal(&self, x: Elem, y: Elem) -> bool {
        let by_sig = self.comaximal_by_signatures(x, y);
        let by_sum = self.comaximal_by_ideal_sum(x, y);
        if by_sig != by_sum {
            panic!(
                "co-maximality criteria disagree for ({x}, {y}) in {}: \
                 signatures {by_sig}, ideal sum {by_sum}",
                self.label
            );
        }
        by_sig
    }

    /// The quotient ring `R/I` for an ideal `I` contained in the radical,
    /// with cosets indexed by their least member.
    pub fn quotient(&self, ideal: &Ideal) -> Result<Ring, RingError> {
        let imask = ideal.member_mask(self.size);
        if imask.count() == self.size {
            return Err(RingError::QuotientByWholeRing);
        }
        if !imask.is_subset(&self.radical_mask) {
            return Err(RingError::IdealNotInRadical);
        }
        let mut coset_of = vec![u32::MAX; self.size];
        let mut rep = Vec::new();
        for e in 0..self.size {
            if coset_of[e] != u32::MAX {
                continue;
            }
            let q = rep.len() as u32;
            rep.push(e as u32);
            for m in imask.iter_ones() {
                coset_of[self.backend.add(e, m)] = q;
            }
        }
        debug_assert_eq!(rep.len() * imask.count(), self.size);
        let one = coset_of[self.one.index()] as usize;
        let label = format!(
            "{} / ({})",
            self.label,
            ideal
                .generators
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let backend = Backend::Quotient(QuotientBackend {
            parent: Arc::new(self.backend.clone()),
            rep,
            coset_of,
            one,
        });
        Ring::finish(backend, label, None, self.limits)
    }

    /// Coset map of a quotient built from this ring: parent element to
    /// quotient element.
    pub fn coset_in(&self, quotient: &Ring, e: Elem) -> Elem {
        match &quotient.backend {
            Backend::Quotient(q) => Elem(q.coset_of[self.check(e)]),
            Backend::Product(_) => panic!("not a quotient ring"),
        }
    }

    /// Least representative of a quotient element in the parent ring.
    pub fn coset_representative(quotient: &Ring, e: Elem) -> Elem {
        match &quotient.backend {
            Backend::Quotient(q) => Elem(q.rep[e.index()]),
            Backend::Product(_) => panic!("not a quotient ring"),
        }
    }

    /// Checks stable range one: every co-maximal pair `(x, y)` admits `t`
    /// with `x + ty` a unit. Returns the first violating pair otherwise.
    pub fn stable_range_one(&self) -> Result<(), (Elem, Elem)> {
        for x in 0..self.size {
            for y in 0..self.size {
                if x == y || !self.comaximal_by_signatures(Elem(x as u32), Elem(y as u32)) {
                    continue;
                }
                let found = (0..self.size).any(|t| {
                    let ty = self.backend.mul(t, y);
                    self.unit_mask.test(self.backend.add(x, ty))
                });
                if !found {
                    return Err((Elem(x as u32), Elem(y as u32)));
                }
            }
        }
        Ok(())
    }
}

fn compute_units(backend: &Backend, one: usize) -> (Vec<Elem>, BitSet) {
    let size = backend.size();
    let mut mask = BitSet::new(size);
    match backend {
        Backend::Product(p) => {
            // A product element is a unit iff every component is.
            for e in 0..size {
                if p.components(e)
                    .iter()
                    .zip(&p.factors)
                    .all(|(&c, f)| f.is_unit(c))
                {
                    mask.set(e);
                }
            }
        }
        Backend::Quotient(_) => {
            for e in units_by_inverse_search(backend, one) {
                mask.set(e);
            }
        }
    }
    (mask.iter_ones().map(|i| Elem(i as u32)).collect(), mask)
}

fn units_by_inverse_search(backend: &Backend, one: usize) -> Vec<usize> {
    let size = backend.size();
    (0..size)
        .filter(|&x| (0..size).any(|y| backend.mul(x, y) == one))
        .collect()
}

fn radical_by_unit_test_impl(backend: &Backend, unit_mask: &BitSet, one: usize) -> Vec<usize> {
    let size = backend.size();
    (0..size)
        .filter(|&x| (0..size).all(|r| unit_mask.test(backend.add(one, backend.mul(r, x)))))
        .collect()
}

fn compute_principal_masks(backend: &Backend, unit_mask: &BitSet) -> Vec<BitSet> {
    let size = backend.size();
    (0..size)
        .map(|x| {
            if unit_mask.test(x) {
                BitSet::full(size)
            } else {
                let mut m = BitSet::new(size);
                for r in 0..size {
                    m.set(backend.mul(r, x));
                }
                m
            }
        })
        .collect()
}

/// `I + J` on member masks via coset translation: the sum is the union of
/// the cosets `b + I` over `b in J`, and a coset already met is skipped.
fn sum_masks(backend: &Backend, a: &BitSet, b: &BitSet) -> BitSet {
    let mut out = a.clone();
    for m in b.iter_ones() {
        if out.test(m) {
            continue;
        }
        for x in a.iter_ones() {
            out.set(backend.add(x, m));
        }
    }
    out
}

/// Closure of the distinct principal ideals under pairwise sum, to a
/// fixpoint. Every ideal of a finite ring is a finite sum of principal
/// ideals, so this is the full lattice.
fn ideal_lattice(
    backend: &Backend,
    principal_masks: &[BitSet],
    guard: usize,
) -> Result<Vec<BitSet>, RingError> {
    let mut known: Vec<BitSet> = Vec::new();
    let mut seen: HashSet<BitSet> = HashSet::new();
    for m in principal_masks {
        if seen.insert(m.clone()) {
            known.push(m.clone());
        }
    }
    let mut i = 0;
    while i < known.len() {
        for j in 0..i {
            if known[i].is_subset(&known[j]) || known[j].is_subset(&known[i]) {
                continue;
            }
            let sum = sum_masks(backend, &known[i], &known[j]);
            if !seen.contains(&sum) {
                if known.len() >= guard {
                    return Err(RingError::LatticeGuardExceeded { guard });
                }
                seen.insert(sum.clone());
                known.push(sum);
            }
        }
        i += 1;
    }
    Ok(known)
}

/// Greedy deterministic generating set: scan members in index order and
/// keep those not yet generated.
fn canonical_generators(backend: &Backend, principal_masks: &[BitSet], mask: &BitSet) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut acc = BitSet::new(backend.size());
    acc.set(0);
    for m in mask.iter_ones() {
        if !acc.test(m) {
            gens.push(Elem(m as u32));
            acc = sum_masks(backend, &acc, &principal_masks[m]);
        }
    }
    if gens.is_empty() {
        gens.push(Elem(0));
    }
    gens
}

/// Maximal ideals read off the spec structure: for each local factor of
/// each base, the elements whose component lies in that factor's maximal
/// ideal. For `Z_n` the local factors are the prime divisors of `n`.
fn structural_maximal_masks(spec: &RingSpec, prod: &ProductBackend) -> Vec<BitSet> {
    let size = prod.size;
    let mut out = Vec::new();
    for (i, base) in spec.factors.iter().enumerate() {
        match *base {
            BaseSpec::Zn(n) => {
                for (p, _) in factorize(n) {
                    let mut m = BitSet::new(size);
                    for e in 0..size {
                        if prod.components(e)[i].is_multiple_of(p) {
                            m.set(e);
                        }
                    }
                    out.push(m);
                }
            }
            BaseSpec::Gf { .. } => {
                let mut m = BitSet::new(size);
                for e in 0..size {
                    if prod.components(e)[i] == 0 {
                        m.set(e);
                    }
                }
                out.push(m);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: RingSpec) -> Ring {
        Ring::new(spec).unwrap()
    }

    fn zn(n: u64) -> Ring {
        ring(RingSpec::zn(n))
    }

    fn members(ideal: &Ideal) -> Vec<u32> {
        ideal.members.iter().map(|e| e.0).collect()
    }

    #[test]
    fn z12_construction() {
        let r = zn(12);
        assert_eq!(r.size(), 12);
        assert_eq!(r.n_maximal(), 2);
        assert_eq!(
            r.units().iter().map(|e| e.0).collect::<Vec<_>>(),
            vec![1, 5, 7, 11]
        );
        assert_eq!(members(r.jacobson_radical()), vec![0, 6]);
        // Maximal ideals in member-lex order: 2Z12 then 3Z12.
        assert_eq!(members(&r.maximal_ideals()[0]), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(members(&r.maximal_ideals()[1]), vec![0, 3, 6, 9]);
    }

    #[test]
    fn z12_lattice() {
        let r = zn(12);
        let sizes: Vec<usize> = r.all_ideals().iter().map(|i| i.len()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(members(&r.all_ideals()[0]), vec![0]);
        assert_eq!(members(&r.all_ideals()[1]), vec![0, 6]);
        assert_eq!(members(&r.all_ideals()[2]), vec![0, 4, 8]);
    }

    #[test]
    fn zn_lattice_matches_divisors() {
        // Oracle: the ideals of Z_n are exactly dZ_n for divisors d of n.
        for n in 2..=60u64 {
            let r = zn(n);
            let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
            assert_eq!(r.all_ideals().len(), divisors.len(), "Z{n}");
            for d in divisors {
                let expect: Vec<Elem> = (0..n).step_by(d as usize).map(|m| Elem(m as u32)).collect();
                assert!(
                    r.all_ideals().iter().any(|i| i.members == expect),
                    "Z{n} is missing the ideal generated by {d}"
                );
            }
        }
    }

    #[test]
    fn z2_cubed() {
        let r = ring(RingSpec::new(vec![BaseSpec::Zn(2); 3]));
        assert_eq!(r.size(), 8);
        assert_eq!(r.n_maximal(), 3);
        assert!(r.maximal_ideals().iter().all(|m| m.len() == 4));
        assert_eq!(members(r.jacobson_radical()), vec![0]);
        assert_eq!(r.units().len(), 1);
        assert_eq!(r.units()[0], r.one());
    }

    #[test]
    fn fields_are_local() {
        let z2 = zn(2);
        assert_eq!(z2.n_maximal(), 1);
        assert_eq!(members(&z2.maximal_ideals()[0]), vec![0]);
        let gf5 = ring(RingSpec::new(vec![BaseSpec::Gf { p: 5, k: 1 }]));
        assert_eq!(gf5.all_ideals().len(), 2);
        assert_eq!(
            gf5.units().iter().map(|e| e.0).collect::<Vec<_>>(),
            vec![1, 2, 3, 4]
        );
    }

    #[test]
    fn z2_times_z2_lattice() {
        let r = ring(RingSpec::new(vec![BaseSpec::Zn(2); 2]));
        assert_eq!(r.all_ideals().len(), 4);
    }

    #[test]
    fn arith_examples() {
        let r = zn(12);
        assert_eq!(r.add(Elem(7), Elem(8)), Elem(3));
        assert_eq!(r.mul(Elem(4), Elem(9)), Elem(0));
        assert_eq!(r.sub(Elem(3), Elem(7)), Elem(8));
        let gf4 = ring(RingSpec::new(vec![BaseSpec::Gf { p: 2, k: 2 }]));
        // x * x = x + 1 under the modulus x^2 + x + 1.
        assert_eq!(gf4.mul(Elem(2), Elem(2)), Elem(3));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn arith_rejects_out_of_range() {
        let r = zn(12);
        r.add(Elem(12), Elem(0));
    }

    #[test]
    fn principal_ideals() {
        let r = zn(12);
        assert_eq!(members(&r.principal_ideal(Elem(3))), vec![0, 3, 6, 9]);
        assert_eq!(members(&r.principal_ideal(Elem(0))), vec![0]);
        assert_eq!(r.principal_ideal(Elem(5)).len(), 12);
    }

    #[test]
    fn ideal_sums() {
        let r = zn(12);
        let r2 = r.principal_ideal(Elem(2));
        let r3 = r.principal_ideal(Elem(3));
        let r4 = r.principal_ideal(Elem(4));
        let zero = r.principal_ideal(Elem(0));
        assert_eq!(r.ideal_sum(&r2, &r3).len(), 12);
        assert_eq!(members(&r.ideal_sum(&r2, &r4)), vec![0, 2, 4, 6, 8, 10]);
        assert_eq!(members(&r.ideal_sum(&r2, &zero)), members(&r2));
        // Oracle: members of I + J are exactly the pairwise sums.
        let mut expect: Vec<u32> = Vec::new();
        for &a in &r2.members {
            for &b in &r4.members {
                expect.push(r.add(a, b).0);
            }
        }
        expect.sort_unstable();
        expect.dedup();
        assert_eq!(members(&r.ideal_sum(&r2, &r4)), expect);
    }

    #[test]
    fn signatures_and_comaximality() {
        let r = zn(12);
        let s2 = r.signature(Elem(2));
        assert!(s2.contains(0) && !s2.contains(1));
        assert!(r.signature(Elem(1)).is_empty());
        assert!(r.signature(Elem(6)).is_full(r.n_maximal()));
        assert!(r.is_comaximal(Elem(3), Elem(4)));
        assert!(!r.is_comaximal(Elem(2), Elem(6)));
        for x in r.elements() {
            assert!(r.is_comaximal(x, r.one()));
        }
    }

    #[test]
    fn comaximal_criteria_agree_exhaustively() {
        for spec in [
            RingSpec::zn(12),
            RingSpec::zn(30),
            RingSpec::new(vec![BaseSpec::Zn(2); 3]),
            RingSpec::new(vec![BaseSpec::Zn(4), BaseSpec::Gf { p: 3, k: 1 }]),
        ] {
            let r = ring(spec);
            for x in r.elements() {
                for y in r.elements() {
                    r.is_comaximal(x, y);
                }
            }
        }
    }

    #[test]
    fn units_are_empty_signature() {
        let r = zn(30);
        for e in r.elements() {
            assert_eq!(r.is_unit(e), r.signature(e).is_empty());
        }
    }

    #[test]
    fn radical_element_test_agrees() {
        for spec in [RingSpec::zn(12), RingSpec::zn(16), RingSpec::zn(30)] {
            let r = ring(spec);
            let by_test: Vec<Elem> = r.radical_by_unit_test();
            assert_eq!(r.jacobson_radical().members, by_test);
        }
    }

    #[test]
    fn quotient_of_z12_by_radical_is_z6() {
        let r = zn(12);
        let j = r.jacobson_radical().clone();
        let q = r.quotient(&j).unwrap();
        assert_eq!(q.size(), 6);
        let z6 = zn(6);
        for a in 0..6u32 {
            for b in 0..6u32 {
                assert_eq!(q.add(Elem(a), Elem(b)), z6.add(Elem(a), Elem(b)));
                assert_eq!(q.mul(Elem(a), Elem(b)), z6.mul(Elem(a), Elem(b)));
            }
        }
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let r = zn(12);
        let zero = r.principal_ideal(Elem(0));
        let q = r.quotient(&zero).unwrap();
        assert_eq!(q.size(), 12);
        assert_eq!(q.add(Elem(7), Elem(8)), Elem(3));
        assert_eq!(q.units().len(), 4);
    }

    #[test]
    fn quotient_z4_by_radical_is_field() {
        let r = zn(4);
        let q = r.quotient(&r.jacobson_radical().clone()).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(q.units().len(), 1);
        assert!(q.jacobson_radical().len() == 1);
    }

    #[test]
    fn quotient_errors() {
        let r = zn(12);
        let r3 = r.principal_ideal(Elem(3));
        assert!(matches!(r.quotient(&r3), Err(RingError::IdealNotInRadical)));
        let whole = r.principal_ideal(Elem(1));
        assert!(matches!(
            r.quotient(&whole),
            Err(RingError::QuotientByWholeRing)
        ));
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        for spec in [RingSpec::zn(12), RingSpec::zn(72), RingSpec::zn(16)] {
            let r = ring(spec);
            let q = r.quotient(&r.jacobson_radical().clone()).unwrap();
            assert_eq!(q.jacobson_radical().len(), 1);
            assert_eq!(q.n_maximal(), r.n_maximal());
        }
    }

    #[test]
    fn stable_range_one_holds() {
        for spec in [
            RingSpec::zn(12),
            RingSpec::new(vec![BaseSpec::Zn(2); 3]),
            RingSpec::new(vec![BaseSpec::Gf { p: 7, k: 1 }]),
        ] {
            assert!(ring(spec).stable_range_one().is_ok());
        }
    }

    #[test]
    fn structural_maximal_ideals_match() {
        for spec in [
            RingSpec::zn(60),
            RingSpec::new(vec![BaseSpec::Zn(4), BaseSpec::Gf { p: 2, k: 2 }]),
        ] {
            let r = ring(spec);
            let mut structural = r.structural_maximal_members().unwrap();
            structural.sort();
            let mut lattice: Vec<Vec<Elem>> = r
                .maximal_ideals()
                .iter()
                .map(|m| m.members.clone())
                .collect();
            lattice.sort();
            assert_eq!(structural, lattice);
        }
    }

    #[test]
    fn ideal_generators_regenerate_members() {
        let r = zn(60);
        for ideal in r.all_ideals() {
            let mut acc = r.principal_ideal(Elem(0));
            for &g in &ideal.generators {
                acc = r.ideal_sum(&acc, &r.principal_ideal(g));
            }
            assert_eq!(acc.members, ideal.members);
        }
    }

    #[test]
    fn element_encoding_is_mixed_radix() {
        let r = ring(RingSpec::new(vec![BaseSpec::Zn(2), BaseSpec::Zn(3)]));
        assert_eq!(r.component_values(Elem(0)).unwrap(), vec![0, 0]);
        assert_eq!(r.component_values(Elem(4)).unwrap(), vec![1, 1]);
        assert_eq!(r.one(), Elem(4));
        let q = r.quotient(&r.principal_ideal(Elem(0))).unwrap();
        assert!(q.component_values(Elem(0)).is_none());
    }

    #[test]
    fn rings_support_concurrent_reads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Ring>();
        assert_send_sync::<crate::Graph>();
        assert_send_sync::<crate::Verdict>();

        let r = std::sync::Arc::new(zn(60));
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let r = r.clone();
                std::thread::spawn(move || {
                    let gamma = crate::graph::build_gamma(&r);
                    (gamma.vertex_count(), gamma.edge_count())
                })
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
