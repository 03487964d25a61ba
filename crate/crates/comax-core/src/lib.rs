//! Co-maximal graphs of finite commutative rings.
//!
//! The library builds finite commutative rings presented as products of
//! `Z_n` and `GF(p^k)` factors, derives their unit groups, ideal lattices,
//! maximal ideals and Jacobson radicals, and constructs three graphs on
//! top of that data:
//!
//! * `omega(R)`: all ring elements, `x ~ y` iff `Rx + Ry = R`,
//! * `gamma(R)`: the induced subgraph on `R \ (U(R) ∪ J(R))`,
//! * `gamma_r(R)`: distinct principal ideals `Rx` of `gamma` vertices,
//!   adjacent iff `Rx + Ry = R`.
//!
//! On those graphs it computes exact invariants (diameter, girth, clique
//! and chromatic numbers, split/bipartite/star recognition, graph cores
//! and retracts) and runs a registry of structural checks over ring
//! families; every check returns a [`theorems::Verdict`] with witness data.
//!
//! ```
//! use comax_core::graph::{build_gamma, build_gamma_r};
//! use comax_core::invariants::{girth, Dist};
//! use comax_core::ring::{Ring, RingSpec};
//! use comax_core::theorems::run_all;
//!
//! let ring = Ring::new(RingSpec::zn(12))?;
//! assert_eq!(girth(&build_gamma(&ring)), Dist::Finite(4));
//! assert_eq!(girth(&build_gamma_r(&ring)), Dist::Infinite);
//! assert!(run_all(&ring).iter().all(|v| !v.is_fail()));
//! # Ok::<(), comax_core::ring::RingError>(())
//! ```

pub mod bits;
pub mod graph;
pub mod invariants;
pub mod ring;
pub mod theorems;

pub use graph::{Graph, VertexLabel};
pub use ring::{BaseSpec, Elem, Ideal, Limits, Ring, RingError, RingSpec, SSignature};
pub use theorems::{Verdict, VerdictStatus};
