//! Exact representation-theory kernel for orbit-closure obstruction searches.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! * [`partition`]: partitions / Young diagrams and the column-padding and
//!   SL-duality operations used to move between `GL` and `SL` weights,
//! * [`schar`]: Murnaghan–Nakayama characters of `S_n`, character tables
//!   and the triple inner product that serves as the ground-truth oracle,
//! * [`kron`]: Kronecker coefficients, with the two-row and four-row closed
//!   forms cross-checked against the oracle,
//! * [`lrbranch`]: Littlewood–Richardson coefficients, `GL_r ↓ GL_{r-1}`
//!   interlacing branching and Levi restriction `GL_{k+l} ↓ GL_k × GL_l`,
//! * [`plethysm`]: the Schur expansion of `Sym^d(Sym^m)`,
//! * [`gct`]: admissibility filters, the strong-obstruction candidate
//!   driver for the determinant orbit closure, and separability
//!   certificates.
//!
//! Anything needing a filesystem, threads or a command line lives in the
//! companion `gctlab` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod gct;
pub mod kron;
pub mod lrbranch;
pub mod partition;
pub mod plethysm;
pub mod schar;

pub use error::{Error, Result};
pub use partition::Partition;
pub use schar::{CharacterSource, CharacterTable, ClassInfo, LocalCharacters};
