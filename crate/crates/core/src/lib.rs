//! Perfect colorings (equitable partitions) of Hamming graphs H(n,q).
//!
//! The crate builds Reed–Muller-like partitions, unions of Hamming-code cosets,
//! and a recursive construction whose colorings depend on all of their
//! arguments. It verifies quotient matrices, essential arguments, densities,
//! quotient spectra and degrees by exhaustive computation.
//!
//! ```
//! use pcol_core::{constructions::construct_bc_a, verify::compute_quotient, Guards};
//!
//! let g = Guards::default();
//! let bc = construct_bc_a(5, 3, &g).unwrap();
//! let s = compute_quotient(bc.coloring(), &g).unwrap();
//! assert_eq!(s.matrix().unwrap().rows(), &[vec![2, 5], vec![3, 4]]);
//! ```

pub mod constructions;
pub mod error;
pub mod gf;
pub mod hamming;
pub mod io;
pub mod report;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use hamming::{Coloring, Guards, QuotientMatrix};
