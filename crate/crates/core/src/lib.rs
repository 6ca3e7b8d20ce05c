//! sl2 crystals on column-strict tableaux with entries bounded by `r`, built
//! from residue-class seeds, and the symmetric chain decompositions of the
//! Young lattice `L(n, m)` they induce.
//!
//! ```
//! use scd_core::crystal::Crystal;
//!
//! let g = Crystal::new(2).unwrap().build(4).unwrap();
//! assert_eq!(g.character().to_string(), "[7] + [3]");
//! ```

pub mod chains;
pub mod closed_form;
pub mod crystal;
pub mod oracle;
pub mod plethysm;
pub mod qchar;
pub mod report;
pub mod seedlang;
pub mod tableaux;
