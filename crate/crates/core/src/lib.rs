//! Finite semirings, their spectra, finite locales, sheaf checks on the
//! Zariski site, gluing of finite spaces, and the site of finite sets.

pub mod catalog;
pub mod error;
pub mod finset;
pub mod glue;
pub mod locale;
pub mod semiring;
pub mod site;
pub mod spectra;
pub mod topology;
pub mod verify;

pub use error::{Error, Result};
pub use semiring::{Congruence, FiniteSemiring, SemiringHom};
pub use topology::{glue_spaces, ContinuousMap, FiniteTopSpace, Gluing, PointSet};
