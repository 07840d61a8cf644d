//! Exact Fourier coefficients of the Cherednik kernel for finite root
//! systems, and the generalized exponents they determine.
//!
//! The modules build on one another: [`rootsys`] and [`weyl`] supply root
//! data and orbits, [`orbitcomb`] the defect statistics, [`qtfield`] exact
//! arithmetic in `ℚ(q,t)`, [`cherednik`] the coefficients, [`reps`] weight
//! multiplicities, and [`exponents`] the exponent polynomials. [`oracle`] is
//! an independent brute-force check and [`verify`] bundles the self-checks.

pub mod cherednik;
pub mod error;
pub mod exponents;
pub mod oracle;
pub mod orbitcomb;
pub mod qtfield;
pub mod reps;
pub mod rootsys;
pub mod verify;
pub mod weyl;

pub use cherednik::{AffineExpr, Budget, CoeffTable, Kernel, Source, Strategy};
pub use error::{Error, Result};
pub use exponents::{ExponentPoly, Rep};
pub use orbitcomb::{DStats, JComponent, PairCount};
pub use qtfield::{LaurentQT, RatQT, RatT};
pub use reps::{HeightHistograms, WeightSystem};
pub use rootsys::{Family, LatticeVector, RootSystem, RootSystemSpec};
pub use verify::{CheckResult, Suite};
pub use weyl::{Orbit, OrbitElement};
