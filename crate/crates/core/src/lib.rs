//! Klein–Gordon bound states of the scalar generalized Hulthén well
//! S(x) = −S0 e^{−αx}/(1 − q e^{−αx}) and its PT-symmetric,
//! pseudo-Hermitian and q = 0 exponential complexifications.

pub mod error;
pub mod model;
pub mod nu;
pub mod oracle;
pub mod specfun;
pub mod spectra;
pub mod wavefun;

pub use error::{Error, Result};
pub use model::{
    DerivedSymbols, LevelKind, LevelParameter, PotentialParams, SymmetryMode, Variant,
};
pub use num_complex::Complex64;
pub use oracle::{verify_closed_form, Grid, TridiagonalOperator, VerifyConfig, VerifyReport};
pub use specfun::{SeriesControl, SeriesValue};
pub use spectra::{BoundState, LevelCount, Q0Root, Q0Scan, Q0ScanConfig};
pub use wavefun::{ComplexEigenfunction, WavefunctionSample};
