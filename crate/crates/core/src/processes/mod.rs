//! Classical processes arising from the represented algebras: the splitting
//! formula, moment generating functions, the secant-power law and its
//! density, sampling, and the classicality test for coefficient families.

mod classical;
mod density;
mod gamma;
mod mgf;
pub mod quad;
mod sample;
mod split;

pub use gamma::complex_log_gamma;
pub use mgf::{mgf_eval, mgf_taylor};
pub use split::{riccati_split, splitting_series_check, SplitCheckReport, SplitMismatch, SplittingSolution, SPLIT_MAX_ORDER};
pub use density::{density_moment, density_p, density_q_scaled, mgf_numeric_check, scaled_mgf_numeric_check, scaling, MgfCheck, SecantDensity};
pub use sample::{ks_statistic, sample_x, TabulatedCdf, TABLE_TAIL};
pub use classical::{classical_check, process_element, ClassicalVerdict, Witness};
