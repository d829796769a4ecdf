//! Compact and noncompact continuous examples: the SU(2) double on truncated
//! carriers, and the conjugacy-class layer of SL(2,ℝ).

pub mod band;
pub mod sl2r;
pub mod su2;
pub mod tau;

pub use band::{BandLimitedF, WignerEntry};
pub use sl2r::{
    canonical_representative, classify_sl2r, sample_labels, warnings, Centralizer, ClassFamily,
    ConjClassLabel, Orientation, SL2Matrix,
};
pub use su2::{character, gauss_legendre, haar_quadrature, wigner, HaarQuadrature, SU2Element};
pub use tau::{
    tau_theta_l, tau_theta_n, verify_su2, CarrierFunction, Su2Config, TauMatrix, TruncatedCarrier,
};

use crate::{Error, Result};

/// Parses a half-integer such as `2`, `3/2` or `1.5`; returns twice its value.
pub fn parse_half_integer(s: &str) -> Result<u32> {
    let bad = || Error::UnsupportedParams(format!("not a nonnegative half-integer: {s}"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: u32 = num.trim().parse().map_err(|_| bad())?;
        return match den.trim() {
            "2" => Ok(num),
            "1" => Ok(2 * num),
            _ => Err(bad()),
        };
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    let twice = 2.0 * x;
    if !(twice >= 0.0) || (twice - twice.round()).abs() > 1e-12 || twice > u32::MAX as f64 {
        return Err(bad());
    }
    Ok(twice.round() as u32)
}
