//! Conjugacy classes of SL(2,ℝ) and their centralizers.
//!
//! Classification is by trace, refined by two conjugation invariants:
//! - elliptic (`|tr| < 2`): `sign(b - c)`. Each elliptic class is connected
//!   and `b = c` would make the matrix symmetric, hence with real eigenvalues,
//!   so the sign is constant on a class. `u_θ` has `b - c = 2 sin θ > 0`.
//! - parabolic (`tr = ±2`, `g ≠ ±I`): for the nilpotent `N = ±g - I = [[p, q], [r, -p]]`,
//!   `qr = -p² ≤ 0` and the orientation is `+` iff `q - r > 0`
//!   (equivalently `q > 0`, or `q = 0` and `r < 0`).
//!
//! The parabolic orientation splits each of the trace-±2 families into two
//! classes, where the source lists one (`C₁`, resp. `C̄₁`) besides `±I`.
//! Both are exposed; [`warnings`] flags the labels that the source omits.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Absolute tolerance for `|det - 1|` and the trace boundary `|tr ∓ 2|`.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SL2Matrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SL2Matrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = SL2Matrix { a, b, c, d };
        if !m.det().is_finite() || (m.det() - 1.0).abs() > BOUNDARY_TOLERANCE {
            return Err(Error::NotUnimodular(m.det()));
        }
        Ok(m)
    }

    fn raw(a: f64, b: f64, c: f64, d: f64) -> Self {
        SL2Matrix { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::raw(1.0, 0.0, 0.0, 1.0)
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn mul(&self, o: &SL2Matrix) -> SL2Matrix {
        Self::raw(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    pub fn inverse(&self) -> SL2Matrix {
        Self::raw(self.d, -self.b, -self.c, self.a)
    }

    pub fn neg(&self) -> SL2Matrix {
        Self::raw(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn conjugate_by(&self, h: &SL2Matrix) -> SL2Matrix {
        h.mul(self).mul(&h.inverse())
    }

    pub fn frobenius_distance(&self, o: &SL2Matrix) -> f64 {
        ((self.a - o.a).powi(2)
            + (self.b - o.b).powi(2)
            + (self.c - o.c).powi(2)
            + (self.d - o.d).powi(2))
        .sqrt()
    }

    /// `u_ψ = [[cos ψ, sin ψ], [-sin ψ, cos ψ]]`.
    pub fn rotation(psi: f64) -> Self {
        Self::raw(psi.cos(), psi.sin(), -psi.sin(), psi.cos())
    }

    /// `a_s = diag(e^s, e^{-s})`.
    pub fn boost(s: f64) -> Self {
        Self::raw(s.exp(), 0.0, 0.0, (-s).exp())
    }

    /// `[[1, x], [0, 1]]`.
    pub fn shear(x: f64) -> Self {
        Self::raw(1.0, x, 0.0, 1.0)
    }

    /// Random element `k(α) a_s n(x)` with moderate entries.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let k = Self::rotation(rng.gen_range(0.0..2.0 * PI));
        let a = Self::boost(rng.gen_range(-1.0..1.0));
        let n = Self::shear(rng.gen_range(-2.0..2.0));
        k.mul(&a).mul(&n)
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "camelCase")]
pub enum ClassFamily {
    EllipticPlus { theta: f64 },
    EllipticMinus { theta: f64 },
    HyperbolicPos { t: f64 },
    HyperbolicNeg { t: f64 },
    Identity,
    MinusIdentity,
    ParabolicPos { orientation: Orientation },
    ParabolicNeg { orientation: Orientation },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Centralizer {
    #[serde(rename = "U(1)")]
    U1,
    #[serde(rename = "R x Z2")]
    RTimesZ2,
    #[serde(rename = "SL(2,R)")]
    SL2R,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjClassLabel {
    #[serde(flatten)]
    pub family: ClassFamily,
    pub centralizer: Centralizer,
}

impl ClassFamily {
    pub fn centralizer(&self) -> Centralizer {
        match self {
            ClassFamily::EllipticPlus { .. } | ClassFamily::EllipticMinus { .. } => Centralizer::U1,
            ClassFamily::Identity | ClassFamily::MinusIdentity => Centralizer::SL2R,
            _ => Centralizer::RTimesZ2,
        }
    }

    pub fn label(self) -> ConjClassLabel {
        ConjClassLabel {
            family: self,
            centralizer: self.centralizer(),
        }
    }

    /// Discrete tag, ignoring the continuous parameter.
    pub fn kind(&self) -> &'static str {
        match self {
            ClassFamily::EllipticPlus { .. } => "EllipticPlus",
            ClassFamily::EllipticMinus { .. } => "EllipticMinus",
            ClassFamily::HyperbolicPos { .. } => "HyperbolicPos",
            ClassFamily::HyperbolicNeg { .. } => "HyperbolicNeg",
            ClassFamily::Identity => "Identity",
            ClassFamily::MinusIdentity => "MinusIdentity",
            ClassFamily::ParabolicPos {
                orientation: Orientation::Plus,
            } => "ParabolicPos(+)",
            ClassFamily::ParabolicPos {
                orientation: Orientation::Minus,
            } => "ParabolicPos(-)",
            ClassFamily::ParabolicNeg {
                orientation: Orientation::Plus,
            } => "ParabolicNeg(+)",
            ClassFamily::ParabolicNeg {
                orientation: Orientation::Minus,
            } => "ParabolicNeg(-)",
        }
    }

    pub fn parameter(&self) -> Option<f64> {
        match self {
            ClassFamily::EllipticPlus { theta } | ClassFamily::EllipticMinus { theta } => {
                Some(*theta)
            }
            ClassFamily::HyperbolicPos { t } | ClassFamily::HyperbolicNeg { t } => Some(*t),
            _ => None,
        }
    }
}

impl ConjClassLabel {
    /// Same family and parameters within `tol`.
    pub fn approx_eq(&self, other: &ConjClassLabel, tol: f64) -> bool {
        self.family.kind() == other.family.kind()
            && self.centralizer == other.centralizer
            && match (self.family.parameter(), other.family.parameter()) {
                (Some(x), Some(y)) => (x - y).abs() <= tol,
                (None, None) => true,
                _ => false,
            }
    }
}

impl fmt::Display for ConjClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.parameter() {
            Some(p) => write!(f, "{}({p})", self.family.kind()),
            None => write!(f, "{}", self.family.kind()),
        }
    }
}

fn orientation_of_nilpotent(n: &SL2Matrix) -> Orientation {
    if n.b - n.c > 0.0 {
        Orientation::Plus
    } else {
        Orientation::Minus
    }
}

pub fn classify_sl2r(g: &SL2Matrix) -> Result<ConjClassLabel> {
    let det = g.det();
    if !det.is_finite() || (det - 1.0).abs() > BOUNDARY_TOLERANCE {
        return Err(Error::NotUnimodular(det));
    }
    let tr = g.trace();
    let family = if (tr - 2.0).abs() <= BOUNDARY_TOLERANCE {
        let n = SL2Matrix::raw(g.a - 1.0, g.b, g.c, g.d - 1.0);
        if n.as_array().iter().all(|x| x.abs() <= BOUNDARY_TOLERANCE) {
            ClassFamily::Identity
        } else {
            ClassFamily::ParabolicPos {
                orientation: orientation_of_nilpotent(&n),
            }
        }
    } else if (tr + 2.0).abs() <= BOUNDARY_TOLERANCE {
        let m = g.neg();
        let n = SL2Matrix::raw(m.a - 1.0, m.b, m.c, m.d - 1.0);
        if n.as_array().iter().all(|x| x.abs() <= BOUNDARY_TOLERANCE) {
            ClassFamily::MinusIdentity
        } else {
            ClassFamily::ParabolicNeg {
                orientation: orientation_of_nilpotent(&n),
            }
        }
    } else if tr.abs() < 2.0 {
        let theta = (tr / 2.0).acos();
        if g.b - g.c > 0.0 {
            ClassFamily::EllipticPlus { theta }
        } else {
            ClassFamily::EllipticMinus { theta }
        }
    } else if tr > 2.0 {
        ClassFamily::HyperbolicPos {
            t: (tr / 2.0).acosh(),
        }
    } else {
        ClassFamily::HyperbolicNeg {
            t: (-tr / 2.0).acosh(),
        }
    };
    Ok(family.label())
}

/// `u_θ`, `u_{-θ}`, `±a_t`, `±I`, `n₁ = [[1,1],[0,1]]` or its mirror `[[1,-1],[0,1]]`,
/// and for the trace −2 families the negatives of those (so `n̄₁ = -[[1,-1],[0,1]]`).
pub fn canonical_representative(label: &ConjClassLabel) -> SL2Matrix {
    match label.family {
        ClassFamily::EllipticPlus { theta } => SL2Matrix::rotation(theta),
        ClassFamily::EllipticMinus { theta } => SL2Matrix::rotation(-theta),
        ClassFamily::HyperbolicPos { t } => SL2Matrix::boost(t),
        ClassFamily::HyperbolicNeg { t } => SL2Matrix::boost(t).neg(),
        ClassFamily::Identity => SL2Matrix::identity(),
        ClassFamily::MinusIdentity => SL2Matrix::identity().neg(),
        ClassFamily::ParabolicPos { orientation } => parabolic(orientation),
        ClassFamily::ParabolicNeg { orientation } => parabolic(orientation).neg(),
    }
}

fn parabolic(o: Orientation) -> SL2Matrix {
    match o {
        Orientation::Plus => SL2Matrix::shear(1.0),
        Orientation::Minus => SL2Matrix::shear(-1.0),
    }
}

/// Notes for labels on which the classifier and the source's class list disagree.
pub fn warnings(label: &ConjClassLabel) -> Vec<String> {
    match label.family {
        ClassFamily::ParabolicPos {
            orientation: Orientation::Minus,
        } => vec![
            "trace-2 class of [[1,-1],[0,1]] is not conjugate to n1 = [[1,1],[0,1]]; \
             the source lists a single parabolic class C_1 for trace 2"
                .to_string(),
        ],
        ClassFamily::ParabolicNeg {
            orientation: Orientation::Plus,
        } => vec![
            "trace -2 class of -[[1,1],[0,1]] is not conjugate to -[[1,-1],[0,1]]; \
             the source lists a single parabolic class for trace -2"
                .to_string(),
        ],
        _ => Vec::new(),
    }
}

/// One representative label per discrete family (with fixed parameters).
pub fn sample_labels() -> Vec<ConjClassLabel> {
    [
        ClassFamily::EllipticPlus { theta: PI / 3.0 },
        ClassFamily::EllipticMinus { theta: PI / 3.0 },
        ClassFamily::HyperbolicPos { t: 1.0 },
        ClassFamily::HyperbolicNeg { t: 1.0 },
        ClassFamily::Identity,
        ClassFamily::MinusIdentity,
        ClassFamily::ParabolicPos {
            orientation: Orientation::Plus,
        },
        ClassFamily::ParabolicPos {
            orientation: Orientation::Minus,
        },
        ClassFamily::ParabolicNeg {
            orientation: Orientation::Plus,
        },
        ClassFamily::ParabolicNeg {
            orientation: Orientation::Minus,
        },
    ]
    .into_iter()
    .map(ClassFamily::label)
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_examples() {
        let l = classify_sl2r(&SL2Matrix::rotation(PI / 3.0)).unwrap();
        assert!(l.approx_eq(
            &ClassFamily::EllipticPlus { theta: PI / 3.0 }.label(),
            1e-12
        ));
        assert_eq!(l.centralizer, Centralizer::U1);
        let l = classify_sl2r(&SL2Matrix::boost(1.0)).unwrap();
        assert!(l.approx_eq(&ClassFamily::HyperbolicPos { t: 1.0 }.label(), 1e-12));
        assert_eq!(l.centralizer, Centralizer::RTimesZ2);
        let l = classify_sl2r(&SL2Matrix::shear(1.0)).unwrap();
        assert_eq!(
            l.family,
            ClassFamily::ParabolicPos {
                orientation: Orientation::Plus
            }
        );
        assert!(warnings(&l).is_empty());
        // the source's n̄₁ = [[-1, 1], [0, -1]]
        let l = classify_sl2r(&SL2Matrix::new(-1.0, 1.0, 0.0, -1.0).unwrap()).unwrap();
        assert_eq!(
            l.family,
            ClassFamily::ParabolicNeg {
                orientation: Orientation::Minus
            }
        );
        assert!(warnings(&l).is_empty());
        assert_eq!(
            classify_sl2r(&SL2Matrix::identity()).unwrap().centralizer,
            Centralizer::SL2R
        );
        assert_eq!(
            canonical_representative(&ClassFamily::Identity.label()),
            SL2Matrix::identity()
        );
        assert_eq!(
            canonical_representative(&ClassFamily::EllipticPlus { theta: PI / 2.0 }.label()),
            SL2Matrix::rotation(PI / 2.0)
        );
    }

    #[test]
    fn non_unimodular_rejected() {
        assert!(matches!(
            SL2Matrix::new(2.0, 0.0, 0.0, 1.0),
            Err(Error::NotUnimodular(_))
        ));
        assert!(matches!(
            classify_sl2r(&SL2Matrix::raw(1.0, 1.0, 1.0, 1.0)),
            Err(Error::NotUnimodular(_))
        ));
    }

    #[test]
    fn round_trip_on_all_families() {
        for l in sample_labels() {
            let back = classify_sl2r(&canonical_representative(&l)).unwrap();
            assert!(back.approx_eq(&l, 1e-12), "{l} -> {back}");
        }
    }

    #[test]
    fn mirrored_parabolics_are_flagged() {
        let flagged: Vec<_> = sample_labels()
            .into_iter()
            .filter(|l| !warnings(l).is_empty())
            .collect();
        assert_eq!(flagged.len(), 2);
    }

    #[test]
    fn label_serializes_flat() {
        let l = ClassFamily::ParabolicPos {
            orientation: Orientation::Minus,
        }
        .label();
        let v = serde_json::to_value(l).unwrap();
        assert_eq!(v["family"], "parabolicPos");
        assert_eq!(v["orientation"], "-");
        assert_eq!(v["centralizer"], "R x Z2");
        let back: ConjClassLabel = serde_json::from_value(v).unwrap();
        assert_eq!(back, l);
    }

    // Oracle: the symplectic form ω(u, v) = u₁v₂ - u₂v₁ is SL(2,ℝ)-invariant, and
    // ω(w, N w) = -(…)² for N conjugate to [[0,1],[0,0]], so its sign is the orientation.
    fn orientation_oracle(g: &SL2Matrix) -> Orientation {
        let s = if g.trace() > 0.0 { 1.0 } else { -1.0 };
        let n = SL2Matrix::raw(s * g.a - 1.0, s * g.b, s * g.c, s * g.d - 1.0);
        let form = |w: (f64, f64)| {
            let nw = (n.a * w.0 + n.b * w.1, n.c * w.0 + n.d * w.1);
            w.0 * nw.1 - w.1 * nw.0
        };
        let v = [form((1.0, 0.0)), form((0.0, 1.0))];
        let pick = if v[0].abs() > v[1].abs() { v[0] } else { v[1] };
        if pick < 0.0 {
            Orientation::Plus
        } else {
            Orientation::Minus
        }
    }

    #[test]
    fn orientation_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let h = SL2Matrix::random(&mut rng);
            for base in [
                SL2Matrix::shear(1.0),
                SL2Matrix::shear(-1.0),
                SL2Matrix::shear(1.0).neg(),
                SL2Matrix::shear(-1.0).neg(),
            ] {
                let g = base.conjugate_by(&h);
                let label = classify_sl2r(&g).unwrap();
                let o = match label.family {
                    ClassFamily::ParabolicPos { orientation }
                    | ClassFamily::ParabolicNeg { orientation } => orientation,
                    _ => panic!("not parabolic"),
                };
                assert_eq!(o, orientation_oracle(&g));
            }
        }
    }

    proptest! {
        #[test]
        fn label_is_conjugation_invariant(seed in any::<u64>(), which in 0usize..10) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let label = sample_labels()[which];
            let g = canonical_representative(&label);
            let h = SL2Matrix::random(&mut rng);
            let back = classify_sl2r(&g.conjugate_by(&h)).unwrap();
            prop_assert!(back.approx_eq(&label, 1e-7), "{} vs {}", label, back);
        }
    }
}
