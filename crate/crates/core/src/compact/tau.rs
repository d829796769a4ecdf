//! Representations `τ^θ_n` and `τ^θ_l` of the SU(2) double on truncated carriers.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::band::{wigner_upto, BandLimitedF, EntryIntegrator, WignerEntry};
use super::su2::{haar_quadrature, wigner, HaarQuadrature, SU2Element};
use crate::linalg::{identity, max_abs_diff, CMat, ZERO};
use crate::report::{MaxDeviation, Report};
use crate::{Error, Result};

/// One basis function `√(2l+1) D^l_{row, col(n)}` of the truncated `L²ₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrierFunction {
    pub two_l: u32,
    pub row: u32,
}

/// Span of the Wigner coefficients in `L²ₙ(SU(2))` with spin `≤ L`.
///
/// `φ(g g_θ) = e^{-inθ} φ(g)` fixes the column to weight `m' = -n/2`, so
/// the spins are `|n|/2, |n|/2 + 1, …` up to the cutoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedCarrier {
    n: i32,
    two_l_max: u32,
    basis: Vec<CarrierFunction>,
}

impl TruncatedCarrier {
    pub fn new(n: i32, two_l_max: u32) -> Self {
        let lo = n.unsigned_abs();
        let basis = (lo..=two_l_max.max(lo))
            .step_by(2)
            .filter(|t| *t <= two_l_max)
            .flat_map(|t| (0..=t).map(move |row| CarrierFunction { two_l: t, row }))
            .collect();
        TruncatedCarrier {
            n,
            two_l_max,
            basis,
        }
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn two_l_max(&self) -> u32 {
        self.two_l_max
    }

    pub fn basis(&self) -> &[CarrierFunction] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Column index of `m' = -n/2` inside `π_l`.
    pub fn column(&self, two_l: u32) -> u32 {
        ((two_l as i64 + self.n as i64) / 2) as u32
    }

    pub(crate) fn eval_with(&self, k: usize, table: &[CMat]) -> Complex64 {
        let f = self.basis[k];
        let col = self.column(f.two_l) as usize;
        table[f.two_l as usize][(f.row as usize, col)] * (f.two_l as f64 + 1.0).sqrt()
    }

    pub fn evaluate(&self, k: usize, g: &SU2Element) -> Complex64 {
        let t = self.basis[k].two_l;
        let col = self.column(t) as usize;
        wigner(t, g)[(self.basis[k].row as usize, col)] * (t as f64 + 1.0).sqrt()
    }

    /// Worst `|φ(g g_θ) - e^{-inθ} φ(g)|` over random samples and all basis functions.
    pub fn equivariance_defect<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> f64 {
        let mut dev = MaxDeviation::default();
        for _ in 0..samples {
            let g = SU2Element::random(rng);
            let theta = rng.gen_range(0.0..2.0 * PI);
            let moved = g.mul(&SU2Element::g_theta(theta));
            let phase = Complex64::from_polar(1.0, -(self.n as f64) * theta);
            for k in 0..self.dimension() {
                dev.record((self.evaluate(k, &moved) - phase * self.evaluate(k, &g)).norm());
            }
        }
        dev.value()
    }

    /// Gram matrix deviation from the identity under `quad`.
    pub fn orthonormality_defect(&self, quad: &HaarQuadrature) -> Result<f64> {
        quad.require(2 * self.two_l_max as usize)?;
        let table = quad.wigner_table(self.two_l_max);
        let d = self.dimension();
        let mut gram = CMat::zeros(d, d);
        for (tab, w) in table.iter().zip(quad.weights()) {
            let vals: Vec<Complex64> = (0..d).map(|k| self.eval_with(k, tab)).collect();
            for i in 0..d {
                for j in 0..d {
                    gram[(i, j)] += vals[i].conj() * vals[j] * *w;
                }
            }
        }
        Ok(max_abs_diff(&gram, &identity(d)))
    }
}

/// Matrix of `τ^θ_n(F)` from the input truncation into the output truncation.
#[derive(Debug, Clone)]
pub struct TauMatrix {
    pub matrix: CMat,
    pub input: TruncatedCarrier,
    pub output: TruncatedCarrier,
    /// Largest norm, over input basis functions, of the image's components beyond the output cutoff.
    pub leakage: f64,
}

/// `(τ^θ_n(F)φ)(x) = ∫ F(x g_θ x⁻¹, z) φ(z⁻¹x) dz`, entrywise by quadrature.
///
/// Leakage is measured on every spin the image can reach (`L_in + band(F)`),
/// and at least one level past the output cutoff.
pub fn tau_theta_n(
    f: &BandLimitedF,
    theta: f64,
    input: &TruncatedCarrier,
    two_l_out: u32,
    quad: &HaarQuadrature,
) -> Result<TauMatrix> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::UnsupportedParams(format!(
            "theta = {theta} is not in (0, π)"
        )));
    }
    let n = input.n();
    let t_in = input.two_l_max();
    let t1 = f.two_l1();
    let t2 = f.two_l2();
    let t_check = (two_l_out + 2).max(t_in + 2 * t1);
    quad.require(((t_check + 2 * t1 + t_in) as usize).max((t2 + t_in) as usize))?;

    let output = TruncatedCarrier::new(n, two_l_out);
    let check = TruncatedCarrier::new(n, t_check);
    let g_theta = SU2Element::g_theta(theta);
    let d_in = input.dimension();

    // Z[ν][φ][k] = ∫ D^{l2}_{cd}(z) D^l_{row_φ, k}(z⁻¹) dz
    let max_t = t2.max(t_in).max(t_check);
    let table = quad.wigner_table(max_t);
    let ints = EntryIntegrator::new(quad, max_t);
    let z_entries: Vec<WignerEntry> = {
        let mut v: Vec<WignerEntry> = f.terms().map(|((_, z), _)| *z).collect();
        v.sort();
        v.dedup();
        v
    };
    let mut zval = vec![vec![Vec::<Complex64>::new(); d_in]; z_entries.len()];
    for (iz, nu) in z_entries.iter().enumerate() {
        for (p, phi) in input.basis().iter().enumerate() {
            zval[iz][p] = (0..=phi.two_l)
                .map(|k| {
                    ints.integrate(&[
                        (*nu, false),
                        (WignerEntry::new(phi.two_l, k, phi.row), true),
                    ])
                })
                .collect();
        }
    }

    // V[φ][μ][k] = Σ_ν C[μ][ν] √(2l+1) Z[ν][φ][k]
    let y_entries: Vec<WignerEntry> = {
        let mut v: Vec<WignerEntry> = f.terms().map(|((y, _), _)| *y).collect();
        v.sort();
        v.dedup();
        v
    };
    let mut vcoef = vec![vec![Vec::<Complex64>::new(); y_entries.len()]; d_in];
    for (p, phi) in input.basis().iter().enumerate() {
        let scale = (phi.two_l as f64 + 1.0).sqrt();
        for (iy, mu) in y_entries.iter().enumerate() {
            let mut v = vec![ZERO; phi.two_l as usize + 1];
            for (iz, nu) in z_entries.iter().enumerate() {
                if let Some(c) = f.coefficient(mu, nu) {
                    for (k, vk) in v.iter_mut().enumerate() {
                        *vk += c * scale * zval[iz][p][k];
                    }
                }
            }
            vcoef[p][iy] = v;
        }
    }

    let d_check = check.dimension();
    let mut full = CMat::zeros(d_check, d_in);
    for (x, (dx, w)) in quad.nodes().iter().zip(table.iter().zip(quad.weights())) {
        let y = x.mul(&g_theta).mul(&x.inverse());
        let dy = wigner_upto(t1, &y);
        let ey: Vec<Complex64> = y_entries.iter().map(|mu| mu.eval(&dy)).collect();
        let out_vals: Vec<Complex64> = (0..d_check)
            .map(|k| check.eval_with(k, dx).conj() * *w)
            .collect();
        for (p, phi) in input.basis().iter().enumerate() {
            let col = input.column(phi.two_l) as usize;
            let dl = &dx[phi.two_l as usize];
            let mut val = ZERO;
            for (iy, e) in ey.iter().enumerate() {
                let inner = vcoef[p][iy]
                    .iter()
                    .enumerate()
                    .fold(ZERO, |acc, (k, v)| acc + v * dl[(k, col)]);
                val += e * inner;
            }
            if val == ZERO {
                continue;
            }
            for (r, o) in out_vals.iter().enumerate() {
                full[(r, p)] += o * val;
            }
        }
    }

    let d_out = output.dimension();
    let matrix = full.rows(0, d_out).into_owned();
    let leakage = (0..d_in)
        .map(|p| {
            (d_out..d_check)
                .map(|r| full[(r, p)].norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .fold(0.0, f64::max);
    Ok(TauMatrix {
        matrix,
        input: input.clone(),
        output,
        leakage,
    })
}

/// `τ^θ_l(F) = ∫ F(g_θ, z) π_l(z) dz` for the central classes `θ ∈ {0, π}`.
pub fn tau_theta_l(
    f: &BandLimitedF,
    theta: f64,
    two_l: u32,
    quad: &HaarQuadrature,
) -> Result<CMat> {
    let g = if theta.abs() < 1e-12 {
        SU2Element::identity()
    } else if (theta - PI).abs() < 1e-12 {
        SU2Element::identity().neg()
    } else {
        return Err(Error::UnsupportedParams(format!(
            "theta = {theta} is not 0 or π"
        )));
    };
    quad.require((f.two_l2() + two_l) as usize)?;
    let coeffs = f.freeze_first(&g);
    let dim = two_l as usize + 1;
    let mut out = CMat::zeros(dim, dim);
    let max_t = f.two_l2().max(two_l);
    for (z, w) in quad.nodes().iter().zip(quad.weights()) {
        let d = wigner_upto(max_t, z);
        let s = coeffs.iter().fold(ZERO, |acc, (e, c)| acc + c * e.eval(&d));
        if s != ZERO {
            out += &d[two_l as usize] * (s * *w);
        }
    }
    Ok(out)
}

/// Settings of the SU(2) property suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Su2Config {
    pub n: i32,
    /// Twice the input spin cutoff.
    pub two_l_in: u32,
    pub order: usize,
    pub seed: u64,
    /// Bands `2L₁` of the two random test functions.
    pub bands: (u32, u32),
    pub tolerance: f64,
    pub saturation_tolerance: f64,
}

impl Su2Config {
    pub fn new(n: i32, two_l_in: u32, order: usize, seed: u64) -> Self {
        Su2Config {
            n,
            two_l_in,
            order,
            seed,
            bands: (1, 1),
            tolerance: 1e-8,
            saturation_tolerance: 1e-10,
        }
    }

    /// Smallest order meeting `order ≥ 2·(L_in + band + 1)` for the combined band.
    pub fn minimal_order(two_l_in: u32, bands: (u32, u32)) -> usize {
        // 2·(L_in + band + 1) with L_in = two_l_in / 2, rounded up
        (two_l_in as usize + 2 * (bands.0 + bands.1) as usize + 2).max(1)
    }
}

struct TauRun {
    hom: f64,
    star: f64,
    leakage: f64,
    mats: Vec<CMat>,
}

fn tau_run(
    cfg: &Su2Config,
    theta: f64,
    f1: &BandLimitedF,
    f2: &BandLimitedF,
    quad: &HaarQuadrature,
) -> Result<TauRun> {
    let input = TruncatedCarrier::new(cfg.n, cfg.two_l_in);
    let (b1, b2) = (f1.band(), f2.band());
    let mid_t = cfg.two_l_in + 2 * b2;
    let out_t = mid_t + 2 * b1;
    let prod = f1.product(f2, quad)?;
    let t12 = tau_theta_n(&prod, theta, &input, out_t, quad)?;
    let t2 = tau_theta_n(f2, theta, &input, mid_t, quad)?;
    let t1 = tau_theta_n(f1, theta, &TruncatedCarrier::new(cfg.n, mid_t), out_t, quad)?;
    let hom = max_abs_diff(&t12.matrix, &(&t1.matrix * &t2.matrix));

    let out1 = cfg.two_l_in + 2 * b1;
    let tf = tau_theta_n(f1, theta, &input, out1, quad)?;
    let fs = f1.star(quad)?;
    let ts = tau_theta_n(&fs, theta, &input, out1, quad)?;
    let d = input.dimension();
    let star = max_abs_diff(
        &ts.matrix.rows(0, d).into_owned(),
        &tf.matrix.rows(0, d).adjoint(),
    );
    let leakage = [t12.leakage, t2.leakage, t1.leakage, tf.leakage, ts.leakage]
        .into_iter()
        .fold(0.0, f64::max);
    Ok(TauRun {
        hom,
        star,
        leakage,
        mats: vec![t12.matrix, t1.matrix, t2.matrix, tf.matrix, ts.matrix],
    })
}

/// Quadrature, carrier, `τ^θ_n` and `τ^θ_l` checks for one `(n, L_in, order)`.
///
/// Check ids: `quadrature_normalization`, `schur_orthogonality`,
/// `carrier_equivariance`, `carrier_orthonormality`, `tau_n_homomorphism`,
/// `tau_n_star`, `tau_n_leakage`, `tau_n_saturation`, `tau_l_character_projector`,
/// `tau_l_homomorphism`, `tau_l_star`.
pub fn verify_su2(cfg: &Su2Config) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let quad = haar_quadrature(cfg.order);
    let mut report = Report::new(
        "su2",
        &format!(
            "SU2(n={}, 2L={}, order={})",
            cfg.n,
            cfg.two_l_in,
            quad.order()
        ),
    );
    let tol = cfg.tolerance;

    report.push(
        "quadrature_normalization",
        (quad.weights().iter().sum::<f64>() - 1.0).abs(),
        1e-12,
    );
    report.push("schur_orthogonality", schur_defect(&quad, 4), 1e-12);

    let carrier = TruncatedCarrier::new(cfg.n, cfg.two_l_in);
    report.push(
        "carrier_equivariance",
        carrier.equivariance_defect(100, &mut rng),
        1e-10,
    );
    report.push(
        "carrier_orthonormality",
        carrier.orthonormality_defect(&quad)?,
        1e-12,
    );

    let f1 = BandLimitedF::random(cfg.bands.0, cfg.two_l_in, &mut rng);
    let f2 = BandLimitedF::random(cfg.bands.1, cfg.two_l_in, &mut rng);
    let theta = rng.gen_range(0.1..PI - 0.1);
    let base = tau_run(cfg, theta, &f1, &f2, &quad)?;
    let doubled = tau_run(cfg, theta, &f1, &f2, &haar_quadrature(2 * quad.order()))?;
    report.push("tau_n_homomorphism", base.hom, tol);
    report.push("tau_n_star", base.star, tol);
    report.push("tau_n_leakage", base.leakage, 1e-10);
    let saturation = base
        .mats
        .iter()
        .zip(doubled.mats.iter())
        .map(|(a, b)| max_abs_diff(a, b))
        .fold(0.0, f64::max);
    report.push("tau_n_saturation", saturation, cfg.saturation_tolerance);

    let mut projector = MaxDeviation::default();
    let mut hom_l = MaxDeviation::default();
    let mut star_l = MaxDeviation::default();
    let prod = f1.product(&f2, &quad)?;
    let f1s = f1.star(&quad)?;
    for theta in [0.0, PI] {
        for t in 0..=cfg.two_l_in {
            for tbar in 0..=cfg.two_l_in {
                let chi = BandLimitedF::character_in_second(tbar);
                let m = tau_theta_l(&chi, theta, t, &quad)?;
                let expected = if t == tbar {
                    identity(t as usize + 1) * Complex64::new(1.0 / (t as f64 + 1.0), 0.0)
                } else {
                    CMat::zeros(t as usize + 1, t as usize + 1)
                };
                projector.record(max_abs_diff(&m, &expected));
            }
            let a = tau_theta_l(&f1, theta, t, &quad)?;
            let b = tau_theta_l(&f2, theta, t, &quad)?;
            hom_l.record(max_abs_diff(
                &tau_theta_l(&prod, theta, t, &quad)?,
                &(&a * &b),
            ));
            star_l.record(max_abs_diff(
                &tau_theta_l(&f1s, theta, t, &quad)?,
                &a.adjoint(),
            ));
        }
    }
    report.push("tau_l_character_projector", projector.value(), 1e-10);
    report.push("tau_l_homomorphism", hom_l.value(), tol);
    report.push("tau_l_star", star_l.value(), tol);
    Ok(report)
}

/// Worst Schur-orthogonality deviation over spin pairs with `2l, 2l' ≤ min(cap, band/2)`.
pub fn schur_defect(quad: &HaarQuadrature, cap: u32) -> f64 {
    let top = cap.min(quad.band_limit() as u32 / 2);
    let table = quad.wigner_table(top);
    let mut dev = MaxDeviation::default();
    for t1 in 0..=top {
        for t2 in t1..=top {
            let (d1, d2) = (t1 as usize + 1, t2 as usize + 1);
            let mut gram = vec![ZERO; d1 * d1 * d2 * d2];
            for (m, w) in table.iter().zip(quad.weights()) {
                let (a, b) = (&m[t1 as usize], &m[t2 as usize]);
                let mut idx = 0;
                for i in 0..d1 {
                    for j in 0..d1 {
                        let x = a[(i, j)] * *w;
                        for k in 0..d2 {
                            for l in 0..d2 {
                                gram[idx] += x * b[(k, l)].conj();
                                idx += 1;
                            }
                        }
                    }
                }
            }
            let mut idx = 0;
            for i in 0..d1 {
                for j in 0..d1 {
                    for k in 0..d2 {
                        for l in 0..d2 {
                            let exact = if t1 == t2 && i == k && j == l {
                                1.0 / d1 as f64
                            } else {
                                0.0
                            };
                            dev.record((gram[idx] - Complex64::new(exact, 0.0)).norm());
                            idx += 1;
                        }
                    }
                }
            }
        }
    }
    dev.value()
}
