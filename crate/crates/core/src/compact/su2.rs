//! SU(2) elements, Wigner matrices and a Haar product quadrature.
//!
//! Conventions: an element is the matrix `[[a, b], [-conj b, conj a]]` with
//! `a = w + iz`, `b = y + ix` for the unit quaternion `(w, x, y, z)`.
//! Euler angles are z-y-z: `g = R_z(φ) R_y(θ) R_z(ψ)` with
//! `R_z(α) = diag(e^{-iα/2}, e^{iα/2})`, `R_y(θ) = [[cos θ/2, -sin θ/2], [sin θ/2, cos θ/2]]`,
//! `φ ∈ [0, 2π)`, `θ ∈ [0, π]`, `ψ ∈ [0, 4π)`.
//!
//! Spins are passed as `two_l = 2l`. Row `r` of `π_l` carries weight `m = l - r`.

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{CMat, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SU2Element {
    q: [f64; 4],
}

impl SU2Element {
    pub fn identity() -> Self {
        SU2Element {
            q: [1.0, 0.0, 0.0, 0.0],
        }
    }

    /// Normalizes `q`; a zero quaternion maps to the identity.
    pub fn from_quaternion(q: [f64; 4]) -> Self {
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n == 0.0 {
            return Self::identity();
        }
        SU2Element {
            q: q.map(|x| x / n),
        }
    }

    /// From the first row `(a, b)` of the matrix; normalized.
    pub fn from_ab(a: Complex64, b: Complex64) -> Self {
        Self::from_quaternion([a.re, b.im, b.re, a.im])
    }

    pub fn from_euler(phi: f64, theta: f64, psi: f64) -> Self {
        let a = Complex64::from_polar((theta / 2.0).cos(), -(phi + psi) / 2.0);
        let b = -Complex64::from_polar((theta / 2.0).sin(), -(phi - psi) / 2.0);
        Self::from_ab(a, b)
    }

    /// `diag(e^{iθ}, e^{-iθ})`.
    pub fn g_theta(theta: f64) -> Self {
        Self::from_ab(Complex64::from_polar(1.0, theta), ZERO)
    }

    /// Haar-uniform sample (uniform on the 3-sphere).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let n2: f64 = q.iter().map(|x| x * x).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                return Self::from_quaternion(q);
            }
        }
    }

    pub fn quaternion(&self) -> [f64; 4] {
        self.q
    }

    pub fn a(&self) -> Complex64 {
        Complex64::new(self.q[0], self.q[3])
    }

    pub fn b(&self) -> Complex64 {
        Complex64::new(self.q[2], self.q[1])
    }

    pub fn matrix(&self) -> Matrix2<Complex64> {
        let (a, b) = (self.a(), self.b());
        Matrix2::new(a, b, -b.conj(), a.conj())
    }

    pub fn norm_defect(&self) -> f64 {
        (self.q.iter().map(|x| x * x).sum::<f64>() - 1.0).abs()
    }

    pub fn mul(&self, other: &SU2Element) -> SU2Element {
        let (a1, b1, a2, b2) = (self.a(), self.b(), other.a(), other.b());
        let a = a1 * a2 - b1 * b2.conj();
        let b = a1 * b2 + b1 * a2.conj();
        // renormalize to keep drift out of long products
        Self::from_ab(a, b)
    }

    pub fn inverse(&self) -> SU2Element {
        let [w, x, y, z] = self.q;
        SU2Element { q: [w, -x, -y, -z] }
    }

    pub fn neg(&self) -> SU2Element {
        SU2Element {
            q: self.q.map(|x| -x),
        }
    }

    /// `(φ, θ, ψ)` in the ranges of the module convention.
    pub fn euler(&self) -> (f64, f64, f64) {
        let (a, b) = (self.a(), self.b());
        let theta = 2.0 * b.norm().atan2(a.norm());
        // a = cos(θ/2) e^{-i(φ+ψ)/2}, -b = sin(θ/2) e^{-i(φ-ψ)/2}
        let sum = if a.norm() > 1e-15 {
            -2.0 * a.arg()
        } else {
            0.0
        };
        let diff = if b.norm() > 1e-15 {
            -2.0 * (-b).arg()
        } else {
            0.0
        };
        let mut phi = (sum + diff) / 2.0;
        let mut psi = (sum - diff) / 2.0;
        phi = phi.rem_euclid(4.0 * PI);
        psi = psi.rem_euclid(4.0 * PI);
        // (φ + 2π, ψ + 2π) is the same element; fold φ into [0, 2π)
        if phi >= 2.0 * PI {
            phi -= 2.0 * PI;
            psi = (psi + 2.0 * PI).rem_euclid(4.0 * PI);
        }
        (phi, theta, psi)
    }

    pub fn distance(&self, other: &SU2Element) -> f64 {
        self.q
            .iter()
            .zip(other.q.iter())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `π_l(g)` on the normalized monomial basis `x^{2l-r} y^r / sqrt((2l-r)! r!)`,
/// with `(π(g)p)(v) = p(v g)` for row vectors `v = (x, y)`. `π_{1/2}(g) = g`.
pub fn wigner(two_l: u32, g: &SU2Element) -> CMat {
    let m = g.matrix();
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let n = two_l;
    let dim = (n + 1) as usize;
    let mut out = CMat::zeros(dim, dim);
    for r in 0..=n {
        // image of x^{n-r} y^r = (a x + c y)^{n-r} (b x + d y)^r
        for k in 0..=(n - r) {
            let left = binomial(n - r, k) * a.powu(k) * c.powu(n - r - k);
            for s in 0..=r {
                let right = binomial(r, s) * b.powu(s) * d.powu(r - s);
                // power of x is k + s, so the target row is r' = n - k - s
                let rp = n - k - s;
                out[(rp as usize, r as usize)] += left * right;
            }
        }
    }
    for rp in 0..=n {
        for r in 0..=n {
            let scale =
                (factorial(n - rp) * factorial(rp) / (factorial(n - r) * factorial(r))).sqrt();
            out[(rp as usize, r as usize)] *= scale;
        }
    }
    out
}

/// Character of `π_l`.
pub fn character(two_l: u32, g: &SU2Element) -> Complex64 {
    wigner(two_l, g).trace()
}

/// Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on `P_k`.
pub fn gauss_legendre(k: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    for i in 0..k.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // p1 = P_k(x), p0 = P_{k-1}(x)
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=k {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = k as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[k - 1 - i] = x;
        weights[i] = w;
        weights[k - 1 - i] = w;
    }
    if k % 2 == 1 {
        nodes[k / 2] = 0.0;
    }
    (nodes, weights)
}

/// Product rule for the normalized Haar measure.
///
/// For `order = p`: `p+1` trapezoid points in φ, `2p+2` in ψ and `⌈(p+1)/2⌉`
/// Gauss–Legendre points in cos θ. Every matrix coefficient of `π_l` with
/// `2l ≤ 2p` integrates exactly, so `band_limit = 2·order`.
#[derive(Debug, Clone)]
pub struct HaarQuadrature {
    order: usize,
    band_limit: usize,
    nodes: Vec<SU2Element>,
    weights: Vec<f64>,
}

pub fn haar_quadrature(order: usize) -> HaarQuadrature {
    let p = order.max(1);
    let n_phi = p + 1;
    let n_psi = 2 * p + 2;
    let (xs, ws) = gauss_legendre((p + 1).div_ceil(2));
    let mut nodes = Vec::with_capacity(n_phi * n_psi * xs.len());
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (x, w) in xs.iter().zip(ws.iter()) {
        let theta = x.clamp(-1.0, 1.0).acos();
        for i in 0..n_phi {
            let phi = 2.0 * PI * i as f64 / n_phi as f64;
            for j in 0..n_psi {
                let psi = 4.0 * PI * j as f64 / n_psi as f64;
                nodes.push(SU2Element::from_euler(phi, theta, psi));
                weights.push(w / 2.0 / (n_phi * n_psi) as f64);
            }
        }
    }
    HaarQuadrature {
        order: p,
        band_limit: 2 * p,
        nodes,
        weights,
    }
}

impl HaarQuadrature {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn band_limit(&self) -> usize {
        self.band_limit
    }

    pub fn nodes(&self) -> &[SU2Element] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Fails with `BandLimitExceeded` unless `required ≤ band_limit`.
    pub fn require(&self, required: usize) -> crate::Result<()> {
        if required > self.band_limit {
            return Err(crate::Error::BandLimitExceeded {
                required,
                available: self.band_limit,
            });
        }
        Ok(())
    }

    /// Sum in node order (deterministic).
    pub fn integrate<F: FnMut(&SU2Element) -> Complex64>(&self, mut f: F) -> Complex64 {
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .fold(ZERO, |acc, (g, w)| acc + f(g) * *w)
    }

    /// Wigner matrices for every spin `0..=max_two_l` at every node.
    pub(crate) fn wigner_table(&self, max_two_l: u32) -> Vec<Vec<CMat>> {
        self.nodes
            .iter()
            .map(|g| (0..=max_two_l).map(|t| wigner(t, g)).collect())
            .collect()
    }
}
