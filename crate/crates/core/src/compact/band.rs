//! Band-limited functions on SU(2)×SU(2), the dense computable subclass of
//! `C(G×G)` on which the double's product and star are evaluated.
//!
//! `F(y, z) = Σ c · D^{l}_{ab}(y) · D^{l'}_{cd}(z)` with `2l ≤ two_l1`,
//! `2l' ≤ two_l2`. The *band* of `F` is `two_l1 = 2·L₁`: the spin growth of
//! `x ↦ F(x g x⁻¹, ·)`, hence the amount by which `τ(F)` raises the spin cutoff.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::su2::{gauss_legendre, wigner, HaarQuadrature, SU2Element};
use crate::linalg::{random_complex, CMat, ZERO};
use crate::Result;

/// Entry `(row, col)` of `π_l` with `two_l = 2l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct WignerEntry {
    pub two_l: u32,
    pub row: u32,
    pub col: u32,
}

impl WignerEntry {
    pub fn new(two_l: u32, row: u32, col: u32) -> Self {
        assert!(row <= two_l && col <= two_l, "Wigner entry out of range");
        WignerEntry { two_l, row, col }
    }

    pub fn eval(&self, table: &[CMat]) -> Complex64 {
        table[self.two_l as usize][(self.row as usize, self.col as usize)]
    }

    /// All entries with `2l ≤ max_two_l`, optionally restricted to one parity of `2l`.
    pub fn all(max_two_l: u32, parity: Option<u32>) -> Vec<WignerEntry> {
        (0..=max_two_l)
            .filter(|t| parity.is_none_or(|p| t % 2 == p % 2))
            .flat_map(|t| {
                (0..=t).flat_map(move |r| (0..=t).map(move |c| WignerEntry::new(t, r, c)))
            })
            .collect()
    }
}

pub(crate) fn wigner_upto(max_two_l: u32, g: &SU2Element) -> Vec<CMat> {
    (0..=max_two_l).map(|t| wigner(t, g)).collect()
}

/// Haar integrals of products of Wigner entries, split along Euler angles:
/// `D_ab(φ,θ,ψ) = e^{-i m_a φ} d_ab(θ) e^{-i m_b ψ}`. The torus integrals keep
/// only products of total row and column weight zero; the θ-integral uses the
/// Gauss–Legendre part of the quadrature. Within the band limit this equals the
/// full node sum.
pub(crate) struct EntryIntegrator {
    polar: Vec<(f64, Vec<CMat>)>,
}

impl EntryIntegrator {
    pub(crate) fn new(quad: &HaarQuadrature, max_two_l: u32) -> Self {
        let (xs, ws) = gauss_legendre((quad.order() + 1).div_ceil(2));
        let polar = xs
            .iter()
            .zip(&ws)
            .map(|(x, w)| {
                let g = SU2Element::from_euler(0.0, x.clamp(-1.0, 1.0).acos(), 0.0);
                (w / 2.0, wigner_upto(max_two_l, &g))
            })
            .collect();
        EntryIntegrator { polar }
    }

    /// `∫ Π D_e(g) dg`, conjugating the factors flagged `true`.
    pub(crate) fn integrate(&self, factors: &[(WignerEntry, bool)]) -> Complex64 {
        let weight = |index: fn(&WignerEntry) -> u32| -> i64 {
            factors
                .iter()
                .map(|(e, conj)| {
                    let m = e.two_l as i64 - 2 * index(e) as i64;
                    if *conj {
                        -m
                    } else {
                        m
                    }
                })
                .sum()
        };
        if weight(|e| e.row) != 0 || weight(|e| e.col) != 0 {
            return ZERO;
        }
        self.polar.iter().fold(ZERO, |acc, (w, table)| {
            acc + factors
                .iter()
                .fold(Complex64::new(*w, 0.0), |p, (e, conj)| {
                    let v = e.eval(table);
                    p * if *conj { v.conj() } else { v }
                })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandLimitedF {
    two_l1: u32,
    two_l2: u32,
    terms: BTreeMap<(WignerEntry, WignerEntry), Complex64>,
}

/// Coefficients below this are dropped after projections.
const PRUNE: f64 = 1e-13;

impl BandLimitedF {
    pub fn zero(two_l1: u32, two_l2: u32) -> Self {
        BandLimitedF {
            two_l1,
            two_l2,
            terms: BTreeMap::new(),
        }
    }

    /// Every coefficient up to the band limits drawn at random.
    pub fn random<R: Rng + ?Sized>(two_l1: u32, two_l2: u32, rng: &mut R) -> Self {
        let mut f = Self::zero(two_l1, two_l2);
        for y in WignerEntry::all(two_l1, None) {
            for z in WignerEntry::all(two_l2, None) {
                f.add_term(y, z, random_complex(rng));
            }
        }
        f
    }

    /// `F(a, b) = χ_l(b)`.
    pub fn character_in_second(two_l: u32) -> Self {
        let mut f = Self::zero(0, two_l);
        for k in 0..=two_l {
            f.add_term(
                WignerEntry::new(0, 0, 0),
                WignerEntry::new(two_l, k, k),
                Complex64::new(1.0, 0.0),
            );
        }
        f
    }

    /// Grows the declared limits if needed.
    pub fn add_term(&mut self, y: WignerEntry, z: WignerEntry, c: Complex64) {
        self.two_l1 = self.two_l1.max(y.two_l);
        self.two_l2 = self.two_l2.max(z.two_l);
        *self.terms.entry((y, z)).or_insert(ZERO) += c;
    }

    pub fn two_l1(&self) -> u32 {
        self.two_l1
    }

    pub fn two_l2(&self) -> u32 {
        self.two_l2
    }

    pub fn band(&self) -> u32 {
        self.two_l1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(WignerEntry, WignerEntry), &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, y: &WignerEntry, z: &WignerEntry) -> Option<Complex64> {
        self.terms.get(&(*y, *z)).copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c *= s);
        out
    }

    pub fn max_abs_diff(&self, other: &BandLimitedF) -> f64 {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|k| {
                let a = self.terms.get(k).copied().unwrap_or(ZERO);
                let b = other.terms.get(k).copied().unwrap_or(ZERO);
                (a - b).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn evaluate(&self, y: &SU2Element, z: &SU2Element) -> Complex64 {
        let dy = wigner_upto(self.two_l1, y);
        let dz = wigner_upto(self.two_l2, z);
        self.evaluate_with(&dy, &dz)
    }

    pub(crate) fn evaluate_with(&self, dy: &[CMat], dz: &[CMat]) -> Complex64 {
        self.terms
            .iter()
            .fold(ZERO, |acc, ((y, z), c)| acc + c * y.eval(dy) * z.eval(dz))
    }

    /// Coefficients of `z ↦ F(y, z)` for fixed `y`.
    pub(crate) fn freeze_first(&self, y: &SU2Element) -> Vec<(WignerEntry, Complex64)> {
        let dy = wigner_upto(self.two_l1, y);
        let mut out: BTreeMap<WignerEntry, Complex64> = BTreeMap::new();
        for ((ey, ez), c) in &self.terms {
            *out.entry(*ez).or_insert(ZERO) += c * ey.eval(&dy);
        }
        out.into_iter().collect()
    }

    fn pruned(mut self) -> Self {
        self.terms.retain(|_, c| c.norm() > PRUNE);
        self
    }

    /// Twisted convolution `(F1•F2)(y, w) = ∫ F1(y, z) F2(z⁻¹yz, z⁻¹w) dz`,
    /// with the z-integral done by quadrature and the result re-expanded by
    /// quadrature projection onto Wigner entries in `y`.
    pub fn product(&self, other: &BandLimitedF, quad: &HaarQuadrature) -> Result<BandLimitedF> {
        let (a1, a2, b1, b2) = (self.two_l1, self.two_l2, other.two_l1, other.two_l2);
        // z-integrand: f_ν1(z) · D^{l}(z)^† D^{l}(z) · D^{l'}(z)^†
        // y-projection: e_μ1(y) D^{l}(y) against spins up to l1 + l
        quad.require((a2 + 2 * b1 + b2).max(2 * (a1 + b1)) as usize)?;
        let ints = EntryIntegrator::new(quad, a2.max(b1).max(b2).max(a1 + b1));

        let mut zmemo: HashMap<[u32; 9], Complex64> = HashMap::new();
        let mut zint = |nu1: WignerEntry,
                        l: u32,
                        k: u32,
                        a2: u32,
                        kp: u32,
                        b2: u32,
                        lp: u32,
                        j: u32,
                        c2: u32| {
            *zmemo
                .entry([
                    nu1.two_l * 10000 + nu1.row * 100 + nu1.col,
                    l,
                    k,
                    a2,
                    kp,
                    b2,
                    lp,
                    j,
                    c2,
                ])
                .or_insert_with(|| {
                    ints.integrate(&[
                        (nu1, false),
                        (WignerEntry::new(l, k, a2), true),
                        (WignerEntry::new(l, kp, b2), false),
                        (WignerEntry::new(lp, j, c2), true),
                    ])
                })
        };

        // (μ1, l, k, k') → expansion of e_μ1(y) D^l_{kk'}(y)
        let mut ymemo: HashMap<(WignerEntry, WignerEntry), Vec<(WignerEntry, Complex64)>> =
            HashMap::new();
        let mut yproj = |mu1: WignerEntry, e: WignerEntry| -> Vec<(WignerEntry, Complex64)> {
            ymemo
                .entry((mu1, e))
                .or_insert_with(|| {
                    let lo = mu1.two_l.abs_diff(e.two_l);
                    let hi = mu1.two_l + e.two_l;
                    let mut out = Vec::new();
                    for target in WignerEntry::all(hi, Some(hi))
                        .into_iter()
                        .filter(|t| t.two_l >= lo)
                    {
                        let s = ints.integrate(&[(mu1, false), (e, false), (target, true)])
                            * (target.two_l as f64 + 1.0);
                        if s.norm() > PRUNE {
                            out.push((target, s));
                        }
                    }
                    out
                })
                .clone()
        };

        let mut acc: BTreeMap<(WignerEntry, WignerEntry), Complex64> = BTreeMap::new();
        for ((mu1, nu1), c1) in &self.terms {
            for ((mu2, nu2), c2v) in &other.terms {
                let c = c1 * c2v;
                let l = mu2.two_l;
                let lp = nu2.two_l;
                for k in 0..=l {
                    for kp in 0..=l {
                        for j in 0..=lp {
                            let zi = zint(*nu1, l, k, mu2.row, kp, mu2.col, lp, j, nu2.row);
                            if zi.norm() <= PRUNE {
                                continue;
                            }
                            let w_entry = WignerEntry::new(lp, j, nu2.col);
                            for (mu, yc) in yproj(*mu1, WignerEntry::new(l, k, kp)) {
                                *acc.entry((mu, w_entry)).or_insert(ZERO) += c * zi * yc;
                            }
                        }
                    }
                }
            }
        }
        Ok(BandLimitedF {
            two_l1: a1 + b1,
            two_l2: b2,
            terms: acc,
        }
        .pruned())
    }

    /// `F*(y, z) = conj F(z⁻¹yz, z⁻¹)`, re-expanded by quadrature projection.
    pub fn star(&self, quad: &HaarQuadrature) -> Result<BandLimitedF> {
        let (a1, a2) = (self.two_l1, self.two_l2);
        let out_z = a2 + 2 * a1;
        quad.require((2 * a1).max(2 * out_z) as usize)?;
        let ints = EntryIntegrator::new(quad, a1.max(out_z));

        // conj D^l_{kk'}(y) expanded in D^l(y)
        let mut ymemo: HashMap<WignerEntry, Vec<(WignerEntry, Complex64)>> = HashMap::new();
        let mut yproj = |e: WignerEntry| {
            ymemo
                .entry(e)
                .or_insert_with(|| {
                    let mut out = Vec::new();
                    for target in WignerEntry::all(e.two_l, Some(e.two_l))
                        .into_iter()
                        .filter(|t| t.two_l == e.two_l)
                    {
                        let s =
                            ints.integrate(&[(e, true), (target, true)]) * (e.two_l as f64 + 1.0);
                        if s.norm() > PRUNE {
                            out.push((target, s));
                        }
                    }
                    out
                })
                .clone()
        };

        // D^l_{ka}(z) conj D^l_{k'b}(z) D^{l2}_{dc}(z) expanded in Wigner entries of z
        let mut zmemo: HashMap<[u32; 8], Vec<(WignerEntry, Complex64)>> = HashMap::new();
        let mut zproj = |l: u32, k: u32, a: u32, kp: u32, b: u32, l2: u32, d: u32, c: u32| {
            zmemo
                .entry([l, k, a, kp, b, l2, d, c])
                .or_insert_with(|| {
                    let hi = 2 * l + l2;
                    let mut out = Vec::new();
                    for target in WignerEntry::all(hi, Some(l2)) {
                        let s = ints.integrate(&[
                            (WignerEntry::new(l, k, a), false),
                            (WignerEntry::new(l, kp, b), true),
                            (WignerEntry::new(l2, d, c), false),
                            (target, true),
                        ]) * (target.two_l as f64 + 1.0);
                        if s.norm() > PRUNE {
                            out.push((target, s));
                        }
                    }
                    out
                })
                .clone()
        };

        let mut acc: BTreeMap<(WignerEntry, WignerEntry), Complex64> = BTreeMap::new();
        for ((mu, nu), c) in &self.terms {
            let l = mu.two_l;
            for k in 0..=l {
                for kp in 0..=l {
                    let ys = yproj(WignerEntry::new(l, k, kp));
                    let zs = zproj(l, k, mu.row, kp, mu.col, nu.two_l, nu.col, nu.row);
                    for (ey, cy) in &ys {
                        for (ez, cz) in &zs {
                            *acc.entry((*ey, *ez)).or_insert(ZERO) += c.conj() * cy * cz;
                        }
                    }
                }
            }
        }
        Ok(BandLimitedF {
            two_l1: a1,
            two_l2: out_z,
            terms: acc,
        }
        .pruned())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compact::su2::haar_quadrature;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn entry_integrator_matches_full_node_sum() {
        let quad = haar_quadrature(6);
        let ints = EntryIntegrator::new(&quad, 4);
        let table = quad.wigner_table(4);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let entries = WignerEntry::all(3, None);
        let mut nonzero = 0;
        for _ in 0..300 {
            // three or four factors, total spin within the band limit 12
            let k = rng.gen_range(3..=4);
            let factors: Vec<(WignerEntry, bool)> = (0..k)
                .map(|_| (entries[rng.gen_range(0..entries.len())], rng.gen_bool(0.5)))
                .collect();
            let direct = table.iter().zip(quad.weights()).fold(ZERO, |acc, (d, w)| {
                acc + factors.iter().fold(Complex64::new(*w, 0.0), |p, (e, c)| {
                    p * if *c { e.eval(d).conj() } else { e.eval(d) }
                })
            });
            let fast = ints.integrate(&factors);
            assert!(
                (direct - fast).norm() < 1e-13,
                "{factors:?}: {direct} vs {fast}"
            );
            if direct.norm() > 1e-6 {
                nonzero += 1;
            }
        }
        assert!(nonzero > 5);
    }

    // Brute-force oracles: direct pointwise formulas with an independent quadrature sum.
    fn product_oracle(
        f1: &BandLimitedF,
        f2: &BandLimitedF,
        y: &SU2Element,
        w: &SU2Element,
        q: &HaarQuadrature,
    ) -> Complex64 {
        q.nodes()
            .iter()
            .zip(q.weights())
            .fold(ZERO, |acc, (z, wt)| {
                let zi = z.inverse();
                acc + f1.evaluate(y, z) * f2.evaluate(&zi.mul(y).mul(z), &zi.mul(w)) * *wt
            })
    }

    #[test]
    fn evaluation_matches_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = BandLimitedF::random(1, 2, &mut rng);
        for _ in 0..20 {
            let (y, z) = (SU2Element::random(&mut rng), SU2Element::random(&mut rng));
            let direct = f.terms().fold(ZERO, |acc, ((ey, ez), c)| {
                acc + c
                    * wigner(ey.two_l, &y)[(ey.row as usize, ey.col as usize)]
                    * wigner(ez.two_l, &z)[(ez.row as usize, ez.col as usize)]
            });
            assert!((direct - f.evaluate(&y, &z)).norm() < 1e-12);
        }
    }

    #[test]
    fn product_matches_pointwise_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f1 = BandLimitedF::random(1, 1, &mut rng);
        let f2 = BandLimitedF::random(1, 2, &mut rng);
        let q = haar_quadrature(6);
        let p = f1.product(&f2, &q).unwrap();
        assert_eq!((p.two_l1(), p.two_l2()), (2, 2));
        for _ in 0..5 {
            let (y, w) = (SU2Element::random(&mut rng), SU2Element::random(&mut rng));
            let oracle = product_oracle(&f1, &f2, &y, &w, &q);
            assert!(
                (oracle - p.evaluate(&y, &w)).norm() < 1e-10,
                "{oracle} vs {}",
                p.evaluate(&y, &w)
            );
        }
    }

    #[test]
    fn star_matches_pointwise_formula_and_is_involutive() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = BandLimitedF::random(1, 1, &mut rng);
        let q = haar_quadrature(8);
        let s = f.star(&q).unwrap();
        for _ in 0..10 {
            let (y, z) = (SU2Element::random(&mut rng), SU2Element::random(&mut rng));
            let zi = z.inverse();
            let oracle = f.evaluate(&zi.mul(&y).mul(&z), &zi).conj();
            assert!((oracle - s.evaluate(&y, &z)).norm() < 1e-10);
        }
        let ss = s.star(&q).unwrap();
        for _ in 0..10 {
            let (y, z) = (SU2Element::random(&mut rng), SU2Element::random(&mut rng));
            assert!((ss.evaluate(&y, &z) - f.evaluate(&y, &z)).norm() < 1e-10);
        }
    }

    #[test]
    fn insufficient_quadrature_is_reported() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = BandLimitedF::random(2, 2, &mut rng);
        let q = haar_quadrature(1);
        assert!(matches!(
            f.product(&f, &q),
            Err(crate::Error::BandLimitExceeded { .. })
        ));
        assert!(matches!(
            f.star(&q),
            Err(crate::Error::BandLimitExceeded { .. })
        ));
    }

    #[test]
    fn unit_like_character_convolution() {
        // χ_l * χ_l = χ_l / (2l+1) in the second variable
        let q = haar_quadrature(4);
        for t in 0..3 {
            let chi = BandLimitedF::character_in_second(t);
            let p = chi.product(&chi, &q).unwrap();
            assert!(
                p.max_abs_diff(&chi.scale(Complex64::new(1.0 / (t as f64 + 1.0), 0.0))) < 1e-12
            );
        }
    }
}
