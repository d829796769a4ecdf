//! The quantum double `D(G) = C(G x G)` of a finite group.
//!
//! Algebra: the transformation group algebra of the conjugation action. On
//! the basis `delta_a (x) delta_b` the Hopf structure is
//!
//! ```text
//! Delta(d_a x d_b) = sum_{a1 a2 = a} (d_a1 x d_b) (x) (d_a2 x d_b)
//! eps(d_a x d_b)   = [a = e]
//! S(d_a x d_b)     = d_{b^-1 a^-1 b} x d_{b^-1}
//! R                = sum_x (d_x x d_e) (x) (1 x d_x)
//! ```
//!
//! i.e. `(Delta F)(a1, b1, a2, b2) = F(a1 a2, b1) [b1 = b2]`,
//! `eps(F) = sum_b F(e, b)`, `(S F)(a, b) = F(b^-1 a^-1 b, b^-1)` and
//! `R(a1, b1, a2, b2) = [b1 = e][a1 = b2]`.

mod irreps;
mod tensor;
mod verify;

use std::sync::Arc;

use num_complex::Complex64;

pub use irreps::{
    double_irreps, double_irreps_with_seed, product_rep_character, product_rep_matrix,
    tensor_decompose, DoubleIrrep, DoubleLabel,
};
pub use tensor::{tensor_multiply, Legs, Slots, TensorElement, MAX_RANK};
pub use verify::{
    verify_hopf, verify_hopf_with, verify_quasitriangular, verify_quasitriangular_with,
    verify_star, VerifyOptions,
};

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{ONE, ZERO};
use crate::tga::{conjugation_action, AlgElement, GAction};

/// Elements of `D(G)`: functions on `G x G` under the conjugation action.
pub type DoubleElement = AlgElement;

/// The conjugation action whose transformation group algebra is `D(G)`.
pub fn double_action(group: &Arc<FiniteGroup>) -> Arc<GAction> {
    Arc::new(conjugation_action(group))
}

/// Hopf structure maps on basis slots, with the antipode kept as an explicit
/// table so that it can be deliberately corrupted for negative controls.
#[derive(Debug, Clone)]
pub struct HopfStructure {
    group: Arc<FiniteGroup>,
    /// Image slot of each basis slot; `None` sends it to zero.
    antipode: Vec<Option<usize>>,
}

impl HopfStructure {
    pub fn new(group: &Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let antipode = (0..n * n)
            .map(|s| {
                let (a, b) = (s / n, s % n);
                let bi = group.inv(b);
                Some(group.mul(group.mul(bi, group.inv(a)), b) * n + bi)
            })
            .collect();
        Self {
            group: Arc::clone(group),
            antipode,
        }
    }

    /// Swaps the antipode images of two basis slots.
    pub fn with_swapped_antipode(mut self, s: usize, t: usize) -> Self {
        self.antipode.swap(s, t);
        self
    }

    /// A corrupted antipode: images of `d_e x d_e` and `d_e x d_g` swapped
    /// for the first non-identity `g`; on the trivial group the single basis
    /// element is sent to zero instead.
    pub fn corrupted(group: &Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let e = group.identity();
        let mut out = Self::new(group);
        match (0..n).find(|&g| g != e) {
            Some(g) => out.antipode.swap(e * n + e, e * n + g),
            None => out.antipode[0] = None,
        }
        out
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// `S` on one leg of a tensor.
    pub fn antipode_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        t.map_leg(leg, |s| self.antipode[s].map(|img| (img, ONE)))
    }

    pub fn antipode(&self, f: &DoubleElement) -> DoubleElement {
        let t = self.antipode_leg(&TensorElement::from_element(f), 0);
        t.to_element(f.action()).expect("rank 1")
    }
}

/// `(Delta F)(a1, b1, a2, b2) = F(a1 a2, b1) [b1 = b2]`.
pub fn coproduct(f: &DoubleElement) -> TensorElement {
    coproduct_leg(&TensorElement::from_element(f), 0).expect("rank 1 -> 2")
}

/// `Delta` applied to one leg, raising the rank by one.
pub fn coproduct_leg(t: &TensorElement, leg: usize) -> Result<TensorElement> {
    let g = t.group();
    let n = g.order();
    let rank = t.rank();
    if leg >= rank {
        return Err(Error::RankMismatch(rank, leg));
    }
    let mut out = TensorElement::zero(g, rank + 1)?;
    for (s, c) in t.entries() {
        let (a, b) = (s[leg] / n, s[leg] % n);
        for a1 in 0..n {
            let a2 = g.mul(g.inv(a1), a);
            let mut slots = [0; MAX_RANK];
            slots[..leg].copy_from_slice(&s[..leg]);
            slots[leg] = a1 * n + b;
            slots[leg + 1] = a2 * n + b;
            slots[leg + 2..=rank].copy_from_slice(&s[leg + 1..rank]);
            out.add_entry(&slots[..=rank], c);
        }
    }
    Ok(out)
}

/// `eps(F) = sum_b F(e, b)`.
pub fn counit(f: &DoubleElement) -> Complex64 {
    let g = f.action().group();
    g.elements().map(|b| f.get(g.identity(), b)).sum()
}

/// `eps` applied to one leg of a tensor of rank at least two.
pub fn counit_leg(t: &TensorElement, leg: usize) -> Result<TensorElement> {
    let g = t.group();
    let n = g.order();
    let rank = t.rank();
    if rank < 2 || leg >= rank {
        return Err(Error::RankMismatch(rank, leg));
    }
    let mut out = TensorElement::zero(g, rank - 1)?;
    for (s, c) in t.entries() {
        if s[leg] / n != g.identity() {
            continue;
        }
        let rest: Vec<usize> = (0..rank).filter(|&k| k != leg).map(|k| s[k]).collect();
        out.add_entry(&rest, c);
    }
    Ok(out)
}

/// `(SF)(a, b) = F(b^-1 a^-1 b, b^-1)`.
pub fn antipode(f: &DoubleElement) -> DoubleElement {
    let act = f.action();
    let g = act.group();
    AlgElement::from_fn(act, |a, b| {
        let bi = g.inv(b);
        f.get(g.mul(g.mul(bi, g.inv(a)), b), bi)
    })
}

/// The algebra product of legs `leg` and `leg + 1`, lowering the rank by one.
pub fn multiply_legs(t: &TensorElement, leg: usize) -> Result<TensorElement> {
    let g = t.group();
    let n = g.order();
    let rank = t.rank();
    if rank < 2 || leg + 1 >= rank {
        return Err(Error::RankMismatch(rank, leg));
    }
    let mut out = TensorElement::zero(g, rank - 1)?;
    for (s, c) in t.entries() {
        let (x, z) = (s[leg] / n, s[leg] % n);
        let (x2, w) = (s[leg + 1] / n, s[leg + 1] % n);
        if x2 != g.mul(g.mul(g.inv(z), x), z) {
            continue;
        }
        let mut slots: Vec<usize> = Vec::with_capacity(rank - 1);
        slots.extend_from_slice(&s[..leg]);
        slots.push(x * n + g.mul(z, w));
        slots.extend_from_slice(&s[leg + 2..rank]);
        out.add_entry(&slots, c);
    }
    Ok(out)
}

/// `*` on every leg: `(d_a x d_b)* = d_{b^-1 a b} x d_{b^-1}`, coefficients conjugated.
pub fn star_legs(t: &TensorElement) -> TensorElement {
    let g = Arc::clone(t.group());
    let n = g.order();
    let mut out = t.clone();
    for leg in 0..t.rank() {
        out = out.map_leg(leg, |s| {
            let (a, b) = (s / n, s % n);
            let bi = g.inv(b);
            Some((g.mul(g.mul(bi, a), b) * n + bi, ONE))
        });
    }
    // conjugate coefficients
    let mut conj = TensorElement::zero(&g, t.rank()).expect("same rank");
    for (s, c) in out.entries() {
        conj.add_entry(&s[..t.rank()], c.conj());
    }
    conj
}

/// `R = sum_x (d_x x d_e) (x) (1 x d_x)`.
pub fn r_matrix(group: &Arc<FiniteGroup>) -> TensorElement {
    let n = group.order();
    let e = group.identity();
    let mut r = TensorElement::zero(group, 2).expect("rank 2");
    for x in 0..n {
        for a2 in 0..n {
            r.add_entry(&[x * n + e, a2 * n + x], ONE);
        }
    }
    r
}

/// `(S (x) id) R`, the inverse of `R`.
pub fn r_matrix_inverse(group: &Arc<FiniteGroup>) -> TensorElement {
    HopfStructure::new(group).antipode_leg(&r_matrix(group), 0)
}

/// `Delta^op = flip . Delta`.
pub fn opposite_coproduct(f: &DoubleElement) -> TensorElement {
    coproduct(f).flip().expect("rank 2")
}

/// `c 1` as a rank-1 tensor.
pub(crate) fn unit_times(group: &Arc<FiniteGroup>, c: Complex64) -> TensorElement {
    if c == ZERO {
        TensorElement::zero(group, 1).expect("rank 1")
    } else {
        TensorElement::unit(group, 1).expect("rank 1").scale(c)
    }
}
