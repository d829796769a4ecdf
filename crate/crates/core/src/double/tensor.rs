//! Sparse elements of the tensor powers `D(G)^{(x) r}`, `r <= 3`.
//!
//! A basis element of one factor is `delta_a (x) delta_b`, stored as the slot
//! index `a |G| + b`; a tensor entry is keyed by its slots in base `|G|^2`.
//! Rank-3 tensors have `|G|^6` coordinates, so everything is sparse and only
//! nonzero entries are touched.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{ONE, ZERO};
use crate::tga::{AlgElement, GAction};

pub const MAX_RANK: usize = 3;

/// Slot indices of one entry; only the first `rank` are meaningful.
pub type Slots = [usize; MAX_RANK];

/// Which pair of the three legs a rank-2 tensor is placed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Legs {
    L12,
    L13,
    L23,
}

#[derive(Clone)]
pub struct TensorElement {
    group: Arc<FiniteGroup>,
    rank: usize,
    entries: BTreeMap<u64, Complex64>,
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TensorElement")
            .field("group", &self.group.name())
            .field("rank", &self.rank)
            .field("nonzero", &self.entries.len())
            .finish()
    }
}

impl TensorElement {
    pub fn zero(group: &Arc<FiniteGroup>, rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::UnsupportedRank(rank));
        }
        Ok(Self {
            group: Arc::clone(group),
            rank,
            entries: BTreeMap::new(),
        })
    }

    /// `1 (x) ... (x) 1` with `1 = sum_a delta_a (x) delta_e`.
    pub fn unit(group: &Arc<FiniteGroup>, rank: usize) -> Result<Self> {
        let mut out = Self::zero(group, rank)?;
        let n = group.order();
        let e = group.identity();
        let mut slots = [0; MAX_RANK];
        for idx in 0..n.pow(rank as u32) {
            let mut rest = idx;
            for k in (0..rank).rev() {
                slots[k] = (rest % n) * n + e;
                rest /= n;
            }
            out.add_entry(&slots[..rank], ONE);
        }
        Ok(out)
    }

    /// `delta_{a_1} (x) delta_{b_1} (x) ...` from `(a_k, b_k)` pairs.
    pub fn basis(group: &Arc<FiniteGroup>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut out = Self::zero(group, pairs.len())?;
        let n = group.order();
        let slots: Vec<usize> = pairs.iter().map(|&(a, b)| a * n + b).collect();
        out.add_entry(&slots, ONE);
        Ok(out)
    }

    /// Rank-1 tensor of an element of `C(G x G)`.
    pub fn from_element(f: &AlgElement) -> Self {
        let group = f.action().group();
        let mut out = Self::zero(group, 1).expect("rank 1");
        for (a, b, c) in f.support() {
            out.add_entry(&[a * group.order() + b], c);
        }
        out
    }

    /// `f_1 (x) f_2 (x) ...`
    pub fn simple(factors: &[&AlgElement]) -> Result<Self> {
        let first = factors.first().ok_or(Error::UnsupportedRank(0))?;
        let mut out = Self::from_element(first);
        for f in &factors[1..] {
            let next = Self::from_element(f);
            if !out.group.same_table(&next.group) {
                return Err(Error::ActionMismatch);
            }
            let mut joined = Self::zero(&out.group, out.rank + 1)?;
            for (s, c) in out.entries() {
                for (t, d) in next.entries() {
                    let mut slots = s;
                    slots[out.rank] = t[0];
                    joined.add_entry(&slots[..joined.rank], c * d);
                }
            }
            out = joined;
        }
        Ok(out)
    }

    /// Back to `C(G x G)` over the given (conjugation) action.
    pub fn to_element(&self, action: &Arc<GAction>) -> Result<AlgElement> {
        if self.rank != 1 {
            return Err(Error::RankMismatch(1, self.rank));
        }
        if !action.group().same_table(&self.group) {
            return Err(Error::ActionMismatch);
        }
        let n = self.group.order();
        let mut out = AlgElement::zero(action);
        for (s, c) in self.entries() {
            out.set(s[0] / n, s[0] % n, out.get(s[0] / n, s[0] % n) + c);
        }
        Ok(out)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    fn base(&self) -> u64 {
        let n = self.group.order() as u64;
        n * n
    }

    fn encode(&self, slots: &[usize]) -> u64 {
        debug_assert_eq!(slots.len(), self.rank);
        let base = self.base();
        slots.iter().fold(0u64, |k, &s| k * base + s as u64)
    }

    fn decode(&self, mut key: u64) -> Slots {
        let base = self.base();
        let mut out = [0; MAX_RANK];
        for k in (0..self.rank).rev() {
            out[k] = (key % base) as usize;
            key /= base;
        }
        out
    }

    pub fn add_entry(&mut self, slots: &[usize], c: Complex64) {
        if c == ZERO {
            return;
        }
        let key = self.encode(slots);
        *self.entries.entry(key).or_insert(ZERO) += c;
    }

    /// Coefficient at `((a_1, b_1), (a_2, b_2), ...)`.
    pub fn get(&self, pairs: &[(usize, usize)]) -> Complex64 {
        let n = self.group.order();
        let slots: Vec<usize> = pairs.iter().map(|&(a, b)| a * n + b).collect();
        self.entries
            .get(&self.encode(&slots))
            .copied()
            .unwrap_or(ZERO)
    }

    /// Entries in key order.
    pub fn entries(&self) -> impl Iterator<Item = (Slots, Complex64)> + '_ {
        self.entries.iter().map(|(&k, &c)| (self.decode(k), c))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        for c in out.entries.values_mut() {
            *c *= s;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&k, &c) in &other.entries {
            *out.entries.entry(k).or_insert(ZERO) += c;
        }
        Ok(out)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        if !self.group.same_table(&other.group) {
            return Err(Error::ActionMismatch);
        }
        Ok(())
    }

    /// `max |A - B|` over the union of supports; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.check_compatible(other).is_err() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for (k, a) in &self.entries {
            let b = other.entries.get(k).copied().unwrap_or(ZERO);
            worst = worst.max((a - b).norm());
        }
        for (k, b) in &other.entries {
            if !self.entries.contains_key(k) {
                worst = worst.max(b.norm());
            }
        }
        worst
    }

    /// Applies a per-slot basis map (slot -> slot, coefficient factor) on `leg`.
    pub(crate) fn map_leg(
        &self,
        leg: usize,
        f: impl Fn(usize) -> Option<(usize, Complex64)>,
    ) -> Self {
        let mut out = Self::zero(&self.group, self.rank).expect("same rank");
        for (mut s, c) in self.entries() {
            if let Some((t, w)) = f(s[leg]) {
                s[leg] = t;
                out.add_entry(&s[..self.rank], c * w);
            }
        }
        out
    }

    /// Reorders legs: leg `k` of the result is leg `perm[k]` of `self`.
    pub fn permute_legs(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.rank {
            return Err(Error::RankMismatch(self.rank, perm.len()));
        }
        let mut out = Self::zero(&self.group, self.rank)?;
        for (s, c) in self.entries() {
            let mut t = [0; MAX_RANK];
            for (k, &p) in perm.iter().enumerate() {
                t[k] = s[p];
            }
            out.add_entry(&t[..self.rank], c);
        }
        Ok(out)
    }

    /// `tau (x) 1`-style swap of a rank-2 tensor.
    pub fn flip(&self) -> Result<Self> {
        if self.rank != 2 {
            return Err(Error::RankMismatch(2, self.rank));
        }
        self.permute_legs(&[1, 0])
    }

    /// Places a rank-2 tensor on two of three legs with the unit on the third.
    pub fn embed(&self, legs: Legs) -> Result<Self> {
        if self.rank != 2 {
            return Err(Error::RankMismatch(2, self.rank));
        }
        let n = self.group.order();
        let e = self.group.identity();
        let mut out = Self::zero(&self.group, 3)?;
        for (s, c) in self.entries() {
            for a in 0..n {
                let u = a * n + e;
                let slots = match legs {
                    Legs::L12 => [s[0], s[1], u],
                    Legs::L13 => [s[0], u, s[1]],
                    Legs::L23 => [u, s[0], s[1]],
                };
                out.add_entry(&slots, c);
            }
        }
        Ok(out)
    }
}

/// The product of `D(G)^{(x) r}`, factor by factor:
/// `(d_a x d_z)(d_a' x d_w) = [a' = z^-1 a z] d_a x d_zw`.
pub fn tensor_multiply(a: &TensorElement, b: &TensorElement) -> Result<TensorElement> {
    a.check_compatible(b)?;
    let g = &a.group;
    let n = g.order();
    let rank = a.rank;
    let function_key = |s: &Slots| s[..rank].iter().fold(0usize, |k, &x| k * n + x / n);
    let mut buckets: HashMap<usize, Vec<(Slots, Complex64)>> = HashMap::new();
    for (s, c) in b.entries() {
        buckets.entry(function_key(&s)).or_default().push((s, c));
    }
    let mut out = TensorElement::zero(g, rank)?;
    for (s, c) in a.entries() {
        let mut need = [0; MAX_RANK];
        for k in 0..rank {
            let (x, z) = (s[k] / n, s[k] % n);
            need[k] = g.mul(g.mul(g.inv(z), x), z) * n;
        }
        let Some(bucket) = buckets.get(&function_key(&need)) else {
            continue;
        };
        for (t, d) in bucket {
            let mut slots = [0; MAX_RANK];
            for k in 0..rank {
                let (x, z) = (s[k] / n, s[k] % n);
                slots[k] = x * n + g.mul(z, t[k] % n);
            }
            out.add_entry(&slots[..rank], c * d);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;
    use crate::tga::conjugation_action;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(name: &str) -> (Arc<FiniteGroup>, Arc<GAction>) {
        let g = Arc::new(builtin(&name.parse().unwrap()).unwrap());
        let act = Arc::new(conjugation_action(&g));
        (g, act)
    }

    /// Dense oracle for rank-2 products written directly from the formula
    /// `(T1 T2)(x1,y1,x2,y2) = sum_{z1,z2} T1(x1,z1,x2,z2) T2(z1^-1 x1 z1, z1^-1 y1, z2^-1 x2 z2, z2^-1 y2)`.
    fn dense_rank2_product(t1: &TensorElement, t2: &TensorElement) -> TensorElement {
        let g = t1.group();
        let n = g.order();
        let mut out = TensorElement::zero(g, 2).unwrap();
        for x1 in 0..n {
            for y1 in 0..n {
                for x2 in 0..n {
                    for y2 in 0..n {
                        let mut acc = ZERO;
                        for z1 in 0..n {
                            for z2 in 0..n {
                                let (i1, i2) = (g.inv(z1), g.inv(z2));
                                acc += t1.get(&[(x1, z1), (x2, z2)])
                                    * t2.get(&[
                                        (g.mul(g.mul(i1, x1), z1), g.mul(i1, y1)),
                                        (g.mul(g.mul(i2, x2), z2), g.mul(i2, y2)),
                                    ]);
                            }
                        }
                        out.add_entry(&[x1 * n + y1, x2 * n + y2], acc);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn rank_bounds() {
        let (g, _) = setup("Z2");
        assert_eq!(
            TensorElement::zero(&g, 4).unwrap_err(),
            Error::UnsupportedRank(4)
        );
        assert_eq!(
            TensorElement::zero(&g, 0).unwrap_err(),
            Error::UnsupportedRank(0)
        );
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let (g, _) = setup("Z3");
        let a = TensorElement::unit(&g, 2).unwrap();
        let b = TensorElement::unit(&g, 3).unwrap();
        assert_eq!(
            tensor_multiply(&a, &b).unwrap_err(),
            Error::RankMismatch(2, 3)
        );
    }

    #[test]
    fn unit_is_neutral() {
        let (g, act) = setup("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f1 = AlgElement::random(&act, &mut rng);
        let f2 = AlgElement::random(&act, &mut rng);
        let t = TensorElement::simple(&[&f1, &f2]).unwrap();
        let one = TensorElement::unit(&g, 2).unwrap();
        assert!(tensor_multiply(&one, &t).unwrap().max_abs_diff(&t) < 1e-14);
        assert!(tensor_multiply(&t, &one).unwrap().max_abs_diff(&t) < 1e-14);
    }

    #[test]
    fn rank_one_product_matches_algebra() {
        let (_, act) = setup("D4");
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f1 = AlgElement::random(&act, &mut rng);
        let f2 = AlgElement::random(&act, &mut rng);
        let t = tensor_multiply(
            &TensorElement::from_element(&f1),
            &TensorElement::from_element(&f2),
        )
        .unwrap();
        let direct = f1.multiply(&f2).unwrap();
        assert!(t.to_element(&act).unwrap().max_abs_diff(&direct) < 1e-12);
    }

    #[test]
    fn product_matches_dense_oracle() {
        let (g, act) = setup("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let a = TensorElement::simple(&[
            &AlgElement::random(&act, &mut rng),
            &AlgElement::random(&act, &mut rng),
        ])
        .unwrap()
        .add(&TensorElement::basis(&g, &[(1, 2), (3, 4)]).unwrap())
        .unwrap();
        let b = TensorElement::simple(&[
            &AlgElement::random(&act, &mut rng),
            &AlgElement::random(&act, &mut rng),
        ])
        .unwrap();
        let fast = tensor_multiply(&a, &b).unwrap();
        assert!(fast.max_abs_diff(&dense_rank2_product(&a, &b)) < 1e-12);
    }

    #[test]
    fn embeddings_of_unit_and_slots() {
        let (g, _) = setup("S3");
        let u2 = TensorElement::unit(&g, 2).unwrap();
        let u3 = TensorElement::unit(&g, 3).unwrap();
        for legs in [Legs::L12, Legs::L13, Legs::L23] {
            assert_eq!(u2.embed(legs).unwrap().max_abs_diff(&u3), 0.0);
        }
        let t = TensorElement::basis(&g, &[(1, 2), (3, 4)]).unwrap();
        let e13 = t.embed(Legs::L13).unwrap();
        assert_eq!(e13.nnz(), 6);
        assert_eq!(e13.get(&[(1, 2), (5, 0), (3, 4)]), ONE);
    }

    #[test]
    fn embedding_commutes_with_multiplication() {
        let (_, act) = setup("D3");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mk = |rng: &mut ChaCha8Rng| {
            TensorElement::simple(&[
                &AlgElement::random(&act, rng),
                &AlgElement::random(&act, rng),
            ])
            .unwrap()
        };
        let (a, b) = (mk(&mut rng), mk(&mut rng));
        let ab = tensor_multiply(&a, &b).unwrap();
        for legs in [Legs::L12, Legs::L13, Legs::L23] {
            let lhs = tensor_multiply(&a.embed(legs).unwrap(), &b.embed(legs).unwrap()).unwrap();
            assert!(lhs.max_abs_diff(&ab.embed(legs).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn flip_is_involution() {
        let (g, _) = setup("Q8");
        let t = TensorElement::basis(&g, &[(1, 2), (3, 4)]).unwrap();
        let f = t.flip().unwrap();
        assert_eq!(f.get(&[(3, 4), (1, 2)]), ONE);
        assert_eq!(f.flip().unwrap().max_abs_diff(&t), 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn simple_tensors_multiply_factorwise(seed in any::<u64>()) {
            let (_, act) = setup("S3");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f: Vec<AlgElement> = (0..4).map(|_| AlgElement::random(&act, &mut rng)).collect();
            let lhs = tensor_multiply(
                &TensorElement::simple(&[&f[0], &f[1]]).unwrap(),
                &TensorElement::simple(&[&f[2], &f[3]]).unwrap(),
            ).unwrap();
            let rhs = TensorElement::simple(&[&f[0].multiply(&f[2]).unwrap(), &f[1].multiply(&f[3]).unwrap()]).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
        }

        #[test]
        fn rank_two_product_is_associative(seed in any::<u64>()) {
            let (_, act) = setup("Z2xZ2");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut mk = || {
                let a = TensorElement::simple(&[&AlgElement::random(&act, &mut rng), &AlgElement::random(&act, &mut rng)]).unwrap();
                let b = TensorElement::simple(&[&AlgElement::random(&act, &mut rng), &AlgElement::random(&act, &mut rng)]).unwrap();
                a.add(&b).unwrap()
            };
            let (a, b, c) = (mk(), mk(), mk());
            let left = tensor_multiply(&tensor_multiply(&a, &b).unwrap(), &c).unwrap();
            let right = tensor_multiply(&a, &tensor_multiply(&b, &c).unwrap()).unwrap();
            prop_assert!(left.max_abs_diff(&right) < 1e-10);
        }
    }
}
