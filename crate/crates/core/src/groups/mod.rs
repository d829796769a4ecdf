//! Finite groups given by Cayley tables.
//!
//! Elements are the indices `0..n`. Element order is part of the public
//! contract: built-in families document their canonical ordering, so every
//! derived table (classes, cosets, irreps) is reproducible.

mod builtin;
mod characters;
mod irreps;

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builtin::{builtin, permutations, Builtin, MAX_SYMMETRIC_DEGREE};
pub use characters::{character_table, CharacterTable};
pub use irreps::{irreps, irreps_with_seed, GroupIrrep, IrrepJson};

/// Largest order for which associativity is checked on every triple.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;

const SPOT_CHECKS: usize = 20_000;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: Option<String>,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    identity: usize,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

/// On-disk group format: `{ "name": ..., "order": n, "cayley": [[...]] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub cayley: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives identity and inverses.
    pub fn from_cayley_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has length {} in a table of order {n}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidTable(format!(
                    "entry {bad} in row {i} is out of range"
                )));
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or(Error::NoIdentity)?;

        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = mul(a, b);
                    for c in 0..n {
                        if mul(ab, c) != mul(a, mul(b, c)) {
                            return Err(Error::NonAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..SPOT_CHECKS {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(Error::NonAssociative(a, b, c));
                }
            }
        }

        let mut inverse = vec![0; n];
        for (g, slot) in inverse.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&h| mul(g, h) == identity && mul(h, g) == identity)
                .ok_or(Error::NoInverse(g))?;
        }

        Ok(Self {
            name: None,
            order: n,
            table: flat,
            inverse,
            identity,
        })
    }

    pub fn from_json(json: &GroupJson) -> Result<Self> {
        if json.cayley.len() != json.order {
            return Err(Error::InvalidTable(format!(
                "declared order {} but table has {} rows",
                json.order,
                json.cayley.len()
            )));
        }
        Ok(Self::from_cayley_table(json.cayley.clone())?.with_name(&json.name))
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            name: self.name().to_string(),
            order: self.order,
            cayley: self.cayley_rows(),
        }
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Same multiplication table, ignoring the name.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order && self.table == other.table
    }

    pub fn name(&self) -> &str {
        self.name.as_deref().unwrap_or("unnamed")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inverse[g]
    }

    /// `g x g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Greedy generating set: each new generator is the smallest element
    /// outside the subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span: HashSet<usize> = [self.identity].into_iter().collect();
        for g in self.elements() {
            if !span.contains(&g) {
                gens.push(g);
                span = self.closure(&gens);
            }
        }
        gens
    }

    fn closure(&self, gens: &[usize]) -> HashSet<usize> {
        let mut span: HashSet<usize> = [self.identity].into_iter().collect();
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if span.insert(y) {
                    frontier.push(y);
                }
            }
        }
        span
    }

    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        conjugacy_classes(self)
    }
}

/// A conjugacy class; `representative` is its smallest element index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Partition into conjugacy classes, sorted by representative.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<ConjugacyClass> {
    let mut seen = vec![false; g.order()];
    let mut classes = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        let mut members: Vec<usize> = g.elements().map(|h| g.conj(h, x)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            seen[m] = true;
        }
        classes.push(ConjugacyClass {
            representative: x,
            members,
        });
    }
    classes
}

/// `class_of[g]` = index of the class containing `g`.
pub fn class_index(classes: &[ConjugacyClass], order: usize) -> Vec<usize> {
    let mut idx = vec![usize::MAX; order];
    for (k, c) in classes.iter().enumerate() {
        for &m in &c.members {
            idx[m] = k;
        }
    }
    idx
}

/// A subgroup, carrying its induced Cayley table on local indices.
///
/// `members[i]` is the parent element with local index `i`; members are sorted
/// ascending so the local ordering is inherited from the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    local_index: Vec<Option<usize>>,
    local: FiniteGroup,
}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let mut local_index = vec![None; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            if m >= parent.order() {
                return Err(Error::NotASubgroup(members));
            }
            local_index[m] = Some(i);
        }
        let closed = local_index[parent.identity()].is_some()
            && members.iter().all(|&a| {
                local_index[parent.inv(a)].is_some()
                    && members
                        .iter()
                        .all(|&b| local_index[parent.mul(a, b)].is_some())
            });
        if !closed {
            return Err(Error::NotASubgroup(members));
        }
        let table: Vec<Vec<usize>> = members
            .iter()
            .map(|&a| {
                members
                    .iter()
                    .map(|&b| local_index[parent.mul(a, b)].unwrap())
                    .collect()
            })
            .collect();
        let local = FiniteGroup::from_cayley_table(table)?.with_name(&format!(
            "subgroup of {} (order {})",
            parent.name(),
            members.len()
        ));
        Ok(Self {
            parent,
            members,
            local_index,
            local,
        })
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let members = parent.elements().collect();
        Self::new(parent, members).expect("whole group is a subgroup")
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.local_index[g].is_some()
    }

    pub fn local_index(&self, g: usize) -> Option<usize> {
        self.local_index[g]
    }

    /// The subgroup as an abstract group on local indices.
    pub fn as_group(&self) -> &FiniteGroup {
        &self.local
    }
}

/// All `h` with `hg = gh`.
pub fn centralizer(group: &Arc<FiniteGroup>, g: usize) -> Subgroup {
    let members: Vec<usize> = group
        .elements()
        .filter(|&h| group.mul(h, g) == group.mul(g, h))
        .collect();
    let class_size = {
        let mut c: Vec<usize> = group.elements().map(|h| group.conj(h, g)).collect();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    assert_eq!(
        class_size * members.len(),
        group.order(),
        "orbit-stabilizer violated for element {g}"
    );
    Subgroup::new(Arc::clone(group), members).expect("centralizer is a subgroup")
}

/// Left coset representatives of `h` in its parent.
///
/// The coset `H` itself comes first with representative `e`; every other coset
/// is represented by its smallest element, in increasing order.
pub fn left_coset_section(h: &Subgroup) -> Vec<usize> {
    let g = h.parent();
    let mut covered = vec![false; g.order()];
    let mut reps = vec![g.identity()];
    for &m in h.members() {
        covered[m] = true;
    }
    for x in g.elements() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &m in h.members() {
            covered[g.mul(x, m)] = true;
        }
    }
    reps
}

/// For each element `x`, the index `i` of its coset and `n in H` with `x = s_i n`.
pub fn coset_decomposition(h: &Subgroup, reps: &[usize]) -> Vec<(usize, usize)> {
    let g = h.parent();
    let mut out = vec![(usize::MAX, usize::MAX); g.order()];
    for (i, &s) in reps.iter().enumerate() {
        for &n in h.members() {
            out[g.mul(s, n)] = (i, n);
        }
    }
    out
}
