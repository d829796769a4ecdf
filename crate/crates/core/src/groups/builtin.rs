//! Built-in group families and their canonical element orderings.
//!
//! * `Cyclic(n)`: element `k` is `k mod n`, product is addition.
//! * `Dihedral(n)`: order `2n`; `k < n` is the rotation `r^k`, `n + k` is the
//!   reflection `r^k s`, with `s r s = r^-1`.
//! * `Symmetric(n)`: permutations of `0..n` in lexicographic order of their
//!   one-line notation; `(p q)(i) = p(q(i))`.
//! * `Quaternion8`: `1, -1, i, -i, j, -j, k, -k`.
//! * `DirectProduct(a, b)`: `(x, y)` has index `x * |b| + y`.

use std::fmt;
use std::str::FromStr;

use super::FiniteGroup;
use crate::error::{Error, Result};

pub const MAX_SYMMETRIC_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion8,
    DirectProduct(Box<Builtin>, Box<Builtin>),
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Cyclic(1) => write!(f, "trivial"),
            Builtin::Cyclic(n) => write!(f, "Z{n}"),
            Builtin::Dihedral(n) => write!(f, "D{n}"),
            Builtin::Symmetric(n) => write!(f, "S{n}"),
            Builtin::Quaternion8 => write!(f, "Q8"),
            Builtin::DirectProduct(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    /// Accepts `trivial`, `Z<n>`/`C<n>`, `D<n>`, `S<n>`, `Q8` and products
    /// joined by `x`, e.g. `Z2xZ2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('x') {
            return Ok(Builtin::DirectProduct(
                Box::new(a.parse()?),
                Box::new(b.parse()?),
            ));
        }
        let bad = || Error::UnsupportedParams(format!("unknown group name {s:?}"));
        if s.eq_ignore_ascii_case("trivial") {
            return Ok(Builtin::Cyclic(1));
        }
        if s.eq_ignore_ascii_case("q8") {
            return Ok(Builtin::Quaternion8);
        }
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "Z" | "C" | "z" | "c" => Ok(Builtin::Cyclic(n)),
            "D" | "d" => Ok(Builtin::Dihedral(n)),
            "S" | "s" => Ok(Builtin::Symmetric(n)),
            _ => Err(bad()),
        }
    }
}

pub fn builtin(spec: &Builtin) -> Result<FiniteGroup> {
    let table = match spec {
        Builtin::Cyclic(n) => cyclic(*n)?,
        Builtin::Dihedral(n) => dihedral(*n)?,
        Builtin::Symmetric(n) => symmetric(*n)?,
        Builtin::Quaternion8 => quaternion8(),
        Builtin::DirectProduct(a, b) => {
            let (ga, gb) = (builtin(a)?, builtin(b)?);
            let (na, nb) = (ga.order(), gb.order());
            (0..na * nb)
                .map(|p| {
                    (0..na * nb)
                        .map(|q| ga.mul(p / nb, q / nb) * nb + gb.mul(p % nb, q % nb))
                        .collect()
                })
                .collect()
        }
    };
    Ok(FiniteGroup::from_cayley_table(table)?.with_name(&spec.to_string()))
}

fn cyclic(n: usize) -> Result<Vec<Vec<usize>>> {
    if n == 0 {
        return Err(Error::UnsupportedParams("cyclic group needs n >= 1".into()));
    }
    Ok((0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect())
}

fn dihedral(n: usize) -> Result<Vec<Vec<usize>>> {
    if n == 0 {
        return Err(Error::UnsupportedParams(
            "dihedral group needs n >= 1".into(),
        ));
    }
    // r^a s^f * r^b s^g = r^(a + (-1)^f b) s^(f + g)
    let split = |x: usize| (x % n, x / n);
    Ok((0..2 * n)
        .map(|x| {
            let (a, f) = split(x);
            (0..2 * n)
                .map(|y| {
                    let (b, g) = split(y);
                    let rot = if f == 0 { (a + b) % n } else { (a + n - b) % n };
                    rot + n * ((f + g) % 2)
                })
                .collect()
        })
        .collect())
}

/// Lexicographically ordered permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn symmetric(n: usize) -> Result<Vec<Vec<usize>>> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::UnsupportedParams(format!(
            "symmetric group degree must be in 1..={MAX_SYMMETRIC_DEGREE}, got {n}"
        )));
    }
    let perms = permutations(n);
    let index: std::collections::HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    Ok(perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                    index[pq.as_slice()]
                })
                .collect()
        })
        .collect())
}

fn quaternion8() -> Vec<Vec<usize>> {
    // Units as (sign, basis) with basis 0 = 1, 1 = i, 2 = j, 3 = k.
    const PROD: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let decode = |x: usize| (if x.is_multiple_of(2) { 1i8 } else { -1 }, x / 2);
    (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let ((sx, bx), (sy, by)) = (decode(x), decode(y));
                    let (s, b) = PROD[bx][by];
                    2 * b + usize::from(sx * sy * s < 0)
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four() {
        let g = builtin(&Builtin::Cyclic(4)).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.element_order(1), 4);
    }

    #[test]
    fn family_orders_and_class_counts() {
        let cases = [
            (Builtin::Symmetric(3), 6, 3),
            (Builtin::Symmetric(4), 24, 5),
            (Builtin::Quaternion8, 8, 5),
            (Builtin::Dihedral(4), 8, 5),
            (Builtin::Dihedral(3), 6, 3),
            (Builtin::Dihedral(1), 2, 2),
            (Builtin::Cyclic(1), 1, 1),
        ];
        for (b, order, classes) in cases {
            let g = builtin(&b).unwrap();
            assert_eq!(g.order(), order, "{b}");
            assert_eq!(g.conjugacy_classes().len(), classes, "{b}");
        }
    }

    #[test]
    fn quaternion_relations() {
        let g = builtin(&Builtin::Quaternion8).unwrap();
        let (minus_one, i, j, k) = (1, 2, 4, 6);
        assert_eq!(g.mul(i, i), minus_one);
        assert_eq!(g.mul(i, j), k);
        assert_eq!(g.mul(j, i), k + 1);
        assert_eq!(g.element_order(i), 4);
        assert!(!g.is_abelian());
    }

    #[test]
    fn dihedral_relations() {
        let n = 5;
        let g = builtin(&Builtin::Dihedral(n)).unwrap();
        let (r, s) = (1, n);
        assert_eq!(g.element_order(r), n);
        assert_eq!(g.element_order(s), 2);
        // s r s = r^-1
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
    }

    #[test]
    fn symmetric_ordering_is_lexicographic() {
        let p = permutations(3);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[1], vec![0, 2, 1]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }

    #[test]
    fn parse_names() {
        assert_eq!("S3".parse::<Builtin>().unwrap(), Builtin::Symmetric(3));
        assert_eq!("trivial".parse::<Builtin>().unwrap(), Builtin::Cyclic(1));
        assert_eq!(
            "Z2xZ2".parse::<Builtin>().unwrap(),
            Builtin::DirectProduct(Box::new(Builtin::Cyclic(2)), Box::new(Builtin::Cyclic(2)))
        );
        assert!("Foo3".parse::<Builtin>().is_err());
        assert!(builtin(&Builtin::Symmetric(7)).is_err());
        assert!(builtin(&Builtin::Cyclic(0)).is_err());
    }

    #[test]
    fn direct_product_order() {
        let g = builtin(&"Z2xS3".parse().unwrap()).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.conjugacy_classes().len(), 6);
    }
}
