//! Permutations of `{0..n-1}` and permutation groups given by generators.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Default bound on the size of a computed group closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n as u32).collect(),
        }
    }

    /// `None` unless `image` is a bijection of `{0..len-1}`.
    pub fn from_image(image: Vec<u32>) -> Option<Self> {
        let mut seen = vec![false; image.len()];
        for &x in &image {
            let slot = seen.get_mut(x as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Self { image })
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other.image.iter().map(|&x| self.image[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            image[x as usize] = i as u32;
        }
        Permutation { image }
    }

    /// `self^beta = beta self beta^-1`.
    pub fn conjugate_by(&self, beta: &Permutation) -> Permutation {
        beta.compose(self).compose(&beta.inverse())
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.image.len()];
        let mut order = 1u64;
        for start in 0..self.image.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x] as usize;
                len += 1;
            }
            order = order.lcm(&len);
        }
        order
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs() % self.order();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    pub fn pow_big(&self, k: &BigInt) -> Permutation {
        let order = BigInt::from(self.order());
        let r = k.mod_floor(&order);
        debug_assert!(!r.is_negative());
        self.pow(r.to_i64().expect("reduced exponent fits"))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, fixed points omitted; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.image.len()];
        let mut any = false;
        for start in 0..self.image.len() {
            if seen[start] || self.image[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.image[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// A finite permutation group with its full element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
    abelian: bool,
}

impl PermGroup {
    /// Breadth-first closure of `generators`, visiting generators in the
    /// given order. Fails once more than `cap` elements have been found.
    pub fn generate(degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        let mut gens: Vec<Permutation> = Vec::new();
        for g in generators {
            assert_eq!(g.degree(), degree, "generator of the wrong degree");
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let id = Permutation::identity(degree);
        let mut members = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for g in &gens {
                let next = g.compose(&h);
                if members.insert(next.clone()) {
                    if members.len() > cap {
                        return Err(Error::ClosureLimitExceeded(cap));
                    }
                    elements.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        let abelian = gens
            .iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)));
        Ok(Self {
            degree,
            generators: gens,
            elements,
            members,
            abelian,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Orbits of the action on `{0..degree-1}`, each sorted, ordered by
    /// smallest element.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(self.degree, &self.generators)
    }
}

/// Orbits of the group generated by `gens`.
pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut label = vec![usize::MAX; degree];
    let mut out: Vec<Vec<u32>> = Vec::new();
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut orbit = vec![start as u32];
        label[start] = id;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in gens {
                let y = g.apply(x);
                if label[y as usize] == usize::MAX {
                    label[y as usize] = id;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[u32]) -> Permutation {
        Permutation::from_image(v.to_vec()).unwrap()
    }

    #[test]
    fn basic_operations() {
        let a = perm(&[1, 2, 0, 3]);
        let b = perm(&[1, 0, 2, 3]);
        assert!(Permutation::from_image(vec![0, 0]).is_none());
        assert!(Permutation::from_image(vec![0, 5]).is_none());
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(4));
        assert_eq!(a.order(), 3);
        assert_eq!(a.pow(3), Permutation::identity(4));
        assert_eq!(a.pow(-1), a.inverse());
        assert_eq!(a.pow_big(&BigInt::from(-4)), a.inverse());
        // compose applies the right factor first
        assert_eq!(a.compose(&b).apply(0), a.apply(b.apply(0)));
        assert_eq!(a.conjugate_by(&b), b.compose(&a).compose(&b.inverse()));
        assert_eq!(a.to_string(), "(0 1 2)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn closures() {
        let s3 = PermGroup::generate(3, vec![perm(&[1, 2, 0]), perm(&[1, 0, 2])], 100).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let c3 = PermGroup::generate(3, vec![perm(&[1, 2, 0])], 100).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(c3.is_abelian());
        assert!(c3.contains(&perm(&[2, 0, 1])));
        assert!(!c3.contains(&perm(&[1, 0, 2])));
        let trivial = PermGroup::generate(2, vec![Permutation::identity(2)], 1).unwrap();
        assert!(trivial.is_trivial());
        assert!(matches!(
            PermGroup::generate(3, vec![perm(&[1, 2, 0]), perm(&[1, 0, 2])], 4),
            Err(Error::ClosureLimitExceeded(4))
        ));
    }

    #[test]
    fn orbit_partition() {
        let g = PermGroup::generate(5, vec![perm(&[1, 0, 2, 4, 3])], 10).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2], vec![3, 4]]);
    }
}
