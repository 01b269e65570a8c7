use std::fmt;

use serde::{Deserialize, Serialize};

/// A permutation of `{0, .., n-1}` stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    /// Fails unless `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    /// Builds a permutation from 1-based cycles, e.g. `&[&[1, 2, 3]]` for (1 2 3).
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Option<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || b == 0 || a as usize > degree || b as usize > degree {
                    return None;
                }
                images[(a - 1) as usize] = b - 1;
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.0[point as usize]
    }

    /// `self * other` acts as "apply `self` first, then `other`".
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        let mut seen = vec![false; self.0.len()];
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.0[i] as usize;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// An invertible 2x2 matrix over `F_p`, entries `[a, b, c, d]` for `(a b; c d)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gl2Matrix {
    p: u32,
    entries: [u32; 4],
}

impl Gl2Matrix {
    /// Reduces the entries mod `p`; `None` when the determinant vanishes.
    pub fn new(p: u32, entries: [i64; 4]) -> Option<Self> {
        let r = |x: i64| x.rem_euclid(p as i64) as u32;
        let m = Gl2Matrix {
            p,
            entries: [r(entries[0]), r(entries[1]), r(entries[2]), r(entries[3])],
        };
        (m.det() != 0).then_some(m)
    }

    pub fn identity(p: u32) -> Self {
        Gl2Matrix { p, entries: [1, 0, 0, 1] }
    }

    pub fn diag(p: u32, x: u64, y: u64) -> Option<Self> {
        Self::new(p, [x as i64, 0, 0, y as i64])
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn entries(&self) -> [u32; 4] {
        self.entries
    }

    pub fn det(&self) -> u32 {
        let p = self.p as u64;
        let [a, b, c, d] = self.entries.map(u64::from);
        ((a * d % p + p * p - b * c % p) % p) as u32
    }

    pub fn trace(&self) -> u32 {
        (self.entries[0] + self.entries[3]) % self.p
    }

    pub fn mul(&self, o: &Gl2Matrix) -> Gl2Matrix {
        let p = self.p as u64;
        let [a, b, c, d] = self.entries.map(u64::from);
        let [e, f, g, h] = o.entries.map(u64::from);
        Gl2Matrix {
            p: self.p,
            entries: [
                ((a * e + b * g) % p) as u32,
                ((a * f + b * h) % p) as u32,
                ((c * e + d * g) % p) as u32,
                ((c * f + d * h) % p) as u32,
            ],
        }
    }

    pub fn inverse(&self) -> Gl2Matrix {
        let p = self.p as u64;
        let det_inv = crate::arith::pow_mod(self.det() as u64, p - 2, p);
        let [a, b, c, d] = self.entries.map(u64::from);
        let s = |x: u64| (x * det_inv % p) as u32;
        Gl2Matrix {
            p: self.p,
            entries: [s(d), s((p - b) % p), s((p - c) % p), s(a)],
        }
    }
}

impl fmt::Debug for Gl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "({a} {b}; {c} {d}) mod {}", self.p)
    }
}

/// A concrete group element. Tuple elements belong to a product group whose
/// multiplication rule lives in the owning [`FiniteGroup`](super::FiniteGroup).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Element {
    Perm(Permutation),
    Matrix(Gl2Matrix),
    Tuple(Box<Element>, Box<Element>),
}

impl Element {
    pub fn kind(&self) -> ElementKind {
        match self {
            Element::Perm(p) => ElementKind::Perm(p.degree()),
            Element::Matrix(m) => ElementKind::Matrix(m.modulus()),
            Element::Tuple(..) => ElementKind::Tuple,
        }
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            Element::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Gl2Matrix> {
        match self {
            Element::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn tuple(normal: Element, acting: Element) -> Element {
        Element::Tuple(Box::new(normal), Box::new(acting))
    }
}

impl From<Permutation> for Element {
    fn from(p: Permutation) -> Self {
        Element::Perm(p)
    }
}

impl From<Gl2Matrix> for Element {
    fn from(m: Gl2Matrix) -> Self {
        Element::Matrix(m)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementKind {
    Perm(usize),
    Matrix(u32),
    Tuple,
}
