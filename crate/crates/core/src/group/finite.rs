use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::element::{Element, ElementKind, Gl2Matrix, Permutation};
use super::{GroupError, Result};

pub const DEFAULT_CLOSURE_BOUND: usize = 200_000;

/// Groups up to this order get a full multiplication table on first use.
const TABLE_LIMIT: usize = 256;

/// How two elements of a group combine.
#[derive(Clone)]
pub(crate) enum Law {
    Perm { degree: usize },
    Gl2 { p: u32 },
    Product(Arc<ProductLaw>),
}

/// Pairs `(n, h)` with `(n1, h1)(n2, h2) = (n1 * act(h1)(n2), h1 h2)`.
/// Without an action table this is the direct product.
pub(crate) struct ProductLaw {
    pub normal: FiniteGroup,
    pub acting: FiniteGroup,
    /// `action[h][n]` is the index of `act(h)(n)` in `normal`.
    pub action: Option<Vec<Vec<u32>>>,
}

impl Law {
    pub(crate) fn identity(&self) -> Element {
        match self {
            Law::Perm { degree } => Element::Perm(Permutation::identity(*degree)),
            Law::Gl2 { p } => Element::Matrix(Gl2Matrix::identity(*p)),
            Law::Product(pl) => Element::tuple(
                pl.normal.element(0).clone(),
                pl.acting.element(0).clone(),
            ),
        }
    }

    pub(crate) fn accepts(&self, x: &Element) -> bool {
        match (self, x) {
            (Law::Perm { degree }, Element::Perm(p)) => p.degree() == *degree,
            (Law::Gl2 { p }, Element::Matrix(m)) => m.modulus() == *p,
            (Law::Product(pl), Element::Tuple(n, h)) => {
                pl.normal.index_of(n).is_some() && pl.acting.index_of(h).is_some()
            }
            _ => false,
        }
    }

    pub(crate) fn mul(&self, x: &Element, y: &Element) -> Element {
        match (self, x, y) {
            (Law::Perm { .. }, Element::Perm(a), Element::Perm(b)) => Element::Perm(a.compose(b)),
            (Law::Gl2 { .. }, Element::Matrix(a), Element::Matrix(b)) => Element::Matrix(a.mul(b)),
            (Law::Product(pl), Element::Tuple(n1, h1), Element::Tuple(n2, h2)) => {
                let n2 = pl.act(h1, n2);
                Element::tuple(
                    pl.normal.law().mul(n1, &n2),
                    pl.acting.law().mul(h1, h2),
                )
            }
            _ => panic!("element kind does not match group law"),
        }
    }

    pub(crate) fn inv(&self, x: &Element) -> Element {
        match (self, x) {
            (Law::Perm { .. }, Element::Perm(a)) => Element::Perm(a.inverse()),
            (Law::Gl2 { .. }, Element::Matrix(a)) => Element::Matrix(a.inverse()),
            (Law::Product(pl), Element::Tuple(n, h)) => {
                let h_inv = pl.acting.law().inv(h);
                let n_inv = pl.normal.law().inv(n);
                Element::tuple(pl.act(&h_inv, &n_inv), h_inv)
            }
            _ => panic!("element kind does not match group law"),
        }
    }
}

impl ProductLaw {
    fn act(&self, h: &Element, n: &Element) -> Element {
        match &self.action {
            None => n.clone(),
            Some(table) => {
                let hi = self.acting.index_of(h).expect("acting part in group");
                let ni = self.normal.index_of(n).expect("normal part in group");
                self.normal.element(table[hi][ni] as usize).clone()
            }
        }
    }
}

struct GroupData {
    law: Law,
    generators: Vec<usize>,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    inverse: Vec<usize>,
    table: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u32>>,
}

/// An explicitly enumerated finite group. Cloning is cheap (shared storage).
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(order {}, {} generators)", self.order(), self.0.generators.len())
    }
}

impl FiniteGroup {
    /// Closure of `generators` under multiplication, bounded by [`DEFAULT_CLOSURE_BOUND`].
    pub fn enumerate(generators: &[Element]) -> Result<FiniteGroup> {
        Self::enumerate_bounded(generators, DEFAULT_CLOSURE_BOUND)
    }

    pub fn enumerate_bounded(generators: &[Element], bound: usize) -> Result<FiniteGroup> {
        let first = generators.first().ok_or(GroupError::KindMismatch)?;
        let law = match first.kind() {
            ElementKind::Perm(degree) => Law::Perm { degree },
            ElementKind::Matrix(p) => Law::Gl2 { p },
            ElementKind::Tuple => return Err(GroupError::KindMismatch),
        };
        Self::generate(law, generators.to_vec(), bound)
    }

    /// Trivial permutation group on `degree` points.
    pub fn trivial(degree: usize) -> FiniteGroup {
        Self::generate(Law::Perm { degree }, Vec::new(), 1).expect("trivial group")
    }

    pub(crate) fn generate(law: Law, generators: Vec<Element>, bound: usize) -> Result<FiniteGroup> {
        if generators.iter().any(|g| !law.accepts(g)) {
            return Err(GroupError::KindMismatch);
        }
        let identity = law.identity();
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let y = law.mul(&elements[i], g);
                if !index.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(GroupError::BoundExceeded { bound });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        Ok(Self::assemble(law, generators, elements, index))
    }

    /// Builds a group from a set already known to be closed, keeping its order.
    pub(crate) fn from_closed_set(law: Law, generators: Vec<Element>, elements: Vec<Element>) -> FiniteGroup {
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Self::assemble(law, generators, elements, index)
    }

    fn assemble(
        law: Law,
        generators: Vec<Element>,
        elements: Vec<Element>,
        index: HashMap<Element, usize>,
    ) -> FiniteGroup {
        let inverse = elements.iter().map(|x| index[&law.inv(x)]).collect();
        let mut gen_idx: Vec<usize> = Vec::new();
        for g in &generators {
            let i = index[g];
            if i != 0 && !gen_idx.contains(&i) {
                gen_idx.push(i);
            }
        }
        FiniteGroup(Arc::new(GroupData {
            law,
            generators: gen_idx,
            elements,
            index,
            inverse,
            table: OnceLock::new(),
            orders: OnceLock::new(),
        }))
    }

    pub(crate) fn law(&self) -> &Law {
        &self.0.law
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.0.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.0.elements[i]
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.0.index.get(x).copied()
    }

    pub fn require(&self, x: &Element) -> Result<usize> {
        self.index_of(x).ok_or(GroupError::NotInGroup)
    }

    /// Indices of the non-identity generators, without duplicates.
    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }

    pub fn generator_elements(&self) -> Vec<Element> {
        self.0.generators.iter().map(|&i| self.element(i).clone()).collect()
    }

    /// Two handles refer to the same underlying group.
    pub fn same(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let n = self.order();
        if n <= TABLE_LIMIT {
            let table = self.0.table.get_or_init(|| {
                let mut t = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        t.push(self.mul_direct(a, b) as u32);
                    }
                }
                t
            });
            return table[i * n + j] as usize;
        }
        self.mul_direct(i, j)
    }

    fn mul_direct(&self, i: usize, j: usize) -> usize {
        let y = self.0.law.mul(&self.0.elements[i], &self.0.elements[j]);
        self.0.index[&y]
    }

    pub fn mul_elements(&self, x: &Element, y: &Element) -> Element {
        self.0.law.mul(x, y)
    }

    pub fn inv(&self, i: usize) -> usize {
        self.0.inverse[i]
    }

    /// `i^k` for any integer `k`.
    pub fn pow(&self, i: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(i) } else { i };
        let mut e = k.unsigned_abs();
        let mut acc = self.0.law.identity();
        let mut b = self.0.elements[base].clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.0.law.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.0.law.mul(&b, &b);
            }
        }
        self.0.index[&acc]
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `x^-1 y^-1 x y`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.orders()[i] as usize
    }

    pub fn orders(&self) -> &[u32] {
        self.0.orders.get_or_init(|| {
            let id = &self.0.elements[0];
            self.0
                .elements
                .iter()
                .map(|x| {
                    let mut k = 1u32;
                    let mut y = x.clone();
                    while &y != id {
                        y = self.0.law.mul(&y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Element-kind summary used in reports.
    pub fn kind_name(&self) -> &'static str {
        match self.0.law {
            Law::Perm { .. } => "perm",
            Law::Gl2 { .. } => "gl2",
            Law::Product(_) => "product",
        }
    }

    /// Factor groups when this is a product group.
    pub fn factors(&self) -> Option<(FiniteGroup, FiniteGroup)> {
        match &self.0.law {
            Law::Product(pl) => Some((pl.normal.clone(), pl.acting.clone())),
            _ => None,
        }
    }

    /// Splits a product element into its factor indices.
    pub fn split(&self, i: usize) -> Option<(usize, usize)> {
        match (&self.0.law, &self.0.elements[i]) {
            (Law::Product(pl), Element::Tuple(n, h)) => {
                Some((pl.normal.index_of(n)?, pl.acting.index_of(h)?))
            }
            _ => None,
        }
    }

    /// For a product group, the index in the normal factor of `act(h)(n)`.
    pub fn factor_action(&self, h: usize, n: usize) -> Option<usize> {
        match &self.0.law {
            Law::Product(pl) => Some(match &pl.action {
                None => n,
                Some(table) => table[h][n] as usize,
            }),
            _ => None,
        }
    }

    /// Index of the pair `(n, h)` of factor indices, if it lies in this group.
    pub fn join(&self, n: usize, h: usize) -> Option<usize> {
        match &self.0.law {
            Law::Product(pl) => self.index_of(&Element::tuple(
                pl.normal.element(n).clone(),
                pl.acting.element(h).clone(),
            )),
            _ => None,
        }
    }
}
