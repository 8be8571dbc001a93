//! Finite groups stored as validated multiplication tables.
//!
//! Elements are indices `0..order`; the identity is always index 0. All
//! "first element" choices downstream (sections, orbit representatives,
//! class ordering) break ties by ascending index.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table and relabels so that the identity sits at 0.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_table_with_labels(table, None)
    }

    pub fn from_table_with_labels(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(not_a_group("empty table", None));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(not_a_group(
                    &format!("row {i} has length {} (expected {n})", row.len()),
                    None,
                ));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(not_a_group(&format!("entry {bad} in row {i} out of range"), None));
            }
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(not_a_group("label count differs from order", None));
            }
        }

        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| not_a_group("no identity element", None))?;

        // swap e <-> 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let (mult, labels) = if e == 0 {
            (table, labels)
        } else {
            let mut m = vec![vec![0; n]; n];
            for (a, row) in m.iter_mut().enumerate() {
                for (b, slot) in row.iter_mut().enumerate() {
                    *slot = relabel(table[relabel(a)][relabel(b)]);
                }
            }
            let labels = labels.map(|l| (0..n).map(|i| l[relabel(i)].clone()).collect());
            (m, labels)
        };

        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| mult[x][y] == 0) {
                Some(y) if mult[y][x] == 0 => inv[x] = y,
                _ => return Err(not_a_group(&format!("element {x} has no two-sided inverse"), None)),
            }
        }

        for a in 0..n {
            for b in 0..n {
                let ab = mult[a][b];
                for c in 0..n {
                    if mult[ab][c] != mult[a][mult[b][c]] {
                        return Err(not_a_group("associativity fails", Some((a, b, c))));
                    }
                }
            }
        }

        Ok(FiniteGroup { mult, inv, labels })
    }

    /// Closure of a set of permutations of `0..degree` (1-based input is
    /// accepted when every entry lies in `1..=degree`). Elements are sorted
    /// lexicographically as images, which places the identity first.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        let degree = gens.first().map(|p| p.len()).unwrap_or(0);
        if gens.iter().any(|p| p.len() != degree) {
            return Err(not_a_group("permutations of different degrees", None));
        }
        let one_based = !gens.is_empty()
            && gens.iter().all(|p| p.iter().all(|&x| x >= 1 && x <= degree));
        let gens: Vec<Vec<usize>> = gens
            .iter()
            .map(|p| {
                if one_based {
                    p.iter().map(|&x| x - 1).collect()
                } else {
                    p.clone()
                }
            })
            .collect();
        for p in &gens {
            let set: BTreeSet<_> = p.iter().copied().collect();
            if set.len() != degree || set.iter().any(|&x| x >= degree) {
                return Err(not_a_group(&format!("{p:?} is not a permutation"), None));
            }
        }

        let identity: Vec<usize> = (0..degree).collect();
        let mut seen = BTreeSet::new();
        seen.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = compose(g, &p);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let elems: Vec<Vec<usize>> = seen.into_iter().collect();
        let index = |p: &Vec<usize>| elems.binary_search(p).expect("closed under composition");
        let table = elems
            .iter()
            .map(|a| elems.iter().map(|b| index(&compose(a, b))).collect())
            .collect();
        Ok((Self::from_table(table)?, elems))
    }

    /// Cyclic group of order `n`, element `k` standing for the generator to the `k`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(not_a_group("label count differs from order", None));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.mult.len()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Conjugacy classes, each sorted, listed by their minimal element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if assigned[x] {
                continue;
            }
            let class: BTreeSet<usize> = (0..n).map(|g| self.conj(g, x)).collect();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// `class_of[x]` is the position of x's class in `conjugacy_classes()`.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order()];
        for (c, class) in self.conjugacy_classes().iter().enumerate() {
            for &x in class {
                idx[x] = c;
            }
        }
        idx
    }

    /// Stable content hash of the multiplication table.
    pub fn content_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order() as u64).to_le_bytes());
        for row in &self.mult {
            for &x in row {
                h.update((x as u32).to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    /// Returns the table obtained by relabelling element `i` as `perm[i]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        let n = self.order();
        let mut inv_perm = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv_perm[p] = i;
        }
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| perm[self.mul(inv_perm[a], inv_perm[b])])
                    .collect()
            })
            .collect();
        Self::from_table(table)
    }

    /// Checks that `phi: source -> self` (given as images) is a bijective homomorphism.
    pub fn check_isomorphism(&self, source: &FiniteGroup, phi: &[usize]) -> Result<()> {
        if phi.len() != source.order() || source.order() != self.order() {
            return Err(Error::NotBijective);
        }
        let mut hit = vec![false; self.order()];
        for &p in phi {
            if p >= self.order() || std::mem::replace(&mut hit[p], true) {
                return Err(Error::NotBijective);
            }
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if phi[source.mul(a, b)] != self.mul(phi[a], phi[b]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}

/// `(p ∘ q)(x) = p(q(x))`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&x| p[x]).collect()
}

fn not_a_group(reason: &str, witness: Option<(usize, usize, usize)>) -> Error {
    Error::NotAGroup {
        reason: reason.to_string(),
        witness,
    }
}

/// A subgroup together with its own group structure (`view`) and the index
/// translation between the two numberings.
#[derive(Debug, Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
    from_parent: Vec<Option<usize>>,
    view: Arc<FiniteGroup>,
}

impl Subgroup {
    /// Smallest subgroup containing `generators`.
    pub fn closure(parent: &Arc<FiniteGroup>, generators: &[usize]) -> Result<Self> {
        let n = parent.order();
        if let Some(&g) = generators.iter().find(|&&g| g >= n) {
            return Err(Error::IndexOutOfRange { index: g, order: n });
        }
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = parent.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let elements = (0..n).filter(|&x| inside[x]).collect();
        Ok(Self::from_sorted_unchecked(parent.clone(), elements))
    }

    /// Builds the subgroup from a membership predicate; the set must be closed.
    pub fn from_elements(parent: &Arc<FiniteGroup>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let n = parent.order();
        if let Some(&g) = elements.iter().find(|&&g| g >= n) {
            return Err(Error::IndexOutOfRange { index: g, order: n });
        }
        let mut inside = vec![false; n];
        for &x in &elements {
            inside[x] = true;
        }
        if !inside[0] {
            return Err(not_a_group("subset lacks the identity", None));
        }
        for &a in &elements {
            if !inside[parent.inv(a)] {
                return Err(not_a_group(&format!("subset not closed under inverse at {a}"), None));
            }
            for &b in &elements {
                if !inside[parent.mul(a, b)] {
                    return Err(not_a_group("subset not closed under product", Some((a, b, parent.mul(a, b)))));
                }
            }
        }
        Ok(Self::from_sorted_unchecked(parent.clone(), elements))
    }

    fn from_sorted_unchecked(parent: Arc<FiniteGroup>, elements: Vec<usize>) -> Self {
        let mut from_parent = vec![None; parent.order()];
        for (i, &x) in elements.iter().enumerate() {
            from_parent[x] = Some(i);
        }
        let table = elements
            .iter()
            .map(|&a| {
                elements
                    .iter()
                    .map(|&b| from_parent[parent.mul(a, b)].expect("closed"))
                    .collect()
            })
            .collect();
        let labels = parent
            .labels()
            .map(|l| elements.iter().map(|&x| l[x].clone()).collect());
        let view = FiniteGroup::from_table_with_labels(table, labels).expect("subgroup table is a group");
        Subgroup {
            parent,
            elements,
            from_parent,
            view: Arc::new(view),
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn view(&self) -> &Arc<FiniteGroup> {
        &self.view
    }

    /// Parent indices, ascending.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, parent_elem: usize) -> bool {
        self.from_parent.get(parent_elem).is_some_and(|x| x.is_some())
    }

    pub fn to_parent(&self, local: usize) -> usize {
        self.elements[local]
    }

    pub fn to_local(&self, parent_elem: usize) -> Option<usize> {
        self.from_parent.get(parent_elem).copied().flatten()
    }

    /// Left cosets `gH`, each sorted, listed by minimal element.
    pub fn left_cosets(&self) -> Vec<Vec<usize>> {
        let n = self.parent.order();
        let mut seen = vec![false; n];
        let mut cosets = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = self.elements.iter().map(|&h| self.parent.mul(g, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            cosets.push(coset);
        }
        cosets
    }
}
