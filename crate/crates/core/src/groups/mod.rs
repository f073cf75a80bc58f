//! Finite groups as explicit permutation groups: full element enumeration,
//! conjugacy classes, subgroup classes, Sylow subgroups, normalizers and
//! finite G-sets.

pub mod named;
pub mod perm;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

pub use perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group order exceeds the configured cap of {0}")]
    OrderBound(usize),
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<u32>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("action of generator {0} is not a permutation of the G-set")]
    BadAction(usize),
}

/// Caps for desk-scale enumeration.
#[derive(Clone, Copy, Debug)]
pub struct GroupLimits {
    pub max_order: usize,
    /// Groups up to this order get a precomputed multiplication table.
    pub table_max: usize,
    /// Largest order for which all subgroups are enumerated.
    pub max_subgroup_order: usize,
}

impl Default for GroupLimits {
    fn default() -> Self {
        GroupLimits { max_order: 100_000, table_max: 2048, max_subgroup_order: 5000 }
    }
}

/// A finite permutation group with its complete element list.
///
/// Element 0 is the identity. Every other element `i` was reached as
/// `gens[word_gen[i]] * elements[word_parent[i]]`, which gives a word in the
/// generators for acting on arbitrary G-sets.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    gen_index: Vec<u32>,
    elements: Vec<Perm>,
    index: BTreeMap<Perm, u32>,
    word_parent: Vec<u32>,
    word_gen: Vec<u32>,
    inverses: Vec<u32>,
    orders: Vec<u32>,
    table: Option<Vec<u32>>,
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    a / x * b
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<Self, GroupError> {
        Self::with_limits(degree, gens, GroupLimits::default())
    }

    pub fn with_limits(degree: usize, gens: Vec<Perm>, limits: GroupLimits) -> Result<Self, GroupError> {
        for g in &gens {
            if g.len() != degree {
                return Err(GroupError::DegreeMismatch { expected: degree, found: g.len() });
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x as usize >= degree || seen[x as usize] {
                    return Err(GroupError::NotAPermutation(g.clone()));
                }
                seen[x as usize] = true;
            }
        }
        let id = perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = BTreeMap::new();
        index.insert(id, 0u32);
        let mut word_parent = vec![0u32];
        let mut word_gen = vec![u32::MAX];
        let mut head = 0;
        while head < elements.len() {
            for (s, g) in gens.iter().enumerate() {
                let y = perm::compose(g, &elements[head]);
                if !index.contains_key(&y) {
                    if elements.len() >= limits.max_order {
                        return Err(GroupError::OrderBound(limits.max_order));
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                    word_parent.push(head as u32);
                    word_gen.push(s as u32);
                }
            }
            head += 1;
        }
        let gen_index = gens.iter().map(|g| index[g]).collect();
        let inverses = elements.iter().map(|x| index[&perm::inverse(x)]).collect();
        let orders = elements
            .iter()
            .map(|x| perm::cycle_type(x).iter().fold(1u64, |acc, &l| lcm(acc, l as u64)) as u32)
            .collect();
        let n = elements.len();
        let mut group = PermGroup {
            degree,
            gens,
            gen_index,
            elements,
            index,
            word_parent,
            word_gen,
            inverses,
            orders,
            table: None,
        };
        if n <= limits.table_max {
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = group.index[&perm::compose(&group.elements[i], &group.elements[j])];
                }
            }
            group.table = Some(t);
        }
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    /// Element indices of the generators.
    pub fn gen_indices(&self) -> &[u32] {
        &self.gen_index
    }

    pub fn element(&self, i: u32) -> &Perm {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &[u32]) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&perm::compose(&self.elements[a as usize], &self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }

    /// `g h g⁻¹`.
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    pub fn element_orders(&self) -> impl Iterator<Item = u64> + '_ {
        self.orders.iter().map(|&o| o as u64)
    }

    /// Generator indices `[s_1, …, s_k]` with `element(a) = gens[s_k] ⋯ gens[s_1]`,
    /// listed in the order they act (first applied first).
    pub fn word(&self, a: u32) -> Vec<u32> {
        let mut w = Vec::new();
        let mut x = a;
        while x != 0 {
            w.push(self.word_gen[x as usize]);
            x = self.word_parent[x as usize];
        }
        w.reverse();
        w
    }

    pub fn is_p_element(&self, a: u32, p: u32) -> bool {
        let mut o = self.element_order(a);
        while o.is_multiple_of(p) {
            o /= p;
        }
        o == 1
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.gen_index;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: (0..self.order() as u32).collect(), gens: self.gen_index.clone() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0], gens: Vec::new() }
    }

    /// The subgroup generated by the given elements.
    pub fn closure(&self, gens: &[u32]) -> Subgroup {
        let mut member = vec![false; self.order()];
        member[0] = true;
        let mut elems = vec![0u32];
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head];
            for &s in gens {
                let y = self.mul(s, x);
                if !member[y as usize] {
                    member[y as usize] = true;
                    elems.push(y);
                }
            }
            head += 1;
        }
        elems.sort_unstable();
        let mut g: Vec<u32> = gens.iter().copied().filter(|&x| x != 0).collect();
        g.sort_unstable();
        g.dedup();
        Subgroup { elements: elems, gens: g }
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: u32) -> Subgroup {
        let mut elements: Vec<u32> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        elements.sort_unstable();
        let gens = h.gens.iter().map(|&x| self.conj(g, x)).collect();
        Subgroup { elements, gens }
    }

    /// `N_G(H) = {g : gHg⁻¹ = H}`.
    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generating_set();
        let elems: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| gens.iter().all(|&x| h.contains(self.conj(g, x))))
            .collect();
        self.subgroup_from_elements(elems)
    }

    /// `C_G(H) = {g : gh = hg for all h ∈ H}`.
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generating_set();
        let elems: Vec<u32> = (0..self.order() as u32)
            .filter(|&g| gens.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn element_centralizer(&self, a: u32) -> Subgroup {
        let elems: Vec<u32> =
            (0..self.order() as u32).filter(|&g| self.mul(g, a) == self.mul(a, g)).collect();
        self.subgroup_from_elements(elems)
    }

    /// Wraps a sorted element list known to be a subgroup, choosing a small generating set.
    pub fn subgroup_from_elements(&self, mut elems: Vec<u32>) -> Subgroup {
        elems.sort_unstable();
        elems.dedup();
        let mut gens = Vec::new();
        let mut cur = self.trivial_subgroup();
        for &x in &elems {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.closure(&gens);
                if cur.order() == elems.len() {
                    break;
                }
            }
        }
        debug_assert_eq!(cur.elements, elems, "element list is not a subgroup");
        Subgroup { elements: elems, gens: cur.gens }
    }

    /// Conjugacy classes, ordered by (element order, class size, smallest member).
    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let n = self.order();
        let mut class_of = vec![u32::MAX; n];
        let mut raw: Vec<Vec<u32>> = Vec::new();
        for x in 0..n as u32 {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let id = raw.len() as u32;
            let mut orbit = vec![x];
            class_of[x as usize] = id;
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                for &s in &self.gen_index {
                    let z = self.conj(s, y);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = id;
                        orbit.push(z);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            raw.push(orbit);
        }
        raw.sort_by_key(|c| (self.element_order(c[0]), c.len(), c[0]));
        for (k, c) in raw.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = k as u32;
            }
        }
        let classes = raw.into_iter().map(|elements| ConjugacyClass { rep: elements[0], elements }).collect();
        ConjugacyClasses { classes, class_of }
    }

    fn bits_of(&self, h: &Subgroup) -> Vec<u64> {
        let mut b = vec![0u64; self.order().div_ceil(64)];
        for &x in &h.elements {
            b[x as usize / 64] |= 1 << (x % 64);
        }
        b
    }

    fn enumerate_subgroups<F>(&self, mut candidates: F) -> Vec<Subgroup>
    where
        F: FnMut(&Subgroup) -> Vec<u32>,
    {
        let start = self.trivial_subgroup();
        let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
        seen.insert(self.bits_of(&start));
        let mut all = vec![start.clone()];
        let mut stack = vec![start];
        while let Some(h) = stack.pop() {
            for g in candidates(&h) {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.gens.clone();
                gens.push(g);
                let k = self.closure(&gens);
                if seen.insert(self.bits_of(&k)) {
                    all.push(k.clone());
                    stack.push(k);
                }
            }
        }
        all
    }

    /// Every subgroup of `G` (brute-force cyclic extension).
    pub fn all_subgroups(&self, limits: &GroupLimits) -> Result<Vec<Subgroup>, GroupError> {
        if self.order() > limits.max_subgroup_order {
            return Err(GroupError::OrderBound(limits.max_subgroup_order));
        }
        let mut cyclic_gens = Vec::new();
        let mut cyclic_seen = BTreeSet::new();
        for x in 1..self.order() as u32 {
            let c = self.closure(&[x]);
            if cyclic_seen.insert(c.elements.clone()) {
                cyclic_gens.push(x);
            }
        }
        Ok(self.enumerate_subgroups(|_| cyclic_gens.clone()))
    }

    /// Every p-subgroup, each reached by adjoining p-elements that normalize the current one.
    pub fn all_p_subgroups(&self, p: u32) -> Vec<Subgroup> {
        let p_elems: Vec<u32> = (1..self.order() as u32).filter(|&x| self.is_p_element(x, p)).collect();
        self.enumerate_subgroups(|h| {
            let gens = h.generating_set();
            p_elems
                .iter()
                .copied()
                .filter(|&g| !h.contains(g) && gens.iter().all(|&x| h.contains(self.conj(g, x))))
                .collect()
        })
    }

    fn classify(&self, subs: Vec<Subgroup>) -> Vec<SubgroupClass> {
        let mut by_bits: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
        for (i, h) in subs.iter().enumerate() {
            by_bits.insert(self.bits_of(h), i);
        }
        let mut assigned = vec![false; subs.len()];
        let mut classes = Vec::new();
        for i in 0..subs.len() {
            if assigned[i] {
                continue;
            }
            let mut orbit = vec![i];
            assigned[i] = true;
            let mut head = 0;
            while head < orbit.len() {
                let h = &subs[orbit[head]];
                for &s in &self.gen_index {
                    let c = self.conjugate_subgroup(h, s);
                    let j = by_bits[&self.bits_of(&c)];
                    if !assigned[j] {
                        assigned[j] = true;
                        orbit.push(j);
                    }
                }
                head += 1;
            }
            let rep_idx = *orbit.iter().min_by(|&&a, &&b| subs[a].elements.cmp(&subs[b].elements)).unwrap();
            let rep = subs[rep_idx].clone();
            let mut cycle_types: Vec<Vec<usize>> =
                rep.elements.iter().map(|&x| perm::cycle_type(self.element(x))).collect();
            cycle_types.sort();
            classes.push((rep.order(), cycle_types, rep, orbit.len()));
        }
        classes.sort_by(|a, b| (a.0, &a.1, &a.2.elements).cmp(&(b.0, &b.1, &b.2.elements)));
        classes
            .into_iter()
            .map(|(_, _, rep, n)| {
                let gens = rep.generating_set();
                SubgroupClass { rep: Subgroup { elements: rep.elements, gens }, conjugates: n }
            })
            .collect()
    }

    /// Conjugacy classes of subgroups in canonical order:
    /// (order, sorted cycle types, smallest conjugate's element list).
    pub fn subgroup_classes(&self, limits: &GroupLimits) -> Result<Vec<SubgroupClass>, GroupError> {
        Ok(self.classify(self.all_subgroups(limits)?))
    }

    /// Conjugacy classes of p-subgroups, in the same canonical order.
    pub fn p_subgroup_classes(&self, p: u32) -> Vec<SubgroupClass> {
        self.classify(self.all_p_subgroups(p))
    }

    /// Index of the class in `classes` containing `h`.
    pub fn find_class(&self, classes: &[SubgroupClass], h: &Subgroup) -> Option<usize> {
        classes.iter().position(|c| c.rep.order() == h.order() && self.are_conjugate(&c.rep, h))
    }

    pub fn are_conjugate(&self, a: &Subgroup, b: &Subgroup) -> bool {
        if a.order() != b.order() {
            return false;
        }
        let bg = b.generating_set();
        (0..self.order() as u32).any(|g| {
            let ginv = self.inv(g);
            bg.iter().all(|&x| a.contains(self.conj(ginv, x)))
        })
    }

    /// A Sylow p-subgroup, grown inside successive normalizers.
    pub fn sylow_subgroup(&self, p: u32) -> Subgroup {
        let mut target = 1usize;
        let mut n = self.order();
        while n.is_multiple_of(p as usize) {
            n /= p as usize;
            target *= p as usize;
        }
        let mut cur = self.trivial_subgroup();
        while cur.order() < target {
            let nz = self.normalizer(&cur);
            let g = nz
                .elements
                .iter()
                .copied()
                .find(|&g| !cur.contains(g) && self.is_p_element(g, p))
                .expect("Sylow's theorem: the normalizer quotient has order divisible by p");
            let mut gens = cur.gens.clone();
            gens.push(g);
            cur = self.closure(&gens);
        }
        cur
    }

    /// `O^p(H)`: the subgroup generated by the p′-elements of `H`.
    pub fn p_residual(&self, h: &Subgroup, p: u32) -> Subgroup {
        let gens: Vec<u32> = h.elements.iter().copied().filter(|&x| !self.element_order(x).is_multiple_of(p)).collect();
        self.closure(&gens)
    }

    /// True iff `H` has no normal subgroup of index `p^k`, `k ≥ 1`,
    /// i.e. `H` is generated by its p′-elements.
    pub fn is_p_perfect(&self, h: &Subgroup, p: u32) -> bool {
        self.p_residual(h, p).order() == h.order()
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        let gens = h.generating_set();
        self.gen_index.iter().all(|&g| gens.iter().all(|&x| h.contains(self.conj(g, x))))
    }

    /// The subgroup as a permutation group in its own right.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> PermGroup {
        let gens = h.generating_set().iter().map(|&x| self.element(x).clone()).collect();
        PermGroup::new(self.degree, gens).expect("subgroup of an enumerated group")
    }

    /// Maps element indices of `sub = subgroup_as_group(h)` to indices in `self`.
    pub fn embedding(&self, sub: &PermGroup) -> Vec<u32> {
        sub.elements.iter().map(|p| self.index[p]).collect()
    }
}

/// A subgroup, as a sorted list of element indices of the parent group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    elements: Vec<u32>,
    gens: Vec<u32>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Generators (never empty for a nontrivial subgroup).
    pub fn generating_set(&self) -> Vec<u32> {
        if self.gens.is_empty() && self.elements.len() > 1 {
            return self.elements.clone();
        }
        self.gens.clone()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup, g: &PermGroup) -> Subgroup {
        let elems: Vec<u32> = self.elements.iter().copied().filter(|&x| other.contains(x)).collect();
        g.subgroup_from_elements(elems)
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub rep: u32,
    pub elements: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: Subgroup,
    /// Number of subgroups in the class, `[G : N_G(rep)]`.
    pub conjugates: usize,
}

/// A finite G-set given by the action of each generator of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    pub size: usize,
    pub action: Vec<Vec<u32>>,
}

impl GSet {
    pub fn new(size: usize, action: Vec<Vec<u32>>) -> Result<Self, GroupError> {
        for (s, a) in action.iter().enumerate() {
            let mut seen = vec![false; size];
            if a.len() != size {
                return Err(GroupError::BadAction(s));
            }
            for &x in a {
                if x as usize >= size || seen[x as usize] {
                    return Err(GroupError::BadAction(s));
                }
                seen[x as usize] = true;
            }
        }
        Ok(GSet { size, action })
    }

    /// One point.
    pub fn point(g: &PermGroup) -> GSet {
        GSet { size: 1, action: vec![vec![0]; g.gens().len()] }
    }

    /// `G` acting on its permutation domain.
    pub fn natural(g: &PermGroup) -> GSet {
        GSet { size: g.degree(), action: g.gens().to_vec() }
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(g: &PermGroup) -> GSet {
        let action = g.gen_indices().iter().map(|&s| (0..g.order() as u32).map(|x| g.mul(s, x)).collect()).collect();
        GSet { size: g.order(), action }
    }

    /// The coset space `G/H` (cosets indexed by first appearance in element order).
    pub fn cosets(g: &PermGroup, h: &Subgroup) -> GSet {
        let n = g.order();
        let mut coset_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &hh in h.elements() {
                coset_of[g.mul(x, hh) as usize] = id;
            }
        }
        let action = g
            .gen_indices()
            .iter()
            .map(|&s| reps.iter().map(|&r| coset_of[g.mul(s, r) as usize]).collect())
            .collect();
        GSet { size: reps.len(), action }
    }

    /// `X × Y` with diagonal action; the pair `(x, y)` is the point `x·|Y| + y`.
    pub fn product(&self, other: &GSet) -> GSet {
        let m = other.size as u32;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                (0..self.size as u32)
                    .flat_map(|x| (0..m).map(move |y| (x, y)))
                    .map(|(x, y)| a[x as usize] * m + b[y as usize])
                    .collect()
            })
            .collect();
        GSet { size: self.size * other.size, action }
    }

    pub fn act_gen(&self, s: u32, x: u32) -> u32 {
        self.action[s as usize][x as usize]
    }

    /// Action of an arbitrary group element, through its generator word.
    pub fn act(&self, g: &PermGroup, elem: u32, x: u32) -> u32 {
        g.word(elem).iter().fold(x, |y, &s| self.act_gen(s, y))
    }

    /// Orbits, each sorted, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        for x in 0..self.size {
            if seen[x] {
                continue;
            }
            seen[x] = true;
            let mut orbit = vec![x as u32];
            let mut head = 0;
            while head < orbit.len() {
                let y = orbit[head];
                for a in &self.action {
                    let z = a[y as usize];
                    if !seen[z as usize] {
                        seen[z as usize] = true;
                        orbit.push(z);
                    }
                }
                head += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// The orbit of `x` with a transversal: `(point, element mapping x to it)`.
    pub fn orbit_transversal(&self, g: &PermGroup, x: u32) -> BTreeMap<u32, u32> {
        let mut t = BTreeMap::new();
        t.insert(x, g.identity());
        let mut queue = vec![x];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            let ty = t[&y];
            for (s, a) in self.action.iter().enumerate() {
                let z = a[y as usize];
                if let alloc::collections::btree_map::Entry::Vacant(e) = t.entry(z) {
                    e.insert(g.mul(g.gen_indices()[s], ty));
                    queue.push(z);
                }
            }
            head += 1;
        }
        t
    }

    /// Point stabilizer from Schreier generators.
    pub fn stabilizer(&self, g: &PermGroup, x: u32) -> Subgroup {
        let t = self.orbit_transversal(g, x);
        let target = g.order() / t.len();
        let mut h = g.trivial_subgroup();
        if target == 1 {
            return h;
        }
        for (&y, &ty) in &t {
            for (s, a) in self.action.iter().enumerate() {
                let z = a[y as usize];
                let sg = g.mul(g.inv(t[&z]), g.mul(g.gen_indices()[s], ty));
                if !h.contains(sg) {
                    let mut gens = h.generating_set();
                    gens.push(sg);
                    h = g.closure(&gens);
                    if h.order() == target {
                        return h;
                    }
                }
            }
        }
        h
    }

    /// Spot-checks that the generator actions define a homomorphism, by comparing
    /// the action of products `a·b` computed two ways on every point.
    pub fn respects_relations(&self, g: &PermGroup, pairs: &[(u32, u32)]) -> bool {
        pairs.iter().all(|&(a, b)| {
            let ab = g.mul(a, b);
            (0..self.size as u32).all(|x| self.act(g, ab, x) == self.act(g, a, self.act(g, b, x)))
        })
    }
}
