//! Fully enumerated permutation groups and the small-group toolbox: closure,
//! centers and centralizers, derived subgroups, normality, quotients,
//! orbit/stabilizer, index-2 subgroups and abelian invariants.
//!
//! Groups at these orders (<= ~10^4) are stored as their complete element
//! lists, sorted lexicographically by image table. That makes membership a
//! binary search, every subgroup operation a filter, and all results
//! reproducible bit for bit. There is deliberately no stabilizer-chain
//! machinery here.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::{lcm, Perm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    EmptyGeneratingSet,
    DegreeMismatch { expected: usize, found: usize },
    NotClosed { witness: String },
    NotASubgroup,
    NotNormal,
    NotAbelian,
    BoundExceeded { order: usize, bound: usize },
    PointOutOfRange { point: usize, degree: usize },
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::EmptyGeneratingSet => write!(f, "empty generating set"),
            GroupError::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {expected}, found {found}")
            }
            GroupError::NotClosed { witness } => {
                write!(f, "element set is not closed under composition ({witness})")
            }
            GroupError::NotASubgroup => write!(f, "not a subgroup of the ambient group"),
            GroupError::NotNormal => write!(f, "subgroup is not normal"),
            GroupError::NotAbelian => write!(f, "group is not abelian"),
            GroupError::BoundExceeded { order, bound } => {
                write!(f, "group order {order} exceeds the configured bound {bound}")
            }
            GroupError::PointOutOfRange { point, degree } => {
                write!(f, "point {point} out of range for degree {degree}")
            }
        }
    }
}

impl core::error::Error for GroupError {}

/// A finite permutation group with its complete element set.
///
/// `elements` is sorted lexicographically and is the closure of `generators`;
/// `generators` is kept small (greedy reduction) so conjugation and
/// homomorphism checks stay cheap.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    identity: Perm,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup(degree {}, order {})", self.degree, self.order())
    }
}

fn closure_set(degree: usize, gens: &[Perm]) -> BTreeSet<Perm> {
    let id = Perm::identity(degree);
    let mut set = BTreeSet::new();
    set.insert(id.clone());
    let mut queue = VecDeque::new();
    queue.push_back(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if !set.contains(&y) {
                set.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    set
}

impl FiniteGroup {
    /// The group `<gens>`, enumerated by breadth-first product closure.
    ///
    /// Finiteness makes inverses reachable as powers, so closing under
    /// composition alone suffices.
    pub fn closure(gens: &[Perm]) -> Result<FiniteGroup, GroupError> {
        let first = gens.first().ok_or(GroupError::EmptyGeneratingSet)?;
        let degree = first.degree();
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let set = closure_set(degree, gens);
        let elements: Vec<Perm> = set.into_iter().collect();
        let mut generators: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !generators.contains(g) {
                generators.push(g.clone());
            }
        }
        if generators.is_empty() {
            generators.push(Perm::identity(degree));
        }
        Ok(FiniteGroup {
            degree,
            generators,
            elements,
            identity: Perm::identity(degree),
        })
    }

    pub fn trivial(degree: usize) -> FiniteGroup {
        FiniteGroup {
            degree,
            generators: vec![Perm::identity(degree)],
            elements: vec![Perm::identity(degree)],
            identity: Perm::identity(degree),
        }
    }

    /// Wraps an already-closed element set, finding a small generating set
    /// greedily. Errors if the set is not actually closed.
    pub fn from_elements(mut elements: Vec<Perm>) -> Result<FiniteGroup, GroupError> {
        if elements.is_empty() {
            return Err(GroupError::EmptyGeneratingSet);
        }
        let degree = elements[0].degree();
        for e in &elements {
            if e.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: e.degree(),
                });
            }
        }
        elements.sort();
        elements.dedup();
        let mut generators: Vec<Perm> = Vec::new();
        let mut known = closure_set(degree, &[Perm::identity(degree)]);
        // each accepted generator at least doubles |known| (Lagrange), so this
        // loop adds at most log2(order) generators
        for e in &elements {
            if !known.contains(e) {
                generators.push(e.clone());
                known = closure_set(degree, &generators);
            }
        }
        if known.len() != elements.len() {
            let witness = known
                .iter()
                .find(|p| elements.binary_search(p).is_err())
                .map(|p| p.cycle_string())
                .unwrap_or_default();
            return Err(GroupError::NotClosed { witness });
        }
        if generators.is_empty() {
            generators.push(Perm::identity(degree));
        }
        Ok(FiniteGroup {
            degree,
            generators,
            elements,
            identity: Perm::identity(degree),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn identity(&self) -> &Perm {
        &self.identity
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    /// Position of `p` in the sorted element list.
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Multiset of element orders, as (order, multiplicity) pairs.
    pub fn order_spectrum(&self) -> Vec<(u64, usize)> {
        let mut orders: Vec<u64> = self.elements.iter().map(Perm::order).collect();
        orders.sort_unstable();
        let mut spectrum: Vec<(u64, usize)> = Vec::new();
        for o in orders {
            match spectrum.last_mut() {
                Some((last, count)) if *last == o => *count += 1,
                _ => spectrum.push((o, 1)),
            }
        }
        spectrum
    }

    /// Exponent of the group: lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.elements.iter().fold(1, |acc, e| lcm(acc, e.order()))
    }

    /// Elements commuting with every generator (hence with the whole group).
    pub fn center(&self) -> FiniteGroup {
        let elements: Vec<Perm> = self
            .elements
            .iter()
            .filter(|z| self.generators.iter().all(|g| z.compose(g) == g.compose(z)))
            .cloned()
            .collect();
        FiniteGroup::from_elements(elements).expect("center is closed")
    }

    /// Elements of `self` commuting with every member of `set`.
    pub fn centralizer(&self, set: &[Perm]) -> FiniteGroup {
        for s in set {
            assert_eq!(
                s.degree(),
                self.degree,
                "centralizer target has degree {}, group has degree {}",
                s.degree(),
                self.degree
            );
        }
        let elements: Vec<Perm> = self
            .elements
            .iter()
            .filter(|z| set.iter().all(|s| z.compose(s) == s.compose(z)))
            .cloned()
            .collect();
        FiniteGroup::from_elements(elements).expect("centralizer is closed")
    }

    /// Closure of all commutators `[g, h]` over element pairs.
    pub fn derived_subgroup(&self) -> FiniteGroup {
        let mut comms: BTreeSet<Perm> = BTreeSet::new();
        for g in &self.elements {
            for h in &self.elements {
                comms.insert(g.commutator(h));
            }
        }
        let gens: Vec<Perm> = comms.into_iter().collect();
        FiniteGroup::closure(&gens).expect("commutators generate a subgroup")
    }

    /// True iff `sub` is invariant under conjugation by `self`.
    /// Checking generators on both sides suffices.
    pub fn is_normal(&self, sub: &FiniteGroup) -> Result<bool, GroupError> {
        if !sub.is_subgroup_of(self) {
            return Err(GroupError::NotASubgroup);
        }
        Ok(self.generators.iter().all(|g| {
            sub.generators
                .iter()
                .all(|h| sub.contains(&h.conjugate_by(g)))
        }))
    }

    /// The action of `self` on the right cosets of a normal subgroup, as a
    /// permutation group of degree `order/|normal|`.
    pub fn quotient(&self, normal: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        if !self.is_normal(normal)? {
            return Err(GroupError::NotNormal);
        }
        // canonical coset representative: lexicographically least of N*g
        let rep = |g: &Perm| -> Perm {
            normal
                .elements
                .iter()
                .map(|n| n.compose(g))
                .min()
                .expect("nonempty subgroup")
        };
        let mut reps: Vec<Perm> = self.elements.iter().map(rep).collect();
        reps.sort();
        reps.dedup();
        let coset_index = |g: &Perm| reps.binary_search(&rep(g)).expect("coset of a member");
        let act = |g: &Perm| Perm::from_fn(reps.len(), |i| coset_index(&reps[i].compose(g)));
        let mut elements: Vec<Perm> = self.elements.iter().map(act).collect();
        elements.sort();
        elements.dedup();
        let quot = FiniteGroup::from_elements(elements)?;
        debug_assert_eq!(quot.order() * normal.order(), self.order());
        Ok(quot)
    }

    /// Orbit of a point and its stabilizer; `|orbit| * |stab| = order` is
    /// asserted.
    pub fn orbit_stabilizer(&self, point: usize) -> Result<(Vec<usize>, FiniteGroup), GroupError> {
        if point >= self.degree {
            return Err(GroupError::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let mut orbit: BTreeSet<usize> = BTreeSet::new();
        let mut stab_elements: Vec<Perm> = Vec::new();
        for e in &self.elements {
            orbit.insert(e.apply(point));
            if e.apply(point) == point {
                stab_elements.push(e.clone());
            }
        }
        let orbit: Vec<usize> = orbit.into_iter().collect();
        let stab = FiniteGroup::from_elements(stab_elements)?;
        assert_eq!(
            orbit.len() * stab.order(),
            self.order(),
            "orbit-stabilizer counting identity violated"
        );
        Ok((orbit, stab))
    }

    /// Orbit of a point under the group.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.elements.iter().map(|e| e.apply(point)).collect();
        set.into_iter().collect()
    }

    /// A small generating set found greedily; every accepted element at least
    /// doubles the generated subgroup, so the result has at most log2(order)
    /// members.
    pub fn reduced_generators(&self) -> Vec<Perm> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut known = closure_set(self.degree, &[Perm::identity(self.degree)]);
        for e in &self.elements {
            if known.len() == self.order() {
                break;
            }
            if !known.contains(e) {
                gens.push(e.clone());
                known = closure_set(self.degree, &gens);
            }
        }
        if gens.is_empty() {
            gens.push(Perm::identity(self.degree));
        }
        gens
    }

    /// All index-2 subgroups, as kernels of the surjections onto the 2-element
    /// group determined by generator signs. Returns `(subgroup, is_abelian)`.
    pub fn index2_subgroups(&self) -> Vec<(FiniteGroup, bool)> {
        let generators = self.reduced_generators();
        let r = generators.len();
        let mut found: Vec<(FiniteGroup, bool)> = Vec::new();
        'assignment: for bits in 1u64..(1 << r) {
            // propagate signs over the Cayley graph of the generators
            let mut sign: alloc::collections::BTreeMap<Perm, u8> =
                alloc::collections::BTreeMap::new();
            sign.insert(self.identity.clone(), 0);
            let mut queue: VecDeque<Perm> = VecDeque::new();
            queue.push_back(self.identity.clone());
            while let Some(x) = queue.pop_front() {
                let sx = sign[&x];
                for (gi, g) in generators.iter().enumerate() {
                    let y = x.compose(g);
                    let sy = sx ^ ((bits >> gi) & 1) as u8;
                    match sign.get(&y) {
                        Some(&s) if s != sy => continue 'assignment,
                        Some(_) => {}
                        None => {
                            sign.insert(y.clone(), sy);
                            queue.push_back(y);
                        }
                    }
                }
            }
            if sign.values().all(|&s| s == 0) {
                continue;
            }
            let kernel: Vec<Perm> = sign
                .iter()
                .filter(|(_, &s)| s == 0)
                .map(|(p, _)| p.clone())
                .collect();
            let sub = FiniteGroup::from_elements(kernel).expect("kernel is closed");
            if found.iter().any(|(s, _)| s.elements == sub.elements) {
                continue;
            }
            let abelian = sub.is_abelian();
            found.push((sub, abelian));
        }
        found.sort_by(|(a, _), (b, _)| a.elements.cmp(&b.elements));
        found
    }

    /// Invariant-factor decomposition of an abelian group, peeled greedily:
    /// a maximal-order element always spans a direct factor.
    /// Returned ascending, each factor dividing the next.
    pub fn abelian_invariants(&self) -> Result<Vec<u64>, GroupError> {
        if !self.is_abelian() {
            return Err(GroupError::NotAbelian);
        }
        let mut factors: Vec<u64> = Vec::new();
        let mut current = self.clone();
        while current.order() > 1 {
            let max = current
                .elements
                .iter()
                .max_by_key(|e| e.order())
                .expect("nonempty")
                .clone();
            factors.push(max.order());
            let span = FiniteGroup::closure(&[max]).expect("cyclic subgroup");
            current = current.quotient(&span).expect("abelian, so normal");
        }
        factors.reverse();
        Ok(factors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral8() -> FiniteGroup {
        // natural degree-4 action of the symmetries of a square
        let r = Perm::cycle(4);
        let s = Perm::from_images(vec![0, 3, 2, 1]).unwrap();
        FiniteGroup::closure(&[r, s]).unwrap()
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let g = FiniteGroup::closure(&[Perm::identity(5)]).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn closure_of_full_cycle_is_cyclic() {
        let g = FiniteGroup::closure(&[Perm::cycle(6)]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.is_abelian());
        assert_eq!(g.abelian_invariants().unwrap(), vec![6]);
    }

    #[test]
    fn closure_is_idempotent() {
        let g = dihedral8();
        let again = FiniteGroup::closure(g.elements()).unwrap();
        assert_eq!(again.elements(), g.elements());
    }

    #[test]
    fn dihedral8_invariants() {
        let g = dihedral8();
        assert_eq!(g.order(), 8);
        assert!(!g.is_abelian());
        assert_eq!(g.center().order(), 2);
        assert_eq!(g.derived_subgroup().order(), 2);
        // 5 involutions in D8
        let invol = g.elements().iter().filter(|e| e.order() == 2).count();
        assert_eq!(invol, 5);
    }

    #[test]
    fn abelian_center_and_centralizer() {
        let g = FiniteGroup::closure(&[Perm::cycle(5)]).unwrap();
        assert_eq!(g.center().order(), 5);
        assert_eq!(g.centralizer(&[Perm::identity(5)]).order(), 5);
        assert_eq!(g.centralizer(g.elements()).order(), 5);
    }

    #[test]
    fn normality_and_quotient() {
        let g = dihedral8();
        let rot = FiniteGroup::closure(&[Perm::cycle(4)]).unwrap();
        assert!(g.is_normal(&rot).unwrap());
        let q = g.quotient(&rot).unwrap();
        assert_eq!(q.order(), 2);

        // trivial and full subgroup edge cases
        assert!(g.is_normal(&FiniteGroup::trivial(4)).unwrap());
        assert!(g.is_normal(&g).unwrap());
        assert_eq!(g.quotient(&g).unwrap().order(), 1);
        // quotient by the trivial subgroup is the regular-ish action, order 8
        assert_eq!(g.quotient(&FiniteGroup::trivial(4)).unwrap().order(), 8);

        // a non-normal subgroup: reflection <s> in D8
        let s = FiniteGroup::closure(&[Perm::from_images(vec![0, 3, 2, 1]).unwrap()]).unwrap();
        assert!(!g.is_normal(&s).unwrap());
        assert!(matches!(g.quotient(&s), Err(GroupError::NotNormal)));

        // containment violation
        let alien = FiniteGroup::closure(&[Perm::transposition(4, 0, 1)]).unwrap();
        assert!(matches!(g.is_normal(&alien), Err(GroupError::NotASubgroup)));
    }

    #[test]
    fn orbit_stabilizer_counts() {
        let g = dihedral8();
        let (orbit, stab) = g.orbit_stabilizer(0).unwrap();
        assert_eq!(orbit.len(), 4);
        assert_eq!(stab.order(), 2);
        let t = FiniteGroup::trivial(4);
        let (orbit, stab) = t.orbit_stabilizer(2).unwrap();
        assert_eq!(orbit, vec![2]);
        assert_eq!(stab.order(), 1);
        assert!(g.orbit_stabilizer(7).is_err());
        // regular cyclic group moves every point everywhere
        let c = FiniteGroup::closure(&[Perm::cycle(6)]).unwrap();
        assert_eq!(c.orbit(1).len(), 6);
    }

    #[test]
    fn index2_subgroups_of_small_groups() {
        let c4 = FiniteGroup::closure(&[Perm::cycle(4)]).unwrap();
        let subs = c4.index2_subgroups();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].0.order(), 2);
        assert!(subs[0].1);

        let klein = FiniteGroup::closure(&[
            Perm::transposition(4, 0, 1).compose(&Perm::transposition(4, 2, 3)),
            Perm::transposition(4, 0, 2).compose(&Perm::transposition(4, 1, 3)),
        ])
        .unwrap();
        assert_eq!(klein.order(), 4);
        assert_eq!(klein.index2_subgroups().len(), 3);
    }

    #[test]
    fn abelian_invariants_examples() {
        let klein = FiniteGroup::closure(&[
            Perm::transposition(4, 0, 1).compose(&Perm::transposition(4, 2, 3)),
            Perm::transposition(4, 0, 2).compose(&Perm::transposition(4, 1, 3)),
        ])
        .unwrap();
        assert_eq!(klein.abelian_invariants().unwrap(), vec![2, 2]);
        assert!(dihedral8().abelian_invariants().is_err());
    }

    #[test]
    fn from_elements_rejects_unclosed_sets() {
        let p = Perm::cycle(5);
        let r = FiniteGroup::from_elements(vec![Perm::identity(5), p]);
        assert!(matches!(r, Err(GroupError::NotClosed { .. })));
    }

    #[test]
    fn lagrange_on_every_subgroup_producer() {
        let g = dihedral8();
        for sub in [g.center(), g.derived_subgroup(), g.centralizer(&[Perm::cycle(4)])] {
            assert_eq!(g.order() % sub.order(), 0);
            assert!(sub.is_subgroup_of(&g));
        }
    }
}
