//! Isomorphism testing and automorphism groups for fully enumerated groups.
//!
//! Both run the same engine: reduce the source to a small generating sequence
//! (greedy, largest closure gain first), then backtrack over order-compatible
//! images, extending each partial assignment over the generated subgroup and
//! pruning on the first homomorphism or injectivity violation.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::{FiniteGroup, GroupError};
use crate::perm::Perm;

/// A witness isomorphism: `map[i]` is the index in `target.elements()` of the
/// image of `source.elements()[i]`.
#[derive(Clone, Debug)]
pub struct GroupIso {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

impl GroupIso {
    /// Re-checks the witness: bijectivity plus product preservation, on all
    /// pairs up to order 96 and on generator pairs beyond.
    pub fn is_valid(&self) -> bool {
        let n = self.source.order();
        if self.target.order() != n || self.map.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &m in &self.map {
            if m >= n || seen[m] {
                return false;
            }
            seen[m] = true;
        }
        let src = self.source.elements();
        let tgt = self.target.elements();
        let image_of = |p: &Perm| -> &Perm {
            let i = self.source.index_of(p).expect("element of source");
            &tgt[self.map[i]]
        };
        let check_pair = |a: &Perm, b: &Perm| -> bool {
            let lhs = image_of(&a.compose(b));
            let rhs = image_of(a).compose(image_of(b));
            *lhs == rhs
        };
        if n <= 96 {
            src.iter().all(|a| src.iter().all(|b| check_pair(a, b)))
        } else {
            src.iter()
                .all(|a| self.source.generators().iter().all(|b| check_pair(a, b)))
        }
    }
}

/// Abstract multiplication table of a group, indexed by element position.
struct MulTable {
    n: usize,
    identity: usize,
    mul: Vec<u32>,
    orders: Vec<u64>,
}

impl MulTable {
    fn from_group(g: &FiniteGroup) -> MulTable {
        let n = g.order();
        let els = g.elements();
        let mut mul = vec![0u32; n * n];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                let prod = a.compose(b);
                mul[i * n + j] = g.index_of(&prod).expect("group is closed") as u32;
            }
        }
        let identity = g.index_of(g.identity()).expect("identity present");
        let orders = els.iter().map(Perm::order).collect();
        MulTable {
            n,
            identity,
            mul,
            orders,
        }
    }

    #[inline]
    fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.n + j] as usize
    }

    fn closure_size(&self, gens: &[usize]) -> usize {
        self.closure(gens).iter().filter(|&&b| b).count()
    }

    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.n];
        inside[self.identity] = true;
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push(y);
                }
            }
        }
        inside
    }

    /// Greedy generating sequence: repeatedly add the element whose addition
    /// grows the generated subgroup the most (first index on ties).
    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut covered = self.closure(&gens);
        while covered.iter().any(|&b| !b) {
            let mut best = usize::MAX;
            let mut best_size = 0;
            for x in 0..self.n {
                if covered[x] {
                    continue;
                }
                gens.push(x);
                let size = self.closure_size(&gens);
                gens.pop();
                if size > best_size {
                    best_size = size;
                    best = x;
                }
            }
            gens.push(best);
            covered = self.closure(&gens);
        }
        gens
    }
}

/// Extends `gens[..depth] -> images` over the generated subgroup.
/// Returns the partial map on success, `None` on any conflict.
fn extend_partial(
    src: &MulTable,
    tgt: &MulTable,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<u32>>> {
    let mut map: Vec<Option<u32>> = vec![None; src.n];
    let mut used = vec![false; tgt.n];
    map[src.identity] = Some(tgt.identity as u32);
    used[tgt.identity] = true;
    let mut queue = vec![src.identity];
    while let Some(x) = queue.pop() {
        let fx = map[x].expect("queued elements are mapped") as usize;
        for (g, &h) in gens.iter().zip(images.iter()) {
            let y = src.mul(x, *g);
            let fy = tgt.mul(fx, h);
            match map[y] {
                Some(prev) if prev as usize != fy => return None,
                Some(_) => {}
                None => {
                    if used[fy] {
                        return None;
                    }
                    map[y] = Some(fy as u32);
                    used[fy] = true;
                    queue.push(y);
                }
            }
        }
    }
    Some(map)
}

fn backtrack(
    src: &MulTable,
    tgt: &MulTable,
    gens: &[usize],
    images: &mut Vec<usize>,
    sols: &mut Vec<Vec<usize>>,
    stop_at_first: bool,
) -> bool {
    if images.len() == gens.len() {
        if let Some(map) = extend_partial(src, tgt, gens, images) {
            if map.iter().all(Option::is_some) {
                sols.push(map.into_iter().map(|m| m.unwrap() as usize).collect());
                return stop_at_first;
            }
        }
        return false;
    }
    let g = gens[images.len()];
    for h in 0..tgt.n {
        if tgt.orders[h] != src.orders[g] {
            continue;
        }
        images.push(h);
        let viable = extend_partial(src, tgt, gens, images).is_some();
        if viable && backtrack(src, tgt, gens, images, sols, stop_at_first) {
            images.pop();
            return true;
        }
        images.pop();
    }
    false
}

fn spectra_match(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order() || a.is_abelian() != b.is_abelian() {
        return false;
    }
    if a.order_spectrum() != b.order_spectrum() {
        return false;
    }
    if a.center().order() != b.center().order() {
        return false;
    }
    a.derived_subgroup().order() == b.derived_subgroup().order()
}

/// Searches for an isomorphism; `None` means none exists (the search is
/// exhaustive once the cheap invariants agree).
pub fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> Option<GroupIso> {
    if !spectra_match(a, b) {
        return None;
    }
    let src = MulTable::from_group(a);
    let tgt = MulTable::from_group(b);
    let gens = src.greedy_generators();
    let mut sols = Vec::new();
    backtrack(&src, &tgt, &gens, &mut Vec::new(), &mut sols, true);
    sols.pop().map(|map| GroupIso {
        source: a.clone(),
        target: b.clone(),
        map,
    })
}

/// The full automorphism group of `g`, acting on its element list.
/// Up to order 96 every solution is re-verified on all |G|² products.
pub fn automorphism_group(g: &FiniteGroup, bound: usize) -> Result<FiniteGroup, GroupError> {
    if g.order() > bound {
        return Err(GroupError::BoundExceeded {
            order: g.order(),
            bound,
        });
    }
    let table = MulTable::from_group(g);
    let gens = table.greedy_generators();
    let mut sols = Vec::new();
    backtrack(&table, &table, &gens, &mut Vec::new(), &mut sols, false);
    if table.n <= 96 {
        let identity = table.identity;
        for map in &sols {
            assert_eq!(map[identity], identity, "automorphism moved the identity");
            for i in 0..table.n {
                for j in 0..table.n {
                    assert_eq!(
                        map[table.mul(i, j)],
                        table.mul(map[i], map[j]),
                        "backtracking produced a non-homomorphism"
                    );
                }
            }
        }
    }
    let perms: Vec<Perm> = sols
        .into_iter()
        .map(|map| Perm::from_fn(g.order(), |i| map[i]))
        .collect();
    FiniteGroup::from_elements(perms)
}

/// Stabilizer of one element under an automorphism group returned by
/// [`automorphism_group`] (e.g. the centralizer of a designated involution).
pub fn element_stabilizer(
    aut: &FiniteGroup,
    element_index: usize,
) -> Result<FiniteGroup, GroupError> {
    let (_, stab) = aut.orbit_stabilizer(element_index)?;
    Ok(stab)
}

/// Restricts an automorphism group of `g` to those mapping `subset` onto itself.
pub fn setwise_stabilizer(aut: &FiniteGroup, subset: &[usize]) -> Vec<Perm> {
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    aut.elements()
        .iter()
        .filter(|u| set.iter().all(|&i| set.contains(&u.apply(i))))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(k: usize) -> FiniteGroup {
        FiniteGroup::closure(&[Perm::cycle(k)]).unwrap()
    }

    fn klein() -> FiniteGroup {
        FiniteGroup::closure(&[
            Perm::transposition(4, 0, 1).compose(&Perm::transposition(4, 2, 3)),
            Perm::transposition(4, 0, 2).compose(&Perm::transposition(4, 1, 3)),
        ])
        .unwrap()
    }

    fn dihedral8() -> FiniteGroup {
        let r = Perm::cycle(4);
        let s = Perm::from_images(vec![0, 3, 2, 1]).unwrap();
        FiniteGroup::closure(&[r, s]).unwrap()
    }

    #[test]
    fn identity_iso_on_equal_groups() {
        let g = dihedral8();
        let iso = isomorphic(&g, &g).expect("a group is isomorphic to itself");
        assert!(iso.is_valid());
    }

    #[test]
    fn cyclic4_vs_klein_differ() {
        assert!(isomorphic(&cyclic(4), &klein()).is_none());
    }

    #[test]
    fn same_group_different_degree() {
        // C6 naturally vs C6 as C2 x C3 on 5 points
        let a = cyclic(6);
        let two_three = Perm::from_images(vec![1, 0, 3, 4, 2]).unwrap();
        let b = FiniteGroup::closure(&[two_three]).unwrap();
        let iso = isomorphic(&a, &b).expect("both cyclic of order 6");
        assert!(iso.is_valid());
    }

    #[test]
    fn aut_of_cyclic_5_has_order_4() {
        let aut = automorphism_group(&cyclic(5), 256).unwrap();
        assert_eq!(aut.order(), 4);
    }

    #[test]
    fn aut_of_klein_is_s3() {
        let aut = automorphism_group(&klein(), 256).unwrap();
        assert_eq!(aut.order(), 6);
        assert!(!aut.is_abelian());
    }

    #[test]
    fn aut_elements_fix_identity_and_preserve_products() {
        let g = dihedral8();
        let aut = automorphism_group(&g, 256).unwrap();
        assert_eq!(aut.order(), 8); // Aut(D8) = D8
        let id_idx = g.index_of(g.identity()).unwrap();
        let els = g.elements();
        for u in aut.elements() {
            assert_eq!(u.apply(id_idx), id_idx);
            for (i, a) in els.iter().enumerate() {
                for (j, b) in els.iter().enumerate() {
                    let prod = g.index_of(&a.compose(b)).unwrap();
                    let mapped = g.index_of(&els[u.apply(i)].compose(&els[u.apply(j)])).unwrap();
                    assert_eq!(u.apply(prod), mapped);
                }
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        let g = cyclic(12);
        assert!(matches!(
            automorphism_group(&g, 8),
            Err(GroupError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn stabilizer_of_element() {
        let g = klein();
        let aut = automorphism_group(&g, 64).unwrap();
        // Aut(V4) = S3 permutes the three involutions; each stabilizer has order 2
        let invol = g.elements().iter().position(|e| e.order() == 2).unwrap();
        let stab = element_stabilizer(&aut, invol).unwrap();
        assert_eq!(stab.order(), 2);
    }
}
