//! Concrete models of the two presented group families and their coset
//! actions, the sharply transitive section sets that define the loops, and
//! reference groups for isomorphism-type claims.
//!
//! Family B is presented by a^(2n) = b^2 = g^2 = (ab)^2 = id with g central;
//! family C replaces commuting b, g by the twisted relation bg = gb·a^n
//! (a^n is central in both). Every element has the unique normal form
//! a^i b^j g^k, and the product rule is the closed form
//!     (i,j,k)·(i',j',k') = (i + (-1)^j i' + n·k·j' [C only],  j+j',  k+k')
//! with i mod 2n and j, k mod 2. Both families have order 8n and act
//! faithfully on the 4n right cosets of <b>.
//!
//! The families are defined for n >= 2, family C additionally for even n.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::FiniteGroup;
use crate::perm::Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::B => write!(f, "B"),
            Family::C => write!(f, "C"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    InvalidN { family: Family, n: u32 },
    NotSharplyTransitive { detail: String },
    ReferenceTooLarge { order: usize },
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::InvalidN { family, n } => match family {
                Family::B => write!(f, "family B requires n >= 2, got n = {n}"),
                Family::C => write!(f, "family C requires even n >= 2, got n = {n}"),
            },
            ModelError::NotSharplyTransitive { detail } => {
                write!(f, "section is not sharply transitive: {detail}")
            }
            ModelError::ReferenceTooLarge { order } => {
                write!(f, "reference group order {order} exceeds 10^4")
            }
        }
    }
}

impl core::error::Error for ModelError {}

/// Normal form a^i b^j g^k of a group element; `i` is reduced mod 2n and
/// `j`, `k` mod 2. Carries its family and n so products across distinct
/// groups fail loudly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalForm {
    pub family: Family,
    pub n: u32,
    pub i: u32,
    pub j: u8,
    pub k: u8,
}

impl NormalForm {
    pub fn new(family: Family, n: u32, i: i64, j: i64, k: i64) -> NormalForm {
        let wrap = 2 * n as i64;
        NormalForm {
            family,
            n,
            i: (i.rem_euclid(wrap)) as u32,
            j: (j.rem_euclid(2)) as u8,
            k: (k.rem_euclid(2)) as u8,
        }
    }

    pub fn identity(family: Family, n: u32) -> NormalForm {
        NormalForm::new(family, n, 0, 0, 0)
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.j == 0 && self.k == 0
    }

    /// Product in normal form. The rewriting moves every generator of the
    /// right factor left past b^j (inverting a-exponents) and, in family C,
    /// past g^k (emitting the central twist a^(n·k·j')).
    pub fn mul(&self, rhs: &NormalForm) -> NormalForm {
        assert_eq!(
            (self.family, self.n),
            (rhs.family, rhs.n),
            "normal forms from different groups"
        );
        let n = self.n as i64;
        let sign = if self.j == 0 { 1 } else { -1 };
        let twist = match self.family {
            Family::B => 0,
            Family::C => n * (self.k as i64) * (rhs.j as i64),
        };
        NormalForm::new(
            self.family,
            self.n,
            self.i as i64 + sign * rhs.i as i64 + twist,
            self.j as i64 + rhs.j as i64,
            self.k as i64 + rhs.k as i64,
        )
    }

    pub fn inverse(&self) -> NormalForm {
        // solve x·self = id by reusing mul on the candidate exponents
        let n = self.n as i64;
        let sign = if self.j == 0 { -1 } else { 1 };
        let twist = match self.family {
            Family::C if self.j == 1 && self.k == 1 => n,
            _ => 0,
        };
        let inv = NormalForm::new(
            self.family,
            self.n,
            sign * self.i as i64 + twist,
            self.j as i64,
            self.k as i64,
        );
        debug_assert!(inv.mul(self).is_identity() && self.mul(&inv).is_identity());
        inv
    }

    pub fn power(&self, e: u32) -> NormalForm {
        let mut acc = NormalForm::identity(self.family, self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn order(&self) -> u32 {
        let mut acc = *self;
        let mut o = 1;
        while !acc.is_identity() {
            acc = acc.mul(self);
            o += 1;
        }
        o
    }

    /// Word string like `a^3 b g`, or `e` for the identity.
    pub fn label(&self) -> String {
        if self.is_identity() {
            return String::from("e");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.i == 1 {
            parts.push(String::from("a"));
        } else if self.i > 1 {
            parts.push(format!("a^{}", self.i));
        }
        if self.j == 1 {
            parts.push(String::from("b"));
        }
        if self.k == 1 {
            parts.push(String::from("g"));
        }
        parts.join(" ")
    }
}

/// Generator shorthands.
pub fn gen_a(family: Family, n: u32) -> NormalForm {
    NormalForm::new(family, n, 1, 0, 0)
}
pub fn gen_b(family: Family, n: u32) -> NormalForm {
    NormalForm::new(family, n, 0, 1, 0)
}
pub fn gen_g(family: Family, n: u32) -> NormalForm {
    NormalForm::new(family, n, 0, 0, 1)
}

fn validate_params(family: Family, n: u32) -> Result<(), ModelError> {
    let ok = match family {
        Family::B => n >= 2,
        Family::C => n >= 2 && n % 2 == 0,
    };
    if ok {
        Ok(())
    } else {
        Err(ModelError::InvalidN { family, n })
    }
}

/// The degree-4n permutation representation of a family group on the right
/// cosets of <b>, together with the coset labeling.
///
/// Coset labels are the lexicographically least normal form in each coset
/// {x, bx}; the identity coset gets index 0.
pub struct GroupModel {
    pub family: Family,
    pub n: u32,
    /// image of the coset action; order 8n (the action is faithful)
    pub group: FiniteGroup,
    /// canonical representative of coset `p`, for p in 0..4n
    pub cosets: Vec<NormalForm>,
    perm_cache: BTreeMap<NormalForm, Perm>,
}

impl GroupModel {
    pub fn new(family: Family, n: u32) -> Result<GroupModel, ModelError> {
        validate_params(family, n)?;
        let b = gen_b(family, n);
        let mut all: Vec<NormalForm> = Vec::with_capacity(8 * n as usize);
        for i in 0..2 * n {
            for j in 0..2 {
                for k in 0..2 {
                    all.push(NormalForm::new(family, n, i as i64, j, k));
                }
            }
        }
        let rep = |x: &NormalForm| -> NormalForm { (*x).min(b.mul(x)) };
        let mut cosets: Vec<NormalForm> = all.iter().map(rep).collect();
        cosets.sort();
        cosets.dedup();
        assert_eq!(cosets.len(), 4 * n as usize, "index of <b> must be 4n");
        let coset_index: BTreeMap<NormalForm, usize> = cosets
            .iter()
            .enumerate()
            .map(|(idx, c)| (*c, idx))
            .collect();
        let degree = cosets.len();
        let mut perm_cache = BTreeMap::new();
        let mut images: Vec<Perm> = Vec::with_capacity(all.len());
        for gel in &all {
            let p = Perm::from_fn(degree, |idx| coset_index[&rep(&cosets[idx].mul(gel))]);
            images.push(p.clone());
            perm_cache.insert(*gel, p);
        }
        let distinct: usize = {
            let mut v = images.clone();
            v.sort();
            v.dedup();
            v.len()
        };
        assert_eq!(distinct, 8 * n as usize, "coset action must be faithful");
        let group = FiniteGroup::from_elements(images).expect("homomorphic image is closed");
        Ok(GroupModel {
            family,
            n,
            group,
            cosets,
            perm_cache,
        })
    }

    pub fn degree(&self) -> usize {
        self.cosets.len()
    }

    /// The coset permutation of a group element.
    pub fn coset_perm(&self, x: &NormalForm) -> &Perm {
        &self.perm_cache[x]
    }

    /// Loop element (coset index) that `x` sends the identity coset to.
    pub fn point_of(&self, x: &NormalForm) -> usize {
        self.coset_perm(x).apply(0)
    }

    /// All 8n elements in normal form.
    pub fn nf_elements(&self) -> impl Iterator<Item = &NormalForm> {
        self.perm_cache.keys()
    }

    /// The group element behind a coset permutation, if it is one.
    pub fn nf_of_perm(&self, p: &Perm) -> Option<NormalForm> {
        self.perm_cache
            .iter()
            .find(|(_, q)| *q == p)
            .map(|(nf, _)| *nf)
    }
}

/// A sharply transitive set of 4n coset permutations containing the identity.
/// `perms[x]` is the unique member sending `basepoint` to `x`, and `words[x]`
/// its normal form; `labels` name the underlying cosets.
pub struct Section {
    pub perms: Vec<Perm>,
    pub words: Vec<NormalForm>,
    pub basepoint: usize,
    pub labels: Vec<String>,
}

impl Section {
    pub fn degree(&self) -> usize {
        self.perms.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.perms.contains(p)
    }
}

/// The section words of the construction: a^(2i), a^(2j+1) b for i, j in
/// 1..=n, and a^k b g for k in 1..=2n.
pub fn section_words(family: Family, n: u32) -> Vec<NormalForm> {
    let nn = n as i64;
    let mut words = Vec::with_capacity(4 * n as usize);
    for i in 1..=nn {
        words.push(NormalForm::new(family, n, 2 * i, 0, 0));
    }
    for j in 1..=nn {
        words.push(NormalForm::new(family, n, 2 * j + 1, 1, 0));
    }
    for k in 1..=2 * nn {
        words.push(NormalForm::new(family, n, k, 1, 1));
    }
    words
}

/// Builds the Burn section of the model, verifying sharp transitivity on the
/// basepoint (the loop constructor re-verifies the full Latin property).
pub fn burn_section(model: &GroupModel) -> Result<Section, ModelError> {
    let words = section_words(model.family, model.n);
    let degree = model.degree();
    if words.len() != degree {
        return Err(ModelError::NotSharplyTransitive {
            detail: format!("|S| = {} but degree is {degree}", words.len()),
        });
    }
    let mut perms: Vec<Option<Perm>> = vec![None; degree];
    let mut word_of: Vec<Option<NormalForm>> = vec![None; degree];
    for w in &words {
        let p = model.coset_perm(w).clone();
        let image = p.apply(0);
        if perms[image].is_some() {
            return Err(ModelError::NotSharplyTransitive {
                detail: format!("two members send the basepoint to {image}"),
            });
        }
        perms[image] = Some(p);
        word_of[image] = Some(*w);
    }
    let perms: Vec<Perm> = perms.into_iter().map(|p| p.expect("counted above")).collect();
    let words: Vec<NormalForm> = word_of.into_iter().map(|w| w.expect("counted above")).collect();
    if !perms[0].is_identity() {
        return Err(ModelError::NotSharplyTransitive {
            detail: String::from("no member fixes the basepoint"),
        });
    }
    let labels = model.cosets.iter().map(NormalForm::label).collect();
    Ok(Section {
        perms,
        words,
        basepoint: 0,
        labels,
    })
}

/// Involution counts of the four principal-isotope sections S, abS, abgS, bgS,
/// counted on group elements of order exactly 2.
pub fn isotope_involution_counts(model: &GroupModel) -> [usize; 4] {
    let (family, n) = (model.family, model.n);
    let words = section_words(family, n);
    let translates = [
        NormalForm::identity(family, n),
        NormalForm::new(family, n, 1, 1, 0),
        NormalForm::new(family, n, 1, 1, 1),
        NormalForm::new(family, n, 0, 1, 1),
    ];
    let mut counts = [0usize; 4];
    for (slot, t) in translates.iter().enumerate() {
        counts[slot] = words.iter().filter(|w| t.mul(w).order() == 2).count();
    }
    counts
}

/// Construction recipes for named reference groups used in isomorphism claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReferenceSpec {
    /// Cyclic group of order k (k >= 1).
    Cyclic(u32),
    /// Dihedral group of the given order (order = 2k, k >= 1).
    Dihedral(u32),
    /// Symmetric group on 3 letters.
    Sym3,
    /// Multiplicative group of units modulo m.
    UnitsMod(u32),
    /// Direct product acting on the disjoint union of the factors' domains.
    DirectProduct(Vec<ReferenceSpec>),
}

impl fmt::Display for ReferenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReferenceSpec::Cyclic(k) => write!(f, "C{k}"),
            ReferenceSpec::Dihedral(o) => write!(f, "D{o}"),
            ReferenceSpec::Sym3 => write!(f, "S3"),
            ReferenceSpec::UnitsMod(m) => write!(f, "Z{m}*"),
            ReferenceSpec::DirectProduct(parts) => {
                for (idx, p) in parts.iter().enumerate() {
                    if idx > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

fn spec_order(spec: &ReferenceSpec) -> usize {
    match spec {
        ReferenceSpec::Cyclic(k) => (*k).max(1) as usize,
        ReferenceSpec::Dihedral(o) => (*o).max(1) as usize,
        ReferenceSpec::Sym3 => 6,
        ReferenceSpec::UnitsMod(m) => (1..*m.max(&1)).filter(|x| gcd(*x, *m) == 1).count().max(1),
        ReferenceSpec::DirectProduct(parts) => parts.iter().map(spec_order).product(),
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Builds a concrete permutation group of the named isomorphism type.
pub fn make_reference(spec: &ReferenceSpec) -> Result<FiniteGroup, ModelError> {
    let order = spec_order(spec);
    if order > 10_000 {
        return Err(ModelError::ReferenceTooLarge { order });
    }
    let group = match spec {
        ReferenceSpec::Cyclic(k) => {
            let k = (*k).max(1) as usize;
            FiniteGroup::closure(&[Perm::cycle(k)]).expect("cyclic generator")
        }
        ReferenceSpec::Dihedral(o) => {
            let k = ((*o).max(2) / 2) as usize;
            if k <= 2 {
                // D2 = C2, D4 = Klein; use a regular-style faithful action
                let gens: Vec<Perm> = match k {
                    1 => vec![Perm::transposition(2, 0, 1)],
                    _ => vec![
                        Perm::transposition(4, 0, 1).compose(&Perm::transposition(4, 2, 3)),
                        Perm::transposition(4, 0, 2).compose(&Perm::transposition(4, 1, 3)),
                    ],
                };
                FiniteGroup::closure(&gens).expect("small dihedral")
            } else {
                let rot = Perm::cycle(k);
                let refl = Perm::from_fn(k, |x| (k - x) % k);
                FiniteGroup::closure(&[rot, refl]).expect("dihedral generators")
            }
        }
        ReferenceSpec::Sym3 => {
            let gens = [Perm::transposition(3, 0, 1), Perm::transposition(3, 1, 2)];
            FiniteGroup::closure(&gens).expect("S3 generators")
        }
        ReferenceSpec::UnitsMod(m) => {
            let m = (*m).max(1);
            let units: Vec<u32> = (1..m.max(2)).filter(|x| gcd(*x, m) == 1).collect();
            if units.len() <= 1 {
                FiniteGroup::trivial(1)
            } else {
                // multiplication action on Z_m, faithful, fixes 0
                let gens: Vec<Perm> = units
                    .iter()
                    .map(|&u| Perm::from_fn(m as usize, |x| (x * u as usize) % m as usize))
                    .collect();
                FiniteGroup::closure(&gens).expect("unit multiplications")
            }
        }
        ReferenceSpec::DirectProduct(parts) => {
            let groups: Result<Vec<FiniteGroup>, ModelError> =
                parts.iter().map(make_reference).collect();
            let groups = groups?;
            direct_product(&groups)
        }
    };
    debug_assert_eq!(group.order(), order, "reference {spec} has wrong order");
    Ok(group)
}

/// Direct product acting on the disjoint union of the factor domains.
pub fn direct_product(factors: &[FiniteGroup]) -> FiniteGroup {
    let degree: usize = factors.iter().map(FiniteGroup::degree).sum();
    let mut elements: Vec<Perm> = vec![Perm::identity(degree)];
    let mut offset = 0;
    for f in factors {
        let mut next = Vec::with_capacity(elements.len() * f.order());
        for e in &elements {
            for p in f.elements() {
                let off = offset;
                let combined = Perm::from_fn(degree, |x| {
                    if (off..off + f.degree()).contains(&x) {
                        off + p.apply(x - off)
                    } else {
                        e.apply(x)
                    }
                });
                next.push(combined);
            }
        }
        elements = next;
        offset += f.degree();
    }
    FiniteGroup::from_elements(elements).expect("direct product is closed")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relations_hold() {
        for (family, n) in [(Family::B, 2), (Family::B, 3), (Family::C, 2), (Family::C, 4)] {
            let a = gen_a(family, n);
            let b = gen_b(family, n);
            let g = gen_g(family, n);
            let e = NormalForm::identity(family, n);
            assert_eq!(a.power(2 * n), e);
            assert_eq!(b.power(2), e);
            assert_eq!(g.power(2), e);
            assert_eq!(a.mul(&b).power(2), e);
            assert_eq!(a.mul(&g), g.mul(&a));
            match family {
                Family::B => assert_eq!(b.mul(&g), g.mul(&b)),
                Family::C => {
                    let an = a.power(n);
                    assert_eq!(b.mul(&g), g.mul(&b).mul(&an));
                    // (gb)^2 = a^n
                    assert_eq!(g.mul(&b).mul(&g.mul(&b)), an);
                }
            }
        }
    }

    #[test]
    fn associativity_exhaustive_small_sampled_large() {
        for (family, n) in [(Family::B, 2), (Family::B, 3), (Family::B, 4), (Family::C, 4)] {
            let mut all = Vec::new();
            for i in 0..2 * n as i64 {
                for j in 0..2 {
                    for k in 0..2 {
                        all.push(NormalForm::new(family, n, i, j, k));
                    }
                }
            }
            for x in &all {
                for y in &all {
                    let xy = x.mul(y);
                    for z in &all {
                        assert_eq!(xy.mul(z), x.mul(&y.mul(z)));
                    }
                }
            }
        }
        // sampled triples for a larger n
        let n = 9;
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        for _ in 0..100_000 {
            let pick = |r: u64| {
                NormalForm::new(
                    Family::B,
                    n,
                    (r % (2 * n as u64)) as i64,
                    ((r >> 8) % 2) as i64,
                    ((r >> 16) % 2) as i64,
                )
            };
            let (x, y, z) = (pick(next()), pick(next()), pick(next()));
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        }
    }

    #[test]
    fn identity_and_inverse() {
        let e = NormalForm::identity(Family::C, 4);
        let mut state = 1u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let x = NormalForm::new(
                Family::C,
                4,
                (state % 8) as i64,
                ((state >> 16) % 2) as i64,
                ((state >> 32) % 2) as i64,
            );
            assert_eq!(e.mul(&x), x);
            assert_eq!(x.mul(&e), x);
            assert_eq!(x.mul(&x.inverse()), e);
        }
    }

    #[test]
    fn model_orders_and_faithfulness() {
        for (family, n) in [(Family::B, 2), (Family::B, 5), (Family::C, 2), (Family::C, 6)] {
            let model = GroupModel::new(family, n).unwrap();
            assert_eq!(model.group.order(), 8 * n as usize);
            assert_eq!(model.degree(), 4 * n as usize);
        }
        // number of cosets = 4n for all n <= 12
        for n in 2..=12 {
            let model = GroupModel::new(Family::B, n).unwrap();
            assert_eq!(model.cosets.len(), 4 * n as usize);
        }
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(GroupModel::new(Family::B, 1).is_err());
        assert!(GroupModel::new(Family::C, 3).is_err());
        assert!(GroupModel::new(Family::C, 0).is_err());
    }

    #[test]
    fn c_family_central_twist_acts_freely() {
        let model = GroupModel::new(Family::C, 2).unwrap();
        let an = gen_a(Family::C, 2).power(2);
        let p = model.coset_perm(&an);
        assert!((0..model.degree()).all(|x| p.apply(x) != x));
    }

    #[test]
    fn section_counts_and_identity() {
        for (family, n) in [(Family::B, 2), (Family::B, 3), (Family::C, 4)] {
            let model = GroupModel::new(family, n).unwrap();
            let s = burn_section(&model).unwrap();
            assert_eq!(s.degree(), 4 * n as usize);
            assert!(s.perms[0].is_identity());
        }
    }

    #[test]
    fn section_involution_counts() {
        // B, n = 3: 3n = 9 involutions in S(L); C, n = 4: n+1 = 5
        let b12 = GroupModel::new(Family::B, 3).unwrap();
        let c16 = GroupModel::new(Family::C, 4).unwrap();
        let count = |m: &GroupModel| {
            section_words(m.family, m.n)
                .iter()
                .filter(|w| w.order() == 2)
                .count()
        };
        assert_eq!(count(&b12), 9);
        assert_eq!(count(&c16), 5);
    }

    #[test]
    fn isotope_counts_match_the_case_formulas() {
        assert_eq!(isotope_involution_counts(&GroupModel::new(Family::B, 4).unwrap()), [13, 7, 7, 5]);
        assert_eq!(isotope_involution_counts(&GroupModel::new(Family::B, 3).unwrap()), [9, 5, 5, 5]);
        assert_eq!(isotope_involution_counts(&GroupModel::new(Family::C, 4).unwrap()), [5, 7, 3, 1]);
    }

    #[test]
    fn section_is_conjugacy_closed_in_its_group() {
        for (family, n) in [(Family::B, 3), (Family::C, 4)] {
            let model = GroupModel::new(family, n).unwrap();
            let s = burn_section(&model).unwrap();
            let g = FiniteGroup::closure(&s.perms).unwrap();
            for c in g.generators() {
                for p in &s.perms {
                    assert!(s.contains(&p.conjugate_by(c)));
                }
            }
        }
    }

    #[test]
    fn reference_groups() {
        let u8_ = make_reference(&ReferenceSpec::UnitsMod(8)).unwrap();
        assert_eq!(u8_.order(), 4);
        assert_eq!(u8_.abelian_invariants().unwrap(), vec![2, 2]);

        let d8 = make_reference(&ReferenceSpec::Dihedral(8)).unwrap();
        assert_eq!(d8.order(), 8);
        assert!(!d8.is_abelian());
        assert_eq!(d8.elements().iter().filter(|e| e.order() == 2).count(), 5);

        let prod = make_reference(&ReferenceSpec::DirectProduct(vec![
            ReferenceSpec::UnitsMod(5),
            ReferenceSpec::Sym3,
        ]))
        .unwrap();
        assert_eq!(prod.order(), 24);

        assert!(make_reference(&ReferenceSpec::Cyclic(20_000)).is_err());
    }
}
