//! Finite loops as Cayley tables: construction from sections, identity and
//! property checkers, nuclei, normal subloops and quotients, multiplication
//! groups, the core groupoid, and automorphism / pseudo-automorphism /
//! isomorphism search.
//!
//! All property checks at these orders (<= 40) are exhaustive; nothing is
//! sampled.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::FiniteGroup;
use crate::models::Section;
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopError {
    NotSquare,
    NotLatin { row_or_col: usize },
    NoIdentity,
    NotSharplyTransitive,
    NotASubloop { witness: String },
    QuotientIllDefined { witness: String },
    CoreIdentityFailed { identity: &'static str, witness: (usize, usize, usize) },
    BoundExceeded { order: usize, bound: usize },
}

impl fmt::Display for LoopError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LoopError::NotSquare => write!(f, "table is not square"),
            LoopError::NotLatin { row_or_col } => {
                write!(f, "table is not a Latin square (line {row_or_col})")
            }
            LoopError::NoIdentity => write!(f, "no two-sided identity element"),
            LoopError::NotSharplyTransitive => write!(f, "section is not sharply transitive"),
            LoopError::NotASubloop { witness } => write!(f, "not a subloop: {witness}"),
            LoopError::QuotientIllDefined { witness } => {
                write!(f, "quotient multiplication ill-defined: {witness}")
            }
            LoopError::CoreIdentityFailed { identity, witness } => {
                write!(f, "core identity `{identity}` fails at {witness:?}")
            }
            LoopError::BoundExceeded { order, bound } => {
                write!(f, "loop order {order} exceeds the configured bound {bound}")
            }
        }
    }
}

impl core::error::Error for LoopError {}

/// A finite loop: a Latin square with a two-sided identity.
#[derive(Clone)]
pub struct Loop {
    order: usize,
    table: Vec<u16>,
    identity: usize,
    pub labels: Option<Vec<String>>,
}

impl fmt::Debug for Loop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Loop(order {}, identity {})", self.order, self.identity)
    }
}

fn validate_latin(order: usize, table: &[u16]) -> Result<(), LoopError> {
    let mut seen = vec![false; order];
    for r in 0..order {
        seen.fill(false);
        for c in 0..order {
            let v = table[r * order + c] as usize;
            if v >= order || seen[v] {
                return Err(LoopError::NotLatin { row_or_col: r });
            }
            seen[v] = true;
        }
    }
    for c in 0..order {
        seen.fill(false);
        for r in 0..order {
            let v = table[r * order + c] as usize;
            if seen[v] {
                return Err(LoopError::NotLatin { row_or_col: c });
            }
            seen[v] = true;
        }
    }
    Ok(())
}

impl Loop {
    /// Validates and wraps a Cayley table over `{0..order-1}`.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Loop, LoopError> {
        let order = rows.len();
        if order == 0 || rows.iter().any(|r| r.len() != order) {
            return Err(LoopError::NotSquare);
        }
        let table: Vec<u16> = rows.iter().flatten().map(|&v| v as u16).collect();
        validate_latin(order, &table)?;
        let identity = (0..order)
            .find(|&e| {
                (0..order).all(|x| {
                    table[e * order + x] as usize == x && table[x * order + e] as usize == x
                })
            })
            .ok_or(LoopError::NoIdentity)?;
        Ok(Loop {
            order,
            table,
            identity,
            labels: None,
        })
    }

    /// The loop defined by a sharply transitive section: `x·y = y^(λ_x)` with
    /// `λ_x` the unique member sending the basepoint to `x`.
    pub fn from_section(section: &Section) -> Result<Loop, LoopError> {
        let order = section.degree();
        let mut table = vec![0u16; order * order];
        for (x, p) in section.perms.iter().enumerate() {
            if p.degree() != order || p.apply(section.basepoint) != x {
                return Err(LoopError::NotSharplyTransitive);
            }
            for y in 0..order {
                table[x * order + y] = p.apply(y) as u16;
            }
        }
        validate_latin(order, &table)?;
        let identity = section.basepoint;
        if (0..order).any(|x| {
            table[identity * order + x] as usize != x || table[x * order + identity] as usize != x
        }) {
            return Err(LoopError::NoIdentity);
        }
        Ok(Loop {
            order,
            table,
            identity,
            labels: Some(section.labels.clone()),
        })
    }

    /// A group, viewed as a loop through its multiplication table.
    pub fn from_group(g: &FiniteGroup) -> Loop {
        let order = g.order();
        let els = g.elements();
        let mut table = vec![0u16; order * order];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                table[i * order + j] = g.index_of(&a.compose(b)).expect("closed") as u16;
            }
        }
        let identity = g.index_of(g.identity()).expect("identity present");
        Loop {
            order,
            table,
            identity,
            labels: None,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|r| (0..self.order).map(|c| self.mul(r, c)).collect())
            .collect()
    }

    /// Unique z with x·z = y.
    pub fn left_div(&self, x: usize, y: usize) -> usize {
        (0..self.order)
            .find(|&z| self.mul(x, z) == y)
            .expect("Latin square")
    }

    /// Unique z with z·x = y.
    pub fn right_div(&self, x: usize, y: usize) -> usize {
        (0..self.order)
            .find(|&z| self.mul(z, x) == y)
            .expect("Latin square")
    }

    /// Left inverse: the unique z with z·x = identity.
    pub fn inv(&self, x: usize) -> usize {
        self.right_div(x, self.identity)
    }

    /// Left-power order: least k >= 1 with x^k = identity, powers bracketed
    /// as x^(k+1) = x·x^k.
    pub fn element_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.identity {
            acc = self.mul(x, acc);
            k += 1;
        }
        k
    }

    /// x^k with left bracketing; x^0 is the identity.
    pub fn power(&self, x: usize, k: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(x, acc);
        }
        acc
    }
}

/// Translation maps of a loop: `lambda[x]: y -> x·y` and `rho[x]: y -> y·x`,
/// both acted on the right.
pub struct Translations {
    pub lambda: Vec<Perm>,
    pub rho: Vec<Perm>,
    pub inv: Vec<usize>,
}

impl Translations {
    pub fn new(l: &Loop) -> Translations {
        let m = l.order();
        let lambda = (0..m).map(|x| Perm::from_fn(m, |y| l.mul(x, y))).collect();
        let rho = (0..m).map(|x| Perm::from_fn(m, |y| l.mul(y, x))).collect();
        let inv = (0..m).map(|x| l.inv(x)).collect();
        Translations { lambda, rho, inv }
    }

    /// `p_x = λ_x^-1 ρ_x^-1` (left factor acts first).
    pub fn p(&self, x: usize) -> Perm {
        self.lambda[x].inverse().compose(&self.rho[x].inverse())
    }
}

/// Exhaustively checked structural flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoopProperties {
    pub left_bol: bool,
    pub moufang: bool,
    pub left_conjugacy_closed: bool,
    pub left_inverse_property: bool,
}

/// Checks the Bol identity x(y·xz) = (x·yx)z, the Moufang identity
/// ((xy)x)z = x(y(xz)), left conjugacy closure of the translation section,
/// and the left inverse property — all over every tuple.
pub fn check_identities(l: &Loop) -> LoopProperties {
    let m = l.order();
    let mut left_bol = true;
    let mut moufang = true;
    for x in 0..m {
        for y in 0..m {
            let x_yx = l.mul(x, l.mul(y, x));
            let xy_x = l.mul(l.mul(x, y), x);
            for z in 0..m {
                let lhs = l.mul(x, l.mul(y, l.mul(x, z)));
                if lhs != l.mul(x_yx, z) {
                    left_bol = false;
                }
                if lhs != l.mul(xy_x, z) {
                    moufang = false;
                }
            }
        }
    }
    let trans = Translations::new(l);
    let left_inverse_property = (0..m).all(|x| {
        let xi = trans.inv[x];
        (0..m).all(|y| l.mul(xi, l.mul(x, y)) == y)
    });
    let section: BTreeSet<Perm> = trans.lambda.iter().cloned().collect();
    let g_left = FiniteGroup::closure(&trans.lambda).expect("translations generate");
    let left_conjugacy_closed = g_left.generators().iter().all(|g| {
        trans
            .lambda
            .iter()
            .all(|lam| section.contains(&lam.conjugate_by(g)))
    });
    LoopProperties {
        left_bol,
        moufang,
        left_conjugacy_closed,
        left_inverse_property,
    }
}

/// The three nuclei as element lists.
#[derive(Debug, Clone)]
pub struct Nuclei {
    pub left: Vec<usize>,
    pub middle: Vec<usize>,
    pub right: Vec<usize>,
}

pub fn nuclei(l: &Loop) -> Nuclei {
    let m = l.order();
    let left = (0..m)
        .filter(|&a| {
            (0..m).all(|x| (0..m).all(|y| l.mul(a, l.mul(x, y)) == l.mul(l.mul(a, x), y)))
        })
        .collect();
    let middle = (0..m)
        .filter(|&a| {
            (0..m).all(|x| (0..m).all(|y| l.mul(x, l.mul(a, y)) == l.mul(l.mul(x, a), y)))
        })
        .collect();
    let right = (0..m)
        .filter(|&a| {
            (0..m).all(|x| (0..m).all(|y| l.mul(x, l.mul(y, a)) == l.mul(l.mul(x, y), a)))
        })
        .collect();
    Nuclei { left, middle, right }
}

/// The induced table on a multiplicatively closed subset containing the
/// identity, relabeled to `{0..k-1}` in the order given.
pub fn sub_loop(l: &Loop, subset: &[usize]) -> Result<Loop, LoopError> {
    if !subset.contains(&l.identity()) {
        return Err(LoopError::NotASubloop {
            witness: String::from("identity missing"),
        });
    }
    let index_of = |v: usize| subset.iter().position(|&s| s == v);
    let mut rows = Vec::with_capacity(subset.len());
    for &x in subset {
        let mut row = Vec::with_capacity(subset.len());
        for &y in subset {
            let z = l.mul(x, y);
            match index_of(z) {
                Some(i) => row.push(i),
                None => {
                    return Err(LoopError::NotASubloop {
                        witness: format!("{x}*{y} = {z} leaves the subset"),
                    })
                }
            }
        }
        rows.push(row);
    }
    Loop::from_table(&rows)
}

fn coset_partition(l: &Loop, subset: &[usize]) -> Option<Vec<Vec<usize>>> {
    let m = l.order();
    let sset: BTreeSet<usize> = subset.iter().copied().collect();
    let mut block_of: Vec<Option<usize>> = vec![None; m];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..m {
        if block_of[x].is_some() {
            continue;
        }
        let coset: BTreeSet<usize> = sset.iter().map(|&s| l.mul(x, s)).collect();
        if coset.len() != sset.len() {
            return None;
        }
        let id = blocks.len();
        for &c in &coset {
            match block_of[c] {
                None => block_of[c] = Some(id),
                Some(_) => return None, // cosets overlap: no partition
            }
        }
        blocks.push(coset.into_iter().collect());
    }
    Some(blocks)
}

/// Normality of a subloop via invariance of its left-coset partition under
/// every left and right translation (equivalently under M(L)).
pub fn is_normal_subloop(l: &Loop, subset: &[usize]) -> Result<bool, LoopError> {
    sub_loop(l, subset)?;
    let blocks = match coset_partition(l, subset) {
        Some(b) => b,
        None => return Ok(false),
    };
    let m = l.order();
    let mut block_of = vec![0usize; m];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            block_of[x] = i;
        }
    }
    let image_is_block = |f: &dyn Fn(usize) -> usize| -> bool {
        blocks.iter().all(|b| {
            let first = block_of[f(b[0])];
            b.iter().all(|&x| block_of[f(x)] == first)
        })
    };
    for z in 0..m {
        if !image_is_block(&|x| l.mul(z, x)) || !image_is_block(&|x| l.mul(x, z)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The factor loop on the coset partition of a normal subloop. Products are
/// verified well-defined over all pairs of block members.
pub fn quotient_loop(l: &Loop, subset: &[usize]) -> Result<Loop, LoopError> {
    if !is_normal_subloop(l, subset)? {
        return Err(LoopError::QuotientIllDefined {
            witness: String::from("subloop is not normal"),
        });
    }
    let mut blocks = coset_partition(l, subset).expect("normal implies partition");
    blocks.sort_by_key(|b| b[0]);
    let m = l.order();
    let mut block_of = vec![0usize; m];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            block_of[x] = i;
        }
    }
    let k = blocks.len();
    let mut rows = vec![vec![0usize; k]; k];
    for (i, bi) in blocks.iter().enumerate() {
        for (j, bj) in blocks.iter().enumerate() {
            let expect = block_of[l.mul(bi[0], bj[0])];
            for &a in bi {
                for &b in bj {
                    if block_of[l.mul(a, b)] != expect {
                        return Err(LoopError::QuotientIllDefined {
                            witness: format!("blocks {i}*{j} scatter"),
                        });
                    }
                }
            }
            rows[i][j] = expect;
        }
    }
    Loop::from_table(&rows)
}

/// Left, right and full multiplication groups.
pub struct MultiplicationGroups {
    pub left: FiniteGroup,
    pub right: FiniteGroup,
    pub full: FiniteGroup,
}

pub fn multiplication_groups(l: &Loop) -> MultiplicationGroups {
    let trans = Translations::new(l);
    let left = FiniteGroup::closure(&trans.lambda).expect("nonempty");
    let right = FiniteGroup::closure(&trans.rho).expect("nonempty");
    let mut gens = trans.lambda.clone();
    gens.extend(trans.rho.iter().cloned());
    let full = FiniteGroup::closure(&gens).expect("nonempty");
    MultiplicationGroups { left, right, full }
}

/// The core groupoid (L, +) with x+y = x·(y^-1·x). Construction verifies
/// idempotency, the left Keyes identity and left distributivity on every
/// tuple; a violation means the input was not left Bol.
pub struct CoreGroupoid {
    pub order: usize,
    table: Vec<u16>,
}

impl CoreGroupoid {
    #[inline]
    pub fn plus(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    /// Left translation a -> (x -> a + x); a bijection by the Keyes identity.
    pub fn left_translation(&self, a: usize) -> Perm {
        Perm::from_fn(self.order, |x| self.plus(a, x))
    }
}

pub fn core(l: &Loop) -> Result<CoreGroupoid, LoopError> {
    let m = l.order();
    let mut table = vec![0u16; m * m];
    for x in 0..m {
        for y in 0..m {
            table[x * m + y] = l.mul(x, l.mul(l.inv(y), x)) as u16;
        }
    }
    let c = CoreGroupoid { order: m, table };
    for x in 0..m {
        if c.plus(x, x) != x {
            return Err(LoopError::CoreIdentityFailed {
                identity: "x+x = x",
                witness: (x, x, 0),
            });
        }
        for y in 0..m {
            if c.plus(x, c.plus(x, y)) != y {
                return Err(LoopError::CoreIdentityFailed {
                    identity: "x+(x+y) = y",
                    witness: (x, y, 0),
                });
            }
            for z in 0..m {
                if c.plus(x, c.plus(y, z)) != c.plus(c.plus(x, y), c.plus(x, z)) {
                    return Err(LoopError::CoreIdentityFailed {
                        identity: "x+(y+z) = (x+y)+(x+z)",
                        witness: (x, y, z),
                    });
                }
            }
        }
    }
    Ok(c)
}

/// The permutation group generated by the core's left translations.
pub fn core_group(l: &Loop) -> Result<FiniteGroup, LoopError> {
    let c = core(l)?;
    let gens: Vec<Perm> = (0..c.order).map(|a| c.left_translation(a)).collect();
    Ok(FiniteGroup::closure(&gens).expect("nonempty"))
}

// ---------------------------------------------------------------------------
// Backtracking over Cayley-table maps.
//
// One engine serves automorphism, isomorphism and pseudo-automorphism search:
// a partial assignment is propagated through `derive`, which states how the
// image of x·y is forced by the images of x and y, and every forced value is
// checked for injectivity and consistency before the search descends.

pub(crate) struct TableSearch<'a> {
    pub(crate) src: &'a Loop,
    pub(crate) target_size: usize,
    pub(crate) derive: &'a dyn Fn(usize, usize) -> usize,
    pub(crate) candidate_ok: &'a dyn Fn(usize, usize) -> bool,
    pub(crate) gens: Vec<usize>,
    pub(crate) sols: Vec<Perm>,
    pub(crate) stop_at_first: bool,
}

/// Greedy generating sequence: repeatedly add the element whose addition
/// grows the multiplicative closure the most (first index on ties).
pub(crate) fn greedy_loop_generators(l: &Loop) -> Vec<usize> {
    let m = l.order();
    let close = |gens: &[usize]| -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = gens.iter().copied().collect();
        set.insert(l.identity());
        loop {
            let snapshot: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &x in &snapshot {
                for &y in &snapshot {
                    set.insert(l.mul(x, y));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    };
    let mut gens: Vec<usize> = Vec::new();
    let mut covered = close(&gens);
    while covered.len() < m {
        let mut best = usize::MAX;
        let mut best_size = 0;
        for x in 0..m {
            if covered.contains(&x) {
                continue;
            }
            gens.push(x);
            let size = close(&gens).len();
            gens.pop();
            if size > best_size {
                best_size = size;
                best = x;
            }
        }
        gens.push(best);
        covered = close(&gens);
    }
    gens
}

impl<'a> TableSearch<'a> {
    fn propagate(&self, f: &mut [Option<u16>], used: &mut [bool], seed: Vec<usize>) -> bool {
        let mut defined: Vec<usize> = (0..self.src.order()).filter(|&x| f[x].is_some()).collect();
        let mut work = seed;
        while let Some(x) = work.pop() {
            let snapshot = defined.clone();
            for &y in &snapshot {
                for (a, b) in [(x, y), (y, x)] {
                    let prod = self.src.mul(a, b);
                    let forced = (self.derive)(f[a].unwrap() as usize, f[b].unwrap() as usize);
                    match f[prod] {
                        Some(v) if v as usize != forced => return false,
                        Some(_) => {}
                        None => {
                            if used[forced] {
                                return false;
                            }
                            f[prod] = Some(forced as u16);
                            used[forced] = true;
                            defined.push(prod);
                            work.push(prod);
                        }
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, f: &mut Vec<Option<u16>>, used: &mut Vec<bool>, depth: usize) -> bool {
        if depth == self.gens.len() {
            if f.iter().all(Option::is_some) {
                let images: Vec<u16> = f.iter().map(|v| v.unwrap()).collect();
                if let Ok(p) = Perm::from_images(images) {
                    self.sols.push(p);
                    return self.stop_at_first;
                }
            }
            return false;
        }
        let g = self.gens[depth];
        if f[g].is_some() {
            return self.assign(f, used, depth + 1);
        }
        for img in 0..self.target_size {
            if used[img] || !(self.candidate_ok)(g, img) {
                continue;
            }
            let mut f2 = f.clone();
            let mut used2 = used.clone();
            f2[g] = Some(img as u16);
            used2[img] = true;
            if self.propagate(&mut f2, &mut used2, vec![g])
                && self.assign(&mut f2, &mut used2, depth + 1)
            {
                return true;
            }
        }
        false
    }

    pub(crate) fn run(mut self, seeds: &[(usize, usize)]) -> Vec<Perm> {
        let m = self.src.order();
        let mut f: Vec<Option<u16>> = vec![None; m];
        let mut used = vec![false; self.target_size];
        for &(x, v) in seeds {
            f[x] = Some(v as u16);
            used[v] = true;
        }
        let seed_list: Vec<usize> = seeds.iter().map(|&(x, _)| x).collect();
        if self.propagate(&mut f, &mut used, seed_list) {
            self.assign(&mut f, &mut used, 0);
        }
        self.sols
    }
}

/// All automorphisms of the loop, as permutations of its element set.
pub fn automorphism_group_loop(l: &Loop, bound: usize) -> Result<FiniteGroup, LoopError> {
    if l.order() > bound {
        return Err(LoopError::BoundExceeded {
            order: l.order(),
            bound,
        });
    }
    let orders: Vec<usize> = (0..l.order()).map(|x| l.element_order(x)).collect();
    let derive = |fx: usize, fy: usize| l.mul(fx, fy);
    let candidate_ok = |g: usize, img: usize| orders[g] == orders[img];
    let search = TableSearch {
        src: l,
        target_size: l.order(),
        derive: &derive,
        candidate_ok: &candidate_ok,
        gens: greedy_loop_generators(l),
        sols: Vec::new(),
        stop_at_first: false,
    };
    let sols = search.run(&[(l.identity(), l.identity())]);
    Ok(FiniteGroup::from_elements(sols).expect("loop automorphisms form a group"))
}

/// A left pseudo-automorphism with its companion: (c·x^u)·y^u = c·(xy)^u.
#[derive(Debug, Clone)]
pub struct PseudoAut {
    pub map: Perm,
    pub companion: usize,
}

impl PseudoAut {
    pub fn is_valid(&self, l: &Loop) -> bool {
        let m = l.order();
        let c = self.companion;
        (0..m).all(|x| {
            (0..m).all(|y| {
                l.mul(l.mul(c, self.map.apply(x)), self.map.apply(y))
                    == l.mul(c, self.map.apply(l.mul(x, y)))
            })
        })
    }
}

/// Exhaustive search for left pseudo-automorphisms over every candidate
/// companion. The map is forced to fix the identity (set x = y = 1 in the
/// defining identity), and the image of x·y is forced to c \ ((c·x^u)·y^u).
pub fn left_pseudo_automorphisms(l: &Loop, bound: usize) -> Result<Vec<PseudoAut>, LoopError> {
    if l.order() > bound {
        return Err(LoopError::BoundExceeded {
            order: l.order(),
            bound,
        });
    }
    let gens = greedy_loop_generators(l);
    let mut out = Vec::new();
    for c in 0..l.order() {
        let derive = |fx: usize, fy: usize| l.left_div(c, l.mul(l.mul(c, fx), fy));
        let candidate_ok = |_: usize, _: usize| true;
        let search = TableSearch {
            src: l,
            target_size: l.order(),
            derive: &derive,
            candidate_ok: &candidate_ok,
            gens: gens.clone(),
            sols: Vec::new(),
            stop_at_first: false,
        };
        for map in search.run(&[(l.identity(), l.identity())]) {
            let pa = PseudoAut { map, companion: c };
            debug_assert!(pa.is_valid(l));
            out.push(pa);
        }
    }
    Ok(out)
}

/// Finds one isomorphism between two loops, if any.
pub fn loops_isomorphic(a: &Loop, b: &Loop, bound: usize) -> Result<Option<Perm>, LoopError> {
    if a.order() != b.order() {
        return Ok(None);
    }
    if a.order() > bound {
        return Err(LoopError::BoundExceeded {
            order: a.order(),
            bound,
        });
    }
    let orders_a: Vec<usize> = (0..a.order()).map(|x| a.element_order(x)).collect();
    let orders_b: Vec<usize> = (0..b.order()).map(|x| b.element_order(x)).collect();
    {
        let mut sa = orders_a.clone();
        let mut sb = orders_b.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return Ok(None);
        }
    }
    let derive = |fx: usize, fy: usize| b.mul(fx, fy);
    let candidate_ok = |g: usize, img: usize| orders_a[g] == orders_b[img];
    let search = TableSearch {
        src: a,
        target_size: b.order(),
        derive: &derive,
        candidate_ok: &candidate_ok,
        gens: greedy_loop_generators(a),
        sols: Vec::new(),
        stop_at_first: true,
    };
    Ok(search.run(&[(a.identity(), b.identity())]).pop())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{burn_section, Family, GroupModel};
    use crate::perm::Perm;

    fn cyclic_loop(k: usize) -> Loop {
        let rows: Vec<Vec<usize>> =
            (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect();
        Loop::from_table(&rows).unwrap()
    }

    fn burn_loop(family: Family, n: u32) -> Loop {
        let model = GroupModel::new(family, n).unwrap();
        Loop::from_section(&burn_section(&model).unwrap()).unwrap()
    }

    #[test]
    fn trivial_loop() {
        let l = Loop::from_table(&[vec![0]]).unwrap();
        assert_eq!(l.order(), 1);
        assert_eq!(l.identity(), 0);
    }

    #[test]
    fn from_table_rejects_bad_input() {
        assert!(matches!(
            Loop::from_table(&[vec![0, 1], vec![0, 1]]),
            Err(LoopError::NotLatin { .. })
        ));
        // Latin but no identity: row 0 is the identity row, column 0 is not
        assert!(matches!(
            Loop::from_table(&[vec![0, 1, 2], vec![2, 0, 1], vec![1, 2, 0]]),
            Err(LoopError::NoIdentity)
        ));
        assert!(matches!(Loop::from_table(&[]), Err(LoopError::NotSquare)));
    }

    #[test]
    fn group_tables_are_loops_with_full_properties() {
        let d8 = {
            let r = Perm::cycle(4);
            let s = Perm::from_images(vec![0, 3, 2, 1]).unwrap();
            FiniteGroup::closure(&[r, s]).unwrap()
        };
        let l = Loop::from_group(&d8);
        let props = check_identities(&l);
        assert!(props.left_bol && props.moufang && props.left_conjugacy_closed);
        assert!(props.left_inverse_property);
        let nuc = nuclei(&l);
        assert_eq!(nuc.left.len(), 8);
        assert_eq!(nuc.middle.len(), 8);
        assert_eq!(nuc.right.len(), 8);
    }

    #[test]
    fn burn_loops_are_bol_lcc_not_moufang() {
        for (family, n) in [(Family::B, 2), (Family::B, 3), (Family::C, 4)] {
            let l = burn_loop(family, n);
            let props = check_identities(&l);
            assert!(props.left_bol, "{family}{} must be left Bol", 4 * n);
            assert!(props.left_conjugacy_closed);
            assert!(props.left_inverse_property);
            assert!(!props.moufang, "{family}{} must be non-Moufang", 4 * n);
        }
    }

    #[test]
    fn a_5x5_latin_square_with_identity_that_is_not_bol() {
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 2, 3, 4, 0],
            vec![2, 0, 4, 1, 3],
            vec![3, 4, 0, 2, 1],
            vec![4, 3, 1, 0, 2],
        ];
        let l = Loop::from_table(&rows).unwrap();
        assert!(!check_identities(&l).left_bol);
    }

    #[test]
    fn translations_and_divisions() {
        let l = burn_loop(Family::B, 2);
        let t = Translations::new(&l);
        assert!(t.lambda[l.identity()].is_identity());
        assert!(t.rho[l.identity()].is_identity());
        for x in 0..l.order() {
            for y in 0..l.order() {
                assert_eq!(l.left_div(x, l.mul(x, y)), y);
                assert_eq!(t.lambda[x].apply(y), l.mul(x, y));
            }
        }
        // lambda_x lambda_y lambda_x stays in the section set
        let section: BTreeSet<Perm> = t.lambda.iter().cloned().collect();
        for x in 0..l.order() {
            for y in 0..l.order() {
                let w = t.lambda[x].compose(&t.lambda[y]).compose(&t.lambda[x]);
                assert!(section.contains(&w));
            }
        }
    }

    #[test]
    fn nucleus_of_burn_loop() {
        let l = burn_loop(Family::B, 3);
        let nuc = nuclei(&l);
        assert_eq!(nuc.left.len(), 3);
        assert_eq!(nuc.left, nuc.middle, "left and middle nuclei coincide");
        let sub = sub_loop(&l, &nuc.left).unwrap();
        assert_eq!((0..3).map(|x| sub.element_order(x)).max(), Some(3)); // cyclic C3
        // every square lies in the left nucleus
        for x in 0..l.order() {
            assert!(nuc.left.contains(&l.mul(x, x)));
        }
    }

    #[test]
    fn normal_subloop_and_quotient() {
        let l = burn_loop(Family::C, 4);
        let nuc = nuclei(&l).left;
        assert!(is_normal_subloop(&l, &nuc).unwrap());
        let q = quotient_loop(&l, &nuc).unwrap();
        assert_eq!(q.order(), 4);
        assert!((0..4).all(|x| q.element_order(x) <= 2), "exponent 2");

        // the trivial subloop is normal with quotient the loop itself
        let triv = vec![l.identity()];
        assert!(is_normal_subloop(&l, &triv).unwrap());
        let q2 = quotient_loop(&l, &triv).unwrap();
        assert!(loops_isomorphic(&q2, &l, 64).unwrap().is_some());
    }

    #[test]
    fn multiplication_group_orders() {
        let l = burn_loop(Family::B, 2);
        let mg = multiplication_groups(&l);
        assert_eq!(mg.left.order(), 16);
        // group case: regular representation has order k
        let c = cyclic_loop(5);
        assert_eq!(multiplication_groups(&c).left.order(), 5);
        // right multiplication group is normal in the full one
        let l12 = burn_loop(Family::B, 3);
        let mg12 = multiplication_groups(&l12);
        assert!(mg12.full.is_normal(&mg12.right).unwrap());
    }

    #[test]
    fn core_of_odd_abelian_group_and_burn_loop() {
        // abelian odd order: x+y = 2x - y
        let c5 = cyclic_loop(5);
        let core5 = core(&c5).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(core5.plus(x, y), (2 * x + 5 - y) % 5);
            }
        }
        assert_eq!(core_group(&c5).unwrap().order(), 10);

        let l = burn_loop(Family::B, 3);
        assert!(core(&l).is_ok(), "all three core identities hold");
    }

    #[test]
    fn automorphisms_of_small_loops() {
        let c4 = cyclic_loop(4);
        assert_eq!(automorphism_group_loop(&c4, 64).unwrap().order(), 2);
        let l = burn_loop(Family::B, 3);
        let aut = automorphism_group_loop(&l, 64).unwrap();
        assert_eq!(aut.order(), 12);
        // fixes identity, preserves all products
        for u in aut.elements() {
            assert_eq!(u.apply(l.identity()), l.identity());
            for x in 0..l.order() {
                for y in 0..l.order() {
                    assert_eq!(u.apply(l.mul(x, y)), l.mul(u.apply(x), u.apply(y)));
                }
            }
        }
        assert!(matches!(
            automorphism_group_loop(&l, 4),
            Err(LoopError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn pseudo_automorphisms_of_b12() {
        let l = burn_loop(Family::B, 3);
        let pas = left_pseudo_automorphisms(&l, 64).unwrap();
        let aut = automorphism_group_loop(&l, 64).unwrap();
        let nuc: BTreeSet<usize> = nuclei(&l).left.into_iter().collect();
        assert_eq!(pas.len(), aut.order() * nuc.len());
        for pa in &pas {
            assert!(aut.contains(&pa.map), "every pseudo-automorphism is an automorphism");
            assert!(nuc.contains(&pa.companion), "every companion lies in the left nucleus");
        }
        let companions: BTreeSet<usize> = pas.iter().map(|p| p.companion).collect();
        assert_eq!(companions, nuc);
    }

    #[test]
    fn group_loops_have_central_companions() {
        // in a group, (automorphism, central c) pairs are pseudo-automorphisms
        let c4 = cyclic_loop(4);
        let pas = left_pseudo_automorphisms(&c4, 64).unwrap();
        assert_eq!(pas.len(), 2 * 4); // |Aut(C4)| * |Z(C4)|
    }

    #[test]
    fn loop_isomorphism() {
        let l = burn_loop(Family::B, 2);
        assert!(loops_isomorphic(&l, &l, 64).unwrap().is_some());
        let c12 = cyclic_loop(12);
        let b12 = burn_loop(Family::B, 3);
        assert!(loops_isomorphic(&b12, &c12, 64).unwrap().is_none());
    }

    #[test]
    fn rebasing_the_section_gives_isomorphic_loops() {
        // a conjugation-closed section determines its loop up to isomorphism,
        // whichever point plays the unit
        let l = burn_loop(Family::B, 2);
        let t = Translations::new(&l);
        for q in 0..l.order() {
            let mut perms: Vec<Option<Perm>> = vec![None; l.order()];
            for p in &t.lambda {
                perms[p.apply(q)] = Some(p.clone());
            }
            let section = crate::models::Section {
                perms: perms.into_iter().map(Option::unwrap).collect(),
                words: Vec::new(),
                basepoint: q,
                labels: vec![String::new(); l.order()],
            };
            let rebased = Loop::from_section(&section).unwrap();
            assert!(
                loops_isomorphic(&rebased, &l, 64).unwrap().is_some(),
                "rebasing at {q} must give an isomorphic loop"
            );
        }
    }

    #[test]
    fn section_roundtrip_reproduces_table() {
        let l = burn_loop(Family::C, 2);
        let t = Translations::new(&l);
        let section = crate::models::Section {
            perms: t.lambda.clone(),
            words: Vec::new(),
            basepoint: l.identity(),
            labels: vec![String::new(); l.order()],
        };
        let l2 = Loop::from_section(&section).unwrap();
        assert_eq!(l.rows(), l2.rows());
    }
}
