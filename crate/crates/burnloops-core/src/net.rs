//! The 3-net of a loop and its collineations: Bol reflections, the groups
//! N and N+, the projection onto the loop's left multiplication group and its
//! kernel, the commutator filtration H_k, the subgroups T, Λ, M, A of the
//! direction-preserving collineation group Γ, and autotopism search.
//!
//! Points of the net of a loop of order m are pairs (x, y) flattened to
//! x·m + y. Lines come in three pencils, indexed 0..3m: vertical x = c at
//! index c, horizontal y = c at m + c, transversal x·y = c at 2m + c.
//! A collineation is stored as a permutation of the m² points; its action on
//! lines, its direction permutation and (when it preserves directions) its
//! component pair (u, v) are derived and cached on group construction, which
//! also proves the line-to-line invariant for every element.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{FiniteGroup, GroupError};
use crate::loops::{
    automorphism_group_loop, check_identities, greedy_loop_generators, nuclei, Loop, LoopError,
    TableSearch, Translations,
};
use crate::models::{burn_section, Family, GroupModel, ModelError, Section};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetError {
    Model(ModelError),
    Loop(LoopError),
    Group(GroupError),
    NotACollineation { witness: String },
    NotBol { witness: String },
    BudgetExceeded { needed: u64, budget: u64 },
    SizeBound { order: usize, bound: usize },
    InvalidParameter { what: String },
    StructuralAssertion { what: String },
}

impl fmt::Display for NetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetError::Model(e) => write!(f, "{e}"),
            NetError::Loop(e) => write!(f, "{e}"),
            NetError::Group(e) => write!(f, "{e}"),
            NetError::NotACollineation { witness } => {
                write!(f, "point map is not a collineation: {witness}")
            }
            NetError::NotBol { witness } => write!(f, "loop is not left Bol: {witness}"),
            NetError::BudgetExceeded { needed, budget } => {
                write!(f, "tuple enumeration needs {needed} > budget {budget}")
            }
            NetError::SizeBound { order, bound } => {
                write!(f, "loop order {order} exceeds bound {bound} for this method")
            }
            NetError::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
            NetError::StructuralAssertion { what } => {
                write!(f, "structural assertion failed: {what}")
            }
        }
    }
}

impl core::error::Error for NetError {}

impl From<ModelError> for NetError {
    fn from(e: ModelError) -> Self {
        NetError::Model(e)
    }
}
impl From<LoopError> for NetError {
    fn from(e: LoopError) -> Self {
        NetError::Loop(e)
    }
}
impl From<GroupError> for NetError {
    fn from(e: GroupError) -> Self {
        NetError::Group(e)
    }
}

pub const VERTICAL: u8 = 0;
pub const HORIZONTAL: u8 = 1;
pub const TRANSVERSAL: u8 = 2;

/// Point and line indexing of the 3-net over a loop of order m.
#[derive(Clone, Copy)]
pub struct Net {
    pub m: usize,
}

impl Net {
    pub fn of(l: &Loop) -> Net {
        Net { m: l.order() }
    }

    #[inline]
    pub fn point(&self, x: usize, y: usize) -> usize {
        x * self.m + y
    }

    #[inline]
    pub fn coords(&self, p: usize) -> (usize, usize) {
        (p / self.m, p % self.m)
    }

    pub fn point_count(&self) -> usize {
        self.m * self.m
    }

    pub fn line_count(&self) -> usize {
        3 * self.m
    }

    pub fn pencil_of(&self, line: usize) -> u8 {
        (line / self.m) as u8
    }

    /// The m points of a line.
    pub fn line_points(&self, l: &Loop, line: usize) -> Vec<usize> {
        let c = line % self.m;
        match self.pencil_of(line) {
            VERTICAL => (0..self.m).map(|y| self.point(c, y)).collect(),
            HORIZONTAL => (0..self.m).map(|x| self.point(x, c)).collect(),
            _ => (0..self.m)
                .map(|x| self.point(x, l.left_div(x, c)))
                .collect(),
        }
    }

    /// The three lines through a point, one per pencil.
    pub fn lines_of_point(&self, l: &Loop, p: usize) -> [usize; 3] {
        let (x, y) = self.coords(p);
        [x, self.m + y, 2 * self.m + l.mul(x, y)]
    }
}

/// Derived per-element data: the induced permutation of the direction labels
/// and, for direction-preserving maps, the component pair (u, v).
#[derive(Debug, Clone)]
pub struct CollMeta {
    pub direction_action: [u8; 3],
    pub pair: Option<(Perm, Perm)>,
}

impl CollMeta {
    pub fn is_direction_preserving(&self) -> bool {
        self.direction_action == [VERTICAL, HORIZONTAL, TRANSVERSAL]
    }
}

/// A single collineation: a point permutation with its derived data.
#[derive(Debug, Clone)]
pub struct Collineation {
    pub pointmap: Perm,
    pub meta: CollMeta,
    pub line_map: Perm,
}

/// Classifies a point permutation: computes the image line of every line
/// (erroring if any image is not a line), the direction action, and the
/// (u, v) pair when directions are preserved.
pub fn classify(l: &Loop, pointmap: &Perm) -> Result<Collineation, NetError> {
    let net = Net::of(l);
    let m = net.m;
    if pointmap.degree() != net.point_count() {
        return Err(NetError::NotACollineation {
            witness: format!("degree {} is not {}", pointmap.degree(), net.point_count()),
        });
    }
    if m == 1 {
        // one point, three coincident lines; only the identity exists
        return Ok(Collineation {
            pointmap: pointmap.clone(),
            meta: CollMeta {
                direction_action: [VERTICAL, HORIZONTAL, TRANSVERSAL],
                pair: Some((Perm::identity(1), Perm::identity(1))),
            },
            line_map: Perm::identity(3),
        });
    }
    let mut line_images = vec![0u16; net.line_count()];
    for line in 0..net.line_count() {
        let pts = net.line_points(l, line);
        let img0 = pointmap.apply(pts[0]);
        let img1 = pointmap.apply(pts[1]);
        let l0 = net.lines_of_point(l, img0);
        let l1 = net.lines_of_point(l, img1);
        let common: Vec<usize> = l0.iter().copied().filter(|a| l1.contains(a)).collect();
        let [target] = common[..] else {
            return Err(NetError::NotACollineation {
                witness: format!("images of line {line} share no unique line"),
            });
        };
        for &p in &pts[2..] {
            if !net.lines_of_point(l, pointmap.apply(p)).contains(&target) {
                return Err(NetError::NotACollineation {
                    witness: format!("image of line {line} is not a line"),
                });
            }
        }
        line_images[line] = target as u16;
    }
    // pencils must map to pencils uniformly
    let mut direction_action = [0u8; 3];
    for d in 0..3 {
        let first = net.pencil_of(line_images[d * m] as usize);
        for c in 0..m {
            if net.pencil_of(line_images[d * m + c] as usize) != first {
                return Err(NetError::NotACollineation {
                    witness: format!("pencil {d} does not map to a single pencil"),
                });
            }
        }
        direction_action[d] = first;
    }
    let line_map =
        Perm::from_images(line_images.clone()).map_err(|_| NetError::NotACollineation {
            witness: String::from("line action is not a bijection"),
        })?;
    let pair = if direction_action == [VERTICAL, HORIZONTAL, TRANSVERSAL] {
        let u = Perm::from_fn(m, |x| line_images[x] as usize);
        let v = Perm::from_fn(m, |y| line_images[m + y] as usize - m);
        for x in 0..m {
            for y in 0..m {
                if pointmap.apply(net.point(x, y)) != net.point(u.apply(x), v.apply(y)) {
                    return Err(NetError::NotACollineation {
                        witness: format!("no product form at ({x},{y})"),
                    });
                }
            }
        }
        // transversal action must be v·λ_a with a = 1^u
        let a = u.apply(l.identity());
        for c in 0..m {
            let expect = 2 * m + l.mul(a, v.apply(c));
            if line_images[2 * m + c] as usize != expect {
                return Err(NetError::NotACollineation {
                    witness: format!("transversal action differs from v·λ_a at {c}"),
                });
            }
        }
        Some((u, v))
    } else {
        None
    };
    Ok(Collineation {
        pointmap: pointmap.clone(),
        meta: CollMeta {
            direction_action,
            pair,
        },
        line_map,
    })
}

/// Builds the direction-preserving collineation (x, y) -> (x^u, y^v),
/// verifying that transversals go to lines.
pub fn collineation_from_pair(l: &Loop, u: &Perm, v: &Perm) -> Result<Collineation, NetError> {
    let net = Net::of(l);
    if u.degree() != net.m || v.degree() != net.m {
        return Err(NetError::NotACollineation {
            witness: String::from("component degrees differ from the loop order"),
        });
    }
    let pointmap = Perm::from_fn(net.point_count(), |p| {
        let (x, y) = net.coords(p);
        net.point(u.apply(x), v.apply(y))
    });
    classify(l, &pointmap)
}

/// The Bol reflection with axis x = m0. The axis is fixed pointwise,
/// verticals go to verticals and the horizontal and transversal pencils are
/// swapped; the point formula sends (x, y) to (z, m0\(x·y)) where z solves
/// z·(m0\(x·y)) = m0·y. Construction verifies all of that plus involutivity,
/// and fails exactly when the loop is not left Bol.
pub fn bol_reflection(l: &Loop, m0: usize) -> Result<Collineation, NetError> {
    let net = Net::of(l);
    let pointmap = Perm::from_images(
        (0..net.point_count())
            .map(|p| {
                let (x, y) = net.coords(p);
                let w = l.left_div(m0, l.mul(x, y));
                let z = l.right_div(w, l.mul(m0, y));
                net.point(z, w) as u16
            })
            .collect(),
    )
    .map_err(|_| NetError::NotBol {
        witness: format!("reflection at {m0} is not a bijection"),
    })?;
    if !pointmap.compose(&pointmap).is_identity() {
        return Err(NetError::NotBol {
            witness: format!("reflection at {m0} is not an involution"),
        });
    }
    for y in 0..net.m {
        if pointmap.apply(net.point(m0, y)) != net.point(m0, y) {
            return Err(NetError::NotBol {
                witness: format!("axis x = {m0} not fixed at y = {y}"),
            });
        }
    }
    let coll = classify(l, &pointmap)?;
    if coll.meta.direction_action != [VERTICAL, TRANSVERSAL, HORIZONTAL] {
        return Err(NetError::NotBol {
            witness: format!("reflection at {m0} does not swap the two pencils"),
        });
    }
    Ok(coll)
}

/// A collineation group: the point-permutation group plus cached per-element
/// metadata and line actions. Construction classifies every element, so
/// membership implies the line-to-line invariant.
pub struct CollGroup {
    pub group: FiniteGroup,
    pub metas: Vec<CollMeta>,
    pub line_maps: Vec<Perm>,
}

impl CollGroup {
    pub fn from_generators(l: &Loop, gens: &[Perm]) -> Result<CollGroup, NetError> {
        let group = FiniteGroup::closure(gens)?;
        CollGroup::classify_group(l, group)
    }

    pub fn from_elements(l: &Loop, elements: Vec<Perm>) -> Result<CollGroup, NetError> {
        let group = FiniteGroup::from_elements(elements)?;
        CollGroup::classify_group(l, group)
    }

    fn classify_group(l: &Loop, group: FiniteGroup) -> Result<CollGroup, NetError> {
        let mut metas = Vec::with_capacity(group.order());
        let mut line_maps = Vec::with_capacity(group.order());
        for e in group.elements() {
            let c = classify(l, e)?;
            metas.push(c.meta);
            line_maps.push(c.line_map);
        }
        Ok(CollGroup {
            group,
            metas,
            line_maps,
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn meta_of(&self, p: &Perm) -> Option<&CollMeta> {
        self.group.index_of(p).map(|i| &self.metas[i])
    }

    /// The v-component of a direction-preserving member.
    pub fn phi(&self, p: &Perm) -> Option<Perm> {
        self.meta_of(p)
            .and_then(|m| m.pair.as_ref())
            .map(|(_, v)| v.clone())
    }

    /// The u-component of a direction-preserving member.
    pub fn u_component(&self, p: &Perm) -> Option<Perm> {
        self.meta_of(p)
            .and_then(|m| m.pair.as_ref())
            .map(|(u, _)| u.clone())
    }

    /// Kernel of the projection onto v-components, returned as the group of
    /// u-components (degree = loop order).
    pub fn ker_phi(&self) -> Result<FiniteGroup, NetError> {
        let mut us = Vec::new();
        for meta in &self.metas {
            if let Some((u, v)) = &meta.pair {
                if v.is_identity() {
                    us.push(u.clone());
                }
            }
        }
        Ok(FiniteGroup::from_elements(us)?)
    }

    /// Members of the kernel as point maps.
    pub fn ker_phi_pointmaps(&self) -> Vec<Perm> {
        self.group
            .elements()
            .iter()
            .zip(&self.metas)
            .filter(|(_, meta)| {
                meta.pair
                    .as_ref()
                    .map(|(_, v)| v.is_identity())
                    .unwrap_or(false)
            })
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Orbit of a line index under the cached line action.
    pub fn line_orbit(&self, line: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.line_maps.iter().map(|lm| lm.apply(line)).collect();
        set.into_iter().collect()
    }
}

/// The reflection groups of a left Bol loop: N+ generated by all Bol
/// reflections, N by the products σ_x σ_1. Verifies [N+ : N] = 2 and that
/// the reflection set is invariant under N+-conjugation.
pub fn reflection_groups(l: &Loop) -> Result<(CollGroup, CollGroup), NetError> {
    let m = l.order();
    let sigmas: Vec<Perm> = (0..m)
        .map(|x| bol_reflection(l, x).map(|c| c.pointmap))
        .collect::<Result<_, _>>()?;
    let s1 = &sigmas[l.identity()];
    let even_gens: Vec<Perm> = sigmas.iter().map(|s| s.compose(s1)).collect();
    let n_group = CollGroup::from_generators(l, &even_gens)?;
    let nplus = CollGroup::from_generators(l, &sigmas)?;
    if nplus.order() != 2 * n_group.order() {
        return Err(NetError::StructuralAssertion {
            what: format!("[N+ : N] = {}/{} is not 2", nplus.order(), n_group.order()),
        });
    }
    let sigma_set: BTreeSet<&Perm> = sigmas.iter().collect();
    for g in nplus.group.generators() {
        for s in &sigmas {
            if !sigma_set.contains(&s.conjugate_by(g)) {
                return Err(NetError::StructuralAssertion {
                    what: String::from("reflection set is not invariant under conjugation"),
                });
            }
        }
    }
    Ok((n_group, nplus))
}

/// H_k: the subgroup generated by the k-fold commutators
/// [λ_{x_1}, .., λ_{x_k}] over tuples whose translation product lies in the
/// section. Enumerated depth-first over section elements with running prefix
/// products; duplicate commutators are removed before closing.
pub fn h_k(l: &Loop, k: usize, budget: u64) -> Result<FiniteGroup, NetError> {
    if k < 2 {
        return Err(NetError::InvalidParameter {
            what: format!("k = {k} < 2"),
        });
    }
    let m = l.order();
    let needed = (m as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if needed > budget {
        return Err(NetError::BudgetExceeded { needed, budget });
    }
    let trans = Translations::new(l);
    let lambdas = &trans.lambda;
    let inverses: Vec<Perm> = lambdas.iter().map(Perm::inverse).collect();
    let section: BTreeSet<&Perm> = lambdas.iter().collect();
    let mut gens: BTreeSet<Perm> = BTreeSet::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        depth: usize,
        k: usize,
        p: &Perm,
        q: &Perm,
        lambdas: &[Perm],
        inverses: &[Perm],
        section: &BTreeSet<&Perm>,
        gens: &mut BTreeSet<Perm>,
    ) {
        if depth == k {
            if section.contains(p) {
                gens.insert(q.compose(p));
            }
            return;
        }
        for (lam, inv) in lambdas.iter().zip(inverses.iter()) {
            dfs(
                depth + 1,
                k,
                &p.compose(lam),
                &q.compose(inv),
                lambdas,
                inverses,
                section,
                gens,
            );
        }
    }

    let id = Perm::identity(m);
    dfs(0, k, &id, &id, lambdas, &inverses, &section, &mut gens);
    if gens.is_empty() {
        return Ok(FiniteGroup::trivial(m));
    }
    let gens: Vec<Perm> = gens.into_iter().collect();
    Ok(FiniteGroup::closure(&gens)?)
}

/// The commutator group [S(N_λ), G(L)] = <[λ_n, λ_x] : n in the left nucleus,
/// x in L>.
pub fn nucleus_commutator_group(l: &Loop) -> FiniteGroup {
    let trans = Translations::new(l);
    let nucleus = nuclei(l).left;
    let mut gens: BTreeSet<Perm> = BTreeSet::new();
    for &a in &nucleus {
        for x in 0..l.order() {
            gens.insert(trans.lambda[a].commutator(&trans.lambda[x]));
        }
    }
    let gens: Vec<Perm> = gens.into_iter().collect();
    FiniteGroup::closure(&gens).expect("nonempty generating set")
}

/// F = <p_x> and U = <λ_x²> as degree-m groups.
pub fn translation_orbit_groups(l: &Loop) -> (FiniteGroup, FiniteGroup) {
    let trans = Translations::new(l);
    let p_gens: Vec<Perm> = (0..l.order()).map(|x| trans.p(x)).collect();
    let sq_gens: Vec<Perm> = trans.lambda.iter().map(|lam| lam.compose(lam)).collect();
    let f = FiniteGroup::closure(&p_gens).expect("nonempty");
    let u = FiniteGroup::closure(&sq_gens).expect("nonempty");
    (f, u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutotopismMethod {
    /// Enumerates every bijection u and companion c; |L| <= 8.
    Exhaustive,
    /// Backtracking over generator images for each (c, u(1)); |L| <= 24.
    Backtracking,
}

/// The group of autotopisms (u, v, w) with u(x)·v(y) = w(x·y), returned as
/// direction-preserving collineations (x, y) -> (x^u, y^v).
///
/// Setting y = 1 gives w(x) = u(x)·c with c = v(1), and x = 1 gives
/// v(y) = u(1)\w(y), so the triple is determined by (u, c); both methods
/// enumerate exactly that parameter space and validate candidates on the
/// full table.
pub fn autotopism_group(l: &Loop, method: AutotopismMethod) -> Result<CollGroup, NetError> {
    let m = l.order();
    let bound = match method {
        AutotopismMethod::Exhaustive => 8,
        AutotopismMethod::Backtracking => 24,
    };
    if m > bound {
        return Err(NetError::SizeBound { order: m, bound });
    }
    let net = Net::of(l);
    let mut maps: Vec<Perm> = Vec::new();
    let mut push_solution = |u: &[usize], c: usize| {
        let w: Vec<usize> = (0..m).map(|x| l.mul(u[x], c)).collect();
        let a = u[l.identity()];
        let v: Vec<usize> = (0..m).map(|y| l.left_div(a, w[y])).collect();
        for x in 0..m {
            for y in 0..m {
                if l.mul(u[x], v[y]) != w[l.mul(x, y)] {
                    return;
                }
            }
        }
        maps.push(Perm::from_fn(net.point_count(), |p| {
            let (x, y) = net.coords(p);
            net.point(u[x], v[y])
        }));
    };
    match method {
        AutotopismMethod::Exhaustive => {
            let mut u: Vec<usize> = (0..m).collect();
            permute_all(&mut u, 0, &mut |perm| {
                for c in 0..m {
                    push_solution(perm, c);
                }
            });
        }
        AutotopismMethod::Backtracking => {
            let gens = greedy_loop_generators(l);
            for c in 0..m {
                for a in 0..m {
                    let derive = |fx: usize, fy: usize| {
                        l.right_div(c, l.mul(fx, l.left_div(a, l.mul(fy, c))))
                    };
                    let candidate_ok = |_: usize, _: usize| true;
                    let search = TableSearch {
                        src: l,
                        target_size: m,
                        derive: &derive,
                        candidate_ok: &candidate_ok,
                        gens: gens.clone(),
                        sols: Vec::new(),
                        stop_at_first: false,
                    };
                    for u in search.run(&[(l.identity(), a)]) {
                        let images: Vec<usize> = (0..m).map(|x| u.apply(x)).collect();
                        push_solution(&images, c);
                    }
                }
            }
        }
    }
    maps.sort();
    maps.dedup();
    CollGroup::from_elements(l, maps)
}

fn permute_all(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_all(items, k + 1, f);
        items.swap(k, i);
    }
}

/// The named subgroups and elements of the collineation group of a Burn net.
pub struct SpecialSubgroups {
    /// Λ0 = <α, γ> inside G(L)
    pub lambda0: FiniteGroup,
    /// T = {(λ_n, id) : n in the left nucleus}, as point maps
    pub t_group: FiniteGroup,
    /// Λ = Φ^-1(Λ0) inside N, as point maps
    pub lambda_full: FiniteGroup,
    /// M = TΛ, as point maps
    pub m_group: FiniteGroup,
    /// A = {(σ, σ) : σ in Aut(L)}, as point maps
    pub a_group: FiniteGroup,
    /// Aut(L) on the loop domain
    pub loop_aut: FiniteGroup,
    /// the transversal complement of ker Φ in N
    pub gbar: FiniteGroup,
    /// generator of ker Φ with u-component λ_m0^-2, as a point map
    pub delta: Perm,
    pub alpha_bar: Perm,
    pub beta_bar: Perm,
    pub gamma_bar: Perm,
    /// left nucleus of the loop
    pub nucleus: Vec<usize>,
    /// m0 = 1^(α²), a generator of the nucleus
    pub nucleus_gen: usize,
}

/// Result of assembling Γ = <M, A>.
pub struct GammaData {
    pub gamma: CollGroup,
    /// orbit of the origin (1, 1), as point indices
    pub origin_orbit: Vec<usize>,
    /// stabilizer of the origin inside Γ
    pub origin_stabilizer: FiniteGroup,
}

/// Everything the Burn-net verifiers consume: the model, the section, the
/// loop, its translations and left multiplication group, the reflections,
/// and the groups N and N+.
pub struct BurnNet {
    pub family: Family,
    pub n: u32,
    pub model: GroupModel,
    pub section: Section,
    pub loop_: Loop,
    pub trans: Translations,
    pub g_left: FiniteGroup,
    pub sigmas: Vec<Perm>,
    pub n_group: CollGroup,
    pub nplus: CollGroup,
}

impl BurnNet {
    pub fn new(family: Family, n: u32) -> Result<BurnNet, NetError> {
        let model = GroupModel::new(family, n)?;
        let section = burn_section(&model)?;
        let loop_ = Loop::from_section(&section)?;
        let props = check_identities(&loop_);
        if !props.left_bol {
            return Err(NetError::NotBol {
                witness: String::from("constructed section is not Bol"),
            });
        }
        let trans = Translations::new(&loop_);
        let g_left = FiniteGroup::closure(&trans.lambda)?;
        if g_left.elements() != model.group.elements() {
            return Err(NetError::StructuralAssertion {
                what: String::from("section closure differs from the coset image"),
            });
        }
        let (n_group, nplus) = reflection_groups(&loop_)?;
        let sigmas: Vec<Perm> = (0..loop_.order())
            .map(|x| bol_reflection(&loop_, x).map(|c| c.pointmap))
            .collect::<Result<_, _>>()?;
        Ok(BurnNet {
            family,
            n,
            model,
            section,
            loop_,
            trans,
            g_left,
            sigmas,
            n_group,
            nplus,
        })
    }

    pub fn net(&self) -> Net {
        Net::of(&self.loop_)
    }

    pub fn sigma1(&self) -> &Perm {
        &self.sigmas[self.loop_.identity()]
    }

    /// The N-generator (p_x, λ_x) = σ_x σ_1 as a point map.
    pub fn n_generator(&self, x: usize) -> Perm {
        self.sigmas[x].compose(self.sigma1())
    }

    /// Coset permutation of a word in the presented group.
    pub fn word_perm(&self, i: i64, j: i64, k: i64) -> Perm {
        let nf = crate::models::NormalForm::new(self.family, self.n, i, j, k);
        self.model.coset_perm(&nf).clone()
    }

    /// Orbit of the y-axis (the vertical line through the loop identity)
    /// under the line action of N.
    pub fn y_axis_orbit(&self) -> Vec<usize> {
        self.n_group.line_orbit(self.loop_.identity())
    }

    /// The unique element of `sub` whose v-component equals `v`.
    fn element_over(&self, sub: &FiniteGroup, v: &Perm) -> Result<Perm, NetError> {
        let mut found = None;
        for e in sub.elements() {
            if let Some(ev) = self.n_group.phi(e) {
                if ev == *v {
                    if found.is_some() {
                        return Err(NetError::StructuralAssertion {
                            what: String::from("projection is not injective on the transversal"),
                        });
                    }
                    found = Some(e.clone());
                }
            }
        }
        found.ok_or_else(|| NetError::StructuralAssertion {
            what: String::from("no preimage in the transversal subgroup"),
        })
    }

    /// Builds T, Λ0, Λ, M, A, Ḡ, δ and the lifted generators.
    pub fn special_subgroups(&self, aut_bound: usize) -> Result<SpecialSubgroups, NetError> {
        let l = &self.loop_;
        let net = self.net();
        let nucleus = nuclei(l).left;
        let n_val = self.n as usize;

        let alpha = self.word_perm(1, 0, 0);
        let gamma = self.word_perm(0, 0, 1);
        let lambda0 = FiniteGroup::closure(&[alpha.clone(), gamma.clone()])?;

        let t_elems: Vec<Perm> = nucleus
            .iter()
            .map(|&a| {
                collineation_from_pair(l, &self.trans.lambda[a], &Perm::identity(l.order()))
                    .map(|c| c.pointmap)
            })
            .collect::<Result<_, _>>()?;
        let t_group = FiniteGroup::from_elements(t_elems)?;

        let lambda_elems: Vec<Perm> = self
            .n_group
            .group
            .elements()
            .iter()
            .zip(&self.n_group.metas)
            .filter(|(_, meta)| {
                meta.pair
                    .as_ref()
                    .map(|(_, v)| lambda0.contains(v))
                    .unwrap_or(false)
            })
            .map(|(p, _)| p.clone())
            .collect();
        let lambda_full = FiniteGroup::from_elements(lambda_elems)?;

        let mut m_gens: Vec<Perm> = t_group.generators().to_vec();
        m_gens.extend(lambda_full.generators().iter().cloned());
        let m_group = FiniteGroup::closure(&m_gens)?;

        let loop_aut = automorphism_group_loop(l, aut_bound)?;
        let a_elems: Vec<Perm> = loop_aut
            .elements()
            .iter()
            .map(|s| {
                Perm::from_fn(net.point_count(), |p| {
                    let (x, y) = net.coords(p);
                    net.point(s.apply(x), s.apply(y))
                })
            })
            .collect();
        let a_group = FiniteGroup::from_elements(a_elems)?;

        let alpha2 = self.word_perm(2, 0, 0);
        let m0 = alpha2.apply(l.identity());
        if !nucleus.contains(&m0) {
            return Err(NetError::StructuralAssertion {
                what: String::from("1^(α²) is not in the left nucleus"),
            });
        }

        // Ḡ: stabilizer of the y-axis, except for family C with n ≡ 2 (mod 4)
        // where it is the setwise stabilizer of {x = 1, x = m0^(n/2)}
        let gbar_elems: Vec<Perm> = if self.family == Family::B || n_val % 4 == 0 {
            self.n_group
                .group
                .elements()
                .iter()
                .zip(&self.n_group.metas)
                .filter(|(_, meta)| {
                    meta.pair
                        .as_ref()
                        .map(|(u, _)| u.apply(l.identity()) == l.identity())
                        .unwrap_or(false)
                })
                .map(|(p, _)| p.clone())
                .collect()
        } else {
            if l.element_order(m0) != n_val {
                return Err(NetError::StructuralAssertion {
                    what: format!("1^(α²) has loop order {} ≠ n", l.element_order(m0)),
                });
            }
            let t = l.power(m0, n_val / 2);
            let axis_pair: BTreeSet<usize> = [l.identity(), t].into_iter().collect();
            self.n_group
                .group
                .elements()
                .iter()
                .zip(&self.n_group.metas)
                .filter(|(_, meta)| {
                    meta.pair
                        .as_ref()
                        .map(|(u, _)| {
                            let img: BTreeSet<usize> =
                                axis_pair.iter().map(|&x| u.apply(x)).collect();
                            img == axis_pair
                        })
                        .unwrap_or(false)
                })
                .map(|(p, _)| p.clone())
                .collect()
        };
        let gbar = FiniteGroup::from_elements(gbar_elems)?;

        let target_u = self.trans.lambda[m0]
            .compose(&self.trans.lambda[m0])
            .inverse();
        let ker_maps = self.n_group.ker_phi_pointmaps();
        let delta = ker_maps
            .iter()
            .find(|p| {
                self.n_group
                    .u_component(p)
                    .map(|u| u == target_u)
                    .unwrap_or(false)
            })
            .cloned()
            .ok_or_else(|| NetError::StructuralAssertion {
                what: String::from("no kernel element of the form (λ_m0^-2, id)"),
            })?;
        let delta_span = FiniteGroup::closure(core::slice::from_ref(&delta))?;
        let mut ker_sorted = ker_maps.clone();
        ker_sorted.sort();
        if delta_span.elements() != &ker_sorted[..] {
            return Err(NetError::StructuralAssertion {
                what: String::from("(λ_m0^-2, id) does not generate ker Φ"),
            });
        }

        let beta = self.word_perm(0, 1, 0);
        let alpha_bar = self.element_over(&gbar, &alpha)?;
        let beta_bar = self.element_over(&gbar, &beta)?;
        let gamma_bar = self.element_over(&gbar, &gamma)?;

        Ok(SpecialSubgroups {
            lambda0,
            t_group,
            lambda_full,
            m_group,
            a_group,
            loop_aut,
            gbar,
            delta,
            alpha_bar,
            beta_bar,
            gamma_bar,
            nucleus,
            nucleus_gen: m0,
        })
    }

    /// Γ = <M, A>, verified to be the semidirect product M ⋊ A with origin
    /// stabilizer A and origin orbit a union of vertical lines over the
    /// nucleus of size 4n².
    pub fn build_gamma(&self, special: &SpecialSubgroups) -> Result<GammaData, NetError> {
        let l = &self.loop_;
        let net = self.net();
        let mut gens: Vec<Perm> = special.m_group.generators().to_vec();
        gens.extend(special.a_group.generators().iter().cloned());
        let gamma = CollGroup::from_generators(l, &gens)?;

        for g in gamma.group.generators() {
            for m in special.m_group.generators() {
                if !special.m_group.contains(&m.conjugate_by(g)) {
                    return Err(NetError::StructuralAssertion {
                        what: String::from("M is not normal in Γ"),
                    });
                }
            }
        }
        let m_set: BTreeSet<&Perm> = special.m_group.elements().iter().collect();
        let overlap = special
            .a_group
            .elements()
            .iter()
            .filter(|p| m_set.contains(p))
            .count();
        if overlap != 1 {
            return Err(NetError::StructuralAssertion {
                what: format!("|M ∩ A| = {overlap} ≠ 1"),
            });
        }
        if gamma.order() != special.m_group.order() * special.a_group.order() {
            return Err(NetError::StructuralAssertion {
                what: format!(
                    "|Γ| = {} ≠ |M|·|A| = {}",
                    gamma.order(),
                    special.m_group.order() * special.a_group.order()
                ),
            });
        }
        let origin = net.point(l.identity(), l.identity());
        let (origin_orbit, origin_stabilizer) = gamma.group.orbit_stabilizer(origin)?;
        if origin_stabilizer.elements() != special.a_group.elements() {
            return Err(NetError::StructuralAssertion {
                what: String::from("origin stabilizer differs from A"),
            });
        }
        let expected: BTreeSet<usize> = special
            .nucleus
            .iter()
            .flat_map(|&a| (0..l.order()).map(move |y| net.point(a, y)))
            .collect();
        if origin_orbit.iter().copied().collect::<BTreeSet<_>>() != expected {
            return Err(NetError::StructuralAssertion {
                what: String::from("origin orbit is not a union of nucleus verticals"),
            });
        }
        let n_sq = 4 * (self.n as usize) * (self.n as usize);
        if origin_orbit.len() != n_sq {
            return Err(NetError::StructuralAssertion {
                what: format!("|P| = {} ≠ 4n² = {n_sq}", origin_orbit.len()),
            });
        }
        Ok(GammaData {
            gamma,
            origin_orbit,
            origin_stabilizer,
        })
    }

    /// Order of the direction-reversing extension <Γ, σ_1>.
    pub fn gamma_with_reflection_order(&self, gamma: &GammaData) -> usize {
        let mut gens: Vec<Perm> = gamma.gamma.group.generators().to_vec();
        gens.push(self.sigma1().clone());
        FiniteGroup::closure(&gens).map(|g| g.order()).unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn burn(family: Family, n: u32) -> BurnNet {
        BurnNet::new(family, n).unwrap()
    }

    fn cyclic_loop(k: usize) -> Loop {
        let rows: Vec<Vec<usize>> =
            (0..k).map(|i| (0..k).map(|j| (i + j) % k).collect()).collect();
        Loop::from_table(&rows).unwrap()
    }

    #[test]
    fn identity_pair_is_a_collineation() {
        let l = cyclic_loop(4);
        let id = Perm::identity(4);
        let c = collineation_from_pair(&l, &id, &id).unwrap();
        assert!(c.pointmap.is_identity());
        assert!(c.meta.is_direction_preserving());
    }

    #[test]
    fn bol_pairs_are_collineations() {
        let bn = burn(Family::B, 3);
        for x in 0..bn.loop_.order() {
            let u = bn.trans.p(x);
            let v = bn.trans.lambda[x].clone();
            let c = collineation_from_pair(&bn.loop_, &u, &v).unwrap();
            assert!(c.meta.is_direction_preserving());
        }
    }

    #[test]
    fn nucleus_translations_pair_with_identity() {
        let bn = burn(Family::C, 4);
        for &a in &nuclei(&bn.loop_).left {
            let c = collineation_from_pair(
                &bn.loop_,
                &bn.trans.lambda[a],
                &Perm::identity(bn.loop_.order()),
            );
            assert!(c.is_ok());
        }
    }

    #[test]
    fn non_collineation_pairs_are_rejected() {
        let bn = burn(Family::B, 2);
        let nuc = nuclei(&bn.loop_).left;
        let outside = (0..bn.loop_.order()).find(|x| !nuc.contains(x)).unwrap();
        let r = collineation_from_pair(
            &bn.loop_,
            &bn.trans.lambda[outside],
            &Perm::identity(bn.loop_.order()),
        );
        assert!(matches!(r, Err(NetError::NotACollineation { .. })));
    }

    #[test]
    fn sigma1_fixes_axis_and_squares_to_identity() {
        let bn = burn(Family::B, 2);
        let net = bn.net();
        let s1 = bn.sigma1();
        for y in 0..bn.loop_.order() {
            assert_eq!(
                s1.apply(net.point(bn.loop_.identity(), y)),
                net.point(bn.loop_.identity(), y)
            );
        }
        assert!(s1.compose(s1).is_identity());
    }

    #[test]
    fn reflections_give_the_section_generators() {
        for bn in [burn(Family::B, 3), burn(Family::C, 4)] {
            let net = bn.net();
            for x in 0..bn.loop_.order() {
                let lhs = bn.n_generator(x);
                let u = bn.trans.p(x);
                let v = &bn.trans.lambda[x];
                let rhs = Perm::from_fn(net.point_count(), |p| {
                    let (a, b) = net.coords(p);
                    net.point(u.apply(a), v.apply(b))
                });
                assert_eq!(lhs, rhs, "σ_x σ_1 = (p_x, λ_x) at x = {x}");
            }
        }
    }

    #[test]
    fn reflection_groups_of_a_group_net() {
        let l = cyclic_loop(3);
        let (n_group, nplus) = reflection_groups(&l).unwrap();
        assert_eq!(nplus.order(), 2 * n_group.order());
        assert!(n_group.metas.iter().all(CollMeta::is_direction_preserving));
        // ker Φ of an abelian group net is trivial, so |N| = |G(L)| = 3
        assert_eq!(n_group.ker_phi().unwrap().order(), 1);
        assert_eq!(n_group.order(), 3);
    }

    #[test]
    fn kernel_orders_match_the_table() {
        for (family, n, want) in [
            (Family::B, 2, 1),
            (Family::B, 3, 3),
            (Family::B, 4, 2),
            (Family::C, 2, 1),
            (Family::C, 4, 2),
            (Family::C, 6, 3),
        ] {
            let bn = burn(family, n);
            let ker = bn.n_group.ker_phi().unwrap();
            assert_eq!(ker.order(), want, "{family}{}", 4 * n);
            assert_eq!(
                bn.n_group.order(),
                ker.order() * bn.g_left.order(),
                "|N| = |ker Φ| · |G(L)|"
            );
        }
    }

    #[test]
    fn kernel_u_components_are_nucleus_translations() {
        let bn = burn(Family::B, 3);
        let nuc = nuclei(&bn.loop_).left;
        let ker = bn.n_group.ker_phi().unwrap();
        for u in ker.elements() {
            assert!(nuc.iter().any(|&a| bn.trans.lambda[a] == *u));
        }
    }

    #[test]
    fn y_axis_orbit_sizes() {
        for (family, n, want) in [
            (Family::B, 3, 3),
            (Family::B, 4, 2),
            (Family::C, 4, 2),
            (Family::C, 6, 6),
        ] {
            let bn = burn(family, n);
            assert_eq!(bn.y_axis_orbit().len(), want, "{family}{}", 4 * n);
        }
    }

    #[test]
    fn translation_orbits_coincide() {
        for (family, n) in [(Family::B, 3), (Family::C, 4)] {
            let bn = burn(family, n);
            let (f, u) = translation_orbit_groups(&bn.loop_);
            assert_eq!(f.orbit(bn.loop_.identity()), u.orbit(bn.loop_.identity()));
        }
    }

    #[test]
    fn h_k_filtration_of_b12() {
        let bn = burn(Family::B, 3);
        let budget = 10_000_000;
        let h2 = h_k(&bn.loop_, 2, budget).unwrap();
        let h3 = h_k(&bn.loop_, 3, budget).unwrap();
        let ker = bn.n_group.ker_phi().unwrap();
        assert_eq!(h3.elements(), ker.elements(), "ker Φ = H_3");
        assert!(h2.is_subgroup_of(&h3));
        let cg = nucleus_commutator_group(&bn.loop_);
        assert_eq!(cg.elements(), h3.elements(), "[S(N_λ), G(L)] = H_3");
        assert!(h_k(&bn.loop_, 4, 100).is_err(), "budget exceeded");
        assert!(h_k(&bn.loop_, 1, budget).is_err(), "k >= 2 required");
    }

    #[test]
    fn h2_of_a_group_is_its_derived_subgroup() {
        let d8 = {
            let r = Perm::cycle(4);
            let s = Perm::from_images(vec![0, 3, 2, 1]).unwrap();
            FiniteGroup::closure(&[r, s]).unwrap()
        };
        let l = Loop::from_group(&d8);
        let h2 = h_k(&l, 2, 10_000).unwrap();
        let mg = crate::loops::multiplication_groups(&l);
        let derived = mg.left.derived_subgroup();
        assert_eq!(h2.elements(), derived.elements());
        assert_eq!(h2.order(), 2);
        let (n_group, _) = reflection_groups(&l).unwrap();
        let ker = n_group.ker_phi().unwrap();
        assert_eq!(ker.elements(), h2.elements());
    }

    #[test]
    fn special_subgroups_of_b12() {
        let bn = burn(Family::B, 3);
        let sp = bn.special_subgroups(256).unwrap();
        assert_eq!(sp.lambda0.order(), 12);
        assert!(sp.lambda0.is_abelian());
        assert_eq!(sp.t_group.order(), 3);
        assert_eq!(sp.m_group.order(), 36);
        assert!(sp.m_group.is_abelian());
        assert_eq!(sp.gbar.order(), bn.g_left.order());
        // Ḡ ∩ ker Φ trivial and |Ḡ|·|ker Φ| = |N|
        let ker_maps = bn.n_group.ker_phi_pointmaps();
        let inter = ker_maps.iter().filter(|p| sp.gbar.contains(p)).count();
        assert_eq!(inter, 1);
        assert_eq!(sp.gbar.order() * ker_maps.len(), bn.n_group.order());
    }

    #[test]
    fn c24_generator_interchanges_the_axis_pair() {
        let bn = burn(Family::C, 6);
        let sp = bn.special_subgroups(256).unwrap();
        let m0 = sp.nucleus_gen;
        let t = bn.loop_.power(m0, 3);
        // the N-generator over λ_x = βγ sends the identity to m0^(n/2)
        let x = bn.word_perm(0, 1, 1).apply(bn.loop_.identity());
        let gen = bn.n_generator(x);
        let u = bn.n_group.u_component(&gen).unwrap();
        assert_eq!(u.apply(bn.loop_.identity()), t);
    }

    #[test]
    fn gamma_of_b8_matches_the_exhaustive_oracle() {
        let bn = burn(Family::B, 2);
        let sp = bn.special_subgroups(256).unwrap();
        let gd = bn.build_gamma(&sp).unwrap();
        assert_eq!(gd.gamma.order(), 128);
        assert_eq!(gd.origin_orbit.len(), 16);
        let oracle = autotopism_group(&bn.loop_, AutotopismMethod::Exhaustive).unwrap();
        assert_eq!(oracle.group.elements(), gd.gamma.group.elements());
    }

    #[test]
    fn gamma_of_b12() {
        let bn = burn(Family::B, 3);
        let sp = bn.special_subgroups(256).unwrap();
        let gd = bn.build_gamma(&sp).unwrap();
        assert_eq!(gd.origin_orbit.len(), 36);
        assert_eq!(gd.gamma.order(), 36 * sp.loop_aut.order());
    }

    #[test]
    fn group_net_autotopisms_of_cyclic_4() {
        let l = cyclic_loop(4);
        let atp = autotopism_group(&l, AutotopismMethod::Exhaustive).unwrap();
        assert_eq!(atp.order(), 32); // |(G×G) ⋊ Aut(G)| = 16·2
        let trivial = Loop::from_table(&[vec![0]]).unwrap();
        assert_eq!(
            autotopism_group(&trivial, AutotopismMethod::Exhaustive)
                .unwrap()
                .order(),
            1
        );
    }

    #[test]
    fn backtracking_autotopisms_agree_with_exhaustive() {
        // C8 is the interesting case: its autotopism group strictly contains
        // the assembled M x| Aut(L)
        for l in [
            cyclic_loop(4),
            burn(Family::B, 2).loop_.clone(),
            burn(Family::C, 2).loop_.clone(),
        ] {
            let a = autotopism_group(&l, AutotopismMethod::Exhaustive).unwrap();
            let b = autotopism_group(&l, AutotopismMethod::Backtracking).unwrap();
            assert_eq!(a.group.elements(), b.group.elements());
        }
    }

    #[test]
    fn size_bounds_are_enforced() {
        let bn = burn(Family::B, 3);
        assert!(matches!(
            autotopism_group(&bn.loop_, AutotopismMethod::Exhaustive),
            Err(NetError::SizeBound { .. })
        ));
    }

    #[test]
    fn phi_is_a_homomorphism_on_generator_pairs() {
        let bn = burn(Family::C, 4);
        let gens: Vec<Perm> = (0..bn.loop_.order()).map(|x| bn.n_generator(x)).collect();
        for a in &gens {
            for b in &gens {
                let lhs = bn.n_group.phi(&a.compose(b)).unwrap();
                let rhs = bn
                    .n_group
                    .phi(a)
                    .unwrap()
                    .compose(&bn.n_group.phi(b).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn preimages_of_abelian_groups_are_abelian() {
        let bn = burn(Family::B, 3);
        let sp = bn.special_subgroups(256).unwrap();
        assert!(sp.lambda_full.is_abelian());
        // U = <λ_m : m in nucleus>
        let u_gens: Vec<Perm> = sp
            .nucleus
            .iter()
            .map(|&a| bn.trans.lambda[a].clone())
            .collect();
        let u = FiniteGroup::closure(&u_gens).unwrap();
        let pre: Vec<Perm> = bn
            .n_group
            .group
            .elements()
            .iter()
            .zip(&bn.n_group.metas)
            .filter(|(_, meta)| {
                meta.pair
                    .as_ref()
                    .map(|(_, v)| u.contains(v))
                    .unwrap_or(false)
            })
            .map(|(p, _)| p.clone())
            .collect();
        let pre_group = FiniteGroup::from_elements(pre).unwrap();
        assert!(pre_group.is_abelian());
    }

    #[test]
    fn core_triple_isomorphism() {
        let bn = burn(Family::B, 3);
        let l = &bn.loop_;
        let c = crate::loops::core(l).unwrap();
        // λ_{x+y} = λ_x λ_y^-1 λ_x and σ_{x+y} = σ_x σ_y σ_x
        for x in 0..l.order() {
            for y in 0..l.order() {
                let s = c.plus(x, y);
                let lam = &bn.trans.lambda;
                assert_eq!(lam[s], lam[x].compose(&lam[y].inverse()).compose(&lam[x]));
                assert_eq!(
                    bn.sigmas[s],
                    bn.sigmas[x].compose(&bn.sigmas[y]).compose(&bn.sigmas[x])
                );
            }
        }
    }
}
