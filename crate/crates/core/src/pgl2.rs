//! Chamber combinatorics for the diagonal PGL2 action on a product of
//! projective lines: Hilbert-Mumford stability of weighted point
//! configurations, the effective ample cone and its subset walls, and
//! the correspondence between chambers inside a two-element half-space
//! and the secondary-fan chambers of a lifted torus action on affine
//! space.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arrangement::{arrangement_chambers, interior_walls, ChamberCell};
use crate::cone::{cone_from_halfspaces, Cone, Location};
use crate::fan::Fan;
use crate::lp::{feasible_point, LinConstraint};
use crate::matrix::{rank_of_rows, solve_general};
use crate::scalar::{Ratio, Scalar};
use crate::toric::{TorusChamber, WeightConfiguration};
use crate::vector::{IntVec, RatVec, Sign};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pgl2Error {
    /// Hilbert-Mumford weights must be strictly positive.
    NonpositiveWeight,
    /// The lifted torus action needs at least four factors.
    NTooSmall,
    /// The distinguished subset must have exactly two elements.
    BadSubsetSize,
    /// The two chamber counts differ; this falsifies the instance.
    CountMismatch { pgl2: usize, gkz: usize },
}

impl fmt::Display for Pgl2Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pgl2Error::NonpositiveWeight => write!(f, "weights must be strictly positive"),
            Pgl2Error::NTooSmall => write!(f, "need n >= 4 factors"),
            Pgl2Error::BadSubsetSize => write!(f, "subset must have exactly two elements"),
            Pgl2Error::CountMismatch { pgl2, gkz } => {
                write!(f, "chamber counts differ: {pgl2} vs {gkz}")
            }
        }
    }
}

impl std::error::Error for Pgl2Error {}

/// A linearization O(a_1, ..., a_n); it carries a group linearization
/// iff the coordinate sum is even.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Linearization<S: Scalar> {
    pub n: usize,
    pub a: IntVec<S>,
    pub parity_ok: bool,
}

impl<S: Scalar> Linearization<S> {
    pub fn new(a: IntVec<S>) -> Self {
        let sum = a.iter().fold(S::zero(), |acc, x| acc + x.clone());
        let parity_ok = (sum % S::from(2)).is_zero();
        Linearization { n: a.dim(), a, parity_ok }
    }
}

/// Hilbert-Mumford classification of a coincidence profile.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Stability {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::StrictlySemistable => "strictly_semistable",
            Stability::Unstable => "unstable",
        }
    }
}

/// Which points of a configuration coincide: a partition of the index
/// set. Only this data is visible to the stability criterion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoincidenceProfile {
    pub n: usize,
    pub blocks: Vec<BTreeSet<usize>>,
}

impl CoincidenceProfile {
    pub fn new(n: usize, blocks: Vec<BTreeSet<usize>>) -> Self {
        let mut seen = BTreeSet::new();
        for b in &blocks {
            assert!(!b.is_empty(), "empty block");
            for &i in b {
                assert!(i < n && seen.insert(i), "not a partition of 0..n");
            }
        }
        assert_eq!(seen.len(), n, "not a partition of 0..n");
        let mut blocks = blocks;
        blocks.sort_by_key(|b| *b.iter().next().unwrap());
        CoincidenceProfile { n, blocks }
    }

    pub fn singletons(n: usize) -> Self {
        CoincidenceProfile::new(n, (0..n).map(|i| BTreeSet::from([i])).collect())
    }
}

/// All set partitions of 0..n, by restricted-growth strings.
pub fn set_partitions(n: usize) -> Vec<CoincidenceProfile> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let nblocks = rgs.iter().max().map_or(0, |&m| m + 1);
        let mut blocks = vec![BTreeSet::new(); nblocks];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].insert(i);
        }
        out.push(CoincidenceProfile::new(n, blocks));
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let cap = rgs[..i].iter().max().unwrap() + 1;
            if rgs[i] < cap {
                rgs[i] += 1;
                for j in i + 1..n {
                    rgs[j] = 0;
                }
                break;
            }
        }
    }
}

/// The numerical criterion: a profile is semistable iff every block's
/// weight is at most half the total, stable iff strictly less.
pub fn hm_classify<S: Scalar>(
    lin: &Linearization<S>,
    profile: &CoincidenceProfile,
) -> Result<Stability, Pgl2Error> {
    assert_eq!(lin.n, profile.n, "size mismatch");
    if lin.a.iter().any(|x| !x.is_positive()) {
        return Err(Pgl2Error::NonpositiveWeight);
    }
    let total = lin.a.iter().fold(S::zero(), |acc, x| acc + x.clone());
    let mut tie = false;
    for block in &profile.blocks {
        let weight = block.iter().fold(S::zero(), |acc, &i| acc + lin.a[i].clone());
        let doubled = weight.clone() + weight;
        if doubled > total {
            return Ok(Stability::Unstable);
        }
        if doubled == total {
            tie = true;
        }
    }
    Ok(if tie { Stability::StrictlySemistable } else { Stability::Stable })
}

/// Sigma_T(a): the weight of T minus the weight of its complement.
pub fn sigma_subset<S: Scalar>(a: &IntVec<S>, subset: &BTreeSet<usize>) -> S {
    let mut acc = S::zero();
    for i in 0..a.dim() {
        if subset.contains(&i) {
            acc += a[i].clone();
        } else {
            acc -= a[i].clone();
        }
    }
    acc
}

fn subset_normal<S: Scalar>(n: usize, subset: &BTreeSet<usize>) -> IntVec<S> {
    IntVec::new(
        (0..n)
            .map(|i| if subset.contains(&i) { S::one() } else { -S::one() })
            .collect(),
    )
}

/// The effective ample cone: weights nonnegative and each bounded by
/// the sum of the others (closed form; interior tests give the strict
/// version).
pub fn effective_ample_cone<S: Scalar>(n: usize) -> Cone<S> {
    let mut ineqs: Vec<IntVec<S>> = Vec::with_capacity(2 * n);
    for i in 0..n {
        ineqs.push(IntVec::unit(n, i));
        // sum of the others minus a_i
        let coords: Vec<S> = (0..n).map(|j| if j == i { -S::one() } else { S::one() }).collect();
        ineqs.push(IntVec::new(coords));
    }
    cone_from_halfspaces(n, &ineqs, &[])
}

/// One wall Sigma_T = 0, stored by the canonical subset containing
/// index 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WallSpec<S: Scalar> {
    pub n: usize,
    pub subset: BTreeSet<usize>,
    pub normal: IntVec<S>,
}

impl<S: Scalar> WallSpec<S> {
    fn from_normal(normal: IntVec<S>) -> Self {
        let subset = (0..normal.dim()).filter(|&i| normal[i].is_positive()).collect();
        WallSpec { n: normal.dim(), subset, normal }
    }
}

/// The chambers of the effective ample cone inside one half-space.
#[derive(Clone, Debug)]
pub struct Pgl2Chambers<S: Scalar> {
    pub n: usize,
    pub pair: (usize, usize),
    pub region: Cone<S>,
    pub walls: Vec<WallSpec<S>>,
    pub cells: Vec<ChamberCell<S>>,
    /// Integral interior linearizations with even coordinate sum,
    /// aligned with `cells`.
    pub representatives: Vec<Linearization<S>>,
}

/// Full-dimensional chambers of the subset-wall arrangement inside
/// the region cut from the effective ample cone by the half-space of
/// the two-element subset.
pub fn pgl2_chambers_in_halfspace<S: Scalar>(
    n: usize,
    pair: (usize, usize),
) -> Result<Pgl2Chambers<S>, Pgl2Error> {
    if pair.0 == pair.1 || pair.0 >= n || pair.1 >= n {
        return Err(Pgl2Error::BadSubsetSize);
    }
    // below three factors the ample cone degenerates to a ray
    if n < 3 {
        return Err(Pgl2Error::NTooSmall);
    }
    let s_set: BTreeSet<usize> = [pair.0, pair.1].into_iter().collect();
    let mut region_ineqs: Vec<IntVec<S>> = effective_ample_cone::<S>(n).facet_normals().to_vec();
    region_ineqs.push(subset_normal(n, &s_set));
    let region = cone_from_halfspaces(n, &region_ineqs, &[]);
    // All subset walls up to complementation: subsets containing index 0.
    let mut candidates: Vec<IntVec<S>> = Vec::new();
    for mask in 0..(1u64 << (n - 1)) {
        let mut t = BTreeSet::from([0usize]);
        for i in 1..n {
            if mask & (1 << (i - 1)) != 0 {
                t.insert(i);
            }
        }
        candidates.push(subset_normal(n, &t));
    }
    let walls: Vec<WallSpec<S>> = interior_walls(&candidates, &region)
        .into_iter()
        .map(WallSpec::from_normal)
        .collect();
    // Every wall meeting the open region separates the two marked
    // indices (their coordinates carry opposite signs).
    for w in &walls {
        debug_assert!(
            w.subset.contains(&pair.0) != w.subset.contains(&pair.1),
            "wall does not separate the marked pair"
        );
    }
    let normals: Vec<IntVec<S>> = walls.iter().map(|w| w.normal.clone()).collect();
    let cells = arrangement_chambers(&normals, &region).expect("region is full-dimensional");
    let representatives = cells
        .iter()
        .map(|c| {
            let mut rep = c.representative_int();
            let sum = rep.iter().fold(S::zero(), |acc, x| acc + x.clone());
            if !(sum % S::from(2)).is_zero() {
                rep = rep.scaled(&S::from(2));
            }
            Linearization::new(rep)
        })
        .collect();
    Ok(Pgl2Chambers { n, pair, region, walls, cells, representatives })
}

/// The weight configuration of the torus action lifted from the
/// projective-line product: columns e_i and e_i + e_last for each of
/// the n-2 coordinate pairs.
pub fn lifted_torus_action<S: Scalar>(n: usize) -> Result<WeightConfiguration<S>, Pgl2Error> {
    if n < 4 {
        return Err(Pgl2Error::NTooSmall);
    }
    let rank = n - 1;
    let mut cols = Vec::with_capacity(2 * n - 4);
    for i in 0..n - 2 {
        cols.push(IntVec::unit(rank, i));
        let mut y = IntVec::unit(rank, i);
        y = &y + &IntVec::unit(rank, rank - 1);
        cols.push(y);
    }
    Ok(WeightConfiguration::new(cols).expect("lifted action is surjective"))
}

/// Exact twist bookkeeping: adding m to both marked coordinates moves
/// Sigma_T by 2m, 0 or -2m according to how many marked indices T
/// contains, and for positive m the move is strictly monotone in the
/// stated direction.
pub fn twist_invariance_check<S: Scalar>(
    n: usize,
    pair: (usize, usize),
    a: &IntVec<S>,
    m: &S,
) -> bool {
    assert_eq!(a.dim(), n);
    let mut twisted = a.clone();
    let mut bump = IntVec::zero(n);
    bump = &bump + &IntVec::unit(n, pair.0).scaled(m);
    bump = &bump + &IntVec::unit(n, pair.1).scaled(m);
    twisted = &twisted + &bump;
    let two_m = m.clone() + m.clone();
    for mask in 0..(1u64 << n) {
        let t: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let before = sigma_subset(a, &t);
        let after = sigma_subset(&twisted, &t);
        let diff = after.clone() - before.clone();
        let marked = [pair.0, pair.1].iter().filter(|i| t.contains(i)).count();
        let expected = match marked {
            2 => two_m.clone(),
            1 => S::zero(),
            _ => -two_m.clone(),
        };
        if diff != expected {
            return false;
        }
        if m.is_positive() {
            let ok = match marked {
                2 => after > before,
                1 => after == before,
                _ => after < before,
            };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// How one wall list maps onto the other: paired indices with the
/// orientation applied to the first list's sign.
#[derive(Clone, Debug)]
pub struct WallMatching<S: Scalar> {
    /// (pgl2 wall index, gkz wall index, orientation)
    pub wall_pairs: Vec<(usize, usize, Sign)>,
    /// (pgl2 chamber index, gkz chamber index)
    pub chamber_pairs: Vec<(usize, usize)>,
    /// Rows of the rational map from the linearization space to the
    /// character space found by the hyperplane-transport system
    /// (covector pullback), if one exists with positive scales.
    pub pullback_rows: Option<Vec<RatVec<S>>>,
    /// Rows of a map solving the literal normal pushforward system
    /// L w = u g (u nonzero, sign per wall), if one exists.
    pub pushforward_rows: Option<Vec<RatVec<S>>>,
    /// Signs of the pushforward scales, aligned with wall_pairs.
    pub pushforward_signs: Option<Vec<Sign>>,
    /// Whether the pullback map sends every pgl2 chamber representative
    /// strictly inside the weight cone (the geometric witness).
    pub reps_land_in_weight_cone: bool,
}

/// The two chamber lists, their counts, and the discovered matching.
#[derive(Clone, Debug)]
pub struct BijectionReport<S: Scalar> {
    pub n: usize,
    pub pair: (usize, usize),
    pub pgl2: Pgl2Chambers<S>,
    pub weights: WeightConfiguration<S>,
    pub gkz_walls: Vec<IntVec<S>>,
    pub gkz: Vec<TorusChamber<S>>,
    pub counts_match: bool,
    pub matching: Option<WallMatching<S>>,
    /// Quotient fan attached to each pgl2 chamber via the matching
    /// (in gkz order when no matching was found).
    pub quotient_fans: Vec<Fan<S>>,
}

/// Compute both chamber decompositions, compare the counts, and search
/// for a linear map realizing the wall correspondence.
pub fn verify_chamber_bijection<S: Scalar>(
    n: usize,
    pair: (usize, usize),
) -> Result<BijectionReport<S>, Pgl2Error> {
    let pgl2 = pgl2_chambers_in_halfspace::<S>(n, pair)?;
    let weights = lifted_torus_action::<S>(n)?;
    let gkz_walls = weights.secondary_fan_walls();
    let gkz = weights.secondary_chambers().expect("weight cone is full-dimensional");
    if pgl2.cells.len() != gkz.len() {
        return Err(Pgl2Error::CountMismatch { pgl2: pgl2.cells.len(), gkz: gkz.len() });
    }
    let matching = find_matching(&pgl2, &weights, &gkz_walls, &gkz);
    let quotient_fans = match &matching {
        Some(m) => m
            .chamber_pairs
            .iter()
            .map(|&(_, g)| gkz[g].data.fan.clone())
            .collect(),
        None => gkz.iter().map(|c| c.data.fan.clone()).collect(),
    };
    Ok(BijectionReport {
        n,
        pair,
        pgl2,
        weights,
        gkz_walls,
        gkz,
        counts_match: true,
        matching,
        quotient_fans,
    })
}

fn sign_vectors<S: Scalar>(cells: &[ChamberCell<S>]) -> Vec<Vec<Sign>> {
    cells.iter().map(|c| c.sign_vector.clone()).collect()
}

/// Backtracking search for a wall bijection with orientations under
/// which the two chamber sign-vector sets agree; candidates are then
/// filtered by solvability of the linear transport system.
fn find_matching<S: Scalar>(
    pgl2: &Pgl2Chambers<S>,
    weights: &WeightConfiguration<S>,
    gkz_walls: &[IntVec<S>],
    gkz: &[TorusChamber<S>],
) -> Option<WallMatching<S>> {
    let k = pgl2.walls.len();
    if k != gkz_walls.len() {
        return None;
    }
    let sp = sign_vectors(&pgl2.cells);
    let sg: Vec<Vec<Sign>> = gkz.iter().map(|c| c.sign_vector().to_vec()).collect();
    let assignments = enumerate_sign_matchings(&sp, &sg, k);
    let mut fallback: Option<WallMatching<S>> = None;
    for (perm, eps) in &assignments {
        let chamber_pairs = induced_chamber_pairs(&sp, &sg, perm, eps);
        let wall_pairs: Vec<(usize, usize, Sign)> =
            (0..k).map(|i| (i, perm[i], eps[i])).collect();
        let pullback = solve_pullback(pgl2, weights, gkz_walls, perm, eps);
        if let Some((rows, into_cone)) = pullback {
            let (push_rows, push_signs) = solve_pushforward(pgl2, gkz_walls, perm);
            return Some(WallMatching {
                wall_pairs,
                chamber_pairs,
                pullback_rows: Some(rows),
                pushforward_rows: push_rows,
                pushforward_signs: push_signs,
                reps_land_in_weight_cone: into_cone,
            });
        }
        if fallback.is_none() {
            let (push_rows, push_signs) = solve_pushforward(pgl2, gkz_walls, perm);
            fallback = Some(WallMatching {
                wall_pairs,
                chamber_pairs,
                pullback_rows: None,
                pushforward_rows: push_rows,
                pushforward_signs: push_signs,
                reps_land_in_weight_cone: false,
            });
        }
    }
    fallback
}

/// All bijections wall->wall with per-wall orientation making the two
/// sign-vector multisets equal, in deterministic order.
fn enumerate_sign_matchings(
    sp: &[Vec<Sign>],
    sg: &[Vec<Sign>],
    k: usize,
) -> Vec<(Vec<usize>, Vec<Sign>)> {
    // Per-wall counts of Plus for pruning.
    let count_plus = |vs: &[Vec<Sign>], w: usize| vs.iter().filter(|v| v[w] == Sign::Plus).count();
    let cp: Vec<usize> = (0..k).map(|w| count_plus(sp, w)).collect();
    let cg: Vec<usize> = (0..k).map(|w| count_plus(sg, w)).collect();
    let total = sp.len();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; k];
    let mut eps = vec![Sign::Plus; k];
    let mut used = vec![false; k];
    fn consistent(sp: &[Vec<Sign>], sg: &[Vec<Sign>], perm: &[usize], eps: &[Sign], depth: usize) -> bool {
        // Projected multiset equality on assigned walls.
        let mut proj_p: Vec<Vec<Sign>> = sp
            .iter()
            .map(|v| {
                (0..depth)
                    .map(|i| if eps[i] == Sign::Plus { v[i] } else { v[i].flip() })
                    .collect()
            })
            .collect();
        let mut proj_g: Vec<Vec<Sign>> = sg
            .iter()
            .map(|v| (0..depth).map(|i| v[perm[i]]).collect())
            .collect();
        proj_p.sort();
        proj_g.sort();
        proj_p == proj_g
    }
    fn recurse(
        sp: &[Vec<Sign>],
        sg: &[Vec<Sign>],
        cp: &[usize],
        cg: &[usize],
        total: usize,
        k: usize,
        depth: usize,
        perm: &mut Vec<usize>,
        eps: &mut Vec<Sign>,
        used: &mut Vec<bool>,
        out: &mut Vec<(Vec<usize>, Vec<Sign>)>,
    ) {
        if depth == k {
            out.push((perm.clone(), eps.clone()));
            return;
        }
        for j in 0..k {
            if used[j] {
                continue;
            }
            for sign in [Sign::Plus, Sign::Minus] {
                let want = if sign == Sign::Plus { cp[depth] } else { total - cp[depth] };
                if cg[j] != want {
                    continue;
                }
                perm[depth] = j;
                eps[depth] = sign;
                used[j] = true;
                if consistent(sp, sg, perm, eps, depth + 1) {
                    recurse(sp, sg, cp, cg, total, k, depth + 1, perm, eps, used, out);
                }
                used[j] = false;
            }
        }
        perm[depth] = usize::MAX;
    }
    recurse(sp, sg, &cp, &cg, total, k, 0, &mut perm, &mut eps, &mut used, &mut out);
    out
}

fn transport(v: &[Sign], perm: &[usize], eps: &[Sign], k: usize) -> Vec<Sign> {
    let mut out = vec![Sign::Plus; k];
    for i in 0..k {
        out[perm[i]] = if eps[i] == Sign::Plus { v[i] } else { v[i].flip() };
    }
    out
}

fn induced_chamber_pairs(
    sp: &[Vec<Sign>],
    sg: &[Vec<Sign>],
    perm: &[usize],
    eps: &[Sign],
) -> Vec<(usize, usize)> {
    let k = perm.len();
    sp.iter()
        .enumerate()
        .map(|(i, v)| {
            let image = transport(v, perm, eps, k);
            let j = sg.iter().position(|g| *g == image).expect("matched sign vector");
            (i, j)
        })
        .collect()
}

/// Solve for L with L e_S = 0 and L^T g_{perm(i)} = t_i eps_i w_i,
/// t_i > 0, preferring solutions that send every chamber representative
/// strictly inside the weight cone. Returns the rows of L and whether
/// the geometric condition holds.
fn solve_pullback<S: Scalar>(
    pgl2: &Pgl2Chambers<S>,
    weights: &WeightConfiguration<S>,
    gkz_walls: &[IntVec<S>],
    perm: &[usize],
    eps: &[Sign],
) -> Option<(Vec<RatVec<S>>, bool)> {
    let n = pgl2.n;
    let rank = n - 1; // character space dimension
    let k = perm.len();
    let nl = rank * n;
    let nvars = nl + k;
    let lix = |row: usize, col: usize| row * n + col;
    let mut rows: Vec<Vec<Ratio<S>>> = Vec::new();
    let zero_rhs = |rows: &Vec<Vec<Ratio<S>>>| vec![Ratio::zero(); rows.len()];
    // L^T g_{perm(i)} - t_i eps_i w_i = 0, coordinatewise.
    for i in 0..k {
        let g = &gkz_walls[perm[i]];
        let w = &pgl2.walls[i].normal;
        for c in 0..n {
            let mut row = vec![Ratio::zero(); nvars];
            for r in 0..rank {
                row[lix(r, c)] = Ratio::from_integer(g[r].clone());
            }
            let sgn = if eps[i] == Sign::Plus { S::one() } else { -S::one() };
            row[nl + i] = Ratio::from_integer(-(sgn * w[c].clone()));
            rows.push(row);
        }
    }
    // L e_S = 0: for each row of L, entries at the marked pair sum to 0.
    for r in 0..rank {
        let mut row = vec![Ratio::zero(); nvars];
        row[lix(r, pgl2.pair.0)] = Ratio::one();
        row[lix(r, pgl2.pair.1)] = Ratio::one();
        rows.push(row);
    }
    let rhs = zero_rhs(&rows);
    let (_, basis) = solve_general(&rows, &rhs)?;
    if basis.is_empty() {
        return None;
    }
    // Feasibility in the solution space: all t_i > 0, and (preferred)
    // all mapped representatives strictly inside the weight cone.
    let t_constraints: Vec<LinConstraint<S>> = (0..k)
        .map(|i| {
            LinConstraint::new(
                basis.iter().map(|b| b[nl + i].clone()).collect(),
                Ratio::zero(),
                true,
            )
        })
        .collect();
    let mut geo_constraints = t_constraints.clone();
    for cell in &pgl2.cells {
        let rep = cell.representative_int();
        for facet in weights.c_beta().facet_normals() {
            // <facet, L rep> > 0: linear in the L entries.
            let mut coeffs_full = vec![Ratio::zero(); nvars];
            for r in 0..rank {
                for c in 0..n {
                    coeffs_full[lix(r, c)] =
                        Ratio::from_integer(facet[r].clone() * rep[c].clone());
                }
            }
            geo_constraints.push(LinConstraint::new(
                basis.iter().map(|b| {
                    let mut acc = Ratio::zero();
                    for (cf, bv) in coeffs_full.iter().zip(b.iter()) {
                        acc += cf.clone() * bv.clone();
                    }
                    acc
                }).collect(),
                Ratio::zero(),
                true,
            ));
        }
    }
    let (lambda, into_cone) = match feasible_point(basis.len(), &geo_constraints) {
        Some(l) => (l, true),
        None => (feasible_point(basis.len(), &t_constraints)?, false),
    };
    let mut sol = vec![Ratio::zero(); nvars];
    for (b, l) in basis.iter().zip(lambda.coords()) {
        for (s, bv) in sol.iter_mut().zip(b.iter()) {
            *s += l.clone() * bv.clone();
        }
    }
    let l_rows: Vec<RatVec<S>> = (0..rank)
        .map(|r| RatVec::new((0..n).map(|c| sol[lix(r, c)].clone()).collect()))
        .collect();
    // The map must be surjective onto the character space.
    let scaled: Vec<IntVec<S>> = l_rows.iter().map(|r| r.to_integral_scaled()).collect();
    if rank_of_rows(&scaled) != rank {
        return None;
    }
    Some((l_rows, into_cone))
}

/// Solve the literal pushforward system L w_i = u_i g_{perm(i)} with
/// L e_S = 0 and all u_i nonzero; records the sign of each scale.
fn solve_pushforward<S: Scalar>(
    pgl2: &Pgl2Chambers<S>,
    gkz_walls: &[IntVec<S>],
    perm: &[usize],
) -> (Option<Vec<RatVec<S>>>, Option<Vec<Sign>>) {
    let n = pgl2.n;
    let rank = n - 1;
    let k = perm.len();
    let nl = rank * n;
    let nvars = nl + k;
    let lix = |row: usize, col: usize| row * n + col;
    let mut rows: Vec<Vec<Ratio<S>>> = Vec::new();
    for i in 0..k {
        let g = &gkz_walls[perm[i]];
        let w = &pgl2.walls[i].normal;
        for r in 0..rank {
            let mut row = vec![Ratio::zero(); nvars];
            for c in 0..n {
                row[lix(r, c)] = Ratio::from_integer(w[c].clone());
            }
            row[nl + i] = Ratio::from_integer(-g[r].clone());
            rows.push(row);
        }
    }
    for r in 0..rank {
        let mut row = vec![Ratio::zero(); nvars];
        row[lix(r, pgl2.pair.0)] = Ratio::one();
        row[lix(r, pgl2.pair.1)] = Ratio::one();
        rows.push(row);
    }
    let rhs = vec![Ratio::zero(); rows.len()];
    let Some((_, basis)) = solve_general(&rows, &rhs) else {
        return (None, None);
    };
    if basis.is_empty() {
        return (None, None);
    }
    // Find a combination with every scale nonzero: lambda = powers of q
    // avoids each vanishing hyperplane for all but finitely many q.
    for q in 1..=(8 * (basis.len() as i64 + k as i64)) {
        let mut lambda: Vec<Ratio<S>> = Vec::with_capacity(basis.len());
        let mut p = Ratio::one();
        for _ in 0..basis.len() {
            lambda.push(p.clone());
            p *= Ratio::from_integer(S::from(q));
        }
        let mut sol = vec![Ratio::zero(); nvars];
        for (b, l) in basis.iter().zip(lambda.iter()) {
            for (s, bv) in sol.iter_mut().zip(b.iter()) {
                *s += l.clone() * bv.clone();
            }
        }
        if (0..k).all(|i| !sol[nl + i].is_zero()) {
            let signs: Vec<Sign> = (0..k)
                .map(|i| if sol[nl + i].is_positive() { Sign::Plus } else { Sign::Minus })
                .collect();
            let rows_out: Vec<RatVec<S>> = (0..rank)
                .map(|r| RatVec::new((0..n).map(|c| sol[lix(r, c)].clone()).collect()))
                .collect();
            return (Some(rows_out), Some(signs));
        }
    }
    (None, None)
}

/// Apply a rational linear map (given by rows) to an integer vector.
pub fn apply_map<S: Scalar>(rows: &[RatVec<S>], v: &IntVec<S>) -> RatVec<S> {
    RatVec::new(rows.iter().map(|r| v.dot_rat(r)).collect())
}

/// Check that the mapped representative of each matched pgl2 chamber
/// lies strictly inside the weight cone and in the matched gkz cell.
pub fn matching_is_geometric<S: Scalar>(report: &BijectionReport<S>) -> bool {
    let Some(m) = &report.matching else { return false };
    let Some(rows) = &m.pullback_rows else { return false };
    m.chamber_pairs.iter().all(|&(p, g)| {
        let rep = report.pgl2.cells[p].representative_int();
        let image = apply_map(rows, &rep);
        report.weights.c_beta().locate(&image) == Location::Interior
            && report.gkz[g]
                .cell
                .closure
                .locate(&image)
                == Location::Interior
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Int;

    type V = IntVec<Int>;

    fn v(c: &[i64]) -> V {
        V::from_i64(c)
    }

    fn lin(c: &[i64]) -> Linearization<Int> {
        Linearization::new(v(c))
    }

    fn profile(n: usize, blocks: &[&[usize]]) -> CoincidenceProfile {
        CoincidenceProfile::new(
            n,
            blocks.iter().map(|b| b.iter().copied().collect()).collect(),
        )
    }

    #[test]
    fn hm_classification_examples() {
        let a = lin(&[1, 1, 1, 1]);
        assert!(a.parity_ok);
        assert_eq!(
            hm_classify(&a, &profile(4, &[&[0, 1], &[2], &[3]])).unwrap(),
            Stability::StrictlySemistable
        );
        assert_eq!(
            hm_classify(&a, &profile(4, &[&[0, 1, 2], &[3]])).unwrap(),
            Stability::Unstable
        );
        assert_eq!(
            hm_classify(&a, &CoincidenceProfile::singletons(4)).unwrap(),
            Stability::Stable
        );
    }

    #[test]
    fn hm_rejects_nonpositive() {
        let a = lin(&[1, 0, 1, 2]);
        assert_eq!(
            hm_classify(&a, &CoincidenceProfile::singletons(4)).unwrap_err(),
            Pgl2Error::NonpositiveWeight
        );
    }

    #[test]
    fn parity_flag() {
        assert!(lin(&[1, 1]).parity_ok);
        assert!(!lin(&[1, 1, 1]).parity_ok);
    }

    #[test]
    fn set_partition_counts() {
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(4).len(), 15);
        assert_eq!(set_partitions(5).len(), 52);
    }

    #[test]
    fn ample_cone_small() {
        // n = 2: the diagonal ray.
        let c2 = effective_ample_cone::<Int>(2);
        assert_eq!(c2.generators(), &[v(&[1, 1])]);
        // n = 3: three coordinate and three balance facets... the
        // coordinate inequalities are implied at n = 3.
        let c3 = effective_ample_cone::<Int>(3);
        assert_eq!(c3.dim(), 3);
        // n = 4: four coordinate + four balance facets, all irredundant.
        let c4 = effective_ample_cone::<Int>(4);
        assert_eq!(c4.facet_normals().len(), 8);
    }

    #[test]
    fn sigma_antisymmetry() {
        let a = v(&[3, 1, 2, 2]);
        let t: BTreeSet<usize> = [0, 2].into_iter().collect();
        let tc: BTreeSet<usize> = [1, 3].into_iter().collect();
        assert_eq!(sigma_subset(&a, &t), -sigma_subset(&a, &tc));
    }

    #[test]
    fn chambers_n4() {
        let ch = pgl2_chambers_in_halfspace::<Int>(4, (0, 1)).unwrap();
        assert_eq!(ch.walls.len(), 2);
        assert_eq!(ch.cells.len(), 4);
        for r in &ch.representatives {
            assert!(r.parity_ok);
            assert!(r.a.iter().all(|x| x.is_positive()));
        }
    }

    #[test]
    fn chambers_n3_single() {
        let ch = pgl2_chambers_in_halfspace::<Int>(3, (0, 1)).unwrap();
        assert_eq!(ch.walls.len(), 0);
        assert_eq!(ch.cells.len(), 1);
    }

    #[test]
    fn bad_pair_rejected() {
        assert_eq!(
            pgl2_chambers_in_halfspace::<Int>(4, (2, 2)).unwrap_err(),
            Pgl2Error::BadSubsetSize
        );
        assert_eq!(
            pgl2_chambers_in_halfspace::<Int>(2, (0, 1)).unwrap_err(),
            Pgl2Error::NTooSmall
        );
    }

    #[test]
    fn lifted_action_n4_and_n5() {
        let w4 = lifted_torus_action::<Int>(4).unwrap();
        assert_eq!(
            w4.beta(),
            &[v(&[1, 0, 0]), v(&[1, 0, 1]), v(&[0, 1, 0]), v(&[0, 1, 1])]
        );
        assert_eq!(w4.nu(), &[v(&[1]), v(&[-1]), v(&[-1]), v(&[1])]);
        assert!(w4.is_projective_regime());
        let w5 = lifted_torus_action::<Int>(5).unwrap();
        assert_eq!(w5.affine_dim(), 6);
        // kernel functionals are the six del Pezzo directions
        let mut nu = w5.nu().to_vec();
        nu.sort();
        let mut expect = vec![
            v(&[1, 0]),
            v(&[-1, 0]),
            v(&[0, 1]),
            v(&[0, -1]),
            v(&[1, 1]),
            v(&[-1, -1]),
        ];
        expect.sort();
        assert_eq!(nu, expect);
        assert!(w5.is_projective_regime());
        assert_eq!(lifted_torus_action::<Int>(3).unwrap_err(), Pgl2Error::NTooSmall);
    }

    #[test]
    fn twist_checks() {
        assert!(twist_invariance_check(4, (0, 1), &v(&[3, 1, 2, 2]), &Int::from(5)));
        assert!(twist_invariance_check(5, (0, 1), &v(&[3, 1, 2, 2, 7]), &Int::from(2)));
    }

    #[test]
    fn bijection_n4() {
        let report = verify_chamber_bijection::<Int>(4, (0, 1)).unwrap();
        assert!(report.counts_match);
        assert_eq!(report.pgl2.cells.len(), 4);
        assert_eq!(report.gkz.len(), 4);
        let m = report.matching.as_ref().expect("matching found");
        assert!(m.pullback_rows.is_some());
        assert!(m.reps_land_in_weight_cone);
        assert!(matching_is_geometric(&report));
        for fan in &report.quotient_fans {
            assert_eq!(fan, &Fan::projective_line());
        }
    }

    #[test]
    fn bijection_n4_other_pair_by_symmetry() {
        let a = verify_chamber_bijection::<Int>(4, (0, 2)).unwrap();
        assert_eq!(a.pgl2.cells.len(), 4);
        assert!(a.counts_match);
    }
}
