//! Variation of GIT for linear torus actions on affine space: weight
//! configurations, per-character quotient data (polyhedron, normal
//! fan, irrelevant ideal), and the secondary-fan chamber decomposition
//! of the weight cone.

use std::collections::BTreeSet;
use std::fmt;

use crate::arrangement::{arrangement_chambers, interior_walls, ChamberCell};
use crate::cone::{cone_from_generators, Cone, Location};
use crate::fan::{normal_fan, Fan, FanError};
use crate::matrix::{hnf, kernel_lattice, rank_of_rows, Hnf, IntMat};
use crate::polyhedron::{polyhedron_solve, Inequality, PolyError, Polyhedron};
use crate::scalar::Scalar;
use crate::vector::{IntVec, Sign};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ToricError {
    /// The weight matrix is not surjective onto the character lattice,
    /// so the action is not faithful after reparametrization.
    NotSurjective,
    /// The character lies outside the weight cone: no semistable points.
    EmptySemistableLocus,
    /// The character polyhedron is not full-dimensional (the character
    /// lies on a wall); its generalized normal fan is not modeled.
    DegeneratePolyhedron,
    /// The fan/index-set comparison and the ideal comparison disagreed;
    /// this indicates an internal bug and cannot happen for correct data.
    InconsistentChamberIdentity,
}

impl fmt::Display for ToricError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ToricError::NotSurjective => write!(f, "weight matrix is not surjective"),
            ToricError::EmptySemistableLocus => {
                write!(f, "character lies outside the weight cone; semistable locus is empty")
            }
            ToricError::DegeneratePolyhedron => {
                write!(f, "character polyhedron is not full-dimensional (wall character)")
            }
            ToricError::InconsistentChamberIdentity => {
                write!(f, "fan/index-set and ideal comparisons disagree (internal error)")
            }
        }
    }
}

impl std::error::Error for ToricError {}

impl From<FanError> for ToricError {
    fn from(e: FanError) -> Self {
        match e {
            FanError::DegeneratePolyhedron => ToricError::DegeneratePolyhedron,
        }
    }
}

/// A faithful linear torus action on affine space, described by the
/// list of weight vectors (the columns of the character restriction
/// map), together with derived lattice data.
#[derive(Clone, Debug)]
pub struct WeightConfiguration<S: Scalar> {
    n: usize,
    r: usize,
    beta: Vec<IntVec<S>>,
    gamma: IntMat<S>,
    m_basis: IntMat<S>,
    nu: Vec<IntVec<S>>,
    c_beta: Cone<S>,
    /// Rows used to lift characters: row j maps to the j-th unit
    /// character under gamma.
    lift_rows: Vec<IntVec<S>>,
}

impl<S: Scalar> WeightConfiguration<S> {
    /// Validate a weight list and derive kernel data and the weight cone.
    pub fn new(beta: Vec<IntVec<S>>) -> Result<Self, ToricError> {
        let r = beta.len();
        assert!(r > 0, "need at least one weight");
        let n = beta[0].dim();
        for b in &beta {
            assert_eq!(b.dim(), n, "weights of mixed dimension");
        }
        let gamma = IntMat::from_cols(beta.clone());
        let Hnf { h, u, pivots } = hnf(&gamma.transpose());
        let surjective = pivots.len() == n && (0..n).all(|j| h.row(j) == IntVec::unit(n, j));
        if !surjective {
            return Err(ToricError::NotSurjective);
        }
        let lift_rows = (0..n).map(|j| u.row(j)).collect();
        let (m_basis, nu) = kernel_lattice(&gamma);
        let c_beta = cone_from_generators(n, &beta);
        debug_assert!(c_beta.is_full_dimensional());
        Ok(WeightConfiguration { n, r, beta, gamma, m_basis, nu, c_beta, lift_rows })
    }

    pub fn from_i64_cols(cols: &[&[i64]]) -> Result<Self, ToricError> {
        WeightConfiguration::new(cols.iter().map(|c| IntVec::from_i64(c)).collect())
    }

    pub fn torus_rank(&self) -> usize {
        self.n
    }

    pub fn affine_dim(&self) -> usize {
        self.r
    }

    pub fn beta(&self) -> &[IntVec<S>] {
        &self.beta
    }

    pub fn gamma(&self) -> &IntMat<S> {
        &self.gamma
    }

    /// Canonical basis of the kernel lattice of gamma (rows).
    pub fn m_basis(&self) -> &IntMat<S> {
        &self.m_basis
    }

    /// Dual vectors: nu[i] is the i-th coordinate functional of the
    /// kernel inclusion in the chosen basis.
    pub fn nu(&self) -> &[IntVec<S>] {
        &self.nu
    }

    pub fn quotient_dim(&self) -> usize {
        self.r - self.n
    }

    pub fn c_beta(&self) -> &Cone<S> {
        &self.c_beta
    }

    /// Deterministic integral lift of a character along gamma.
    pub fn lift_character(&self, chi: &IntVec<S>) -> Character<S> {
        assert_eq!(chi.dim(), self.n, "character dimension mismatch");
        let mut a = IntVec::zero(self.r);
        for (j, row) in self.lift_rows.iter().enumerate() {
            a = &a + &row.scaled(&chi[j]);
        }
        debug_assert_eq!(self.gamma.mul_vec(&a), *chi);
        Character { chi: chi.clone(), lift: a }
    }

    /// Exact membership of `chi` in the cone spanned by the weights
    /// with index in `support`, decided on facet inequalities of that
    /// cone.
    pub fn semistable_support_test(&self, chi: &IntVec<S>, support: &BTreeSet<usize>) -> bool {
        let gens: Vec<IntVec<S>> = support.iter().map(|&i| self.beta[i].clone()).collect();
        cone_from_generators(self.n, &gens).contains_int(chi)
    }

    /// All weights are nonzero and the weight cone is strongly convex,
    /// so every nonempty quotient is projective.
    pub fn is_projective_regime(&self) -> bool {
        self.beta.iter().all(|b| !b.is_zero()) && self.c_beta.is_strongly_convex()
    }

    /// Hyperplanes spanned by linearly independent (n-1)-subsets of
    /// the weights, as canonical undirected normals (deduplicated).
    pub fn span_walls(&self) -> Vec<IntVec<S>> {
        let mut walls: Vec<IntVec<S>> = Vec::new();
        if self.n == 0 {
            return walls;
        }
        let k = self.n - 1;
        if k == 0 {
            // The only hyperplane of a rank-1 lattice is the origin.
            walls.push(IntVec::unit(1, 0));
            return walls;
        }
        for subset in crate::polyhedron::combinations(self.r, k) {
            let rows: Vec<IntVec<S>> = subset.iter().map(|&i| self.beta[i].clone()).collect();
            if rank_of_rows(&rows) != k {
                continue;
            }
            let (basis, _) = kernel_lattice(&IntMat::from_rows(rows));
            if basis.rows() != 1 {
                continue;
            }
            walls.push(basis.row(0).line_canonical());
        }
        walls.sort();
        walls.dedup();
        walls
    }

    /// True iff the character lies on no cone spanned by a subset of
    /// the weights of lower dimension, i.e. stable and semistable
    /// points coincide.
    pub fn stable_equals_semistable(&self, chi: &IntVec<S>) -> bool {
        for wall in self.span_walls() {
            if !wall.dot(chi).is_zero() {
                continue;
            }
            let on_wall: Vec<IntVec<S>> = self
                .beta
                .iter()
                .filter(|b| wall.dot(b).is_zero())
                .cloned()
                .collect();
            if cone_from_generators(self.n, &on_wall).contains_int(chi) {
                return false;
            }
        }
        // A zero character lies in the trivial subset cone.
        if chi.is_zero() {
            return false;
        }
        true
    }

    /// Full per-character quotient data.
    pub fn chamber_data(&self, chi: &IntVec<S>) -> Result<ChamberData<S>, ToricError> {
        if self.c_beta.locate(&chi.to_rat()) == Location::Outside {
            return Err(ToricError::EmptySemistableLocus);
        }
        let character = self.lift_character(chi);
        let ineqs: Vec<Inequality<S>> = (0..self.r)
            .map(|i| Inequality::new(self.nu[i].clone(), character.lift[i].clone()))
            .collect();
        let polyhedron = match polyhedron_solve(self.quotient_dim(), &ineqs) {
            Ok(p) => p,
            Err(PolyError::Infeasible) => {
                // chi in C_beta guarantees feasibility; unreachable.
                unreachable!("P_a empty for a character inside the weight cone")
            }
            Err(PolyError::NotPointed) => {
                // The kernel basis has full row rank, so the nu span.
                unreachable!("P_a contains a line")
            }
        };
        let fan = normal_fan(&polyhedron)?;
        let i_empty: BTreeSet<usize> = polyhedron.never_active().into_iter().collect();
        let ideal = irrelevant_ideal(&fan, &self.nu, &i_empty);
        let flags = ChamberFlags {
            semistable_nonempty: true,
            stable_nonempty: self.c_beta.locate(&chi.to_rat()) == Location::Interior,
            stable_equals_semistable: self.stable_equals_semistable(chi),
            projective_regime: self.is_projective_regime(),
        };
        Ok(ChamberData { character, polyhedron, fan, i_empty, ideal, flags })
    }

    /// The span walls that actually cut the interior of the weight
    /// cone; chamber sign vectors are indexed by this list.
    pub fn secondary_fan_walls(&self) -> Vec<IntVec<S>> {
        interior_walls(&self.span_walls(), &self.c_beta)
    }

    /// The chambers of the secondary fan: full-dimensional cells of
    /// the span-wall arrangement inside the weight cone, each with an
    /// integral interior character and its quotient data.
    pub fn secondary_chambers(&self) -> Result<Vec<TorusChamber<S>>, ToricError> {
        let walls = self.secondary_fan_walls();
        let cells = arrangement_chambers(&walls, &self.c_beta)
            .expect("weight cone is full-dimensional");
        let chambers = cells
            .into_iter()
            .map(|cell| {
                let chi = cell.representative_int();
                let data = self
                    .chamber_data(&chi)
                    .expect("chamber representative is interior");
                TorusChamber { cell, chi, data }
            })
            .collect();
        Ok(chambers)
    }
}

/// An integral character together with a fixed integral lift along gamma.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character<S: Scalar> {
    pub chi: IntVec<S>,
    pub lift: IntVec<S>,
}

/// A square-free monomial ideal, by the supports of a minimal
/// (antichain) generating set, canonically ordered.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    generators: Vec<BTreeSet<usize>>,
}

impl MonomialIdeal {
    /// Minimalize: drop any generator containing another, sort by
    /// (size, contents).
    pub fn new(gens: Vec<BTreeSet<usize>>) -> Self {
        let mut kept: Vec<BTreeSet<usize>> = Vec::new();
        for g in &gens {
            if !gens.iter().any(|h| h != g && h.is_subset(g)) && !kept.contains(g) {
                kept.push(g.clone());
            }
        }
        kept.sort_by(|a, b| (a.len(), a.iter().collect::<Vec<_>>()).cmp(&(b.len(), b.iter().collect::<Vec<_>>())));
        MonomialIdeal { generators: kept }
    }

    pub fn generators(&self) -> &[BTreeSet<usize>] {
        &self.generators
    }

    /// The whole ring (a single empty generator).
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_empty()
    }

    /// A point with the given support avoids the vanishing locus iff
    /// some generator's support is contained in it.
    pub fn support_semistable(&self, support: &BTreeSet<usize>) -> bool {
        self.generators.iter().any(|g| g.is_subset(support))
    }
}

/// Stability flags derived for one character.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ChamberFlags {
    pub semistable_nonempty: bool,
    pub stable_nonempty: bool,
    pub stable_equals_semistable: bool,
    pub projective_regime: bool,
}

/// Everything the quotient construction attaches to one character.
#[derive(Clone, Debug)]
pub struct ChamberData<S: Scalar> {
    pub character: Character<S>,
    pub polyhedron: Polyhedron<S>,
    pub fan: Fan<S>,
    pub i_empty: BTreeSet<usize>,
    pub ideal: MonomialIdeal,
    pub flags: ChamberFlags,
}

/// One secondary-fan chamber: the cell, its representative character
/// and the quotient data at that character.
#[derive(Clone, Debug)]
pub struct TorusChamber<S: Scalar> {
    pub cell: ChamberCell<S>,
    pub chi: IntVec<S>,
    pub data: ChamberData<S>,
}

impl<S: Scalar> TorusChamber<S> {
    pub fn sign_vector(&self) -> &[Sign] {
        &self.cell.sign_vector
    }
}

/// The irrelevant ideal B(fan, I_empty): one generator per maximal
/// cone sigma, consisting of the indices outside I_empty whose dual
/// vector does not lie in sigma, united with I_empty; then minimalized.
pub fn irrelevant_ideal<S: Scalar>(
    fan: &Fan<S>,
    nu: &[IntVec<S>],
    i_empty: &BTreeSet<usize>,
) -> MonomialIdeal {
    let mut gens = Vec::new();
    for ci in 0..fan.max_cones().len() {
        let cone = fan.max_cone(ci);
        let mut g: BTreeSet<usize> = i_empty.clone();
        for (i, v) in nu.iter().enumerate() {
            if i_empty.contains(&i) {
                continue;
            }
            if !cone.contains_int(v) {
                g.insert(i);
            }
        }
        gens.push(g);
    }
    MonomialIdeal::new(gens)
}

/// Equality of chambers: the (fan, I_empty) pairs coincide iff the
/// minimal generating antichains of the two ideals coincide; both
/// comparisons are run and must agree.
pub fn chambers_equal<S: Scalar>(
    a: &ChamberData<S>,
    b: &ChamberData<S>,
) -> Result<bool, ToricError> {
    let by_pair = a.fan == b.fan && a.i_empty == b.i_empty;
    let by_ideal = a.ideal == b.ideal;
    if by_pair != by_ideal {
        return Err(ToricError::InconsistentChamberIdentity);
    }
    Ok(by_pair)
}
