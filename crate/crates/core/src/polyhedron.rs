//! Exact rational polyhedra given by linear inequalities, with vertex
//! enumeration by basis subsets and an exact recession cone.

use std::fmt;

use num_traits::Zero;

use crate::cone::{cone_from_halfspaces, Cone};
use crate::lp::{feasible_point, LinConstraint};
use crate::matrix::{rank_of_rows, solve_square};
use crate::scalar::{Ratio, Scalar};
use crate::vector::{IntVec, RatVec};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PolyError {
    /// The inequality system has no solution.
    Infeasible,
    /// The polyhedron contains a line, so it has no vertices.
    NotPointed,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Infeasible => write!(f, "infeasible inequality system"),
            PolyError::NotPointed => write!(f, "polyhedron contains a line"),
        }
    }
}

impl std::error::Error for PolyError {}

/// One linear inequality `<normal, m> >= -offset`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Inequality<S: Scalar> {
    pub normal: IntVec<S>,
    pub offset: S,
}

impl<S: Scalar> Inequality<S> {
    pub fn new(normal: IntVec<S>, offset: S) -> Self {
        Inequality { normal, offset }
    }

    pub fn eval(&self, m: &RatVec<S>) -> Ratio<S> {
        self.normal.dot_rat(m) + Ratio::from_integer(self.offset.clone())
    }

    pub fn holds(&self, m: &RatVec<S>) -> bool {
        !self.eval(m).is_negative()
    }
}

/// A nonempty pointed polyhedron with its vertex set and recession cone.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polyhedron<S: Scalar> {
    ambient_dim: usize,
    inequalities: Vec<Inequality<S>>,
    vertices: Vec<RatVec<S>>,
    active_sets: Vec<Vec<usize>>,
    recession: Cone<S>,
}

impl<S: Scalar> Polyhedron<S> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn inequalities(&self) -> &[Inequality<S>] {
        &self.inequalities
    }

    /// Vertices sorted lexicographically.
    pub fn vertices(&self) -> &[RatVec<S>] {
        &self.vertices
    }

    /// Indices of the inequalities tight at each vertex, aligned with
    /// `vertices()`.
    pub fn active_sets(&self) -> &[Vec<usize>] {
        &self.active_sets
    }

    pub fn recession_cone(&self) -> &Cone<S> {
        &self.recession
    }

    pub fn is_bounded(&self) -> bool {
        self.recession.is_origin()
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        if self.vertices.is_empty() {
            return 0;
        }
        let v0 = &self.vertices[0];
        let mut dirs: Vec<IntVec<S>> = self
            .vertices
            .iter()
            .skip(1)
            .map(|v| v.sub(v0).to_integral_scaled())
            .collect();
        dirs.extend(self.recession.generators().iter().cloned());
        dirs.extend(self.recession.lineality_basis().iter().cloned());
        rank_of_rows(&dirs)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, m: &RatVec<S>) -> bool {
        self.inequalities.iter().all(|i| i.holds(m))
    }

    /// Indices of inequalities whose face of the polyhedron is empty,
    /// i.e. that are tight at no point. For a pointed polyhedron every
    /// nonempty face contains a vertex, so this reduces to a scan of
    /// the vertex active sets.
    pub fn never_active(&self) -> Vec<usize> {
        (0..self.inequalities.len())
            .filter(|i| !self.active_sets.iter().any(|s| s.contains(i)))
            .collect()
    }
}

use num_traits::Signed;

/// All k-element index subsets of 0..n in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < i + n - k {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Solve an inequality system into a pointed polyhedron.
pub fn polyhedron_solve<S: Scalar>(
    dim: usize,
    ineqs: &[Inequality<S>],
) -> Result<Polyhedron<S>, PolyError> {
    assert!(!ineqs.is_empty() || dim == 0, "need at least one inequality");
    for i in ineqs {
        assert_eq!(i.normal.dim(), dim, "inequality dimension mismatch");
    }
    if dim == 0 {
        // R^0: the single point is feasible iff every offset is >= 0.
        if ineqs.iter().any(|i| i.offset.is_negative()) {
            return Err(PolyError::Infeasible);
        }
        return Ok(Polyhedron {
            ambient_dim: 0,
            inequalities: ineqs.to_vec(),
            vertices: vec![RatVec::zero(0)],
            active_sets: vec![(0..ineqs.len()).filter(|&i| ineqs[i].offset.is_zero()).collect()],
            recession: cone_from_halfspaces(0, &[], &[]),
        });
    }
    let normals: Vec<IntVec<S>> = ineqs.iter().map(|i| i.normal.clone()).collect();
    if rank_of_rows(&normals) < dim {
        // No vertex can exist; decide feasibility exactly.
        let cons: Vec<LinConstraint<S>> = ineqs
            .iter()
            .map(|i| {
                LinConstraint::new(
                    i.normal.iter().map(|c| Ratio::from_integer(c.clone())).collect(),
                    Ratio::from_integer(-i.offset.clone()),
                    false,
                )
            })
            .collect();
        return match feasible_point(dim, &cons) {
            Some(_) => Err(PolyError::NotPointed),
            None => Err(PolyError::Infeasible),
        };
    }
    // Enumerate basic solutions of dim-subsets of tight constraints.
    let mut vertices: Vec<RatVec<S>> = Vec::new();
    let n = ineqs.len();
    for subset in combinations(n, dim) {
        let rows: Vec<IntVec<S>> = subset.iter().map(|&i| normals[i].clone()).collect();
        let rhs: Vec<Ratio<S>> = subset
            .iter()
            .map(|&i| -Ratio::from_integer(ineqs[i].offset.clone()))
            .collect();
        if let Some(m) = solve_square(&rows, &rhs) {
            if ineqs.iter().all(|i| i.holds(&m)) {
                vertices.push(m);
            }
        }
    }
    vertices.sort();
    vertices.dedup();
    if vertices.is_empty() {
        return Err(PolyError::Infeasible);
    }
    let active_sets = vertices
        .iter()
        .map(|v| {
            (0..n)
                .filter(|&i| ineqs[i].eval(v).is_zero())
                .collect::<Vec<usize>>()
        })
        .collect();
    let recession = cone_from_halfspaces(dim, &normals, &[]);
    Ok(Polyhedron {
        ambient_dim: dim,
        inequalities: ineqs.to_vec(),
        vertices,
        active_sets,
        recession,
    })
}
