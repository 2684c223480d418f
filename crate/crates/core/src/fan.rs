//! Rational fans given by rays and maximal cones, and the normal fan
//! of a full-dimensional pointed polyhedron.

use std::fmt;

use crate::cone::{cone_from_generators, Cone, Location};
use crate::polyhedron::Polyhedron;
use crate::scalar::Scalar;
use crate::vector::{IntVec, RatVec};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FanError {
    /// The polyhedron is not full-dimensional; its normal fan would
    /// need cones with lineality, which this crate does not model.
    DegeneratePolyhedron,
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::DegeneratePolyhedron => {
                write!(f, "polyhedron is not full-dimensional")
            }
        }
    }
}

impl std::error::Error for FanError {}

/// A fan described by its primitive rays (sorted) and maximal cones
/// (sorted ray index sets, sorted).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fan<S: Scalar> {
    ambient_dim: usize,
    rays: Vec<IntVec<S>>,
    max_cones: Vec<Vec<usize>>,
}

impl<S: Scalar> Fan<S> {
    /// Build a fan from arbitrary ray order, canonicalizing the data.
    /// Rays are primitivized, sorted and deduplicated; max cone index
    /// sets are remapped accordingly.
    pub fn new(ambient_dim: usize, rays: Vec<IntVec<S>>, max_cones: Vec<Vec<usize>>) -> Self {
        let prim: Vec<IntVec<S>> = rays.iter().map(|r| r.primitive()).collect();
        let mut sorted = prim.clone();
        sorted.sort();
        sorted.dedup();
        let remap: Vec<usize> = prim
            .iter()
            .map(|r| sorted.binary_search(r).expect("ray present"))
            .collect();
        let mut cones: Vec<Vec<usize>> = max_cones
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|i| remap[i]).collect();
                c.sort();
                c.dedup();
                c
            })
            .collect();
        cones.sort();
        cones.dedup();
        Fan { ambient_dim, rays: sorted, max_cones: cones }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[IntVec<S>] {
        &self.rays
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// The cone of a maximal cone's rays, with facet data.
    pub fn max_cone(&self, i: usize) -> Cone<S> {
        let gens: Vec<IntVec<S>> = self.max_cones[i].iter().map(|&r| self.rays[r].clone()).collect();
        cone_from_generators(self.ambient_dim, &gens)
    }

    /// Index of some maximal cone containing the direction, if any.
    pub fn find_containing(&self, x: &RatVec<S>) -> Option<usize> {
        (0..self.max_cones.len()).find(|&i| self.max_cone(i).locate(x) != Location::Outside)
    }

    /// The complete fan of the projective line, in dimension 1.
    pub fn projective_line() -> Self {
        Fan::new(
            1,
            vec![IntVec::from_i64(&[-1]), IntVec::from_i64(&[1])],
            vec![vec![0], vec![1]],
        )
    }
}

/// Normal fan of a full-dimensional pointed polyhedron: one maximal
/// cone per vertex, spanned by the inner normals active there.
pub fn normal_fan<S: Scalar>(p: &Polyhedron<S>) -> Result<Fan<S>, FanError> {
    if !p.is_full_dimensional() {
        return Err(FanError::DegeneratePolyhedron);
    }
    let dim = p.ambient_dim();
    let mut rays: Vec<IntVec<S>> = Vec::new();
    let mut cones_by_rays: Vec<Vec<IntVec<S>>> = Vec::new();
    for active in p.active_sets() {
        let gens: Vec<IntVec<S>> = active
            .iter()
            .map(|&i| p.inequalities()[i].normal.primitive())
            .filter(|v| !v.is_zero())
            .collect();
        let cone = cone_from_generators(dim, &gens);
        debug_assert!(cone.is_strongly_convex(), "normal cone of a vertex must be pointed");
        let extreme = cone.generators().to_vec();
        rays.extend(extreme.iter().cloned());
        cones_by_rays.push(extreme);
    }
    rays.sort();
    rays.dedup();
    let mut max_cones: Vec<Vec<usize>> = cones_by_rays
        .into_iter()
        .map(|gens| {
            let mut idx: Vec<usize> = gens
                .iter()
                .map(|g| rays.binary_search(g).expect("ray present"))
                .collect();
            idx.sort();
            idx
        })
        .collect();
    max_cones.sort();
    max_cones.dedup();
    Ok(Fan { ambient_dim: dim, rays, max_cones })
}
