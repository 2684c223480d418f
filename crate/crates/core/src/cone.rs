//! Exact convex rational polyhedral cones with dual representations.
//!
//! Cones are built by the double description method: inserting
//! halfspaces one at a time into a state holding the current lineality
//! basis and extreme rays. Facet normals are obtained by running the
//! same construction on the polar cone. Everything is integer/rational
//! exact; rays and normals are kept in a canonical primitive form so
//! that equality of cones is equality of the stored data.

use num_traits::{Signed, Zero};

use crate::matrix::{kernel_lattice, rank_of_rows, IntMat};
use crate::scalar::{Ratio, Scalar};
use crate::vector::{IntVec, RatVec};

/// Where a point sits relative to a cone. `Interior` is relative to
/// the cone's span when the cone is not full-dimensional.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// A rational polyhedral cone with both representations.
///
/// The point set is `{ x : <f, x> >= 0 for f in facet_normals,
/// <e, x> = 0 for e in span_equations }`, and equally the set of
/// nonnegative combinations of `generators` plus arbitrary combinations
/// of `lineality`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cone<S: Scalar> {
    ambient_dim: usize,
    generators: Vec<IntVec<S>>,
    facet_normals: Vec<IntVec<S>>,
    span_equations: Vec<IntVec<S>>,
    lineality: Vec<IntVec<S>>,
}

impl<S: Scalar> Cone<S> {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme rays of the pointed part, primitive, canonical modulo
    /// the lineality space, sorted.
    pub fn generators(&self) -> &[IntVec<S>] {
        &self.generators
    }

    /// Minimal valid inequalities (facets within the span).
    pub fn facet_normals(&self) -> &[IntVec<S>] {
        &self.facet_normals
    }

    /// Equations cutting out the span of the cone.
    pub fn span_equations(&self) -> &[IntVec<S>] {
        &self.span_equations
    }

    /// Canonical basis of the lineality space; empty iff strongly convex.
    pub fn lineality_basis(&self) -> &[IntVec<S>] {
        &self.lineality
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn dim(&self) -> usize {
        let mut all = self.generators.clone();
        all.extend(self.lineality.iter().cloned());
        rank_of_rows(&all)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.span_equations.is_empty()
    }

    pub fn is_origin(&self) -> bool {
        self.generators.is_empty() && self.lineality.is_empty()
    }

    /// Classify a rational point against the cone.
    pub fn locate(&self, x: &RatVec<S>) -> Location {
        assert_eq!(x.dim(), self.ambient_dim, "locate: dimension mismatch");
        for e in &self.span_equations {
            if !e.dot_rat(x).is_zero() {
                return Location::Outside;
            }
        }
        let mut on_boundary = false;
        for f in &self.facet_normals {
            let v = f.dot_rat(x);
            if v.is_negative() {
                return Location::Outside;
            }
            if v.is_zero() {
                on_boundary = true;
            }
        }
        if on_boundary {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    pub fn contains(&self, x: &RatVec<S>) -> bool {
        self.locate(x) != Location::Outside
    }

    pub fn contains_int(&self, x: &IntVec<S>) -> bool {
        self.contains(&x.to_rat())
    }

    /// An integral point in the relative interior: the sum of the
    /// extreme rays (the origin for a pure lineality space).
    pub fn interior_point(&self) -> IntVec<S> {
        let mut p = IntVec::zero(self.ambient_dim);
        for g in &self.generators {
            p = &p + g;
        }
        p
    }
}

/// Double description state: the cone of all points satisfying the
/// constraints processed so far, as a lineality basis plus extreme
/// rays of the pointed part.
#[derive(Clone, Debug)]
pub struct DdState<S: Scalar> {
    dim: usize,
    lineality: Vec<IntVec<S>>,
    rays: Vec<IntVec<S>>,
    processed: Vec<IntVec<S>>,
}

impl<S: Scalar> DdState<S> {
    /// The full ambient space.
    pub fn full(dim: usize) -> Self {
        DdState {
            dim,
            lineality: (0..dim).map(|i| IntVec::unit(dim, i)).collect(),
            rays: Vec::new(),
            processed: Vec::new(),
        }
    }

    pub fn rays(&self) -> &[IntVec<S>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec<S>] {
        &self.lineality
    }

    pub fn dim_of_span(&self) -> usize {
        let mut all = self.rays.clone();
        all.extend(self.lineality.iter().cloned());
        rank_of_rows(&all)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim_of_span() == self.dim
    }

    /// Cut with the halfspace `{ x : <f, x> >= 0 }`.
    pub fn insert_halfspace(&mut self, f: &IntVec<S>) {
        assert_eq!(f.dim(), self.dim, "halfspace dimension mismatch");
        // A lineality direction crossing f becomes a ray; the other
        // lineality vectors and all rays are projected into f = 0.
        if let Some(idx) = self.lineality.iter().position(|l| !f.dot(l).is_zero()) {
            let mut l0 = self.lineality.remove(idx);
            if f.dot(&l0).is_negative() {
                l0 = -&l0;
            }
            let c0 = f.dot(&l0);
            for l in self.lineality.iter_mut() {
                let coef = f.dot(l);
                *l = (&l.scaled(&c0) - &l0.scaled(&coef)).primitive();
            }
            for r in self.rays.iter_mut() {
                let coef = f.dot(r);
                *r = (&r.scaled(&c0) - &l0.scaled(&coef)).primitive();
            }
            self.rays.push(l0);
            self.processed.push(f.clone());
            return;
        }
        let vals: Vec<S> = self.rays.iter().map(|r| f.dot(r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            self.processed.push(f.clone());
            return;
        }
        let plus: Vec<usize> = (0..self.rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..self.rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<IntVec<S>> = (0..self.rays.len())
            .filter(|i| !vals[*i].is_negative())
            .map(|i| self.rays[i].clone())
            .collect();
        for &p in &plus {
            for &q in &minus {
                if self.adjacent(p, q) {
                    let combo = &self.rays[q].scaled(&vals[p]) - &self.rays[p].scaled(&vals[q]);
                    next.push(combo.primitive());
                }
            }
        }
        self.rays = next;
        self.processed.push(f.clone());
    }

    /// Cut with the hyperplane `{ x : <f, x> = 0 }`.
    pub fn insert_equation(&mut self, f: &IntVec<S>) {
        self.insert_halfspace(f);
        self.insert_halfspace(&-f);
    }

    /// Rank test for adjacency of two extreme rays: the constraints
    /// tight at both span a space of codimension lineality + 2.
    fn adjacent(&self, p: usize, q: usize) -> bool {
        let tight: Vec<IntVec<S>> = self
            .processed
            .iter()
            .filter(|h| h.dot(&self.rays[p]).is_zero() && h.dot(&self.rays[q]).is_zero())
            .cloned()
            .collect();
        rank_of_rows(&tight) + self.lineality.len() + 2 == self.dim
    }
}

/// Saturated canonical (HNF) basis of the rational span of `vecs`
/// intersected with the integer lattice.
pub fn saturate_span<S: Scalar>(dim: usize, vecs: &[IntVec<S>]) -> Vec<IntVec<S>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let (perp, _) = kernel_lattice(&IntMat::from_rows(vecs.to_vec()));
    if perp.rows() == 0 {
        // vecs span everything
        return (0..dim).map(|i| IntVec::unit(dim, i)).collect();
    }
    let (sat, _) = kernel_lattice(&perp);
    sat.row_vecs()
}

/// Canonical representative of `v` modulo the space spanned by the
/// saturated HNF basis `space`: project along the space so that the
/// pivot coordinates vanish, then take the primitive direction.
pub fn canonical_mod_space<S: Scalar>(v: &IntVec<S>, space: &[IntVec<S>]) -> IntVec<S> {
    if space.is_empty() {
        return v.primitive();
    }
    let mut w: Vec<Ratio<S>> = v.iter().map(|c| Ratio::from_integer(c.clone())).collect();
    for b in space {
        let p = b.iter().position(|c| !c.is_zero()).expect("zero basis row");
        if w[p].is_zero() {
            continue;
        }
        let coef = w[p].clone() / Ratio::from_integer(b[p].clone());
        for (wi, bi) in w.iter_mut().zip(b.iter()) {
            let t = coef.clone() * Ratio::from_integer(bi.clone());
            *wi = wi.clone() - t;
        }
    }
    RatVec::new(w).primitive_direction()
}

fn canonical_ray_set<S: Scalar>(rays: &[IntVec<S>], space: &[IntVec<S>]) -> Vec<IntVec<S>> {
    let mut out: Vec<IntVec<S>> = rays
        .iter()
        .map(|r| canonical_mod_space(r, space))
        .filter(|r| !r.is_zero())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn prepare_normals<S: Scalar>(normals: &[IntVec<S>]) -> Vec<IntVec<S>> {
    let mut v: Vec<IntVec<S>> = normals.iter().map(|f| f.primitive()).filter(|f| !f.is_zero()).collect();
    v.sort();
    v.dedup();
    v
}

/// Run double description on a halfspace/equation system.
pub fn dd_solve<S: Scalar>(dim: usize, ineqs: &[IntVec<S>], eqs: &[IntVec<S>]) -> DdState<S> {
    let mut state = DdState::full(dim);
    for e in prepare_normals(eqs) {
        state.insert_equation(&e);
    }
    for f in prepare_normals(ineqs) {
        state.insert_halfspace(&f);
    }
    state
}

fn assemble<S: Scalar>(dim: usize, primal: &DdState<S>, dual: &DdState<S>) -> Cone<S> {
    let lin = saturate_span(dim, primal.lineality());
    let span_eqs = saturate_span(dim, dual.lineality());
    Cone {
        ambient_dim: dim,
        generators: canonical_ray_set(primal.rays(), &lin),
        facet_normals: canonical_ray_set(dual.rays(), &span_eqs),
        span_equations: span_eqs,
        lineality: lin,
    }
}

/// Cone spanned by the given vectors (V-representation in, both out).
pub fn cone_from_generators<S: Scalar>(dim: usize, gens: &[IntVec<S>]) -> Cone<S> {
    cone_from_rays_and_lines(dim, gens, &[])
}

/// Cone spanned by rays plus full lines.
pub fn cone_from_rays_and_lines<S: Scalar>(dim: usize, rays: &[IntVec<S>], lines: &[IntVec<S>]) -> Cone<S> {
    for g in rays.iter().chain(lines.iter()) {
        assert_eq!(g.dim(), dim, "generator dimension mismatch");
    }
    // Polar cone: normals are the generators, equations the lines.
    let dual = dd_solve(dim, rays, lines);
    // Back: the polar of the polar is the original cone.
    let primal = dd_solve(dim, dual.rays(), dual.lineality());
    assemble(dim, &primal, &dual)
}

/// Cone cut out by inequalities and equations (H-representation in,
/// both out).
pub fn cone_from_halfspaces<S: Scalar>(dim: usize, ineqs: &[IntVec<S>], eqs: &[IntVec<S>]) -> Cone<S> {
    for f in ineqs.iter().chain(eqs.iter()) {
        assert_eq!(f.dim(), dim, "normal dimension mismatch");
    }
    let primal = dd_solve(dim, ineqs, eqs);
    let dual = dd_solve(dim, primal.rays(), primal.lineality());
    assemble(dim, &primal, &dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Int, Rat};

    type V = IntVec<Int>;

    fn v(c: &[i64]) -> V {
        V::from_i64(c)
    }

    fn rv(c: &[i64]) -> RatVec<Int> {
        v(c).to_rat()
    }

    #[test]
    fn quadrant_facets() {
        let c = cone_from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(c.facet_normals(), &[v(&[0, 1]), v(&[1, 0])]);
        assert!(c.span_equations().is_empty());
        assert!(c.is_strongly_convex());
        assert_eq!(c.generators(), &[v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn fan_of_three_rays_collapses_to_two_facets() {
        let c = cone_from_generators(2, &[v(&[1, 0]), v(&[1, 1]), v(&[1, 2])]);
        // facets: y >= 0 and 2x - y >= 0
        assert_eq!(c.facet_normals(), &[v(&[0, 1]), v(&[2, -1])]);
        assert_eq!(c.generators(), &[v(&[1, 0]), v(&[1, 2])]);
        for g in [v(&[1, 0]), v(&[1, 1]), v(&[1, 2])] {
            assert!(c.contains(&g.to_rat()));
        }
        // each extreme generator lies on exactly one facet
        let on = |g: &V| {
            c.facet_normals()
                .iter()
                .filter(|f| f.dot(g).is_zero())
                .count()
        };
        assert_eq!(on(&v(&[1, 2])), 1);
        assert_eq!(on(&v(&[1, 0])), 1);
    }

    #[test]
    fn lifted_action_cone_n4() {
        let gens = [v(&[1, 0, 0]), v(&[1, 0, 1]), v(&[0, 1, 0]), v(&[0, 1, 1])];
        let c = cone_from_generators(3, &gens);
        assert!(c.is_strongly_convex());
        assert!(c.is_full_dimensional());
        let expect: Vec<V> = vec![v(&[0, 0, 1]), v(&[0, 1, 0]), v(&[1, 0, 0]), v(&[1, 1, -1])];
        assert_eq!(c.facet_normals(), &expect[..]);
        for g in &gens {
            assert_eq!(c.locate(&g.to_rat()), Location::Boundary);
        }
        assert_eq!(c.locate(&rv(&[1, 1, 3])), Location::Outside);
        assert_eq!(c.locate(&rv(&[2, 2, 1])), Location::Interior);
    }

    #[test]
    fn quadrant_membership() {
        let c = cone_from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(c.locate(&rv(&[1, 1])), Location::Interior);
        assert_eq!(c.locate(&rv(&[1, 0])), Location::Boundary);
        assert_eq!(c.locate(&rv(&[-1, 1])), Location::Outside);
    }

    #[test]
    fn line_is_not_strongly_convex() {
        let c = cone_from_generators(1, &[v(&[1]), v(&[-1])]);
        assert!(!c.is_strongly_convex());
        assert_eq!(c.lineality_basis(), &[v(&[1])]);
        assert!(c.generators().is_empty());
    }

    #[test]
    fn origin_cone() {
        let c = cone_from_generators(2, &[]);
        assert!(c.is_origin());
        assert_eq!(c.span_equations().len(), 2);
        assert_eq!(c.locate(&rv(&[0, 0])), Location::Interior);
        assert_eq!(c.locate(&rv(&[1, 0])), Location::Outside);
    }

    #[test]
    fn strongly_convex_n5_cone() {
        // e_i and e_i + e_4 in Z^4 for i = 1..3
        let gens = [
            v(&[1, 0, 0, 0]),
            v(&[1, 0, 0, 1]),
            v(&[0, 1, 0, 0]),
            v(&[0, 1, 0, 1]),
            v(&[0, 0, 1, 0]),
            v(&[0, 0, 1, 1]),
        ];
        let c = cone_from_generators(4, &gens);
        assert!(c.is_strongly_convex());
        assert!(c.is_full_dimensional());
        assert_eq!(c.generators().len(), 6);
    }

    #[test]
    fn halfplane_roundtrip() {
        let c = cone_from_halfspaces(2, &[v(&[1, 0])], &[]);
        assert_eq!(c.lineality_basis(), &[v(&[0, 1])]);
        assert_eq!(c.generators(), &[v(&[1, 0])]);
        assert_eq!(c.facet_normals(), &[v(&[1, 0])]);
    }

    #[test]
    fn non_full_dimensional_cone_has_equations() {
        // ray spanned by (1,1) in the plane
        let c = cone_from_generators(2, &[v(&[1, 1])]);
        assert_eq!(c.span_equations(), &[v(&[1, -1])]);
        assert_eq!(c.locate(&rv(&[1, 1])), Location::Interior);
        assert_eq!(c.locate(&rv(&[0, 0])), Location::Boundary);
        assert_eq!(c.locate(&rv(&[1, 0])), Location::Outside);
    }

    #[test]
    fn interior_point_is_interior() {
        let gens = [v(&[1, 0, 0]), v(&[1, 0, 1]), v(&[0, 1, 0]), v(&[0, 1, 1])];
        let c = cone_from_generators(3, &gens);
        assert_eq!(c.locate(&c.interior_point().to_rat()), Location::Interior);
    }

    #[test]
    fn rational_membership() {
        let c = cone_from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        let x = RatVec::new(vec![Rat::new(Int::from(1), Int::from(2)), Rat::new(Int::from(1), Int::from(3))]);
        assert_eq!(c.locate(&x), Location::Interior);
    }
}
