//! Chamber enumeration for a hyperplane arrangement restricted to the
//! interior of a full-dimensional cone region.
//!
//! Cells are produced by splitting the region with one wall at a time,
//! keeping only full-dimensional pieces, so the work is proportional
//! to the number of cells rather than 2^walls.

use std::fmt;

use crate::cone::{cone_from_rays_and_lines, Cone, DdState};
use crate::scalar::Scalar;
use crate::vector::{IntVec, RatVec, Sign};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArrangementError {
    /// The region has empty interior.
    EmptyRegion,
}

impl fmt::Display for ArrangementError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrangementError::EmptyRegion => write!(f, "region has empty interior"),
        }
    }
}

impl std::error::Error for ArrangementError {}

/// One full-dimensional cell of the arrangement: its strict sign on
/// every wall, a rational point strictly inside, and the closed cone.
#[derive(Clone, Debug)]
pub struct ChamberCell<S: Scalar> {
    pub sign_vector: Vec<Sign>,
    pub representative: RatVec<S>,
    pub closure: Cone<S>,
}

impl<S: Scalar> ChamberCell<S> {
    /// Integral interior point (the representative scaled by the lcm
    /// of its denominators).
    pub fn representative_int(&self) -> IntVec<S> {
        self.representative.to_integral_scaled()
    }
}

/// Canonical undirected wall list: primitive, sign-fixed, sorted,
/// deduplicated, zero vectors dropped.
pub fn canonical_walls<S: Scalar>(walls: &[IntVec<S>]) -> Vec<IntVec<S>> {
    let mut ws: Vec<IntVec<S>> = walls
        .iter()
        .map(|w| w.line_canonical())
        .filter(|w| !w.is_zero())
        .collect();
    ws.sort();
    ws.dedup();
    ws
}

/// Keep the walls whose hyperplane meets the interior of the region:
/// both open sides of the wall must cut a full-dimensional piece off
/// the region.
pub fn interior_walls<S: Scalar>(walls: &[IntVec<S>], region: &Cone<S>) -> Vec<IntVec<S>> {
    let dim = region.ambient_dim();
    canonical_walls(walls)
        .into_iter()
        .filter(|w| {
            [w.clone(), -w].into_iter().all(|side| {
                let mut state = region_state(region);
                state.insert_halfspace(&side);
                state.dim_of_span() == dim
            })
        })
        .collect()
}

fn region_state<S: Scalar>(region: &Cone<S>) -> DdState<S> {
    let mut state = DdState::full(region.ambient_dim());
    for e in region.span_equations() {
        state.insert_equation(e);
    }
    for f in region.facet_normals() {
        state.insert_halfspace(f);
    }
    state
}

/// All full-dimensional cells of the arrangement of `walls` inside the
/// interior of `region`, sorted by sign vector.
pub fn arrangement_chambers<S: Scalar>(
    walls: &[IntVec<S>],
    region: &Cone<S>,
) -> Result<Vec<ChamberCell<S>>, ArrangementError> {
    let dim = region.ambient_dim();
    if !region.is_full_dimensional() {
        return Err(ArrangementError::EmptyRegion);
    }
    let walls = canonical_walls(walls);
    let mut cells: Vec<(Vec<Sign>, DdState<S>)> = vec![(Vec::new(), region_state(region))];
    for w in &walls {
        let mut next = Vec::with_capacity(cells.len());
        for (signs, state) in cells {
            for (sign, normal) in [(Sign::Plus, w.clone()), (Sign::Minus, -w)] {
                let mut cut = state.clone();
                cut.insert_halfspace(&normal);
                if cut.dim_of_span() == dim {
                    let mut s = signs.clone();
                    s.push(sign);
                    next.push((s, cut));
                }
            }
        }
        cells = next;
    }
    let mut out: Vec<ChamberCell<S>> = cells
        .into_iter()
        .map(|(signs, state)| {
            let closure = cone_from_rays_and_lines(dim, state.rays(), state.lineality());
            let rep = closure.interior_point().to_rat();
            let cell = ChamberCell { sign_vector: signs, representative: rep, closure };
            debug_assert!(
                cell_strictly_inside(&cell, &walls, region),
                "representative not strictly interior"
            );
            cell
        })
        .collect();
    out.sort_by(|a, b| a.sign_vector.cmp(&b.sign_vector));
    Ok(out)
}

fn cell_strictly_inside<S: Scalar>(
    cell: &ChamberCell<S>,
    walls: &[IntVec<S>],
    region: &Cone<S>,
) -> bool {
    use crate::cone::Location;
    if region.locate(&cell.representative) != Location::Interior {
        return false;
    }
    walls.iter().zip(&cell.sign_vector).all(|(w, s)| {
        let v = w.dot_rat(&cell.representative);
        Sign::of(&v) == Some(*s)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::cone_from_generators;
    use crate::scalar::Int;

    type V = IntVec<Int>;

    fn v(c: &[i64]) -> V {
        V::from_i64(c)
    }

    fn plane() -> Cone<Int> {
        cone_from_generators(2, &[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])])
    }

    #[test]
    fn single_wall_in_plane() {
        let cells = arrangement_chambers(&[v(&[1, 0])], &plane()).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].sign_vector, vec![Sign::Plus]);
        assert_eq!(cells[1].sign_vector, vec![Sign::Minus]);
    }

    #[test]
    fn two_walls_four_cells() {
        let cells = arrangement_chambers(&[v(&[1, 0]), v(&[0, 1])], &plane()).unwrap();
        assert_eq!(cells.len(), 4);
        let signs: Vec<&Vec<Sign>> = cells.iter().map(|c| &c.sign_vector).collect();
        assert_eq!(signs.len(), 4);
        for c in &cells {
            assert!(!c.representative.is_zero());
        }
    }

    #[test]
    fn lifted_action_walls_give_four_chambers() {
        let region = cone_from_generators(
            3,
            &[v(&[1, 0, 0]), v(&[1, 0, 1]), v(&[0, 1, 0]), v(&[0, 1, 1])],
        );
        // walls d = c1 and d = c2
        let walls = [v(&[1, 0, -1]), v(&[0, 1, -1])];
        let cells = arrangement_chambers(&walls, &region).unwrap();
        assert_eq!(cells.len(), 4);
        // spot-check the expected representatives' chambers by sign
        let classify = |p: &[i64]| {
            let pt = v(p).to_rat();
            walls
                .iter()
                .map(|w| Sign::of(&w.dot_rat(&pt)).unwrap())
                .collect::<Vec<_>>()
        };
        for (rep, cell_signs) in [
            (&[2, 2, 1][..], classify(&[2, 2, 1])),
            (&[2, 2, 3][..], classify(&[2, 2, 3])),
            (&[1, 3, 2][..], classify(&[1, 3, 2])),
            (&[3, 1, 2][..], classify(&[3, 1, 2])),
        ] {
            assert!(
                cells.iter().any(|c| c.sign_vector == cell_signs),
                "no cell with signs of {rep:?}"
            );
        }
    }

    #[test]
    fn wall_on_region_facet_filtered() {
        let quadrant = cone_from_generators(2, &[v(&[1, 0]), v(&[0, 1])]);
        let ws = interior_walls(&[v(&[1, 0]), v(&[1, -1])], &quadrant);
        assert_eq!(ws, vec![v(&[1, -1])]);
    }

    #[test]
    fn empty_region_rejected() {
        let ray = cone_from_generators(2, &[v(&[1, 1])]);
        assert_eq!(
            arrangement_chambers(&[v(&[1, 0])], &ray).unwrap_err(),
            ArrangementError::EmptyRegion
        );
    }

    #[test]
    fn region_with_lineality() {
        // whole line as region in R^1, wall at 0
        let line = cone_from_generators(1, &[v(&[1]), v(&[-1])]);
        let cells = arrangement_chambers(&[v(&[1])], &line).unwrap();
        assert_eq!(cells.len(), 2);
    }
}
