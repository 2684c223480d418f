//! Independent brute-force verifiers: deliberately simple redundant
//! implementations used by the test suite to cross-check the engine.
//! Cone membership here goes through exhaustive nonnegative-combination
//! search, not the double description path.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::Signed;

use crate::arrangement::canonical_walls;
use crate::cone::Cone;
use crate::fan::Fan;
use crate::matrix::{rank_of_rows, solve_general, solve_square, IntMat};
use crate::polyhedron::combinations;
use crate::scalar::{Ratio, Scalar};
use crate::toric::WeightConfiguration;
use crate::vector::{IntVec, RatVec, Sign};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleError {
    /// Exhaustive support enumeration is capped at 16 coordinates.
    TooLarge,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge => write!(f, "too many coordinates for exhaustive search"),
        }
    }
}

impl std::error::Error for OracleError {}

/// Deterministic sampling parameters. The same seed always produces
/// the same sample stream.
#[derive(Clone, Copy, Debug)]
pub struct SampleConfig {
    pub seed: u64,
    /// Sampling stops after this many consecutive draws that discover
    /// no new sign vector.
    pub samples_per_cell: usize,
    pub denominator_bound: u32,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { seed: 1, samples_per_cell: 400, denominator_bound: 16 }
    }
}

/// SplitMix64: a tiny deterministic generator, identical on every
/// platform.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in 0..bound (bound > 0).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    /// Uniform in lo..=hi.
    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Number of distinct strict sign vectors realized by pseudo-random
/// rational points in the interior of the region: a lower bound for
/// the chamber count that test inputs must meet exactly.
pub fn sample_chamber_count<S: Scalar>(
    walls: &[IntVec<S>],
    region: &Cone<S>,
    cfg: &SampleConfig,
) -> usize {
    let walls = canonical_walls(walls);
    let gens = region.generators();
    let lines = region.lineality_basis();
    let mut rng = SplitMix64::new(cfg.seed);
    let mut found: HashSet<Vec<Sign>> = HashSet::new();
    let bound = cfg.denominator_bound.max(1) as i64;
    let mut idle = 0usize;
    // The patience window grows with every discovered cell.
    while idle < cfg.samples_per_cell.max(1) * (found.len() + 1) {
        idle += 1;
        let mut point = RatVec::<S>::zero(region.ambient_dim());
        for g in gens {
            let num = S::from(rng.range_i64(1, bound));
            let den = S::from(rng.range_i64(1, bound));
            point = point.add(&g.to_rat().scaled(&Ratio::new(num, den)));
        }
        for l in lines {
            let num = S::from(rng.range_i64(-bound, bound));
            let den = S::from(rng.range_i64(1, bound));
            point = point.add(&l.to_rat().scaled(&Ratio::new(num, den)));
        }
        let mut signs = Vec::with_capacity(walls.len());
        let mut on_wall = false;
        for w in &walls {
            match Sign::of(&w.dot_rat(&point)) {
                Some(s) => signs.push(s),
                None => {
                    on_wall = true;
                    break;
                }
            }
        }
        if on_wall {
            continue;
        }
        if found.insert(signs) {
            idle = 0;
        }
    }
    found.len()
}

/// Exact membership of `x` in `cone(gens)` witnessed by a nonnegative
/// combination over some linearly independent subset (Caratheodory).
pub fn cone_member_by_combination<S: Scalar>(gens: &[IntVec<S>], x: &IntVec<S>) -> bool {
    let dim = x.dim();
    if x.is_zero() {
        return true;
    }
    let nonzero: Vec<&IntVec<S>> = gens.iter().filter(|g| !g.is_zero()).collect();
    let max_size = dim.min(nonzero.len());
    let x_rat = x.to_rat();
    for size in 1..=max_size {
        for subset in combinations(nonzero.len(), size) {
            let rows: Vec<IntVec<S>> = subset.iter().map(|&i| nonzero[i].clone()).collect();
            if rank_of_rows(&rows) != size {
                continue;
            }
            let coeff_rows: Vec<Vec<Ratio<S>>> = (0..dim)
                .map(|d| subset.iter().map(|&i| Ratio::from_integer(nonzero[i][d].clone())).collect())
                .collect();
            let rhs: Vec<Ratio<S>> = (0..dim).map(|d| x_rat[d].clone()).collect();
            if let Some((sol, _)) = solve_general(&coeff_rows, &rhs) {
                if sol.iter().all(|c| !c.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

/// All coordinate supports whose weight cone contains the character,
/// by exhaustive enumeration.
pub fn brute_force_ss_supports<S: Scalar>(
    weights: &WeightConfiguration<S>,
    chi: &IntVec<S>,
) -> Result<Vec<BTreeSet<usize>>, OracleError> {
    let r = weights.affine_dim();
    if r > 16 {
        return Err(OracleError::TooLarge);
    }
    let mut out = Vec::new();
    for mask in 0..(1u32 << r) {
        let support: BTreeSet<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let gens: Vec<IntVec<S>> = support.iter().map(|&i| weights.beta()[i].clone()).collect();
        if cone_member_by_combination(&gens, chi) {
            out.push(support);
        }
    }
    Ok(out)
}

/// Equality of fans after canonical relabeling of the rays.
pub fn fan_equal_labeled<S: Scalar>(a: &Fan<S>, b: &Fan<S>) -> bool {
    if a.ambient_dim() != b.ambient_dim() {
        return false;
    }
    let canon = |f: &Fan<S>| {
        Fan::new(f.ambient_dim(), f.rays().to_vec(), f.max_cones().to_vec())
    };
    canon(a) == canon(b)
}

/// Search for a unimodular change of lattice coordinates carrying one
/// fan onto the other; intended for ambient dimension at most 3.
pub fn fan_equal_unimodular<S: Scalar>(a: &Fan<S>, b: &Fan<S>) -> bool {
    let d = a.ambient_dim();
    assert!(d <= 3, "unimodular search is for dimension <= 3");
    if b.ambient_dim() != d {
        return false;
    }
    if a.rays().len() != b.rays().len() || a.max_cones().len() != b.max_cones().len() {
        return false;
    }
    if d == 0 {
        return a.max_cones() == b.max_cones();
    }
    // Pick an independent d-subset of a's rays as a frame.
    let frame = combinations(a.rays().len(), d)
        .into_iter()
        .find(|s| {
            let rows: Vec<IntVec<S>> = s.iter().map(|&i| a.rays()[i].clone()).collect();
            rank_of_rows(&rows) == d
        });
    let Some(frame) = frame else {
        return false;
    };
    let basis: Vec<IntVec<S>> = frame.iter().map(|&i| a.rays()[i].clone()).collect();
    // Try mapping the frame onto each ordered d-tuple of b's rays.
    let mut targets: Vec<Vec<usize>> = Vec::new();
    ordered_tuples(b.rays().len(), d, &mut Vec::new(), &mut targets);
    'outer: for tuple in targets {
        // Solve row-wise: U basis_i = target_i.
        let mut u_rows: Vec<IntVec<S>> = Vec::with_capacity(d);
        for r in 0..d {
            let rhs: Vec<Ratio<S>> = tuple
                .iter()
                .map(|&t| Ratio::from_integer(b.rays()[t][r].clone()))
                .collect();
            match solve_square(&basis, &rhs) {
                Some(x) => match x.to_int() {
                    Some(row) => u_rows.push(row),
                    None => continue 'outer,
                },
                None => continue 'outer,
            }
        }
        let u = IntMat::from_rows(u_rows);
        let det = u.det();
        if det.abs() != S::one() {
            continue;
        }
        // Image fan of a under u must equal b exactly.
        let image_rays: Vec<IntVec<S>> = a.rays().iter().map(|r| u.mul_vec(r)).collect();
        let image = Fan::new(d, image_rays, a.max_cones().to_vec());
        if fan_equal_labeled(&image, b) {
            return true;
        }
    }
    false
}

fn ordered_tuples(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    for i in 0..n {
        if !cur.contains(&i) {
            cur.push(i);
            ordered_tuples(n, k, cur, out);
            cur.pop();
        }
    }
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

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn sampling_finds_four_quadrants() {
        let plane = cone_from_generators(2, &[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])]);
        let count = sample_chamber_count(&[v(&[1, 0]), v(&[0, 1])], &plane, &SampleConfig::default());
        assert_eq!(count, 4);
    }

    #[test]
    fn sampling_single_wall() {
        let plane = cone_from_generators(2, &[v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])]);
        let count = sample_chamber_count(&[v(&[1, 1])], &plane, &SampleConfig::default());
        assert_eq!(count, 2);
    }

    #[test]
    fn sampling_lifted_action_walls() {
        let region = cone_from_generators(
            3,
            &[v(&[1, 0, 0]), v(&[1, 0, 1]), v(&[0, 1, 0]), v(&[0, 1, 1])],
        );
        let walls = [v(&[1, 0, -1]), v(&[0, 1, -1])];
        assert_eq!(sample_chamber_count(&walls, &region, &SampleConfig::default()), 4);
    }

    #[test]
    fn membership_by_combination_agrees_with_facets() {
        let gens = [v(&[1, 0, 0]), v(&[1, 0, 1]), v(&[0, 1, 0]), v(&[0, 1, 1])];
        let c = cone_from_generators(3, &gens);
        for p in [
            v(&[2, 2, 1]),
            v(&[1, 1, 3]),
            v(&[1, 0, 0]),
            v(&[0, 0, 1]),
            v(&[3, 1, 2]),
            v(&[0, 0, 0]),
            v(&[-1, 2, 0]),
        ] {
            assert_eq!(
                c.contains(&p.to_rat()),
                cone_member_by_combination(&gens, &p),
                "disagree at {p:?}"
            );
        }
    }

    #[test]
    fn supports_for_equal_weights() {
        let w = WeightConfiguration::<Int>::from_i64_cols(&[&[1], &[1]]).unwrap();
        let supports = brute_force_ss_supports(&w, &v(&[1])).unwrap();
        // every support except the empty one
        assert_eq!(supports.len(), 3);
        assert!(!supports.iter().any(|s| s.is_empty()));
        let all = brute_force_ss_supports(&w, &v(&[0])).unwrap();
        assert_eq!(all.len(), 4);
    }

    #[test]
    fn fan_label_equality_ignores_order() {
        let a = Fan::<Int>::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        );
        let b = Fan::<Int>::new(
            2,
            vec![v(&[0, 1]), v(&[-1, -1]), v(&[1, 0])],
            vec![vec![2, 0], vec![0, 1], vec![1, 2]],
        );
        assert!(fan_equal_labeled(&a, &b));
        assert!(!fan_equal_labeled(&a, &Fan::new(2, vec![v(&[1, 0])], vec![vec![0]])));
    }

    #[test]
    fn unimodular_equivalence_of_p2_fans() {
        let a = Fan::<Int>::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        );
        // image under [[1,1],[0,1]]
        let b = Fan::<Int>::new(
            2,
            vec![v(&[1, 0]), v(&[1, 1]), v(&[-2, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        );
        assert!(fan_equal_unimodular(&a, &b));
        let p1xp1 = Fan::<Int>::new(
            2,
            vec![v(&[1, 0]), v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])],
            vec![vec![0, 2], vec![2, 1], vec![1, 3], vec![3, 0]],
        );
        assert!(!fan_equal_unimodular(&a, &p1xp1));
    }
}
