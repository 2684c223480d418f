//! Exact linear feasibility by Fourier-Motzkin elimination, with
//! back-substitution to produce a concrete rational solution.

use num_traits::{Signed, Zero};

use crate::scalar::{Ratio, Scalar};
use crate::vector::RatVec;

/// The constraint `<coeffs, x> >= rhs`, strict when `strict` is set.
#[derive(Clone, Debug)]
pub struct LinConstraint<S: Scalar> {
    pub coeffs: Vec<Ratio<S>>,
    pub rhs: Ratio<S>,
    pub strict: bool,
}

impl<S: Scalar> LinConstraint<S> {
    pub fn new(coeffs: Vec<Ratio<S>>, rhs: Ratio<S>, strict: bool) -> Self {
        LinConstraint { coeffs, rhs, strict }
    }

    fn normalized(&self) -> Self {
        // Divide by the largest absolute coefficient to dedupe scaled copies.
        let mut scale: Option<Ratio<S>> = None;
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            let a = c.abs();
            if !a.is_zero() {
                scale = Some(match scale {
                    None => a,
                    Some(s) if a > s => a,
                    Some(s) => s,
                });
            }
        }
        match scale {
            None => self.clone(),
            Some(s) => LinConstraint {
                coeffs: self.coeffs.iter().map(|c| c.clone() / s.clone()).collect(),
                rhs: self.rhs.clone() / s,
                strict: self.strict,
            },
        }
    }
}

fn dedupe<S: Scalar>(cons: Vec<LinConstraint<S>>) -> Vec<LinConstraint<S>> {
    let mut seen: Vec<LinConstraint<S>> = Vec::new();
    'outer: for c in cons {
        let cn = c.normalized();
        for s in &seen {
            if s.coeffs == cn.coeffs && s.rhs == cn.rhs && s.strict == cn.strict {
                continue 'outer;
            }
        }
        seen.push(cn);
    }
    seen
}

/// Find a rational point satisfying all constraints, or None if the
/// system is infeasible.
pub fn feasible_point<S: Scalar>(nvars: usize, cons: &[LinConstraint<S>]) -> Option<RatVec<S>> {
    for c in cons {
        assert_eq!(c.coeffs.len(), nvars, "constraint arity mismatch");
    }
    // levels[v] constrains x_0..x_{v-1}; build by eliminating the last
    // variable repeatedly.
    let mut levels: Vec<Vec<LinConstraint<S>>> = Vec::with_capacity(nvars + 1);
    levels.push(dedupe(cons.to_vec()));
    for v in (1..=nvars).rev() {
        let cur = &levels[levels.len() - 1];
        let var = v - 1;
        let mut lacross: Vec<LinConstraint<S>> = Vec::new();
        let mut lowers: Vec<&LinConstraint<S>> = Vec::new();
        let mut uppers: Vec<&LinConstraint<S>> = Vec::new();
        for c in cur {
            let coef = &c.coeffs[var];
            if coef.is_zero() {
                lacross.push(LinConstraint {
                    coeffs: c.coeffs[..var].to_vec(),
                    rhs: c.rhs.clone(),
                    strict: c.strict,
                });
            } else if coef.is_positive() {
                lowers.push(c);
            } else {
                uppers.push(c);
            }
        }
        // For lower l and upper u: bound_u(x') >= x_var >= bound_l(x')
        // combine into bound_u - bound_l >= 0 (strict if either is).
        for l in &lowers {
            for u in &uppers {
                let lc = l.coeffs[var].clone();
                let uc = -u.coeffs[var].clone();
                // l: lc * x >= rhs_l - <l', x'>; u: -uc * x >= rhs_u - <u', x'>
                // => (rhs_l - <l',x'>)/lc <= x <= (<u',x'> - rhs_u)/uc ... combine:
                // uc * (rhs_l - <l',x'>) <= lc * (<u',x'>... careful; do it directly:
                // multiply l by uc > 0, u by lc > 0 and add: coefficient of x cancels.
                let mut coeffs = Vec::with_capacity(var);
                for j in 0..var {
                    let a = l.coeffs[j].clone() * uc.clone();
                    let b = u.coeffs[j].clone() * lc.clone();
                    coeffs.push(a + b);
                }
                let rhs = l.rhs.clone() * uc.clone() + u.rhs.clone() * lc.clone();
                lacross.push(LinConstraint { coeffs, rhs, strict: l.strict || u.strict });
            }
        }
        levels.push(dedupe(lacross));
    }
    // Bottom level: constant constraints 0 >= rhs (or >).
    for c in levels.last().unwrap() {
        if c.rhs.is_positive() || (c.strict && c.rhs.is_zero()) {
            return None;
        }
    }
    // Back-substitute from x_0 upward. levels[nvars - v] constrains x_0..x_{v-1}.
    let mut point: Vec<Ratio<S>> = Vec::with_capacity(nvars);
    for v in 1..=nvars {
        let sys = &levels[nvars - v];
        let var = v - 1;
        let mut lo: Option<(Ratio<S>, bool)> = None;
        let mut hi: Option<(Ratio<S>, bool)> = None;
        for c in sys {
            let coef = &c.coeffs[var];
            if coef.is_zero() {
                continue;
            }
            let mut rest = c.rhs.clone();
            for j in 0..var {
                let t = c.coeffs[j].clone() * point[j].clone();
                rest -= t;
            }
            let bound = rest / coef.clone();
            if coef.is_positive() {
                lo = Some(match lo {
                    None => (bound, c.strict),
                    Some((b, _)) if bound > b => (bound, c.strict),
                    Some((b, s)) if bound == b => (b, s || c.strict),
                    Some(other) => other,
                });
            } else {
                hi = Some(match hi {
                    None => (bound, c.strict),
                    Some((b, _)) if bound < b => (bound, c.strict),
                    Some((b, s)) if bound == b => (b, s || c.strict),
                    Some(other) => other,
                });
            }
        }
        let two = Ratio::from_integer(S::from(2));
        let one = Ratio::from_integer(S::from(1));
        let value = match (lo, hi) {
            (None, None) => Ratio::zero(),
            (Some((l, ls)), None) => {
                if ls {
                    l + one
                } else {
                    l
                }
            }
            (None, Some((h, hs))) => {
                if hs {
                    h - one
                } else {
                    h
                }
            }
            (Some((l, ls)), Some((h, hs))) => {
                if l == h {
                    debug_assert!(!ls && !hs, "FM produced an empty interval");
                    l
                } else {
                    (l + h) / two
                }
            }
        };
        point.push(value);
    }
    Some(RatVec::new(point))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Int, Rat};

    fn c(coeffs: &[i64], rhs: i64, strict: bool) -> LinConstraint<Int> {
        LinConstraint::new(
            coeffs.iter().map(|&x| Rat::from_integer(Int::from(x))).collect(),
            Rat::from_integer(Int::from(rhs)),
            strict,
        )
    }

    fn check(nvars: usize, cons: &[LinConstraint<Int>]) -> Option<RatVec<Int>> {
        let p = feasible_point(nvars, cons)?;
        for con in cons {
            let mut acc = Rat::from_integer(Int::from(0));
            for (a, x) in con.coeffs.iter().zip(p.coords()) {
                acc += a.clone() * x.clone();
            }
            if con.strict {
                assert!(acc > con.rhs, "strict violated");
            } else {
                assert!(acc >= con.rhs, "violated");
            }
        }
        Some(p)
    }

    #[test]
    fn simple_box() {
        let cons = vec![c(&[1, 0], 0, false), c(&[0, 1], 0, false), c(&[-1, -1], -1, false)];
        assert!(check(2, &cons).is_some());
    }

    #[test]
    fn strict_interior() {
        let cons = vec![c(&[1, 0], 0, true), c(&[0, 1], 0, true), c(&[-1, -1], -1, true)];
        assert!(check(2, &cons).is_some());
    }

    #[test]
    fn infeasible_pair() {
        let cons = vec![c(&[1], 1, false), c(&[-1], 0, false)];
        assert!(feasible_point(1, &cons).is_none());
    }

    #[test]
    fn strict_infeasible_at_point() {
        // x >= 1 and x <= 1 is fine; x > 1 and x <= 1 is not.
        assert!(check(1, &[c(&[1], 1, false), c(&[-1], -1, false)]).is_some());
        assert!(feasible_point(1, &[c(&[1], 1, true), c(&[-1], -1, false)]).is_none());
    }

    #[test]
    fn unbounded_direction() {
        let cons = vec![c(&[1, -1], 3, false)];
        assert!(check(2, &cons).is_some());
    }
}
