//! Integer and rational vectors with the canonical forms used for
//! rays, wall normals and vertices.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::scalar::{Ratio, Scalar};

/// Dense integer vector. Dimension 0 is allowed; it shows up as the
/// character lattice of a trivial kernel.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVec<S: crate::scalar::Scalar>(Vec<S>);

impl<S: Scalar> IntVec<S> {
    pub fn new(coords: Vec<S>) -> Self {
        IntVec(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        IntVec(coords.iter().map(|&c| S::from(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        IntVec(vec![S::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![S::zero(); dim];
        v[i] = S::one();
        IntVec(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<S> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, S> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &Self) -> S {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        let mut acc = S::zero();
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            acc += a.clone() * b.clone();
        }
        acc
    }

    pub fn dot_rat(&self, other: &RatVec<S>) -> Ratio<S> {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        let mut acc = Ratio::zero();
        for (a, b) in self.0.iter().zip(other.coords().iter()) {
            acc += Ratio::from_integer(a.clone()) * b.clone();
        }
        acc
    }

    pub fn scaled(&self, c: &S) -> Self {
        IntVec(self.0.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// gcd of the absolute values of the coordinates (0 for the zero vector).
    pub fn content(&self) -> S {
        let mut g = S::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    /// Divide by the content, keeping direction. Zero stays zero.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntVec(self.0.iter().map(|c| c.clone() / g.clone()).collect())
    }

    /// Canonical form for an undirected line: primitive with the first
    /// nonzero coordinate positive.
    pub fn line_canonical(&self) -> Self {
        let p = self.primitive();
        match p.0.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -&p,
            _ => p,
        }
    }

    pub fn to_rat(&self) -> RatVec<S> {
        RatVec(self.0.iter().map(|c| Ratio::from_integer(c.clone())).collect())
    }
}

impl<S: Scalar> Index<usize> for IntVec<S> {
    type Output = S;
    fn index(&self, i: usize) -> &S {
        &self.0[i]
    }
}

impl<S: Scalar> Add for &IntVec<S> {
    type Output = IntVec<S>;
    fn add(self, other: &IntVec<S>) -> IntVec<S> {
        assert_eq!(self.dim(), other.dim());
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }
}

impl<S: Scalar> Sub for &IntVec<S> {
    type Output = IntVec<S>;
    fn sub(self, other: &IntVec<S>) -> IntVec<S> {
        assert_eq!(self.dim(), other.dim());
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }
}

impl<S: Scalar> Neg for &IntVec<S> {
    type Output = IntVec<S>;
    fn neg(self) -> IntVec<S> {
        IntVec(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl<S: Scalar> fmt::Debug for IntVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl<S: Scalar> fmt::Display for IntVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Dense rational vector (vertices, interior points, solutions).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVec<S: crate::scalar::Scalar>(Vec<Ratio<S>>);

impl<S: Scalar> RatVec<S> {
    pub fn new(coords: Vec<Ratio<S>>) -> Self {
        RatVec(coords)
    }

    pub fn zero(dim: usize) -> Self {
        RatVec(vec![Ratio::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Ratio<S>] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &Self) -> Ratio<S> {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        let mut acc = Ratio::zero();
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            acc += a.clone() * b.clone();
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn scaled(&self, c: &Ratio<S>) -> Self {
        RatVec(self.0.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Primitive integer vector in the same direction (for rays).
    pub fn primitive_direction(&self) -> IntVec<S> {
        let mut lcm = S::one();
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<S> = self.0.iter().map(|c| c.numer().clone() * (lcm.clone() / c.denom().clone())).collect();
        IntVec(ints).primitive()
    }

    /// Scale by the lcm of denominators to the smallest integral multiple.
    pub fn to_integral_scaled(&self) -> IntVec<S> {
        let mut lcm = S::one();
        for c in &self.0 {
            lcm = lcm.lcm(c.denom());
        }
        IntVec(self.0.iter().map(|c| c.numer().clone() * (lcm.clone() / c.denom().clone())).collect())
    }

    /// Exact integer vector, or None if any coordinate has a denominator.
    pub fn to_int(&self) -> Option<IntVec<S>> {
        if self.0.iter().all(|c| c.denom().is_one()) {
            Some(IntVec(self.0.iter().map(|c| c.numer().clone()).collect()))
        } else {
            None
        }
    }
}

impl<S: Scalar> Index<usize> for RatVec<S> {
    type Output = Ratio<S>;
    fn index(&self, i: usize) -> &Ratio<S> {
        &self.0[i]
    }
}

impl<S: Scalar> fmt::Debug for RatVec<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Strict sign of a rational evaluation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of<S: Scalar>(x: &Ratio<S>) -> Option<Sign> {
        if x.is_zero() {
            None
        } else if x.is_positive() {
            Some(Sign::Plus)
        } else {
            Some(Sign::Minus)
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Int, Rat};

    type V = IntVec<Int>;

    #[test]
    fn primitive_reduces_content() {
        let v = V::from_i64(&[4, -6, 2]);
        assert_eq!(v.primitive(), V::from_i64(&[2, -3, 1]));
        assert_eq!(V::from_i64(&[0, 0]).primitive(), V::from_i64(&[0, 0]));
    }

    #[test]
    fn line_canonical_fixes_sign() {
        let v = V::from_i64(&[0, -2, 4]);
        assert_eq!(v.line_canonical(), V::from_i64(&[0, 1, -2]));
    }

    #[test]
    fn rational_direction_clears_denominators() {
        let v = RatVec::<Int>::new(vec![
            Rat::new(Int::from(1), Int::from(2)),
            Rat::new(Int::from(-3), Int::from(4)),
        ]);
        assert_eq!(v.primitive_direction(), V::from_i64(&[2, -3]));
    }
}
