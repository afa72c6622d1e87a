//! Two-dimensional rate regions cut out of the nonnegative quadrant by
//! half-planes `c1·R1 + c2·R2 ≤ bound`.
//!
//! Everything here is generic over [`Scalar`]; the deterministic model uses
//! exact rationals (zero tolerance), the Gaussian bounds use `f64`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::RegionError;
use crate::scalar::Scalar;

/// One half-plane `c1·R1 + c2·R2 ≤ bound` with nonnegative coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RateConstraint<T> {
    pub c1: T,
    pub c2: T,
    pub bound: T,
}

impl<T: Scalar> RateConstraint<T> {
    pub fn new(c1: T, c2: T, bound: T) -> Result<Self, RegionError> {
        if c1 < T::zero() || c2 < T::zero() || (c1.clone() + c2.clone()).partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) {
            return Err(RegionError::InvalidConstraint(format!(
                "coefficients ({c1}, {c2}) must be nonnegative and not both zero"
            )));
        }
        Ok(Self { c1, c2, bound })
    }

    /// `R1 ≤ bound`.
    pub fn r1(bound: T) -> Self {
        Self { c1: T::one(), c2: T::zero(), bound }
    }

    /// `R2 ≤ bound`.
    pub fn r2(bound: T) -> Self {
        Self { c1: T::zero(), c2: T::one(), bound }
    }

    /// `R1 + R2 ≤ bound`.
    pub fn sum(bound: T) -> Self {
        Self { c1: T::one(), c2: T::one(), bound }
    }

    /// `2·R1 + R2 ≤ bound`.
    pub fn two_r1_plus_r2(bound: T) -> Self {
        Self { c1: T::one() + T::one(), c2: T::one(), bound }
    }

    /// `R1 + 2·R2 ≤ bound`.
    pub fn r1_plus_two_r2(bound: T) -> Self {
        Self { c1: T::one(), c2: T::one() + T::one(), bound }
    }

    fn lhs(&self, p: &RatePair<T>) -> T {
        self.c1.clone() * p.r1.clone() + self.c2.clone() * p.r2.clone()
    }
}

impl<T: Scalar> fmt::Display for RateConstraint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: &T, name: &str| -> Option<String> {
            if c.is_zero() {
                None
            } else if c.is_one() {
                Some(name.to_string())
            } else {
                Some(format!("{c}{name}"))
            }
        };
        let lhs: Vec<String> = [term(&self.c1, "R1"), term(&self.c2, "R2")].into_iter().flatten().collect();
        write!(f, "{} <= {}", lhs.join(" + "), self.bound)
    }
}

/// A rate pair in bits per channel use.
#[derive(Debug, Clone, PartialEq)]
pub struct RatePair<T> {
    pub r1: T,
    pub r2: T,
}

impl<T: Scalar> RatePair<T> {
    pub fn new(r1: T, r2: T) -> Self {
        Self { r1, r2 }
    }

    pub fn sum(&self) -> T {
        self.r1.clone() + self.r2.clone()
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.r1
            .partial_cmp(&other.r1)
            .unwrap_or(Ordering::Equal)
            .then(self.r2.partial_cmp(&other.r2).unwrap_or(Ordering::Equal))
    }
}

impl<T: Scalar> fmt::Display for RatePair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r1, self.r2)
    }
}

/// Convex polytope in the nonnegative quadrant. `R1 ≥ 0` and `R2 ≥ 0` are
/// implicit and never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct RateRegion<T> {
    constraints: Vec<RateConstraint<T>>,
}

impl<T: Scalar> Default for RateRegion<T> {
    fn default() -> Self {
        Self { constraints: Vec::new() }
    }
}

impl<T: Scalar> FromIterator<RateConstraint<T>> for RateRegion<T> {
    fn from_iter<I: IntoIterator<Item = RateConstraint<T>>>(iter: I) -> Self {
        Self { constraints: iter.into_iter().collect() }
    }
}

impl<T: Scalar> RateRegion<T> {
    pub fn new(constraints: Vec<RateConstraint<T>>) -> Self {
        Self { constraints }
    }

    pub fn constraints(&self) -> &[RateConstraint<T>] {
        &self.constraints
    }

    pub fn push(&mut self, c: RateConstraint<T>) {
        self.constraints.push(c);
    }

    /// Same region with one more half-plane.
    pub fn with(mut self, c: RateConstraint<T>) -> Self {
        self.constraints.push(c);
        self
    }

    /// A negative bound empties the region (coefficients and rates are nonnegative).
    pub fn is_empty(&self) -> bool {
        self.constraints.iter().any(|c| c.bound < T::zero())
    }

    /// Bounded iff both rates are capped by some constraint.
    pub fn is_bounded(&self) -> bool {
        let caps_r1 = self.constraints.iter().any(|c| c.c1 > T::zero());
        let caps_r2 = self.constraints.iter().any(|c| c.c2 > T::zero());
        caps_r1 && caps_r2
    }

    pub fn contains(&self, p: &RatePair<T>, tol: &T) -> bool {
        let floor = -tol.clone();
        if p.r1 < floor || p.r2 < floor {
            return false;
        }
        self.constraints
            .iter()
            .all(|c| c.lhs(p) <= c.bound.clone() + tol.clone())
    }

    /// Maximum of `w1·R1 + w2·R2` over the region.
    pub fn max_weighted(&self, w1: &T, w2: &T) -> Result<T, RegionError> {
        if *w1 < T::zero() || *w2 < T::zero() || (w1.is_zero() && w2.is_zero()) {
            return Err(RegionError::InvalidWeights);
        }
        if (w1 > &T::zero() && !self.constraints.iter().any(|c| c.c1 > T::zero()))
            || (w2 > &T::zero() && !self.constraints.iter().any(|c| c.c2 > T::zero()))
        {
            return Err(RegionError::Unbounded);
        }
        if self.is_empty() {
            return Err(RegionError::Empty);
        }
        // A pointed polyhedron attains a bounded linear maximum at a vertex.
        self.candidate_vertices(&T::default_tol())
            .into_iter()
            .map(|v| w1.clone() * v.r1 + w2.clone() * v.r2)
            .reduce(T::max_of)
            .ok_or(RegionError::Empty)
    }

    /// Maximum sum rate `R1 + R2`.
    pub fn max_sum_rate(&self) -> Result<T, RegionError> {
        self.max_weighted(&T::one(), &T::one())
    }

    /// Extreme points, deduplicated within the scalar's default tolerance and
    /// sorted lexicographically. An empty region has no vertices.
    pub fn vertices(&self) -> Result<Vec<RatePair<T>>, RegionError> {
        self.vertices_tol(&T::default_tol())
    }

    pub fn vertices_tol(&self, tol: &T) -> Result<Vec<RatePair<T>>, RegionError> {
        if !self.is_bounded() {
            return Err(RegionError::Unbounded);
        }
        if self.is_empty() {
            return Ok(Vec::new());
        }
        Ok(self.candidate_vertices(tol))
    }

    /// Pairwise intersections of all boundary lines (axes included) that
    /// satisfy every constraint.
    fn candidate_vertices(&self, tol: &T) -> Vec<RatePair<T>> {
        let mut lines: Vec<(T, T, T)> = vec![
            (T::one(), T::zero(), T::zero()),
            (T::zero(), T::one(), T::zero()),
        ];
        lines.extend(
            self.constraints
                .iter()
                .map(|c| (c.c1.clone(), c.c2.clone(), c.bound.clone())),
        );

        let mut out: Vec<RatePair<T>> = Vec::new();
        for i in 0..lines.len() {
            for j in (i + 1)..lines.len() {
                let (a1, b1, e1) = &lines[i];
                let (a2, b2, e2) = &lines[j];
                let det = a1.clone() * b2.clone() - a2.clone() * b1.clone();
                if det.is_zero() {
                    continue;
                }
                let r1 = (e1.clone() * b2.clone() - e2.clone() * b1.clone()) / det.clone();
                let r2 = (a1.clone() * e2.clone() - a2.clone() * e1.clone()) / det;
                let p = RatePair::new(r1, r2);
                if !self.contains(&p, tol) {
                    continue;
                }
                if !out
                    .iter()
                    .any(|q| q.r1.approx_eq(&p.r1, tol) && q.r2.approx_eq(&p.r2, tol))
                {
                    out.push(p);
                }
            }
        }
        out.sort_by(|a, b| a.lex_cmp(b));
        out
    }

    /// Mutual vertex containment.
    pub fn equals(&self, other: &Self, tol: &T) -> Result<bool, RegionError> {
        let mine = self.vertices_tol(tol)?;
        let theirs = other.vertices_tol(tol)?;
        if mine.is_empty() != theirs.is_empty() {
            return Ok(false);
        }
        Ok(mine.iter().all(|v| other.contains(v, tol)) && theirs.iter().all(|v| self.contains(v, tol)))
    }
}

impl<T: Scalar> fmt::Display for RateRegion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `true` iff `p` satisfies every constraint of `region` within `tol`.
pub fn contains<T: Scalar>(region: &RateRegion<T>, p: &RatePair<T>, tol: &T) -> bool {
    region.contains(p, tol)
}

pub fn max_weighted<T: Scalar>(region: &RateRegion<T>, w1: &T, w2: &T) -> Result<T, RegionError> {
    region.max_weighted(w1, w2)
}

pub fn vertices<T: Scalar>(region: &RateRegion<T>) -> Result<Vec<RatePair<T>>, RegionError> {
    region.vertices()
}

pub fn regions_equal<T: Scalar>(a: &RateRegion<T>, b: &RateRegion<T>, tol: &T) -> Result<bool, RegionError> {
    a.equals(b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn corner_region() -> RateRegion<Rational> {
        RateRegion::new(vec![
            RateConstraint::r1(rat(4)),
            RateConstraint::r2(rat(4)),
            RateConstraint::sum(rat(6)),
            RateConstraint::two_r1_plus_r2(rat(9)),
            RateConstraint::r1_plus_two_r2(rat(9)),
        ])
    }

    fn pair(a: i64, b: i64) -> RatePair<Rational> {
        RatePair::new(rat(a), rat(b))
    }

    #[test]
    fn corner_point_is_feasible() {
        assert!(corner_region().contains(&pair(4, 1), &rat(0)));
        assert!(corner_region().contains(&pair(0, 0), &rat(0)));
    }

    #[test]
    fn violated_weighted_bound() {
        let r = RateRegion::new(vec![RateConstraint::r1(rat(4)), RateConstraint::two_r1_plus_r2(rat(9))]);
        assert!(!r.contains(&RatePair::new(rat(4), Ratio::new(3, 2)), &rat(0)));
    }

    #[test]
    fn negative_rates_rejected() {
        let r = RateRegion::new(vec![RateConstraint::r1(rat(4)), RateConstraint::r2(rat(4))]);
        assert!(!r.contains(&pair(-1, 0), &rat(0)));
        assert!(RateRegion::<f64>::new(vec![RateConstraint::r1(1.0), RateConstraint::r2(1.0)])
            .contains(&RatePair::new(-1e-12, 0.5), &1e-9));
    }

    #[test]
    fn corner_vertices() {
        let v = corner_region().vertices().unwrap();
        assert_eq!(v, vec![pair(0, 0), pair(0, 4), pair(1, 4), pair(3, 3), pair(4, 0), pair(4, 1)]);
    }

    #[test]
    fn unit_box_and_point() {
        let b = RateRegion::new(vec![RateConstraint::r1(rat(1)), RateConstraint::r2(rat(1))]);
        assert_eq!(b.vertices().unwrap(), vec![pair(0, 0), pair(0, 1), pair(1, 0), pair(1, 1)]);
        let p = RateRegion::new(vec![RateConstraint::sum(rat(0))]);
        assert_eq!(p.vertices().unwrap(), vec![pair(0, 0)]);
    }

    #[test]
    fn single_binding_constraint() {
        let r = RateRegion::new(vec![RateConstraint::r1(rat(5)), RateConstraint::r2(rat(3))]);
        assert_eq!(r.max_weighted(&rat(1), &rat(0)).unwrap(), rat(5));
        assert_eq!(r.max_sum_rate().unwrap(), rat(8));
    }

    #[test]
    fn unbounded_and_empty() {
        let r = RateRegion::new(vec![RateConstraint::r1(rat(5))]);
        assert_eq!(r.max_weighted(&rat(0), &rat(1)), Err(RegionError::Unbounded));
        assert_eq!(r.max_weighted(&rat(1), &rat(0)).unwrap(), rat(5));
        assert_eq!(r.vertices(), Err(RegionError::Unbounded));

        let e = RateRegion::new(vec![RateConstraint::r1(rat(-1)), RateConstraint::r2(rat(2))]);
        assert!(e.is_empty());
        assert_eq!(e.vertices().unwrap(), vec![]);
        assert_eq!(e.max_sum_rate(), Err(RegionError::Empty));
        assert_eq!(r.max_weighted(&rat(0), &rat(0)), Err(RegionError::InvalidWeights));
    }

    #[test]
    fn invalid_constraint() {
        assert!(RateConstraint::new(rat(0), rat(0), rat(1)).is_err());
        assert!(RateConstraint::new(rat(-1), rat(1), rat(1)).is_err());
        assert!(RateConstraint::new(rat(1), rat(2), rat(1)).is_ok());
    }

    #[test]
    fn equality() {
        let a = RateRegion::new(vec![RateConstraint::r1(rat(1)), RateConstraint::r2(rat(1))]);
        let b = RateRegion::new(vec![RateConstraint::r1(rat(2)), RateConstraint::r2(rat(2))]);
        assert!(a.equals(&a, &rat(0)).unwrap());
        assert!(!a.equals(&b, &rat(0)).unwrap());
        // a redundant constraint does not change the region
        let c = a.clone().with(RateConstraint::sum(rat(5)));
        assert!(a.equals(&c, &rat(0)).unwrap());
    }

    #[test]
    fn float_region_dedup() {
        let r = RateRegion::new(vec![
            RateConstraint::r1(1.0),
            RateConstraint::r2(1.0),
            RateConstraint::sum(2.0 + 1e-12),
        ]);
        assert_eq!(r.vertices().unwrap().len(), 4);
    }

    #[test]
    fn display() {
        assert_eq!(RateConstraint::two_r1_plus_r2(rat(9)).to_string(), "2R1 + R2 <= 9");
        assert_eq!(RateConstraint::r2(rat(4)).to_string(), "R2 <= 4");
    }

    fn arb_region() -> impl Strategy<Value = RateRegion<Rational>> {
        let c = (0i64..3, 0i64..3, 0i64..20).prop_filter_map("nonzero", |(a, b, e)| {
            RateConstraint::new(rat(a), rat(b), rat(e)).ok()
        });
        proptest::collection::vec(c, 0..6).prop_map(|mut cs| {
            cs.push(RateConstraint::r1(rat(15)));
            cs.push(RateConstraint::r2(rat(15)));
            RateRegion::new(cs)
        })
    }

    proptest! {
        #[test]
        fn lp_and_vertex_paths_agree(r in arb_region()) {
            let best = r.vertices().unwrap().into_iter().map(|v| v.sum()).max().unwrap();
            prop_assert_eq!(r.max_sum_rate().unwrap(), best);
        }

        #[test]
        fn vertices_are_feasible(r in arb_region()) {
            for v in r.vertices().unwrap() {
                prop_assert!(r.contains(&v, &rat(0)));
            }
        }

        #[test]
        fn extra_constraint_never_enlarges(r in arb_region(), a in 0i64..3, b in 1i64..3, e in 0i64..20) {
            let tighter = r.clone().with(RateConstraint::new(rat(a), rat(b), rat(e)).unwrap());
            prop_assert!(tighter.max_sum_rate().unwrap() <= r.max_sum_rate().unwrap());
        }

        #[test]
        fn equality_is_an_equivalence(a in arb_region(), b in arb_region(), c in arb_region()) {
            let z = rat(0);
            prop_assert!(a.equals(&a, &z).unwrap());
            prop_assert_eq!(a.equals(&b, &z).unwrap(), b.equals(&a, &z).unwrap());
            if a.equals(&b, &z).unwrap() && b.equals(&c, &z).unwrap() {
                prop_assert!(a.equals(&c, &z).unwrap());
            }
            // a region with a duplicated constraint list is equal to itself
            let dup: RateRegion<Rational> = a.constraints().iter().chain(a.constraints()).cloned().collect();
            prop_assert!(a.equals(&dup, &z).unwrap());
        }
    }
}
