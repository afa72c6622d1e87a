//! Capacity region of the linear deterministic IC with rate-limited feedback,
//! the achievable region obtained from the LSB-feedback input distribution,
//! and the symmetric sum-rate formula.

use num_traits::Zero;

use crate::ldic::model::LdicParams;
use crate::region::{RateConstraint, RateRegion};
use crate::scalar::{rat, Rational, Scalar};

fn n(x: usize) -> Rational {
    rat(x as i64)
}

fn pos(x: Rational) -> Rational {
    x.pos()
}

fn min(a: Rational, b: Rational) -> Rational {
    a.min_of(b)
}

fn max(a: Rational, b: Rational) -> Rational {
    a.max_of(b)
}

/// Mutual-information values of the LSB-feedback input distribution, in bits.
///
/// Field names read as `i_<inputs>_<output or conditioning>`; e.g.
/// `i_x1v2_v1u2` is `I(X1,V2; Y1 | U, V1, U2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoTerms {
    /// I(U,V2,X1; Y1)
    pub i_uv2x1_y1: Rational,
    /// I(U,V1,X2; Y2)
    pub i_uv1x2_y2: Rational,
    /// I(X1; Y1 | U,V1,V2)
    pub i_x1_given: Rational,
    /// I(X2; Y2 | U,V1,V2)
    pub i_x2_given: Rational,
    /// I(U2; Y1 | U,X1)
    pub i_u2_y1: Rational,
    /// I(U1; Y2 | U,X2)
    pub i_u1_y2: Rational,
    /// I(X1; Y1 | U,U1,V2)
    pub i_x1_u1v2: Rational,
    /// I(X2; Y2 | U,U2,V1)
    pub i_x2_u2v1: Rational,
    /// I(X1,V2; Y1 | U,V1,U2)
    pub i_x1v2_v1u2: Rational,
    /// I(X2,V1; Y2 | U,V2,U1)
    pub i_x2v1_v2u1: Rational,
    /// I(X1,V2; Y1 | U,U1,U2)
    pub i_x1v2_u1u2: Rational,
    /// I(X2,V1; Y2 | U,U1,U2)
    pub i_x2v1_u1u2: Rational,
    /// I(Ŷ1; Y1 | U,U2,X1)
    pub delta1: Rational,
    /// I(Ŷ2; Y2 | U,U1,X2)
    pub delta2: Rational,
}

impl InfoTerms {
    pub fn all(&self) -> [&Rational; 14] {
        [
            &self.i_uv2x1_y1,
            &self.i_uv1x2_y2,
            &self.i_x1_given,
            &self.i_x2_given,
            &self.i_u2_y1,
            &self.i_u1_y2,
            &self.i_x1_u1v2,
            &self.i_x2_u2v1,
            &self.i_x1v2_v1u2,
            &self.i_x2v1_v2u1,
            &self.i_x1v2_u1u2,
            &self.i_x2v1_u1u2,
            &self.delta1,
            &self.delta2,
        ]
    }
}

/// The closed-form terms for receiver 1; receiver 2 follows by swapping
/// indices, which [`info_terms`] does by calling this twice.
struct SideTerms {
    joint: Rational,
    given: Rational,
    coop: Rational,
    x_u_v: Rational,
    xv_v_u: Rational,
    xv_u_u: Rational,
}

/// `own` = n_kk, `out` = n_kj (leaks to the other receiver), `inc` = n_jk
/// (interference arriving here), `c_here` = feedback capacity at this
/// receiver, `c_there` = at the other.
fn side(own: usize, out: usize, inc: usize, c_here: &Rational, c_there: &Rational) -> SideTerms {
    let (own, out, inc) = (n(own), n(out), n(inc));
    let given = pos(own - out);
    let coop = min(inc, *c_here);
    let unfed = min(own, pos(out - *c_there));
    let x_u_v = given + unfed;
    let xv_v_u = pos(inc - *c_here) + pos(given - inc) + min(given, coop);
    let xv_u_u = given
        + unfed
        + pos(inc - max(own, coop))
        + pos(min(inc, pos(own - pos(out - *c_there))) - max(coop, given));
    SideTerms { joint: max(own, inc), given, coop, x_u_v, xv_v_u, xv_u_u }
}

pub fn info_terms(g: &LdicParams) -> InfoTerms {
    let s1 = side(g.n11, g.n12, g.n21, &g.cfb1, &g.cfb2);
    let s2 = side(g.n22, g.n21, g.n12, &g.cfb2, &g.cfb1);
    InfoTerms {
        i_uv2x1_y1: s1.joint,
        i_uv1x2_y2: s2.joint,
        i_x1_given: s1.given,
        i_x2_given: s2.given,
        i_u2_y1: s1.coop,
        i_u1_y2: s2.coop,
        i_x1_u1v2: s1.x_u_v,
        i_x2_u2v1: s2.x_u_v,
        i_x1v2_v1u2: s1.xv_v_u,
        i_x2v1_v2u1: s2.xv_v_u,
        i_x1v2_u1u2: s1.xv_u_u,
        i_x2v1_u1u2: s2.xv_u_u,
        delta1: Rational::zero(),
        delta2: Rational::zero(),
    }
}

/// The nine-inequality capacity region.
pub fn theorem3_region(g: &LdicParams) -> RateRegion<Rational> {
    let (n11, n22, n12, n21) = (n(g.n11), n(g.n22), n(g.n12), n(g.n21));
    let (c1, c2) = (g.cfb1, g.cfb2);
    let p1 = pos(n11 - n12);
    let p2 = pos(n22 - n21);
    let top1 = max(n11, n21);
    let top2 = max(n22, n12);
    let seen1 = max(n21, p1);
    let seen2 = max(n12, p2);
    RateRegion::new(vec![
        RateConstraint::r1(min(top1, max(n11, n12))),
        RateConstraint::r1(n11 + c2),
        RateConstraint::r2(min(top2, max(n22, n21))),
        RateConstraint::r2(n22 + c1),
        RateConstraint::sum(p1 + top2),
        RateConstraint::sum(p2 + top1),
        RateConstraint::sum(seen1 + seen2 + c1 + c2),
        RateConstraint::two_r1_plus_r2(p1 + top1 + seen2 + c2),
        RateConstraint::r1_plus_two_r2(p2 + top2 + seen1 + c1),
    ])
}

/// Region achieved by the LSB-feedback scheme, written out after evaluating
/// the mutual-information terms.
pub fn appendix_b_region(g: &LdicParams) -> RateRegion<Rational> {
    let (n11, n22, n12, n21) = (n(g.n11), n(g.n22), n(g.n12), n(g.n21));
    let (c1, c2) = (g.cfb1, g.cfb2);
    let p1 = pos(n11 - n12);
    let p2 = pos(n22 - n21);
    let top1 = max(n11, n21);
    let top2 = max(n22, n12);
    let seen1 = max(p1, n21);
    let seen2 = max(p2, n12);
    let relay1 = min(min(p1, n21), c1);
    let relay2 = min(min(p2, n12), c2);
    RateRegion::new(vec![
        RateConstraint::r1(top1),
        RateConstraint::r1(p1 + min(n11, pos(n12 - c2)) + min(n12, c2)),
        RateConstraint::r2(top2),
        RateConstraint::r2(p2 + min(n22, pos(n21 - c1)) + min(n21, c1)),
        RateConstraint::sum(p1 + top2),
        RateConstraint::sum(p2 + top1),
        RateConstraint::sum(seen1 + seen2 + relay1 + relay2),
        RateConstraint::two_r1_plus_r2(p1 + top1 + seen2 + relay2),
        RateConstraint::r1_plus_two_r2(p2 + top2 + seen1 + relay1),
    ])
}

/// Capacity region without feedback.
pub fn nonfeedback_region(g: &LdicParams) -> RateRegion<Rational> {
    theorem3_region(&g.without_feedback())
}

/// Capacity region with unlimited feedback: the capacity region with every
/// feedback-bearing inequality dropped.
pub fn unlimited_feedback_region(g: &LdicParams) -> RateRegion<Rational> {
    let full = theorem3_region(g);
    // constraints 1, 3, 5, 6 carry no feedback term
    RateRegion::new([0, 2, 4, 5].iter().map(|&i| full.constraints()[i].clone()).collect())
}

/// Normalized symmetric sum-rate capacity `C_sum / n` as a function of
/// `alpha = m/n` and `beta = cfb/n`.
pub fn normalized_sumrate<T: Scalar>(alpha: T, beta: T) -> T {
    let one = T::one();
    let two = one.clone() + one.clone();
    let three = two.clone() + one.clone();
    let half = one.clone() / two.clone();
    let two_thirds = two.clone() / three;
    let ceiling = two.clone() - alpha.clone();
    if alpha <= half {
        (two.clone() - two.clone() * alpha + two * beta).min_of(ceiling)
    } else if alpha <= two_thirds {
        (two.clone() * alpha + two * beta).min_of(ceiling)
    } else if alpha <= one {
        ceiling
    } else {
        let sat = two.clone() + two * beta;
        alpha.min_of(sat)
    }
}

/// Symmetric sum-rate capacity `n · C_sum/n` for the channel `(n, n, m, m, cfb, cfb)`.
pub fn symmetric_sumrate(n_direct: usize, m: usize, cfb: &Rational) -> Rational {
    if n_direct == 0 {
        return Rational::zero();
    }
    let nn = n(n_direct);
    let alpha = n(m) / nn;
    let beta = *cfb / nn;
    normalized_sumrate(alpha, beta) * nn
}

/// Maximum sum rate of the capacity region.
pub fn sum_capacity(g: &LdicParams) -> Rational {
    theorem3_region(g)
        .max_sum_rate()
        .expect("capacity region is bounded with nonnegative bounds")
}

/// `true` iff the two capacity constructions describe the same region.
pub fn check_appendix_b(g: &LdicParams) -> bool {
    theorem3_region(g)
        .equals(&appendix_b_region(g), &Rational::zero())
        .unwrap_or(false)
}
