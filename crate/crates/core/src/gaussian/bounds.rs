//! Outer bounds for the Gaussian IC with rate-limited feedback.
//!
//! All quantities are in bits (base-2 logs) and on a linear power scale.

use num_traits::Float;

use crate::error::GaussianError;
use crate::region::{RateConstraint, RateRegion};
use crate::scalar::Scalar;

/// Real scalar usable by the Gaussian code paths.
pub trait Real: Float + Scalar {}
impl<T: Float + Scalar> Real for T {}

pub(crate) fn lit<F: Real>(x: f64) -> F {
    F::from(x).expect("constant representable in the float type")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams<F = f64> {
    pub snr1: F,
    pub snr2: F,
    /// Cross gain from transmitter 1 to receiver 2.
    pub inr12: F,
    /// Cross gain from transmitter 2 to receiver 1.
    pub inr21: F,
    pub cfb1: F,
    pub cfb2: F,
}

impl<F: Real> GaussianParams<F> {
    pub fn symmetric(snr: F, inr: F, cfb1: F, cfb2: F) -> Self {
        Self { snr1: snr, snr2: snr, inr12: inr, inr21: inr, cfb1, cfb2 }
    }

    pub fn validate(&self) -> Result<(), GaussianError> {
        let fields = [self.snr1, self.snr2, self.inr12, self.inr21, self.cfb1, self.cfb2];
        if fields.iter().all(|v| v.is_finite() && *v >= F::zero()) {
            Ok(())
        } else {
            Err(GaussianError::InvalidParams(format!("{self:?}")))
        }
    }
}

impl<F: Real> GaussianParams<F> {
    /// Same channel with the user labels exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            snr1: self.snr2,
            snr2: self.snr1,
            inr12: self.inr21,
            inr21: self.inr12,
            cfb1: self.cfb2,
            cfb2: self.cfb1,
        }
    }
}

/// Input correlation magnitude, `0 ≤ rho ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoQuery<F = f64> {
    rho: F,
}

impl<F: Real> RhoQuery<F> {
    pub fn new(rho: F) -> Result<Self, GaussianError> {
        if rho >= F::zero() && rho <= F::one() {
            Ok(Self { rho })
        } else {
            Err(GaussianError::RhoOutOfRange(format!("{rho}")))
        }
    }

    pub fn rho(&self) -> F {
        self.rho
    }
}

/// `log2(1 + snr + inr + 2ρ√(snr·inr))`: everything receiver k can see.
fn full<F: Real>(snr: F, inr: F, rho: F) -> F {
    (F::one() + snr + inr + lit::<F>(2.0) * rho * (snr * inr).sqrt()).log2()
}

/// `log2(1 + s·snr / (1 + s·inr_out))` with `s = 1 − ρ²`.
fn private<F: Real>(snr: F, inr_out: F, s: F) -> F {
    (F::one() + s * snr / (F::one() + s * inr_out)).log2()
}

/// `log2(1 + s·inr_in + s·snr / (1 + s·inr_out))`.
fn seen<F: Real>(snr: F, inr_in: F, inr_out: F, s: F) -> F {
    (F::one() + s * inr_in + s * snr / (F::one() + s * inr_out)).log2()
}

/// The eleven-inequality outer region at correlation `rho`.
pub fn outer_region_at_rho<F: Real>(p: &GaussianParams<F>, q: &RhoQuery<F>) -> Result<RateRegion<F>, GaussianError> {
    p.validate()?;
    let rho = q.rho();
    let s = F::one() - rho * rho;
    let one = F::one();
    let all1 = full(p.snr1, p.inr21, rho);
    let all2 = full(p.snr2, p.inr12, rho);
    let priv1 = private(p.snr1, p.inr12, s);
    let priv2 = private(p.snr2, p.inr21, s);
    let seen1 = seen(p.snr1, p.inr21, p.inr12, s);
    let seen2 = seen(p.snr2, p.inr12, p.inr21, s);
    let fb = p.cfb1 + p.cfb2;
    Ok(RateRegion::new(vec![
        RateConstraint::r1(all1),
        RateConstraint::r1(priv1 + (one + s * p.inr12).log2()),
        RateConstraint::r1((one + s * p.snr1).log2() + p.cfb2),
        RateConstraint::r2(all2),
        RateConstraint::r2(priv2 + (one + s * p.inr21).log2()),
        RateConstraint::r2((one + s * p.snr2).log2() + p.cfb1),
        RateConstraint::sum(seen1 + seen2 + fb),
        RateConstraint::sum(priv1 + all2),
        RateConstraint::sum(priv2 + all1),
        RateConstraint::two_r1_plus_r2(all1 + priv1 + seen2 + fb),
        RateConstraint::r1_plus_two_r2(all2 + priv2 + seen1 + fb),
    ]))
}

fn sum_at<F: Real>(p: &GaussianParams<F>, rho: F) -> F {
    let q = RhoQuery::new(rho.max(F::zero()).min(F::one())).expect("clamped");
    outer_region_at_rho(p, &q)
        .and_then(|r| r.max_sum_rate().map_err(|e| GaussianError::InvalidParams(e.to_string())))
        .expect("outer region is bounded with nonnegative bounds")
}

/// Default number of ρ grid points.
pub const DEFAULT_RHO_STEPS: usize = 201;

/// Largest sum rate over the union of the outer regions: a uniform ρ grid
/// followed by golden-section refinement around the best grid point.
pub fn sumrate_outer<F: Real>(p: &GaussianParams<F>, rho_steps: usize) -> Result<F, GaussianError> {
    p.validate()?;
    let steps = rho_steps.max(2);
    let h = F::one() / lit::<F>((steps - 1) as f64);
    let grid = |i: usize| lit::<F>(i as f64) * h;
    let (best_i, best) = (0..steps)
        .map(|i| (i, sum_at(p, grid(i))))
        .fold((0, F::neg_infinity()), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });

    let mut lo = if best_i == 0 { F::zero() } else { grid(best_i - 1) };
    let mut hi = if best_i + 1 >= steps { F::one() } else { grid(best_i + 1) };
    let inv_phi = lit::<F>((5f64.sqrt() - 1.0) / 2.0);
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (sum_at(p, a), sum_at(p, b));
    for _ in 0..60 {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = sum_at(p, a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = sum_at(p, b);
        }
        if hi - lo < lit(1e-12) {
            break;
        }
    }
    Ok(best.max(fa).max(fb))
}

/// The three symmetric sum-rate bounds, in order: cut-set plus feedback,
/// infinite-feedback bound, and the feedback-limited bound.
pub fn symmetric_outer_terms<F: Real>(snr: F, inr: F, cfb1: F, cfb2: F) -> [F; 3] {
    let one = F::one();
    let two = lit::<F>(2.0);
    let fb = cfb1 + cfb2;
    [
        two * (one + snr).log2() + fb,
        (one + snr / (one + inr)).log2() + (one + snr + inr + two * (snr * inr).sqrt()).log2(),
        two * (one + inr + snr / (one + inr)).log2() + fb,
    ]
}

/// Symmetric sum-rate outer bound: the minimum of [`symmetric_outer_terms`].
pub fn symmetric_sumrate_outer<F: Real>(snr: F, inr: F, cfb1: F, cfb2: F) -> F {
    let [a, b, c] = symmetric_outer_terms(snr, inr, cfb1, cfb2);
    a.min(b).min(c)
}
