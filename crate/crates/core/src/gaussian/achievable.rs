//! Achievable sum rates for the symmetric Gaussian IC with rate-limited
//! feedback: lattice-aligned power splits per interference regime, a
//! coordinate-descent power optimizer, time sharing between the two
//! single-feedback-link extremes, and the gap to the outer bound.

use std::fmt;
use std::str::FromStr;

use crate::error::GaussianError;
use crate::gaussian::bounds::{lit, symmetric_sumrate_outer, Real};

/// Per-codeword transmit powers. `p1[i]` is `P1^(i+1)`, `p2[i]` is `P2^(i+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit<F = f64> {
    pub p1: [F; 4],
    pub p2: [F; 3],
}

impl<F: Real> PowerSplit<F> {
    pub fn zero() -> Self {
        Self { p1: [F::zero(); 4], p2: [F::zero(); 3] }
    }

    pub fn total1(&self) -> F {
        self.p1.iter().fold(F::zero(), |a, &b| a + b)
    }

    pub fn total2(&self) -> F {
        self.p2.iter().fold(F::zero(), |a, &b| a + b)
    }

    /// `P1^(1) + … + P1^(j)`.
    pub fn p1_upto(&self, j: usize) -> F {
        self.p1[..j].iter().fold(F::zero(), |a, &b| a + b)
    }

    pub fn p2_upto(&self, j: usize) -> F {
        self.p2[..j].iter().fold(F::zero(), |a, &b| a + b)
    }

    /// Nonnegative and within the unit power budget at both transmitters.
    pub fn is_valid(&self) -> bool {
        let slack = F::one() + lit(1e-12);
        self.p1.iter().chain(&self.p2).all(|&p| p >= F::zero() && p.is_finite())
            && self.total1() <= slack
            && self.total2() <= slack
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegimeCase {
    InrBelowOne,
    /// `INR² ≤ SNR`
    A,
    /// `SNR ≤ INR²` and `INR³ ≤ SNR²`
    B,
    /// `SNR² ≤ INR³` and `INR ≤ SNR`
    D,
    /// `SNR ≤ INR ≤ SNR²`
    E,
    /// `INR ≥ SNR²`
    C,
}

impl RegimeCase {
    pub const ALL: [RegimeCase; 6] = [Self::InrBelowOne, Self::A, Self::B, Self::D, Self::E, Self::C];

    pub fn tag(&self) -> &'static str {
        match self {
            Self::InrBelowOne => "inr_below_one",
            Self::A => "a",
            Self::B => "b",
            Self::D => "d",
            Self::E => "e",
            Self::C => "c",
        }
    }

    /// Whether the case uses feedback (has a power split).
    pub fn uses_feedback(&self) -> bool {
        matches!(self, Self::A | Self::B | Self::C)
    }
}

impl fmt::Display for RegimeCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RegimeCase {
    type Err = GaussianError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| GaussianError::InvalidParams(format!("unknown regime {s:?}")))
    }
}

fn check_positive<F: Real>(snr: F, inr: F) -> Result<(), GaussianError> {
    if snr > F::zero() && inr > F::zero() && snr.is_finite() && inr.is_finite() {
        Ok(())
    } else {
        Err(GaussianError::NonPositive { snr: format!("{snr}"), inr: format!("{inr}") })
    }
}

/// The regime containing `(snr, inr)`, first match in the order
/// `inr < 1`, a, b, d, e, c.
pub fn classify_regime<F: Real>(snr: F, inr: F) -> Result<RegimeCase, GaussianError> {
    check_positive(snr, inr)?;
    if inr < F::one() {
        return Ok(RegimeCase::InrBelowOne);
    }
    let (ls, li) = (snr.log2(), inr.log2());
    let two = lit::<F>(2.0);
    let three = lit::<F>(3.0);
    Ok(if two * li <= ls {
        RegimeCase::A
    } else if three * li <= two * ls {
        RegimeCase::B
    } else if li <= ls {
        RegimeCase::D
    } else if li <= two * ls {
        RegimeCase::E
    } else {
        RegimeCase::C
    })
}

/// Every regime whose closed defining inequalities hold at `(snr, inr)`
/// (up to rounding), so that boundary points see both neighbours.
pub fn applicable_regimes<F: Real>(snr: F, inr: F) -> Result<Vec<RegimeCase>, GaussianError> {
    check_positive(snr, inr)?;
    if inr < F::one() {
        return Ok(vec![RegimeCase::InrBelowOne]);
    }
    let (ls, li) = (snr.log2(), inr.log2());
    let eps = lit::<F>(1e-9) * (F::one() + ls.abs() + li.abs());
    let two = lit::<F>(2.0);
    let three = lit::<F>(3.0);
    let mut out = Vec::new();
    if two * li <= ls + eps {
        out.push(RegimeCase::A);
    }
    if ls <= two * li + eps && three * li <= two * ls + eps {
        out.push(RegimeCase::B);
    }
    if two * ls <= three * li + eps && li <= ls + eps {
        out.push(RegimeCase::D);
    }
    if ls <= li + eps && li <= two * ls + eps {
        out.push(RegimeCase::E);
    }
    if li + eps >= two * ls {
        out.push(RegimeCase::C);
    }
    Ok(out)
}

/// Worst-case gap to the symmetric outer bound certified for each regime
/// with the fixed power splits of [`designed_powers`].
pub fn regime_gap_constant<F: Real>(case: RegimeCase, snr: F) -> f64 {
    match case {
        RegimeCase::InrBelowOne => 2.6,
        RegimeCase::A => 9.6,
        RegimeCase::B => 14.8,
        RegimeCase::C if snr <= F::one() => 2.6,
        RegimeCase::C => 7.0,
        RegimeCase::D => 3.0,
        RegimeCase::E => 4.0,
    }
}

/// Fixed power split for a feedback regime. In case c the assignment
/// depends on whether `snr ≤ 1`; use [`designed_power_variants`] to get
/// both at `snr = 1`.
pub fn designed_powers<F: Real>(snr: F, inr: F, cfb: F, case: RegimeCase) -> Result<PowerSplit<F>, GaussianError> {
    check_positive(snr, inr)?;
    let one = F::one();
    let two = lit::<F>(2.0);
    let fb = two.powf(cfb);
    let layered = |m: F| {
        let m = m.max(F::zero());
        let mut p = PowerSplit::zero();
        p.p1[0] = (one / inr - m / snr).max(F::zero());
        p.p1[1] = m / snr;
        p.p1[2] = m / inr;
        p.p2[0] = one / inr;
        p.p2[1] = m / (two * inr);
        p
    };
    match case {
        RegimeCase::A => Ok(layered(fb.min(inr - one))),
        RegimeCase::B => {
            let mut p = layered(fb.min(snr * snr / (inr * inr * inr) - one));
            p.p1[3] = (one - p.p1_upto(3)).max(F::zero());
            p.p2[2] = (one - p.p2_upto(2)).max(F::zero());
            Ok(p)
        }
        RegimeCase::C if snr <= one => {
            let mut p = PowerSplit::zero();
            let v = fb.min(inr) / inr;
            p.p2[1] = v;
            p.p1[2] = v;
            Ok(p)
        }
        RegimeCase::C => {
            let mut p = PowerSplit::zero();
            let m = fb.min(inr / (snr * snr));
            p.p1[2] = snr / inr * m;
            p.p1[3] = one - p.p1[2];
            p.p2[1] = m / inr;
            p.p2[2] = one - p.p2[1];
            Ok(p)
        }
        other => Err(GaussianError::UnsupportedCase(other.tag().to_string())),
    }
}

/// All fixed splits that apply for the case (two in case c at `snr = 1`).
pub fn designed_power_variants<F: Real>(
    snr: F,
    inr: F,
    cfb: F,
    case: RegimeCase,
) -> Result<Vec<PowerSplit<F>>, GaussianError> {
    let mut out = vec![designed_powers(snr, inr, cfb, case)?];
    if case == RegimeCase::C && snr == F::one() {
        // the snr ≥ 1 assignment, evaluated explicitly at the boundary
        let one = F::one();
        let m = lit::<F>(2.0).powf(cfb).min(inr);
        let mut p = PowerSplit::zero();
        p.p1[2] = m / inr;
        p.p1[3] = one - p.p1[2];
        p.p2[1] = m / inr;
        p.p2[2] = one - p.p2[1];
        out.push(p);
    }
    Ok(out)
}

fn lg<F: Real>(x: F) -> F {
    x.log2()
}

/// `log2(1 + num/den)`.
fn cap<F: Real>(num: F, den: F) -> F {
    lg(F::one() + num / den)
}

/// `[log2(num/den)]+`, zero when `num` is zero.
fn lattice<F: Real>(num: F, den: F) -> F {
    if num <= F::zero() {
        F::zero()
    } else {
        lg(num / den).max(F::zero())
    }
}

/// The lattice-coded terms of a case's sum rate, each already capped at `cfb`.
pub fn lattice_rates<F: Real>(snr: F, inr: F, cfb: F, ps: &PowerSplit<F>, case: RegimeCase) -> Result<[F; 2], GaussianError> {
    let one = F::one();
    let (p1, p2) = (&ps.p1, &ps.p2);
    match case {
        RegimeCase::A => Ok([
            lattice(snr * p1[1], one + inr * p2[0]).min(cfb),
            lattice(inr * p2[1], one + inr * p2[0]).min(cfb),
        ]),
        RegimeCase::B => Ok([
            lattice(snr * p1[1], one + inr * p2[0] + snr * p1[0]).min(cfb),
            lattice(inr * p2[1], one + inr * p2[0] + snr * p1[0]).min(cfb),
        ]),
        // only the relay codeword of user 1 sits under the lattice term at its receiver
        RegimeCase::C => Ok([F::zero(), lattice(inr * p2[1], one + snr * p1[2]).min(cfb)]),
        other => Err(GaussianError::UnsupportedCase(other.tag().to_string())),
    }
}

/// Sum rate of a feedback case for a given power split, as the closed-form
/// expression of that case.
pub fn rsum_case<F: Real>(snr: F, inr: F, cfb: F, ps: &PowerSplit<F>, case: RegimeCase) -> Result<F, GaussianError> {
    let one = F::one();
    let (p1, p2) = (&ps.p1, &ps.p2);
    let [l1, l2] = lattice_rates(snr, inr, cfb, ps, case)?;
    Ok(match case {
        RegimeCase::A => {
            cap(snr * p1[0], one + inr * ps.total2() + snr * p1[1]) + l1 + cap(snr * p2[0], one + inr * ps.p1_upto(2)) + l2
        }
        RegimeCase::B => {
            cap(snr * p1[0], one + inr * p2[0])
                + l1
                + cap(inr * p1[3], one + inr * ps.p1_upto(2) + snr * p2[0])
                + cap(snr * p2[0], one + inr * ps.p1_upto(2))
                + l2
                + cap(inr * p2[2], one + inr * ps.p2_upto(2) + snr * ps.p1_upto(2))
        }
        _ => cap(snr * p1[3], one + snr * p1[2]) + l2 + cap(snr * p2[2], one + snr * p2[1]),
    })
}

/// Sum rate of a feedback case when every decoding step is enforced,
/// including the relay codeword that carries the other user's cooperative
/// message and the second receiver's decoding of each codeword.
pub fn rsum_decodable<F: Real>(snr: F, inr: F, cfb: F, ps: &PowerSplit<F>, case: RegimeCase) -> Result<F, GaussianError> {
    let one = F::one();
    let (p1, p2) = (&ps.p1, &ps.p2);
    let [l1, l2] = lattice_rates(snr, inr, cfb, ps, case)?;
    let (t1, t2) = (ps.total1(), ps.total2());
    Ok(match case {
        RegimeCase::A => {
            let relay = cap(snr * p1[2], one + inr * t2 + snr * ps.p1_upto(2));
            let r22 = l2.min(lattice(snr * p2[1], one + snr * p2[0] + inr * ps.p1_upto(2))).min(relay);
            cap(snr * p1[0], one + inr * t2 + snr * p1[1]) + l1 + cap(snr * p2[0], one + inr * ps.p1_upto(2)) + r22
        }
        RegimeCase::B => {
            let relay = cap(snr * p1[2], one + inr * t2 + snr * ps.p1_upto(2));
            let not_relay = t1 - p1[2];
            let r22 = l2
                .min(lattice(snr * p2[1], one + snr * p2[0] + inr * not_relay))
                .min(relay);
            let r14 = cap(snr * p1[3], one + inr * t2 + snr * ps.p1_upto(3))
                .min(cap(inr * p1[3], one + inr * ps.p1_upto(2) + snr * p2[0]));
            let r23 = cap(inr * p2[2], one + inr * ps.p2_upto(2) + snr * ps.p1_upto(2))
                .min(cap(snr * p2[2], one + snr * ps.p2_upto(2) + inr * not_relay));
            cap(snr * p1[0], one + inr * p2[0]) + l1 + r14 + cap(snr * p2[0], one + inr * ps.p1_upto(2)) + r22 + r23
        }
        _ => {
            let relay = cap(inr * p1[2], one + snr * t2);
            cap(snr * p1[3], one + snr * p1[2]) + l2.min(relay) + cap(snr * p2[2], one + snr * p2[1])
        }
    })
}

/// Sum rate without feedback for the regimes that do not use it. Cases d
/// and e take the closed form less the one bit the underlying scheme may
/// lose.
pub fn rsum_nonfeedback<F: Real>(snr: F, inr: F, case: RegimeCase) -> Result<F, GaussianError> {
    let one = F::one();
    match case {
        RegimeCase::D => Ok(lg(one + snr) + lg(one + snr / (one + inr)) - one),
        RegimeCase::E => Ok(lg(one + snr + inr) - one),
        RegimeCase::InrBelowOne => Ok(lit::<F>(2.0) * lg(one + snr / (one + inr))),
        other => Err(GaussianError::UnsupportedCase(other.tag().to_string())),
    }
}

/// Free power coordinates of each feedback case, as `(user, index)`.
fn free_coordinates(case: RegimeCase) -> &'static [(usize, usize)] {
    match case {
        RegimeCase::A => &[(0, 0), (0, 1), (0, 2), (1, 0), (1, 1)],
        RegimeCase::B => &[(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2)],
        RegimeCase::C => &[(0, 2), (0, 3), (1, 1), (1, 2)],
        _ => &[],
    }
}

fn coord<F: Real>(p: &mut PowerSplit<F>, (u, i): (usize, usize)) -> &mut F {
    if u == 0 {
        &mut p.p1[i]
    } else {
        &mut p.p2[i]
    }
}

/// Number of coordinate-descent passes of the power optimizer.
pub const OPTIMIZER_SWEEPS: usize = 3;
/// Default grid points per power coordinate.
pub const DEFAULT_GRID_STEPS: usize = 32;

/// Coordinate descent over log-spaced power grids, seeded at `seed`.
/// Returns the best split found and its fully decodable sum rate.
pub fn optimize_powers<F: Real>(
    snr: F,
    inr: F,
    cfb: F,
    case: RegimeCase,
    seed: PowerSplit<F>,
    grid_steps: usize,
) -> Result<(PowerSplit<F>, F), GaussianError> {
    let coords = free_coordinates(case);
    if coords.is_empty() {
        return Err(GaussianError::UnsupportedCase(case.tag().to_string()));
    }
    let steps = grid_steps.max(2);
    // from well below the weakest received power scale up to full power
    let floor = (lit::<F>(0.25) / snr.max(inr).max(F::one())).log10();
    let mut grid = vec![F::zero()];
    grid.extend((0..steps).map(|i| {
        let t = lit::<F>(i as f64) / lit::<F>((steps - 1) as f64);
        lit::<F>(10.0).powf(floor * (F::one() - t))
    }));

    let mut best = seed;
    let mut best_val = rsum_decodable(snr, inr, cfb, &best, case)?;
    for _ in 0..OPTIMIZER_SWEEPS {
        let before = best_val;
        for &c in coords {
            for &g in &grid {
                let mut trial = best;
                *coord(&mut trial, c) = g;
                if !trial.is_valid() {
                    continue;
                }
                let v = rsum_decodable(snr, inr, cfb, &trial, case)?;
                if v > best_val {
                    best = trial;
                    best_val = v;
                }
            }
        }
        if best_val <= before {
            break;
        }
    }
    Ok((best, best_val))
}

/// Step, in bits, of the designed-feedback scan in [`best_designed_split`].
const DESIGN_STEP: f64 = 0.125;

/// Best fixed split of a feedback case over the feedback it was designed
/// for. A scheme may leave surplus feedback unused, so every split built
/// for `c' ≤ cfb` stays available; each is rated with the true cap `cfb`.
/// This keeps the achievable rate nondecreasing in `cfb`.
pub fn best_designed_split<F: Real>(snr: F, inr: F, cfb: F, case: RegimeCase) -> Result<(F, PowerSplit<F>), GaussianError> {
    let eval = |c: F| -> Result<(F, PowerSplit<F>), GaussianError> {
        let mut best = (F::neg_infinity(), PowerSplit::zero());
        for ps in designed_power_variants(snr, inr, c, case)? {
            let v = rsum_case(snr, inr, cfb, &ps, case)?;
            if v > best.0 {
                best = (v, ps);
            }
        }
        Ok(best)
    };
    // beyond this the split no longer changes, so the scan does not either
    let sat = match case {
        RegimeCase::A => inr - F::one(),
        RegimeCase::B => snr * snr / (inr * inr * inr) - F::one(),
        _ if snr <= F::one() => inr,
        _ => inr / (snr * snr),
    };
    let top = cfb.min(sat.max(F::one()).log2());
    let step = lit::<F>(DESIGN_STEP);
    let mut best = eval(cfb)?;
    let mut at = top;
    let mut c = F::zero();
    while c < top {
        let r = eval(c)?;
        if r.0 > best.0 {
            best = r;
            at = c;
        }
        c = c + step;
    }
    // golden-section refinement around the best scan point
    let (mut lo, mut hi) = ((at - step).max(F::zero()), (at + step).min(top));
    let g = lit::<F>(0.5 * (5f64.sqrt() - 1.0));
    for _ in 0..60 {
        if hi - lo <= F::epsilon() * (F::one() + hi) {
            break;
        }
        let (a, b) = (hi - g * (hi - lo), lo + g * (hi - lo));
        let (ra, rb) = (eval(a)?, eval(b)?);
        for r in [ra, rb] {
            if r.0 > best.0 {
                best = r;
            }
        }
        if ra.0 >= rb.0 {
            hi = b;
        } else {
            lo = a;
        }
    }
    Ok(best)
}

/// Achievable sum rate when only one feedback link, of capacity `cfb`, is
/// present. Boundary points take the best of all applicable regimes.
pub fn achievable_sumrate_extreme<F: Real>(snr: F, inr: F, cfb: F, optimize: bool, grid_steps: usize) -> Result<F, GaussianError> {
    let mut best = F::neg_infinity();
    for case in applicable_regimes(snr, inr)? {
        let v = if case.uses_feedback() {
            let (mut v, ps) = best_designed_split(snr, inr, cfb, case)?;
            if optimize {
                let mut seeds = designed_power_variants(snr, inr, cfb, case)?;
                seeds.push(ps);
                for seed in seeds {
                    v = v.max(optimize_powers(snr, inr, cfb, case, seed, grid_steps)?.1);
                }
            }
            v
        } else {
            rsum_nonfeedback(snr, inr, case)?
        };
        best = best.max(v);
    }
    Ok(best)
}

/// Time sharing between the two single-link extremes: a fraction
/// `λ = cfb1 / (cfb1 + cfb2)` of the time user 1's link carries the whole
/// feedback budget, the rest of the time user 2's.
pub fn achievable_sumrate<F: Real>(snr: F, inr: F, cfb1: F, cfb2: F, optimize: bool) -> Result<F, GaussianError> {
    achievable_sumrate_grid(snr, inr, cfb1, cfb2, optimize, DEFAULT_GRID_STEPS)
}

pub fn achievable_sumrate_grid<F: Real>(
    snr: F,
    inr: F,
    cfb1: F,
    cfb2: F,
    optimize: bool,
    grid_steps: usize,
) -> Result<F, GaussianError> {
    if cfb1 < F::zero() || cfb2 < F::zero() {
        return Err(GaussianError::InvalidParams(format!("negative feedback capacity ({cfb1}, {cfb2})")));
    }
    let total = cfb1 + cfb2;
    let lambda = if total > F::zero() { cfb1 / total } else { F::zero() };
    let first = achievable_sumrate_extreme(snr, inr, total, optimize, grid_steps)?;
    // the channel is symmetric, so the mirrored extreme has the same value
    let second = first;
    Ok(lambda * first + (F::one() - lambda) * second)
}

/// Outer bound minus achievable sum rate; negative values mean a bug.
pub fn gap<F: Real>(snr: F, inr: F, cfb1: F, cfb2: F, optimize: bool) -> Result<F, GaussianError> {
    gap_grid(snr, inr, cfb1, cfb2, optimize, DEFAULT_GRID_STEPS)
}

pub fn gap_grid<F: Real>(snr: F, inr: F, cfb1: F, cfb2: F, optimize: bool, grid_steps: usize) -> Result<F, GaussianError> {
    Ok(symmetric_sumrate_outer(snr, inr, cfb1, cfb2) - achievable_sumrate_grid(snr, inr, cfb1, cfb2, optimize, grid_steps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn db(x: f64) -> f64 {
        10f64.powf(x / 10.0)
    }

    #[test]
    fn regimes() {
        assert_eq!(classify_regime(1e4f64, 10.0).unwrap(), RegimeCase::A);
        assert_eq!(classify_regime(4.0, 64.0).unwrap(), RegimeCase::C);
        assert_eq!(classify_regime(100.0, 0.5).unwrap(), RegimeCase::InrBelowOne);
        assert_eq!(classify_regime(1e6, 1e3).unwrap(), RegimeCase::A);
        assert_eq!(classify_regime(1e6, 1e4).unwrap(), RegimeCase::B);
        assert_eq!(classify_regime(1e6, 1e5).unwrap(), RegimeCase::D);
        assert_eq!(classify_regime(1e6, 1e8).unwrap(), RegimeCase::E);
        assert_eq!(classify_regime(1e6, 1e13).unwrap(), RegimeCase::C);
        assert!(classify_regime(0.0, 1.0).is_err());
        assert!(classify_regime(1.0, -1.0).is_err());
        assert_eq!(applicable_regimes(db(40.0), db(20.0)).unwrap(), vec![RegimeCase::A, RegimeCase::B]);
        assert_eq!("e".parse::<RegimeCase>().unwrap(), RegimeCase::E);
    }

    #[test]
    fn case_a_split() {
        let p = designed_powers(1e4f64, 10.0, 10.0, RegimeCase::A).unwrap();
        assert!((p.p1[1] - 9e-4).abs() < 1e-15);
        assert!((p.p2[1] - 0.45).abs() < 1e-15);
        assert!((p.p2[0] - 0.1).abs() < 1e-15);
        assert!(p.is_valid());

        let p = designed_powers(1e4f64, 1.0, 0.0, RegimeCase::A).unwrap();
        assert_eq!((p.p1[1], p.p1[2], p.p2[1]), (0.0, 0.0, 0.0));
    }

    #[test]
    fn case_c_split_and_rate() {
        let p = designed_powers(0.5f64, 100.0, 3.0, RegimeCase::C).unwrap();
        assert!((p.p2[1] - 0.08).abs() < 1e-15 && (p.p1[2] - 0.08).abs() < 1e-15);
        assert_eq!(p.total1() + p.total2(), 0.16);
        let v = rsum_case(0.5, 100.0, 3.0, &p, RegimeCase::C).unwrap();
        let expected = (100.0f64 * 0.08 / (1.0 + 0.5 * 0.08)).log2().min(3.0);
        assert!((v - expected).abs() < 1e-12);
        assert!(designed_powers(1e3, 10.0, 1.0, RegimeCase::D).is_err());
        assert_eq!(designed_power_variants(1.0f64, 100.0, 3.0, RegimeCase::C).unwrap().len(), 2);
    }

    #[test]
    fn case_a_point() {
        let (snr, inr, cfb) = (1e4f64, 10.0, 10.0);
        let p = designed_powers(snr, inr, cfb, RegimeCase::A).unwrap();
        let v = rsum_case(snr, inr, cfb, &p, RegimeCase::A).unwrap();
        assert!(v > 0.0);
        assert!(v >= symmetric_sumrate_outer(snr, inr, cfb, 0.0) - 9.6);
        assert_eq!(achievable_sumrate_extreme(snr, inr, cfb, false, 32).unwrap(), v);
    }

    #[test]
    fn zero_powers() {
        let z = PowerSplit::<f64>::zero();
        for case in [RegimeCase::A, RegimeCase::B, RegimeCase::C] {
            assert_eq!(rsum_case(100.0, 10.0, 5.0, &z, case).unwrap(), 0.0);
            assert_eq!(rsum_decodable(100.0, 10.0, 5.0, &z, case).unwrap(), 0.0);
        }
    }

    #[test]
    fn nonfeedback_values() {
        let v = rsum_nonfeedback(100.0f64, 0.5, RegimeCase::InrBelowOne).unwrap();
        assert!((v - 2.0 * (1.0 + 100.0 / 1.5f64).log2()).abs() < 1e-12);
        assert!((v - 12.17).abs() < 1e-2);
        let v = rsum_nonfeedback(1e3f64, 1e2, RegimeCase::D).unwrap();
        assert!((v - (1001f64.log2() + (1.0 + 1e3 / 101.0f64).log2() - 1.0)).abs() < 1e-12);
        // 9.97 + 3.45 − 1 with rounded terms
        assert!((v - 12.42).abs() < 1e-2);
        let v = rsum_nonfeedback(50.0f64, 50.0, RegimeCase::E).unwrap();
        assert!((v - (101f64.log2() - 1.0)).abs() < 1e-12);
        assert!(rsum_nonfeedback(50.0f64, 5.0, RegimeCase::A).is_err());
    }

    #[test]
    fn feedback_split_between_links() {
        let (snr, inr) = (db(40.0), db(25.0));
        let both = achievable_sumrate(snr, inr, 5.0, 5.0, false).unwrap();
        assert_eq!(both, achievable_sumrate_extreme(snr, inr, 10.0, false, 32).unwrap());
        assert_eq!(
            achievable_sumrate(snr, inr, 10.0, 0.0, false).unwrap(),
            achievable_sumrate_extreme(snr, inr, 10.0, false, 32).unwrap()
        );
        assert!(achievable_sumrate(snr, inr, -1.0, 0.0, false).is_err());
    }

    #[test]
    fn without_feedback_lattice_terms_vanish() {
        for (snr, inr, case) in [(1e6f64, 10.0, RegimeCase::A), (1e6, 1e4, RegimeCase::B), (10.0, 1e3, RegimeCase::C)] {
            let p = designed_powers(snr, inr, 0.0, case).unwrap();
            assert_eq!(lattice_rates(snr, inr, 0.0, &p, case).unwrap(), [0.0, 0.0]);
        }
    }

    #[test]
    fn optimizer_never_loses_to_its_seed() {
        let (snr, inr, cfb) = (db(40.0), db(15.0), 10.0);
        let seed = designed_powers(snr, inr, cfb, RegimeCase::A).unwrap();
        let (best, v) = optimize_powers(snr, inr, cfb, RegimeCase::A, seed, 32).unwrap();
        assert!(best.is_valid());
        assert!(v >= rsum_decodable(snr, inr, cfb, &seed, RegimeCase::A).unwrap());
    }

    #[test]
    fn optimized_gap_at_moderate_interference() {
        let (snr, inr) = (db(40.0), db(20.0));
        let v = achievable_sumrate(snr, inr, 5.0, 5.0, true).unwrap();
        assert!(symmetric_sumrate_outer(snr, inr, 10.0, 0.0) - v <= 5.0);
        assert!(v >= achievable_sumrate(snr, inr, 5.0, 5.0, false).unwrap());
    }

    #[test]
    fn optimized_sweep_at_20db() {
        // four bits, plus one for the coarse power grid
        for i in 0..=85 {
            let g = gap(db(20.0), db(-10.0 + 2.0 * i as f64), 5.0, 5.0, true).unwrap();
            assert!((0.0..=4.0 + 1.0).contains(&g), "gap {g} at step {i}");
        }
    }

    #[test]
    fn vanishing_channel_has_vanishing_gap() {
        let g = gap(1e-9f64, 1e-9, 0.0, 0.0, false).unwrap();
        assert!(g.abs() < 1e-6);
    }

    #[test]
    fn single_precision_path() {
        let a = achievable_sumrate(1e4f32, 10.0, 5.0, 5.0, false).unwrap();
        let b = achievable_sumrate(1e4f64, 10.0, 5.0, 5.0, false).unwrap();
        assert!((a as f64 - b).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn fixed_splits_are_valid(sdb in 0.0f64..80.0, idb in 0.0f64..160.0, cfb in 0.0f64..20.0) {
            let (snr, inr) = (db(sdb), db(idb));
            for case in applicable_regimes(snr, inr).unwrap() {
                if case.uses_feedback() {
                    for p in designed_power_variants(snr, inr, cfb, case).unwrap() {
                        prop_assert!(p.is_valid(), "{case} {p:?}");
                        let l = lattice_rates(snr, inr, cfb, &p, case).unwrap();
                        prop_assert!(l[0] <= cfb && l[1] <= cfb);
                    }
                }
            }
        }

        #[test]
        fn gap_is_bounded(sdb in 0.0f64..80.0, idb in -10.0f64..160.0, cfb in 0.0f64..20.0) {
            let g = gap(db(sdb), db(idb), cfb / 2.0, cfb / 2.0, false).unwrap();
            prop_assert!((0.0..=14.8 + 1e-6).contains(&g), "gap {g}");
            // per user
            prop_assert!(g / 2.0 <= 7.4 + 1e-6);
        }

        #[test]
        fn regime_constants_hold(sdb in 0.0f64..80.0, idb in -10.0f64..160.0, cfb in 0.0f64..20.0) {
            let (snr, inr) = (db(sdb), db(idb));
            let g = gap(snr, inr, cfb / 2.0, cfb / 2.0, false).unwrap();
            let bound = applicable_regimes(snr, inr).unwrap().into_iter()
                .map(|c| regime_gap_constant(c, snr)).fold(0.0, f64::max);
            prop_assert!(g <= bound + 1e-6, "gap {g} > {bound}");
        }

        #[test]
        fn more_feedback_never_hurts(sdb in 0.0f64..80.0, idb in -10.0f64..160.0, cfb in 0.0f64..20.0, extra in 0.0f64..10.0) {
            let (snr, inr) = (db(sdb), db(idb));
            let lo = achievable_sumrate(snr, inr, cfb / 2.0, cfb / 2.0, false).unwrap();
            let hi = achievable_sumrate(snr, inr, (cfb + extra) / 2.0, (cfb + extra) / 2.0, false).unwrap();
            prop_assert!(hi >= lo - 1e-9, "{hi} < {lo}");
        }

        #[test]
        fn decodable_rate_never_exceeds_formula(sdb in 0.0f64..80.0, idb in 0.0f64..160.0, cfb in 0.0f64..20.0) {
            let (snr, inr) = (db(sdb), db(idb));
            for case in applicable_regimes(snr, inr).unwrap() {
                if case.uses_feedback() {
                    let p = designed_powers(snr, inr, cfb, case).unwrap();
                    prop_assert!(rsum_decodable(snr, inr, cfb, &p, case).unwrap()
                        <= rsum_case(snr, inr, cfb, &p, case).unwrap() + 1e-12);
                }
            }
        }
    }
}
