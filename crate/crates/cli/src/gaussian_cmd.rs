use ic_feedback::gaussian::achievable::{achievable_sumrate_grid, classify_regime, DEFAULT_GRID_STEPS};
use ic_feedback::gaussian::bounds::{
    outer_region_at_rho, sumrate_outer, symmetric_outer_terms, symmetric_sumrate_outer, GaussianParams, RhoQuery,
};
use rayon::prelude::*;

use crate::args::{BoundsArgs, GapSweepArgs};
use crate::failure::{usage, Failure};
use crate::output::{csv, emit, gap_plot, pool, sig9};

/// Gaps this far below zero are rounding, not a violated bound.
const NEGATIVE_GAP_TOL: f64 = 1e-9;

fn from_db(db: f64) -> Result<f64, Failure> {
    let v = 10f64.powf(db / 10.0);
    if !db.is_finite() || !v.is_finite() || v <= 0.0 {
        return Err(usage(format!("{db} dB is out of range")));
    }
    Ok(v)
}

pub fn bounds(a: &BoundsArgs) -> Result<(), Failure> {
    let (snr, inr) = (from_db(a.snr_db)?, from_db(a.inr_db)?);
    let p = GaussianParams::symmetric(snr, inr, a.cfb1, a.cfb2);
    let regime = classify_regime(snr, inr)?;
    let [t1, t2, t3] = symmetric_outer_terms(snr, inr, a.cfb1, a.cfb2);
    let outer = symmetric_sumrate_outer(snr, inr, a.cfb1, a.cfb2);
    let full = sumrate_outer(&p, a.rho_steps)?;
    let ach = achievable_sumrate_grid(snr, inr, a.cfb1, a.cfb2, a.optimize, DEFAULT_GRID_STEPS)?;
    println!("snr {} ({} dB), inr {} ({} dB), cfb ({}, {})", sig9(snr), sig9(a.snr_db), sig9(inr), sig9(a.inr_db), sig9(a.cfb1), sig9(a.cfb2));
    println!("regime {regime}");
    println!("symmetric outer terms: {}, {}, {}", sig9(t1), sig9(t2), sig9(t3));
    println!("symmetric outer sum-rate: {}", sig9(outer));
    println!("correlation-maximized outer sum-rate: {}", sig9(full));
    println!("achievable sum-rate: {}", sig9(ach));
    println!("gap: {}", sig9(outer - ach));
    if let Some(rho) = a.rho {
        let q = RhoQuery::new(rho)?;
        println!("outer region at rho = {}:", sig9(rho));
        for c in outer_region_at_rho(&p, &q)?.constraints() {
            println!("  {} R1 + {} R2 <= {}", sig9(c.c1), sig9(c.c2), sig9(c.bound));
        }
    }
    Ok(())
}

pub fn gap_sweep(a: &GapSweepArgs) -> Result<(), Failure> {
    if a.inr_step_db.is_nan() || a.inr_step_db <= 0.0 || !a.inr_step_db.is_finite() {
        return Err(usage("--inr-step-db must be positive"));
    }
    if a.inr_stop_db < a.inr_start_db {
        return Err(usage("--inr-stop-db must not be below --inr-start-db"));
    }
    let snr = from_db(a.snr_db)?;
    let (cfb1, cfb2) = match (a.cfb1, a.cfb2) {
        (Some(c1), Some(c2)) => (c1, c2),
        _ => (a.cfb / 2.0, a.cfb / 2.0),
    };
    let count = ((a.inr_stop_db - a.inr_start_db) / a.inr_step_db + 1e-9).floor() as usize + 1;
    let axis: Vec<f64> = (0..count).map(|k| a.inr_start_db + a.inr_step_db * k as f64).collect();
    for &db in &axis {
        from_db(db)?;
    }
    let points: Vec<Result<(f64, f64, f64, String), Failure>> = pool()?.install(|| {
        axis.par_iter()
            .map(|&db| {
                let inr = from_db(db)?;
                let outer = symmetric_sumrate_outer(snr, inr, cfb1, cfb2);
                let ach = achievable_sumrate_grid(snr, inr, cfb1, cfb2, a.optimize, a.grid_steps)?;
                Ok((db, outer, ach, classify_regime(snr, inr)?.to_string()))
            })
            .collect()
    });
    let points = points.into_iter().collect::<Result<Vec<_>, _>>()?;

    let rows: Vec<Vec<String>> = points
        .iter()
        .map(|(db, o, ach, reg)| vec![sig9(*db), sig9(*o), sig9(*ach), sig9(o - ach), reg.clone()])
        .collect();
    emit(a.out.as_deref(), &csv(&["inr_db", "outer", "achievable", "gap", "regime"], &rows))?;
    if let (Some(plot), Some(out)) = (&a.plot, &a.out) {
        emit(Some(plot), &gap_plot(out, a.snr_db, cfb1 + cfb2))?;
    }

    let (worst_db, worst) = points
        .iter()
        .map(|(db, o, ach, _)| (*db, o - ach))
        .fold((f64::NAN, f64::NEG_INFINITY), |m, p| if p.1 > m.1 { p } else { m });
    let lowest = points.iter().map(|(_, o, ach, _)| o - ach).fold(f64::INFINITY, f64::min);
    let summary = format!("max gap {} at INR {} dB (SNR {} dB, {} points)", sig9(worst), sig9(worst_db), sig9(a.snr_db), points.len());
    // keep stdout clean when it carries the CSV
    if a.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    if lowest < -NEGATIVE_GAP_TOL {
        return Err(Failure::Claim(format!("negative gap {} (achievable above the outer bound)", sig9(lowest))));
    }
    if let Some(limit) = a.max_gap {
        if worst > limit {
            return Err(Failure::Claim(format!("max gap {} exceeds {}", sig9(worst), sig9(limit))));
        }
    }
    Ok(())
}
