use std::path::Path;

use ic_feedback::ldic::capacity::{check_appendix_b, normalized_sumrate, theorem3_region};
use ic_feedback::ldic::model::LdicParams;
use ic_feedback::ldic::sim::{
    build_scheme, motivating_params, motivating_scheme, simulate_with, MessageSource, SimOptions,
};
use ic_feedback::{Rational, Scalar};
use rayon::prelude::*;

use crate::args::{rational, RegionArgs, SimulateArgs, SumrateSweepArgs};
use crate::failure::{usage, Failure};
use crate::output::{csv, emit, pool, sig9, sumrate_plot};

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn region(a: &RegionArgs) -> Result<(), Failure> {
    if let Some(path) = &a.grid {
        return grid(path, a.check_appendix_b);
    }
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| usage(format!("--{name} is required")));
    let g = LdicParams::new(
        need(a.n11, "n11")?,
        need(a.n22, "n22")?,
        need(a.n12, "n12")?,
        need(a.n21, "n21")?,
        a.cfb1,
        a.cfb2,
    );
    let r = theorem3_region(&g);
    println!("channel {g}");
    println!("constraints:");
    for c in r.constraints() {
        println!("  {c}");
    }
    println!("vertices:");
    for v in r.vertices()? {
        println!("  {v}");
    }
    println!("max sum-rate: {}", r.max_sum_rate()?);
    if a.check_appendix_b {
        let ok = check_appendix_b(&g);
        println!("scheme region check: {}", verdict(ok));
        if !ok {
            return Err(Failure::Claim(format!("scheme region differs from the capacity region for {g}")));
        }
    }
    Ok(())
}

fn parse_row(line: &str) -> Option<LdicParams> {
    let f: Vec<&str> = line.split(',').map(str::trim).collect();
    if f.len() != 6 {
        return None;
    }
    let n: Vec<usize> = f[..4].iter().map(|s| s.parse().ok()).collect::<Option<_>>()?;
    let c1 = rational(f[4]).ok()?;
    let c2 = rational(f[5]).ok()?;
    if c1 < Rational::from_integer(0) || c2 < Rational::from_integer(0) {
        return None;
    }
    Some(LdicParams::new(n[0], n[1], n[2], n[3], c1, c2))
}

fn grid(path: &Path, check: bool) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_row(line) {
            Some(g) => rows.push((line.to_string(), g)),
            // a leading header row is allowed
            None if rows.is_empty() && i == 0 => continue,
            None => return Err(usage(format!("{}:{}: expected n11,n22,n12,n21,cfb1,cfb2", path.display(), i + 1))),
        }
    }
    let results: Vec<(String, Rational, Option<bool>)> = pool()?.install(|| {
        rows.par_iter()
            .map(|(line, g)| {
                let r = theorem3_region(g);
                let sum = r.max_sum_rate().expect("capacity regions are bounded");
                (line.clone(), sum, check.then(|| check_appendix_b(g)))
            })
            .collect()
    });
    let mut failures = 0;
    for (line, sum, ok) in &results {
        match ok {
            Some(ok) => {
                failures += usize::from(!ok);
                println!("{line} sum={sum} {}", verdict(*ok));
            }
            None => println!("{line} sum={sum}"),
        }
    }
    if check {
        println!("checked {} rows, {failures} failed", results.len());
        if failures > 0 {
            return Err(Failure::Claim(format!("{failures} rows failed the scheme region check")));
        }
    }
    Ok(())
}

pub fn sumrate_sweep(a: &SumrateSweepArgs) -> Result<(), Failure> {
    let zero = Rational::from_integer(0);
    if a.alpha_step <= zero {
        return Err(usage("--alpha-step must be positive"));
    }
    if a.alpha_stop < a.alpha_start {
        return Err(usage("--alpha-stop must not be below --alpha-start"));
    }
    if a.beta.is_empty() {
        return Err(usage("--beta needs at least one value"));
    }
    let span = (a.alpha_stop - a.alpha_start) / a.alpha_step;
    let count = span.floor().to_integer() as usize + 1;
    let jobs: Vec<(Rational, Rational)> = a
        .beta
        .iter()
        .flat_map(|&b| (0..count).map(move |k| (b, a.alpha_start + a.alpha_step * Rational::from_integer(k as i64))))
        .collect();
    // exact rationals; rounding happens only when printing
    let rows: Vec<Vec<String>> = pool()?.install(|| {
        jobs.par_iter()
            .map(|&(b, al)| vec![sig9(al.as_f64()), sig9(b.as_f64()), sig9(normalized_sumrate(al, b).as_f64())])
            .collect()
    });
    emit(a.out.as_deref(), &csv(&["alpha", "beta", "normalized_sumrate"], &rows))?;
    if let (Some(plot), Some(out)) = (&a.plot, &a.out) {
        let betas: Vec<(String, f64)> = a.beta.iter().map(|b| (sig9(b.as_f64()), b.as_f64())).collect();
        emit(Some(plot), &sumrate_plot(out, &betas))?;
    }
    Ok(())
}

pub fn simulate(a: &SimulateArgs) -> Result<(), Failure> {
    let (g, scheme) = if a.motivating {
        (motivating_params(), motivating_scheme())
    } else {
        if a.cfb < 0 {
            return Err(usage("--cfb must be nonnegative"));
        }
        let (n, m) = (a.n.unwrap_or(0), a.m.unwrap_or(0));
        let g = LdicParams::symmetric(n, m, a.cfb);
        let s = build_scheme(&g)?;
        (g, s)
    };
    let source = if a.zero_messages { MessageSource::Zeros } else { MessageSource::Seeded(a.seed) };
    let r = simulate_with(&g, &scheme, a.blocks, source, SimOptions { cross_check: a.cross_check })?;
    println!("{r}");
    println!("channel {g}");
    println!(
        "blocks {}: achieved sum-rate {} (steady state {})",
        r.blocks,
        r.achieved.sum(),
        scheme.rates.sum()
    );
    if let Some(agree) = r.gf2_agrees {
        println!("gf2 cross-check: {}", if agree { "agrees" } else { "DISAGREES" });
    }
    if a.trace {
        print!("{}", r.trace_text());
    }
    if !r.decode_ok || !r.relay_ok || r.gf2_agrees == Some(false) {
        return Err(Failure::Claim("decoding failed".into()));
    }
    Ok(())
}
