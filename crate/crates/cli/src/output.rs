use std::fs;
use std::io::{self, Write};
use std::path::Path;

use anyhow::Context;

use crate::failure::{usage, Failure};

/// Nine significant digits, trailing zeros dropped: `1`, `0.125`,
/// `2.71828183`, `1.23456789e-7`. Same input, same bytes.
pub fn sig9(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    // the exponent after rounding to nine digits, not before
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    }
}

fn trim(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

/// Writes `text` to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display()))?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// CSV text with a header row and LF line endings.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    s
}

/// Thread pool for sweeps, capped by `IC_FEEDBACK_THREADS` when set.
pub fn pool() -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("IC_FEEDBACK_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => b = b.num_threads(n),
            _ => return Err(usage(format!("IC_FEEDBACK_THREADS must be a positive integer, got {v:?}"))),
        }
    }
    b.build().map_err(|e| Failure::Other(e.into()))
}

fn quoted(p: &Path) -> String {
    format!("'{}'", p.display().to_string().replace('\'', "''"))
}

pub fn sumrate_plot(csv_path: &Path, betas: &[(String, f64)]) -> String {
    let curves: Vec<String> = betas
        .iter()
        .map(|(label, b)| {
            let title = if *b >= 10.0 {
                format!("beta = inf (drawn at beta = {label})")
            } else {
                format!("beta = {label}")
            };
            format!("{} skip 1 using 1:(abs($2 - {b}) < 1e-12 ? $3 : 1/0) with lines title '{title}'", quoted(csv_path))
        })
        .collect();
    format!(
        "set datafile separator ','\n\
         set xlabel 'alpha = m/n'\n\
         set ylabel 'C_sum / n'\n\
         set key left top\n\
         set grid\n\
         plot {}\n",
        curves.join(", \\\n     ")
    )
}

pub fn gap_plot(csv_path: &Path, snr_db: f64, cfb: f64) -> String {
    format!(
        "set datafile separator ','\n\
         set xlabel 'INR (dB)'\n\
         set ylabel 'bits/s/Hz'\n\
         set key right top\n\
         set grid\n\
         set title 'SNR = {} dB, C_FB = {}'\n\
         plot {p} skip 1 using 1:4 with lines title 'gap', \\\n     \
         {p} skip 1 using 1:2 with lines title 'outer bound', \\\n     \
         {p} skip 1 using 1:3 with lines title 'achievable'\n",
        sig9(snr_db),
        sig9(cfb),
        p = quoted(csv_path)
    )
}
