use std::io::{self, Write};

use super::SweepRow;
use crate::bogoliubov::DispersionPoint;

pub const SWEEP_HEADER: &str =
    "axis1_name,axis1,axis2_name,axis2,S12,S21,Siso_dB,stable_bright,stable_dark";

pub const DISPERSION_HEADER: &str =
    "h_over_hsp,omega_alpha,omega_beta,omega_cavity,omega_1,omega_2,omega_3";

/// `%.{sig}g`-style formatting: `sig` significant digits, trailing zeros
/// trimmed, scientific notation outside [1e-4, 10^sig).
pub fn format_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format_sig(v, 12)).unwrap_or_default()
}

/// Write sweep rows in the fixed CSV schema.
pub fn write_sweep_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        let (n2, v2) = match r.axis2 {
            Some((p, v)) => (p.as_str(), format_sig(v, 12)),
            None => ("", String::new()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.axis1.0.as_str(),
            format_sig(r.axis1.1, 12),
            n2,
            v2,
            opt(r.s12),
            opt(r.s21),
            opt(r.s_iso),
            r.stable_bright,
            r.stable_dark
        )?;
    }
    Ok(())
}

pub fn write_dispersion_csv<W: Write>(mut out: W, points: &[DispersionPoint]) -> io::Result<()> {
    writeln!(out, "{DISPERSION_HEADER}")?;
    for p in points {
        let cells: Vec<String> = std::iter::once(p.h)
            .chain(p.bare)
            .chain(p.dressed)
            .map(|x| format_sig(x, 12))
            .collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}
