use std::io::{self, Write};

use bohr_core::RadiusResult;
use serde_json::Value;

pub const CSV_HEADER: [&str; 10] = ["psi", "family", "m", "N", "mode", "r0", "rb", "residual", "iterations", "sharp"];

/// `%.12g`: twelve significant digits, trailing zeros dropped.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if !(-5..12).contains(&exp) {
        let s = format!("{x:.11e}");
        let (mant, e) = s.split_once('e').expect("scientific");
        return format!("{}e{}", trim_zeros(mant), e);
    } else {
        format!("{x:.*}", (11 - exp).max(0) as usize)
    };
    trim_zeros(&s).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Rounds every non-integer number in `v` to twelve significant digits.
pub fn round_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            if let Some(r) = sig12(x).parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_json),
        Value::Object(o) => o.values_mut().for_each(round_json),
        _ => {}
    }
}

pub fn write_json(out: &mut impl Write, value: &impl serde::Serialize) -> io::Result<()> {
    let mut v = serde_json::to_value(value).map_err(io::Error::other)?;
    round_json(&mut v);
    serde_json::to_writer_pretty(&mut *out, &v).map_err(io::Error::other)?;
    writeln!(out)
}

pub fn result_fields(r: &RadiusResult) -> [String; 10] {
    [
        r.psi.clone(),
        r.family.to_string(),
        r.m.to_string(),
        r.n.to_string(),
        r.mode.to_string(),
        sig12(r.r0),
        sig12(r.rb),
        sig12(r.residual),
        r.iterations.to_string(),
        r.sharp.to_string(),
    ]
}

pub fn write_csv<W: Write>(out: W, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

pub fn write_table(out: &mut impl Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |out: &mut dyn Write, cells: &mut dyn Iterator<Item = &str>| -> io::Result<()> {
        let padded: Vec<String> = cells.zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", padded.join("  ").trim_end())
    };
    line(out, &mut header.iter().copied())?;
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    writeln!(out, "{}", rule.join("  "))?;
    for row in rows {
        line(out, &mut row.iter().map(String::as_str))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(0.25588896221371), "0.255888962214");
        assert_eq!(sig12(0.2), "0.2");
        assert_eq!(sig12(1.0 / 3.0), "0.333333333333");
        assert_eq!(sig12(123.0), "123");
        assert_eq!(sig12(-2.5e-11), "-2.5e-11");
        assert_eq!(sig12(0.0), "0");
    }

    #[test]
    fn json_rounding_keeps_integers() {
        let mut v = serde_json::json!({"a": 0.1234567890123456, "n": 3, "l": [1.0 / 3.0]});
        round_json(&mut v);
        assert_eq!(v.to_string(), r#"{"a":0.123456789012,"l":[0.333333333333],"n":3}"#);
    }
}
