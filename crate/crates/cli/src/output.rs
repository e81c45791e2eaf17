use std::io::Write;

use serde::Serialize;
use zmeasure::arith::AlgebraicScalar;

/// Exact text of a scalar; values outside ℚ(i) are written in powers of `s = c^(1/4)`.
pub fn scalar_text(v: &AlgebraicScalar) -> String {
    match v.as_gaussian() {
        Some(g) => g.to_string(),
        None => format!("{v} where s^4 = {}", zmeasure::arith::format_rational(v.base().value())),
    }
}

pub fn print_json(value: &impl Serialize) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn csv_writer() -> csv::Writer<std::io::Stdout> {
    csv::Writer::from_writer(std::io::stdout())
}
