use num_complex::Complex64;
use serde::Serialize;
use zmeasure::kernel::{kernel_k, kernel_k_float, KernelMatrix, Window, EXACT_MAX_POINTS};
use zmeasure::lattice::HalfInt;
use zmeasure::linalg::FieldElem;

use crate::args::{usage, Format, KernelArgs};
use crate::output::{csv_writer, print_json};

#[derive(Serialize)]
struct Row {
    x: i64,
    y: i64,
    k_pp: f64,
    k_pd: f64,
    k_dp: f64,
    k_dd: f64,
    imag_max: f64,
    exact: bool,
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    weight: String,
    radius: i64,
    exact: bool,
    inverse_exact: Option<bool>,
    rows: Vec<Row>,
}

fn rows_from<T: FieldElem>(k: &KernelMatrix<T>, exact: bool, to_c: impl Fn(&T) -> Complex64) -> Vec<Row> {
    let pts = k.points();
    let mut rows = Vec::with_capacity(pts.len() * pts.len());
    for (a, x) in pts.iter().enumerate() {
        for (b, y) in pts.iter().enumerate() {
            let block = [
                to_c(&k.k.get(2 * a, 2 * b)),
                to_c(&k.k.get(2 * a, 2 * b + 1)),
                to_c(&k.k.get(2 * a + 1, 2 * b)),
                to_c(&k.k.get(2 * a + 1, 2 * b + 1)),
            ];
            rows.push(Row {
                x: x.twice(),
                y: y.twice(),
                k_pp: block[0].re,
                k_pd: block[1].re,
                k_dp: block[2].re,
                k_dd: block[3].re,
                imag_max: block.iter().map(|c| c.im.abs()).fold(0.0, f64::max),
                exact,
            });
        }
    }
    rows
}

pub fn run(args: &KernelArgs) -> anyhow::Result<bool> {
    let spec = args.params.hspec()?;
    let radius = HalfInt::from_twice(args.radius).or_else(|e| usage(format!("--radius: {e}")))?;
    let w = Window::new(radius).or_else(|e| usage(format!("--radius: {e}")))?;
    let exact = !args.float && w.len() <= EXACT_MAX_POINTS;
    let (rows, inverse_exact) = if exact {
        let comp = kernel_k(&spec, &w)?;
        let ok = comp.inverse_is_exact();
        (rows_from(&comp.kernel, true, |v| v.to_complex()), Some(ok))
    } else {
        let k = kernel_k_float(&spec, &w).or_else(|e| usage(e.to_string()))?;
        (rows_from(&k, false, |v| *v), None)
    };
    match args.format {
        Format::Json => print_json(&Report {
            schema: "zmeasure.kernel/1",
            weight: spec.to_string(),
            radius: radius.twice(),
            exact,
            inverse_exact,
            rows,
        })?,
        Format::Csv => {
            let mut out = csv_writer();
            for r in &rows {
                out.serialize(r)?;
            }
            out.flush()?;
        }
    }
    Ok(inverse_exact.unwrap_or(true))
}
