use num_complex::Complex64;
use serde::Serialize;
use zmeasure::ensemble::{pf_by_degree, HKind, PARTIAL_SUM_MAX_SIZE};
use zmeasure::kernel::{one_point_convergence, ConvergenceRow};

use crate::args::{usage, ConvergenceArgs, Format};
use crate::output::{csv_writer, print_json, scalar_text};

#[derive(Serialize)]
struct Row {
    n: u32,
    degree_sum: String,
    expected: String,
    equal: bool,
    partial_sum: f64,
    residual: f64,
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    weight: String,
    closed_form: String,
    closed_form_float: f64,
    all_equal: bool,
    rows: Vec<Row>,
    kernel: Option<Vec<ConvergenceRow>>,
}

pub fn run(args: &ConvergenceArgs) -> anyhow::Result<bool> {
    if args.max_size > PARTIAL_SUM_MAX_SIZE {
        return usage(format!("--max-size is limited to {PARTIAL_SUM_MAX_SIZE}"));
    }
    let spec = args.params.hspec()?;
    let mode = match spec.kind() {
        HKind::Plancherel => args.params.mode()?,
        _ => spec.default_mode(),
    };
    let closed = spec.normalizer();
    let closed_f = closed.to_complex();
    let mut partial = Complex64::new(0.0, 0.0);
    let mut rows = Vec::new();
    for (n, v) in pf_by_degree(&spec, mode, args.max_size)?.into_iter().enumerate() {
        let expected = spec.degree_mass(n as u32);
        partial += v.to_complex();
        rows.push(Row {
            n: n as u32,
            equal: v == expected,
            degree_sum: scalar_text(&v),
            expected: scalar_text(&expected),
            partial_sum: partial.re,
            residual: (closed_f - partial).norm(),
        });
    }
    let all_equal = rows.iter().all(|r| r.equal);
    let radii = args.radii()?;
    let kernel = if radii.is_empty() {
        None
    } else {
        Some(one_point_convergence(&spec, &radii).or_else(|e| usage(e.to_string()))?)
    };
    match args.format {
        Format::Json => print_json(&Report {
            schema: "zmeasure.convergence/1",
            weight: spec.to_string(),
            closed_form: closed.to_string(),
            closed_form_float: closed_f.re,
            all_equal,
            rows,
            kernel,
        })?,
        Format::Csv => {
            let mut w = csv_writer();
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(all_equal)
}
