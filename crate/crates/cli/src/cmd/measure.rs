use serde::Serialize;
use zmeasure::arith::{format_rational, to_f64, AlgebraicScalar, Prefactor};
use zmeasure::measures::{mixed_z_measure, plancherel_n, poisson_plancherel, z_measure_n};
use zmeasure::partition::{enumerate_partitions, partitions_up_to, Partition};

use crate::args::{usage, Format, MeasureArgs};
use crate::output::{csv_writer, print_json, scalar_text};

pub const SCHEMA: &str = "zmeasure.measure/1";

#[derive(Serialize)]
struct Row {
    partition: Partition,
    size: u32,
    value: Option<String>,
    prefactor: String,
    float: Option<f64>,
    error: Option<String>,
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    measure: String,
    rows: Vec<Row>,
}

fn row_from_tagged(lam: Partition, prefactor: &Prefactor, value: &AlgebraicScalar) -> Row {
    let float = (prefactor.to_complex() * value.to_complex()).re;
    Row { size: lam.size(), partition: lam, value: Some(scalar_text(value)), prefactor: prefactor.to_string(), float: Some(float), error: None }
}

pub fn run(args: &MeasureArgs) -> anyhow::Result<bool> {
    let diagrams = match (args.n, args.max_size) {
        (Some(n), None) => enumerate_partitions(n),
        (None, Some(m)) => partitions_up_to(m),
        (None, None) => return usage("pass --n or --max-size"),
        (Some(_), Some(_)) => unreachable!("clap rejects both"),
    }
    .or_else(|e| usage(e.to_string()))?;
    let p = &args.params;
    let theta = p.theta()?;
    let mut rows = Vec::with_capacity(diagrams.len());
    let name;
    if p.plancherel {
        if let Some(eta) = p.eta()? {
            name = format!("poissonized Plancherel, theta={}, eta={}", format_rational(&theta), format_rational(&eta));
            for lam in diagrams {
                let t = poisson_plancherel(&lam, &theta, &eta)?;
                rows.push(row_from_tagged(lam, &t.prefactor, &t.value));
            }
        } else {
            name = format!("Plancherel, theta={}", format_rational(&theta));
            for lam in diagrams {
                let v = plancherel_n(&lam, &theta);
                rows.push(Row {
                    size: lam.size(),
                    partition: lam,
                    value: Some(format_rational(&v)),
                    prefactor: "1".into(),
                    float: Some(to_f64(&v)),
                    error: None,
                });
            }
        }
    } else {
        let jp = p.jack()?;
        if let Some(xi) = p.xi()? {
            name = format!("mixed z-measure, z={}, z'={}, theta={}, xi={}", jp.z, jp.zprime, format_rational(&theta), format_rational(&xi));
            for lam in diagrams {
                let t = mixed_z_measure(&lam, &jp, &xi)?;
                rows.push(row_from_tagged(lam, &t.prefactor, &t.value));
            }
        } else {
            name = format!("z-measure M^(n), z={}, z'={}, theta={}", jp.z, jp.zprime, format_rational(&theta));
            for lam in diagrams {
                let size = lam.size();
                rows.push(match z_measure_n(&lam, &jp) {
                    Ok(v) => Row {
                        partition: lam,
                        size,
                        float: Some(v.to_complex().re),
                        value: Some(v.to_string()),
                        prefactor: "1".into(),
                        error: None,
                    },
                    Err(e) => Row { partition: lam, size, value: None, prefactor: "1".into(), float: None, error: Some(e.to_string()) },
                });
            }
        }
    }
    match args.format {
        Format::Json => print_json(&Report { schema: SCHEMA, measure: name, rows })?,
        Format::Csv => {
            let mut w = csv_writer();
            w.write_record(["partition", "size", "value", "prefactor", "float", "error"])?;
            for r in &rows {
                w.write_record([
                    r.partition.to_string(),
                    r.size.to_string(),
                    r.value.clone().unwrap_or_default(),
                    r.prefactor.clone(),
                    r.float.map(|f| format!("{f:.17e}")).unwrap_or_default(),
                    r.error.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}
