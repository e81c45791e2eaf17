use serde::Serialize;
use zmeasure::partition::Partition;
use zmeasure::sampler::{SampleError, Sampler, TailMass, Target};

use crate::args::{usage, Format, SampleArgs};
use crate::output::{csv_writer, print_json};

#[derive(Serialize)]
struct Report<'a> {
    schema: &'static str,
    algorithm: &'static str,
    seed: u64,
    tail_mass: Option<&'a TailMass>,
    samples: Vec<Partition>,
}

fn target(args: &SampleArgs) -> anyhow::Result<Target> {
    let p = &args.params;
    let theta = p.theta()?;
    Ok(match (args.n, args.max_size, p.plancherel) {
        (Some(n), None, true) => Target::Plancherel { theta, n },
        (Some(n), None, false) => Target::ZMeasure { params: p.jack()?, n },
        (None, Some(max_size), true) => {
            let Some(eta) = p.eta()? else { return usage("--max-size with --plancherel needs --eta") };
            Target::Poisson { theta, eta, max_size }
        }
        (None, Some(max_size), false) => {
            let Some(xi) = p.xi()? else { return usage("--max-size needs --xi for z-measures") };
            Target::MixedZ { params: p.jack()?, xi, max_size }
        }
        _ => return usage("pass exactly one of --n or --max-size"),
    })
}

pub fn run(args: &SampleArgs) -> anyhow::Result<bool> {
    let target = target(args)?;
    let mut sampler = match Sampler::new(&target, args.seed) {
        Ok(s) => s,
        Err(e @ (SampleError::NotPositive(_) | SampleError::BadWeight(_) | SampleError::Partition(_))) => {
            return usage(e.to_string())
        }
        Err(e) => return Err(e.into()),
    };
    let samples = sampler.draw_many(args.count);
    match args.format {
        Format::Json => print_json(&Report {
            schema: "zmeasure.sample/1",
            algorithm: sampler.algorithm(),
            seed: sampler.seed(),
            tail_mass: sampler.tail_mass(),
            samples,
        })?,
        Format::Csv => {
            println!("# algorithm={} seed={}", sampler.algorithm(), sampler.seed());
            if let Some(t) = sampler.tail_mass() {
                println!("# tail_mass_float={:e} tail_mass_exact={}", t.float, t.exact.as_deref().unwrap_or("n/a"));
            }
            let mut w = csv_writer();
            w.write_record(["index", "partition", "size"])?;
            for (i, s) in samples.iter().enumerate() {
                w.write_record([i.to_string(), s.to_string(), s.size().to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}
