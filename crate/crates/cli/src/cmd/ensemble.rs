use serde::Serialize;
use zmeasure::arith::{AlgebraicScalar, Tagged};
use zmeasure::ensemble::{pf_closed_form, pf_l, prob_l, HSpec};
use zmeasure::lattice::{inverse_embed, is_conf_l, SplitConfig};
use zmeasure::partition::Partition;

use crate::args::{ConfigArgs, EnsembleCommand};
use crate::output::print_json;

#[derive(Serialize)]
struct PfReport<'a> {
    schema: &'static str,
    weight: &'a HSpec,
    config: &'a SplitConfig,
    admissible: bool,
    pfaffian: AlgebraicScalar,
    closed_form: AlgebraicScalar,
    equal: bool,
    float: f64,
}

#[derive(Serialize)]
struct ProbReport<'a> {
    schema: &'static str,
    weight: &'a HSpec,
    config: &'a SplitConfig,
    probability: Tagged,
    float: f64,
    partition: Option<Partition>,
    measure: Option<Tagged>,
    equal: Option<bool>,
}

pub fn run(cmd: &EnsembleCommand) -> anyhow::Result<bool> {
    match cmd {
        EnsembleCommand::Pf(a) => pf(a),
        EnsembleCommand::Prob(a) => prob(a),
    }
}

fn pf(args: &ConfigArgs) -> anyhow::Result<bool> {
    let spec = args.params.hspec()?;
    let x = args.config()?;
    let pfaffian = pf_l(&spec, &x);
    let closed_form = pf_closed_form(&spec, &x);
    let equal = pfaffian == closed_form;
    let float = pfaffian.to_complex().re;
    print_json(&PfReport {
        schema: "zmeasure.ensemble.pf/1",
        weight: &spec,
        config: &x,
        admissible: is_conf_l(&x),
        pfaffian,
        closed_form,
        equal,
        float,
    })?;
    Ok(equal)
}

fn prob(args: &ConfigArgs) -> anyhow::Result<bool> {
    let spec = args.params.hspec()?;
    let mode = args.params.mode()?;
    let x = args.config()?;
    let probability = prob_l(&spec, &x);
    let partition = inverse_embed(&x, mode);
    let measure = partition.as_ref().map(|l| spec.target_measure(l, mode)).transpose()?;
    let equal = measure.as_ref().map(|m| *m == probability);
    let float = probability.to_complex().re;
    print_json(&ProbReport {
        schema: "zmeasure.ensemble.prob/1",
        weight: &spec,
        config: &x,
        probability,
        float,
        partition,
        measure,
        equal,
    })?;
    Ok(equal.unwrap_or(true))
}
