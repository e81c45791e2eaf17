use serde::Serialize;
use zmeasure::verify::{run_suite, Limits, Suite, SuiteReport, REPORT_SCHEMA};

use crate::args::{usage, VerifyArgs};
use crate::output::print_json;

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    passed: bool,
    suites: Vec<SuiteReport>,
}

pub fn run(args: &VerifyArgs) -> anyhow::Result<bool> {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        match Suite::parse(&args.suite) {
            Some(s) => vec![s],
            None => return usage(format!("unknown suite {:?}", args.suite)),
        }
    };
    if args.max_n > 40 || args.max_size > 14 {
        return usage("--max-n is limited to 40 and --max-size to 14");
    }
    if args.max_points > zmeasure::kernel::EXACT_MAX_POINTS.min(zmeasure::kernel::SUBSET_MAX_POINTS) {
        return usage(format!("--max-points is limited to {}", zmeasure::kernel::EXACT_MAX_POINTS));
    }
    let limits =
        Limits { max_n: args.max_n, max_size: args.max_size, max_points: args.max_points, random_configs: args.random };
    let reports: Vec<SuiteReport> = suites.into_iter().map(|s| run_suite(s, limits)).collect();
    let passed = reports.iter().all(|r| r.passed);
    print_json(&Report { schema: REPORT_SCHEMA, passed, suites: reports })?;
    Ok(passed)
}
