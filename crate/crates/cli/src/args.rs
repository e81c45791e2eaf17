use clap::{Args, Parser, Subcommand, ValueEnum};
use zmeasure::arith::{int, parse_rational, rat, GaussianRational, Rational};
use zmeasure::ensemble::HSpec;
use zmeasure::lattice::{embed, EmbedMode, HalfInt, SplitConfig};
use zmeasure::measures::JackParams;
use zmeasure::partition::Partition;

/// Invalid flags or parameter values; reported with exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(UsageError(msg.into()).into())
}

#[derive(Parser, Debug)]
#[command(name = "zmeasure", version, about = "Exact z-measures and Plancherel measures as Pfaffian L-ensembles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate a measure over Y_n or over all |λ| ≤ max-size.
    Measure(MeasureArgs),
    /// Run verification suites; exit code 1 if any identity fails.
    Verify(VerifyArgs),
    /// Query the L-ensemble on a single configuration.
    #[command(subcommand)]
    Ensemble(EnsembleCommand),
    /// Correlation kernel K = J + (J+L)^-1 on a finite window.
    Kernel(KernelArgs),
    /// Draw exact samples with a seeded generator.
    Sample(SampleArgs),
    /// Per-degree partial sums of Pf(J+L) against the closed form.
    Convergence(ConvergenceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Parameters shared by every command that needs a measure.
#[derive(Args, Debug, Clone)]
pub struct MeasureParams {
    /// Jack parameter; the Pfaffian commands accept only 1/2 and 2.
    #[arg(long, default_value = "2")]
    pub theta: String,
    /// z as "p/q" or "p/q+r/s i".
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub zprime: Option<String>,
    /// Use the Plancherel measure instead of a z-measure.
    #[arg(long)]
    pub plancherel: bool,
    /// Mixing parameter ξ ∈ (0, 1) for mixed z-measures.
    #[arg(long)]
    pub xi: Option<String>,
    /// Poissonization parameter η > 0.
    #[arg(long)]
    pub eta: Option<String>,
}

pub fn rational(name: &str, s: &str) -> anyhow::Result<Rational> {
    parse_rational(s).or_else(|e| usage(format!("--{name}: {e}")))
}

fn gaussian(name: &str, s: &str) -> anyhow::Result<GaussianRational> {
    s.parse().or_else(|e| usage(format!("--{name}: {e}")))
}

impl MeasureParams {
    pub fn theta(&self) -> anyhow::Result<Rational> {
        let t = rational("theta", &self.theta)?;
        if t <= int(0) {
            return usage("--theta must be positive");
        }
        Ok(t)
    }

    /// θ restricted to the two Pfaffian cases.
    pub fn mode(&self) -> anyhow::Result<EmbedMode> {
        let t = self.theta()?;
        if t == int(2) {
            Ok(EmbedMode::Theta2)
        } else if t == rat(1, 2) {
            Ok(EmbedMode::ThetaHalf)
        } else {
            usage("--theta must be 1/2 or 2 for this command")
        }
    }

    pub fn jack(&self) -> anyhow::Result<JackParams> {
        let (Some(z), Some(zp)) = (&self.z, &self.zprime) else {
            return usage("z-measures need both --z and --zprime (or pass --plancherel)");
        };
        Ok(JackParams::new(gaussian("z", z)?, gaussian("zprime", zp)?, self.theta()?)?)
    }

    pub fn xi(&self) -> anyhow::Result<Option<Rational>> {
        let Some(s) = &self.xi else { return Ok(None) };
        let xi = rational("xi", s)?;
        if xi <= int(0) || xi >= int(1) {
            return usage("--xi must lie in (0, 1)");
        }
        Ok(Some(xi))
    }

    pub fn eta(&self) -> anyhow::Result<Option<Rational>> {
        let Some(s) = &self.eta else { return Ok(None) };
        let eta = rational("eta", s)?;
        if eta <= int(0) {
            return usage("--eta must be positive");
        }
        Ok(Some(eta))
    }

    /// The weight function of the matching L-ensemble.
    pub fn hspec(&self) -> anyhow::Result<HSpec> {
        let mode = self.mode()?;
        if self.plancherel {
            let Some(eta) = self.eta()? else { return usage("the Plancherel ensemble needs --eta") };
            return Ok(HSpec::plancherel(eta)?);
        }
        let p = self.jack()?;
        let Some(xi) = self.xi()? else { return usage("the z-measure ensemble needs --xi") };
        Ok(match mode {
            EmbedMode::Theta2 => HSpec::z_theta2(p.z, p.zprime, xi)?,
            EmbedMode::ThetaHalf => HSpec::z_half(p.z, p.zprime, xi)?,
        })
    }
}

#[derive(Args, Debug)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub params: MeasureParams,
    /// Diagrams of exactly this size.
    #[arg(long, conflicts_with = "max_size")]
    pub n: Option<u32>,
    /// All diagrams with at most this many boxes.
    #[arg(long)]
    pub max_size: Option<u32>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// normalization, symmetry, frobenius, pfaffian, theorems, kernel or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 10)]
    pub max_n: u32,
    #[arg(long, default_value_t = 8)]
    pub max_size: u32,
    /// Largest kernel window, in points.
    #[arg(long, default_value_t = 10)]
    pub max_points: usize,
    /// Number of random inadmissible configurations per weight function.
    #[arg(long, default_value_t = 200)]
    pub random: usize,
}

#[derive(Args, Debug)]
pub struct ConfigArgs {
    #[command(flatten)]
    pub params: MeasureParams,
    /// Embed this diagram, e.g. "3,1" (empty string for ∅).
    #[arg(long, conflicts_with_all = ["minus", "plus"])]
    pub partition: Option<String>,
    /// Negative points as 2x, e.g. "-3,-1".
    #[arg(long, allow_hyphen_values = true)]
    pub minus: Option<String>,
    /// Positive points as 2x, e.g. "1,5".
    #[arg(long)]
    pub plus: Option<String>,
}

pub fn parse_partition(s: &str) -> anyhow::Result<Partition> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    let parts = if body.trim().is_empty() {
        Vec::new()
    } else {
        body.split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .or_else(|e| usage(format!("--partition: {e}")))?
    };
    Partition::new(parts).or_else(|e| usage(format!("--partition: {e}")))
}

fn parse_points(name: &str, s: Option<&String>) -> anyhow::Result<Vec<HalfInt>> {
    let Some(s) = s else { return Ok(Vec::new()) };
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let v: i64 = t.parse().or_else(|e| usage(format!("--{name}: {e}")))?;
            HalfInt::from_twice(v).or_else(|e| usage(format!("--{name}: {e}")))
        })
        .collect()
}

impl ConfigArgs {
    pub fn config(&self) -> anyhow::Result<SplitConfig> {
        if let Some(p) = &self.partition {
            return Ok(embed(&parse_partition(p)?, self.params.mode()?));
        }
        let minus = parse_points("minus", self.minus.as_ref())?;
        let plus = parse_points("plus", self.plus.as_ref())?;
        SplitConfig::new(minus, plus).or_else(|e| usage(format!("configuration: {e}")))
    }
}

#[derive(Subcommand, Debug)]
pub enum EnsembleCommand {
    /// Pf L(X|X) as a matrix Pfaffian and from the product formula.
    Pf(ConfigArgs),
    /// Prob_L(X) and, for embedded diagrams, the measure it should equal.
    Prob(ConfigArgs),
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    #[command(flatten)]
    pub params: MeasureParams,
    /// Window radius as 2x (odd, positive); the window is all |x| ≤ radius.
    #[arg(long, default_value_t = 5)]
    pub radius: i64,
    /// Use floating arithmetic even for small windows.
    #[arg(long)]
    pub float: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    pub params: MeasureParams,
    /// Sample from M^(n) on Y_n.
    #[arg(long)]
    pub n: Option<u32>,
    /// Truncation of the mixed or poissonized measure (with --xi or --eta).
    #[arg(long)]
    pub max_size: Option<u32>,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub params: MeasureParams,
    #[arg(long, default_value_t = 12)]
    pub max_size: u32,
    /// Also report one-point correlations on growing windows, radii as 2x, e.g. "5,9,13".
    #[arg(long)]
    pub radii: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

impl ConvergenceArgs {
    pub fn radii(&self) -> anyhow::Result<Vec<HalfInt>> {
        let v = parse_points("radii", self.radii.as_ref())?;
        if v.iter().any(|r| !r.is_positive()) {
            return usage("--radii must be positive");
        }
        Ok(v)
    }
}
