//! Run configuration: command-line flags layered over an optional JSON
//! file layered over defaults.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use wrm_core::assembly::BasisKind;
use wrm_core::problems::{BeamParams, HeatParams, ProblemKind, ProblemSpec, Scheme, DEFAULT_N};
use wrm_core::solvers::{JacobianMode, Method, SolveOptions};

use crate::args::RunArgs;
use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_TRIALS: usize = 20;
pub const DEFAULT_CASES: usize = 200;
pub const DEFAULT_SWEEP: [usize; 3] = [4, 6, 8];
/// Side of the random matrices in the property suite.
pub const PROPERTY_SIZE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Solve,
    JacobianCheck,
    Properties,
    Compare,
    List,
}

impl CommandKind {
    pub fn default_output(self) -> OutputFormat {
        match self {
            CommandKind::Compare => OutputFormat::Csv,
            CommandKind::List => OutputFormat::Table,
            _ => OutputFormat::Json,
        }
    }

    fn needs_problem(self) -> bool {
        matches!(self, CommandKind::Solve | CommandKind::JacobianCheck)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

impl OutputFormat {
    pub const ALL: [OutputFormat; 3] = [OutputFormat::Json, OutputFormat::Csv, OutputFormat::Table];

    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Table => "table",
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        OutputFormat::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown output format `{s}` (expected json, csv or table)"))
    }
}

/// Every setting as optional, in the shape of the JSON config file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    pub problem: Option<String>,
    pub scheme: Option<String>,
    pub n: Option<usize>,
    pub basis: Option<String>,
    pub jacobian: Option<String>,
    pub method: Option<String>,
    #[serde(alias = "tol_residual")]
    pub tol_residual: Option<f64>,
    #[serde(alias = "tol_step")]
    pub tol_step: Option<f64>,
    pub damping: Option<f64>,
    #[serde(alias = "max_iter")]
    pub max_iter: Option<usize>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub cases: Option<usize>,
    pub output: Option<String>,
    pub alpha: Option<f64>,
    pub t0: Option<f64>,
    #[serde(alias = "q_l")]
    pub q_l: Option<f64>,
    pub length: Option<f64>,
    pub load: Option<f64>,
    pub stiffness: Option<f64>,
    pub ns: Option<Vec<usize>>,
    pub timing: Option<bool>,
}

impl Settings {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config("config", e))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Flag values; a positional problem name and `--problem` must agree.
    pub fn from_flags(args: &RunArgs) -> Result<Self, CliError> {
        let problem = match (&args.problem_name, &args.problem) {
            (Some(a), Some(b)) if a != b => {
                return Err(CliError::config(
                    "problem",
                    format!("positional `{a}` conflicts with --problem `{b}`"),
                ))
            }
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        Ok(Self {
            problem,
            scheme: args.scheme.clone(),
            n: args.n,
            basis: args.basis.clone(),
            jacobian: args.jacobian.clone(),
            method: args.method.clone(),
            tol_residual: args.tol_residual,
            tol_step: args.tol_step,
            damping: args.damping,
            max_iter: args.max_iter,
            seed: args.seed,
            trials: args.trials,
            cases: args.cases,
            output: args.output.clone(),
            alpha: args.alpha,
            t0: args.t0,
            q_l: args.q_l,
            length: args.length,
            load: args.load,
            stiffness: args.stiffness,
            ns: args.ns.clone(),
            timing: args.timing.then_some(true),
        })
    }

    /// Fields set here win over `fallback`.
    pub fn or(self, fallback: Settings) -> Settings {
        Settings {
            problem: self.problem.or(fallback.problem),
            scheme: self.scheme.or(fallback.scheme),
            n: self.n.or(fallback.n),
            basis: self.basis.or(fallback.basis),
            jacobian: self.jacobian.or(fallback.jacobian),
            method: self.method.or(fallback.method),
            tol_residual: self.tol_residual.or(fallback.tol_residual),
            tol_step: self.tol_step.or(fallback.tol_step),
            damping: self.damping.or(fallback.damping),
            max_iter: self.max_iter.or(fallback.max_iter),
            seed: self.seed.or(fallback.seed),
            trials: self.trials.or(fallback.trials),
            cases: self.cases.or(fallback.cases),
            output: self.output.or(fallback.output),
            alpha: self.alpha.or(fallback.alpha),
            t0: self.t0.or(fallback.t0),
            q_l: self.q_l.or(fallback.q_l),
            length: self.length.or(fallback.length),
            load: self.load.or(fallback.load),
            stiffness: self.stiffness.or(fallback.stiffness),
            ns: self.ns.or(fallback.ns),
            timing: self.timing.or(fallback.timing),
        }
    }
}

/// Fully resolved and validated settings for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub problem: Option<ProblemKind>,
    pub scheme: Option<Scheme>,
    pub n: usize,
    pub basis: Option<BasisKind>,
    pub heat: HeatParams,
    pub beam: BeamParams,
    pub solve: SolveOptions,
    pub seed: u64,
    pub trials: usize,
    pub cases: usize,
    pub output: OutputFormat,
    pub ns: Vec<usize>,
    pub timing: bool,
}

fn parse_field<T: FromStr>(field: &str, value: Option<&String>) -> Result<Option<T>, CliError>
where
    T::Err: fmt::Display,
{
    value
        .map(|v| v.parse::<T>().map_err(|e| CliError::config(field, e)))
        .transpose()
}

impl RunConfig {
    pub fn resolve(command: CommandKind, s: Settings) -> Result<Self, CliError> {
        let problem: Option<ProblemKind> = parse_field("problem", s.problem.as_ref())?;
        let scheme: Option<Scheme> = parse_field("scheme", s.scheme.as_ref())?;
        let basis: Option<BasisKind> = parse_field("basis", s.basis.as_ref())?;
        let jacobian: JacobianMode = parse_field("jacobian", s.jacobian.as_ref())?.unwrap_or_default();
        let method: Method = parse_field("method", s.method.as_ref())?.unwrap_or_default();
        let output: OutputFormat =
            parse_field("output", s.output.as_ref())?.unwrap_or(command.default_output());

        let defaults = SolveOptions::default();
        let solve = SolveOptions {
            method,
            jacobian,
            tol_residual: s.tol_residual.unwrap_or(defaults.tol_residual),
            tol_step: s.tol_step.unwrap_or(defaults.tol_step),
            max_iter: s.max_iter.unwrap_or(defaults.max_iter),
            damping: s.damping.unwrap_or(defaults.damping),
        };
        solve.validate().map_err(|e| CliError::config("solver options", e))?;

        let hd = HeatParams::default();
        let heat = HeatParams {
            alpha: s.alpha.unwrap_or(hd.alpha),
            t0: s.t0.unwrap_or(hd.t0),
            q_l: s.q_l.unwrap_or(hd.q_l),
            length: s.length.unwrap_or(hd.length),
        };
        let bd = BeamParams::default();
        let beam = BeamParams {
            load: s.load.unwrap_or(bd.load),
            stiffness: s.stiffness.unwrap_or(bd.stiffness),
        };

        let cfg = RunConfig {
            command,
            problem,
            scheme,
            n: s.n.unwrap_or(DEFAULT_N),
            basis,
            heat,
            beam,
            solve,
            seed: s.seed.unwrap_or(DEFAULT_SEED),
            trials: s.trials.unwrap_or(DEFAULT_TRIALS),
            cases: s.cases.unwrap_or(DEFAULT_CASES),
            output,
            ns: s.ns.unwrap_or_else(|| DEFAULT_SWEEP.to_vec()),
            timing: s.timing.unwrap_or(false),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.trials == 0 {
            return Err(CliError::config("trials", "must be at least 1"));
        }
        if self.cases == 0 {
            return Err(CliError::config("cases", "must be at least 1"));
        }
        if self.ns.is_empty() {
            return Err(CliError::config("ns", "needs at least one basis size"));
        }
        if self.command.needs_problem() && self.problem.is_none() {
            return Err(CliError::config("problem", "a problem name is required"));
        }
        match self.command {
            CommandKind::Solve | CommandKind::JacobianCheck => {
                self.check_spec(&self.spec(self.problem.expect("checked above"), self.scheme, self.n))
            }
            CommandKind::Compare => {
                for (kind, scheme) in self.sweep_targets()? {
                    for &n in &self.ns {
                        self.check_spec(&self.spec(kind, Some(scheme), n))?;
                    }
                }
                Ok(())
            }
            CommandKind::Properties | CommandKind::List => Ok(()),
        }
    }

    fn check_spec(&self, spec: &ProblemSpec) -> Result<(), CliError> {
        if !spec.kind.schemes().contains(&spec.scheme) {
            return Err(CliError::config(
                "scheme",
                format!("{} has no {} scheme", spec.kind.name(), spec.scheme.name()),
            ));
        }
        spec.validate().map_err(|e| CliError::config("problem", e))
    }

    /// Problem specification for `kind`, with unset scheme and basis taking
    /// the problem defaults.
    pub fn spec(&self, kind: ProblemKind, scheme: Option<Scheme>, n: usize) -> ProblemSpec {
        let mut spec = ProblemSpec::new(kind)
            .with_n(n)
            .with_heat(self.heat)
            .with_beam(self.beam);
        if let Some(s) = scheme {
            spec = spec.with_scheme(s);
        }
        if let Some(b) = self.basis {
            spec = spec.with_basis(b);
        }
        spec
    }

    /// `(problem, scheme)` pairs swept by compare, in output order.
    pub fn sweep_targets(&self) -> Result<Vec<(ProblemKind, Scheme)>, CliError> {
        let kinds: Vec<ProblemKind> = match self.problem {
            Some(k) => vec![k],
            None => vec![ProblemKind::ExpOde, ProblemKind::SinOde, ProblemKind::HeatSlab],
        };
        let mut out = Vec::new();
        for kind in kinds {
            for &scheme in kind.schemes() {
                if self.scheme.is_none_or(|s| s == scheme) {
                    out.push((kind, scheme));
                }
            }
        }
        if out.is_empty() {
            return Err(CliError::config("scheme", "no problem in the sweep offers this scheme"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let file = Settings::from_json(r#"{"problem": "beam", "n": 5, "tol-residual": 1e-8, "max_iter": 7}"#).unwrap();
        let flags = Settings {
            n: Some(6),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(CommandKind::Solve, flags.or(file)).unwrap();
        assert_eq!(cfg.problem, Some(ProblemKind::Beam));
        assert_eq!(cfg.n, 6);
        assert_eq!(cfg.solve.tol_residual, 1e-8);
        assert_eq!(cfg.solve.max_iter, 7);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(Settings::from_json(r#"{"problme": "beam"}"#).is_err());
        assert!(Settings::from_json(r#"{"n": -1}"#).is_err());
    }

    #[test]
    fn errors_name_the_field() {
        let s = Settings {
            problem: Some("heat-slab".into()),
            basis: Some("chebyshev".into()),
            ..Default::default()
        };
        let e = RunConfig::resolve(CommandKind::Solve, s).unwrap_err();
        assert!(e.to_string().starts_with("invalid basis"), "{e}");

        let s = Settings {
            problem: Some("beam".into()),
            scheme: Some("traditional".into()),
            ..Default::default()
        };
        let e = RunConfig::resolve(CommandKind::Solve, s).unwrap_err();
        assert!(e.to_string().starts_with("invalid scheme"), "{e}");
    }

    #[test]
    fn default_sweep_targets() {
        let cfg = RunConfig::resolve(CommandKind::Compare, Settings::default()).unwrap();
        let names: Vec<String> = cfg
            .sweep_targets()
            .unwrap()
            .iter()
            .map(|(k, s)| format!("{}/{}", k.name(), s.name()))
            .collect();
        assert_eq!(
            names,
            ["exp-ode/novel", "sin-ode/novel", "heat-slab/novel", "heat-slab/traditional"]
        );
    }
}
