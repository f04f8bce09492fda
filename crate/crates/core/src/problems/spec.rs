use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::assembly::BasisKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    ExpOde,
    SinOde,
    HeatSlab,
    Beam,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 4] = [
        ProblemKind::ExpOde,
        ProblemKind::SinOde,
        ProblemKind::HeatSlab,
        ProblemKind::Beam,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::ExpOde => "exp-ode",
            ProblemKind::SinOde => "sin-ode",
            ProblemKind::HeatSlab => "heat-slab",
            ProblemKind::Beam => "beam",
        }
    }

    pub fn schemes(self) -> &'static [Scheme] {
        match self {
            ProblemKind::HeatSlab => &[Scheme::Novel, Scheme::Traditional],
            _ => &[Scheme::Novel],
        }
    }

    /// Basis used when none is requested. The novel exp-ode system has no
    /// root near zero on the integrated-Legendre basis for even `n`.
    pub fn default_basis(self) -> BasisKind {
        match self {
            ProblemKind::ExpOde => BasisKind::Sine,
            _ => BasisKind::IntegratedLegendre,
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ProblemKind::ExpOde => "y' = exp(-y), y(0) = 0 on [0, 1]",
            ProblemKind::SinOde => "y'' + sin(y') + 1 = 0, y(0) = 0, y(1) = 1",
            ProblemKind::HeatSlab => "((1 + aT) T')' = 0, T(0) = T0, flux q_L at x = L",
            ProblemKind::Beam => "clamped beam with axial-bending coupling",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "unknown problem `{s}` (expected exp-ode, sin-ode, heat-slab or beam)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Hadamard-product system with products of weighted integrals.
    #[default]
    Novel,
    /// Weighted integral of the full nonlinear integrand.
    Traditional,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Novel => "novel",
            Scheme::Traditional => "traditional",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "novel" => Ok(Scheme::Novel),
            "traditional" => Ok(Scheme::Traditional),
            other => Err(Error::InvalidArgument(format!(
                "unknown scheme `{other}` (expected novel or traditional)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HeatParams {
    pub alpha: f64,
    pub t0: f64,
    pub q_l: f64,
    pub length: f64,
}

impl Default for HeatParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            t0: 0.0,
            q_l: 1.0,
            length: 1.0,
        }
    }
}

/// Normalised beam groups: `load` is `qL⁴/EI r`, `stiffness` is `1/(rL)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeamParams {
    pub load: f64,
    pub stiffness: f64,
}

impl Default for BeamParams {
    fn default() -> Self {
        Self {
            load: 10.0,
            stiffness: 0.05,
        }
    }
}

pub const DEFAULT_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    pub n: usize,
    pub basis: BasisKind,
    pub scheme: Scheme,
    pub heat: HeatParams,
    pub beam: BeamParams,
}

impl ProblemSpec {
    pub fn new(kind: ProblemKind) -> Self {
        Self {
            kind,
            n: DEFAULT_N,
            basis: kind.default_basis(),
            scheme: Scheme::Novel,
            heat: HeatParams::default(),
            beam: BeamParams::default(),
        }
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_basis(mut self, basis: BasisKind) -> Self {
        self.basis = basis;
        self
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_heat(mut self, heat: HeatParams) -> Self {
        self.heat = heat;
        self
    }

    pub fn with_beam(mut self, beam: BeamParams) -> Self {
        self.beam = beam;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("n must be at least 2, got {}", self.n)));
        }
        if !self.kind.schemes().contains(&self.scheme) {
            return Err(Error::InvalidArgument(format!(
                "scheme `{}` is not available for {}",
                self.scheme, self.kind
            )));
        }
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidArgument(format!("{name} must be finite, got {v}")))
            }
        };
        match self.kind {
            ProblemKind::HeatSlab => {
                let h = &self.heat;
                finite("alpha", h.alpha)?;
                finite("t0", h.t0)?;
                finite("q-l", h.q_l)?;
                finite("length", h.length)?;
                if h.alpha < 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "alpha must be nonnegative, got {}",
                        h.alpha
                    )));
                }
                if h.length <= 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "length must be positive, got {}",
                        h.length
                    )));
                }
            }
            ProblemKind::Beam => {
                finite("load", self.beam.load)?;
                finite("stiffness", self.beam.stiffness)?;
                if self.beam.stiffness <= 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "stiffness must be positive, got {}",
                        self.beam.stiffness
                    )));
                }
            }
            ProblemKind::ExpOde | ProblemKind::SinOde => {}
        }
        Ok(())
    }
}
