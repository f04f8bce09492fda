use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problems::spec::{HeatParams, ProblemKind, ProblemSpec};

type Profile = Arc<dyn Fn(f64) -> [f64; 3] + Send + Sync>;

pub const SUBSTITUTION_POINTS: usize = 20;
pub const SUBSTITUTION_TOL: f64 = 1e-9;

/// Closed-form reference solution, when one exists.
#[derive(Clone)]
pub struct ExactSolution {
    description: String,
    domain: (f64, f64),
    /// `x ↦ [u, u', u'']`.
    profile: Option<Profile>,
}

impl fmt::Debug for ExactSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExactSolution")
            .field("description", &self.description)
            .field("present", &self.is_present())
            .finish()
    }
}

impl ExactSolution {
    pub fn absent(description: impl Into<String>) -> Self {
        Self {
            description: description.into(),
            domain: (0.0, 1.0),
            profile: None,
        }
    }

    /// Builds a present solution after substituting it into `residual`
    /// (a function of `x, [u, u', u'']`) at equispaced points.
    fn verified(
        description: String,
        domain: (f64, f64),
        profile: Profile,
        residual: impl Fn(f64, [f64; 3]) -> f64,
    ) -> Result<Self> {
        let (lo, hi) = domain;
        for i in 0..SUBSTITUTION_POINTS {
            let x = lo + (hi - lo) * i as f64 / (SUBSTITUTION_POINTS - 1) as f64;
            let u = profile(x);
            let r = residual(x, u);
            let scale = u.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            if r.is_nan() || r.abs() > SUBSTITUTION_TOL * scale {
                return Err(Error::InvalidArgument(format!(
                    "reference solution `{description}` fails substitution at x = {x}: {r}"
                )));
            }
        }
        Ok(Self {
            description,
            domain,
            profile: Some(profile),
        })
    }

    pub fn is_present(&self) -> bool {
        self.profile.is_some()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn value(&self, x: f64) -> Option<f64> {
        self.profile.as_ref().map(|p| p(x)[0])
    }

    pub fn derivative(&self, x: f64) -> Option<f64> {
        self.profile.as_ref().map(|p| p(x)[1])
    }
}

pub fn exp_ode_exact() -> ExactSolution {
    let profile: Profile = Arc::new(|x: f64| {
        let s = 1.0 + x;
        [s.ln(), 1.0 / s, -1.0 / (s * s)]
    });
    ExactSolution::verified("y = ln(1 + x)".into(), (0.0, 1.0), profile, |_, [y, dy, _]| {
        dy - (-y).exp()
    })
    .expect("ln(1 + x) solves y' = exp(-y)")
}

/// Positive root of `T + αT²/2 = T0 + αT0²/2 + q_L·x`.
pub fn heat_slab_exact(p: &HeatParams) -> ExactSolution {
    let HeatParams {
        alpha,
        t0,
        q_l,
        length,
    } = *p;
    if alpha == 0.0 {
        let profile: Profile = Arc::new(move |x| [t0 + q_l * x, q_l, 0.0]);
        return ExactSolution::verified(
            format!("T = {t0} + {q_l} x"),
            (0.0, length),
            profile,
            |_, [_, _, d2]| d2,
        )
        .expect("linear profile");
    }
    let c = t0 + 0.5 * alpha * t0 * t0;
    let disc = move |x: f64| 1.0 + 2.0 * alpha * (c + q_l * x);
    if disc(0.0) <= 0.0 || disc(length) <= 0.0 || 1.0 + alpha * t0 <= 0.0 {
        return ExactSolution::absent("no physical root: negative discriminant");
    }
    let profile: Profile = Arc::new(move |x| {
        let s = disc(x);
        let r = s.sqrt();
        [(r - 1.0) / alpha, q_l / r, -alpha * q_l * q_l / (s * r)]
    });
    let check = profile.clone();
    let boundary = move || {
        let [u0, ..] = check(0.0);
        let [ul, dl, _] = check(length);
        ((u0 - t0).abs(), ((1.0 + alpha * ul) * dl - q_l).abs())
    };
    let (b0, bl) = boundary();
    let scale = 1.0 + t0.abs() + q_l.abs();
    if b0 > SUBSTITUTION_TOL * scale || bl > SUBSTITUTION_TOL * scale {
        return ExactSolution::absent("reference solution violates boundary data");
    }
    ExactSolution::verified(
        "T = (sqrt(1 + 2a(T0 + a T0^2/2 + q_L x)) - 1)/a".into(),
        (0.0, length),
        profile,
        move |_, [t, d1, d2]| (1.0 + alpha * t) * d2 + alpha * d1 * d1,
    )
    .unwrap_or_else(|_| ExactSolution::absent("reference solution failed substitution"))
}

pub fn exact_solution(spec: &ProblemSpec) -> ExactSolution {
    match spec.kind {
        ProblemKind::ExpOde => exp_ode_exact(),
        ProblemKind::HeatSlab => heat_slab_exact(&spec.heat),
        ProblemKind::SinOde => ExactSolution::absent("no closed form"),
        ProblemKind::Beam => ExactSolution::absent("no closed form"),
    }
}
