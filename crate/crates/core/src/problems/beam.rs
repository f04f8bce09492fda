//! Clamped beam with axial-bending coupling in normalised form.
//!
//! With transverse deflection `W` and axial displacement `U` the discrete
//! system reads
//!
//! ```text
//! D·W + [(A·U + a) + ½(B·W)^∘2] ∘ (C·W + c) = b
//!                     A·U + a + (B·W)∘(C·W + c) = 0
//! ```
//!
//! The second equation is linear in `U`, so `U` can be eliminated and Newton
//! run on `W` alone with the relative Jacobian `∂U/∂W`.

use crate::assembly::{assemble_load, boundary_outer, BasisKind, BasisSet, EssentialBc, WeightingScheme};
use crate::error::{Error, Result, Shape};
use crate::flops::Flops;
use crate::formulation::{HNode, HSystem, JacobianStats};
use crate::hadamard::{sjt_post_counted, RealMatrix, RealVector};
use crate::problems::common::{quadrature_for, weighted};
use crate::problems::spec::BeamParams;
use crate::solvers::{newton, JacobianMode, LuFactors, ResidualSystem, SolveOptions, SolveReport};

#[derive(Debug, Clone)]
pub struct CoupledSystem {
    w_basis: BasisSet,
    u_basis: BasisSet,
    d: RealMatrix,
    a: RealMatrix,
    a_off: RealVector,
    b: RealMatrix,
    c: RealMatrix,
    c_off: RealVector,
    load: RealVector,
    a_lu: LuFactors,
    nw: HNode,
    stacked: HSystem,
}

/// Bases for `W` (clamped at `x = 0`) and `U` (fixed at `x = 0`).
pub fn beam_bases(kind: BasisKind, n: usize) -> Result<(BasisSet, BasisSet)> {
    Ok((
        BasisSet::new(kind, n, 0.0, 1.0, EssentialBc::LeftClamped)?,
        BasisSet::new(kind, n, 0.0, 1.0, EssentialBc::Left)?,
    ))
}

pub fn build_beam(params: &BeamParams, n: usize, kind: BasisKind) -> Result<CoupledSystem> {
    let (w_basis, u_basis) = beam_bases(kind, n)?;
    build_beam_on(params, w_basis, u_basis)
}

pub fn build_beam_on(params: &BeamParams, w_basis: BasisSet, u_basis: BasisSet) -> Result<CoupledSystem> {
    if w_basis.len() != u_basis.len() {
        return Err(Error::InvalidArgument(format!(
            "W and U bases must have equal size, got {} and {}",
            w_basis.len(),
            u_basis.len()
        )));
    }
    let n = w_basis.len();
    let quad = quadrature_for(&w_basis, 2)?;
    let s = params.stiffness;
    // Both equations are weighted by the W-basis functions φ_j.
    let d = weighted(&w_basis, 2, &w_basis, 2, &quad)?.matrix;
    let a = weighted(&u_basis, 1, &w_basis, 1, &quad)?.matrix.scale(-s);
    let b = weighted(&w_basis, 1, &w_basis, 0, &quad)?.matrix.scale(-1.0);
    let c = weighted(&w_basis, 1, &w_basis, 1, &quad)?
        .matrix
        .sub(&boundary_outer(&w_basis, 0, &w_basis, 1, 1.0)?)?
        .add(&boundary_outer(&w_basis, 0, &w_basis, 1, 0.0)?)?;
    let a_off = RealVector::zeros(n);
    let c_off = RealVector::zeros(n);
    let load = assemble_load(|_| params.load, &w_basis, &WeightingScheme::galerkin(), "", &quad)?;
    let a_lu = LuFactors::factor(&a)?;

    let nw = HNode::had_product(
        HNode::linear_map(b.clone()),
        HNode::affine(c.clone(), c_off.clone())?,
    )?;

    let zero = RealMatrix::zeros(n, n);
    let zn = RealVector::zeros(n);
    let blocks = |tl: &RealMatrix, tr: &RealMatrix, bl: &RealMatrix, br: &RealMatrix| {
        tl.hstack(tr)?.vstack(&bl.hstack(br)?)
    };
    let stacked = HNode::sum(vec![
        HNode::affine(blocks(&d, &zero, &zero, &a)?, zn.concat(&a_off))?,
        HNode::had_product(
            HNode::affine(blocks(&zero, &a, &b, &zero)?, a_off.concat(&zn))?,
            HNode::affine(blocks(&c, &zero, &c, &zero)?, c_off.concat(&c_off))?,
        )?,
        HNode::scale(
            0.5,
            HNode::had_product(
                HNode::had_power(
                    HNode::linear_map(blocks(&b, &zero, &zero, &zero)?),
                    2.0,
                )?,
                HNode::affine(blocks(&c, &zero, &zero, &zero)?, c_off.concat(&zn))?,
            )?,
        )?,
    ])?;
    let stacked = HSystem::new(stacked, load.concat(&zn))?;

    Ok(CoupledSystem {
        w_basis,
        u_basis,
        d,
        a,
        a_off,
        b,
        c,
        c_off,
        load,
        a_lu,
        nw,
        stacked,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoupledSolution {
    pub w: RealVector,
    pub u: RealVector,
    pub report: SolveReport,
}

impl CoupledSystem {
    pub fn n(&self) -> usize {
        self.d.rows()
    }

    pub fn w_basis(&self) -> &BasisSet {
        &self.w_basis
    }

    pub fn u_basis(&self) -> &BasisSet {
        &self.u_basis
    }

    /// Residual of both equations over the stacked unknown `(W, U)`.
    pub fn stacked(&self) -> &HSystem {
        &self.stacked
    }

    /// The map `W ↦ (B·W)∘(C·W + c)`.
    pub fn nw(&self) -> &HNode {
        &self.nw
    }

    pub fn d(&self) -> &RealMatrix {
        &self.d
    }

    pub fn a(&self) -> &RealMatrix {
        &self.a
    }

    pub fn a_offset(&self) -> &RealVector {
        &self.a_off
    }

    pub fn b(&self) -> &RealMatrix {
        &self.b
    }

    pub fn c(&self) -> &RealMatrix {
        &self.c
    }

    pub fn c_offset(&self) -> &RealVector {
        &self.c_off
    }

    pub fn load(&self) -> &RealVector {
        &self.load
    }

    fn check(&self, w: &RealVector) -> Result<()> {
        if w.len() != self.n() {
            return Err(Error::Dimension {
                op: "beam W vector",
                lhs: Shape::vector(self.n()),
                rhs: w.shape(),
            });
        }
        Ok(())
    }
}

/// Pieces every reduced evaluation shares.
struct Parts {
    bw: RealVector,
    cwc: RealVector,
    /// `(A·U + a) + ½(B·W)^∘2`
    axial: RealVector,
}

fn parts(cs: &CoupledSystem, w: &RealVector, flops: &mut Flops) -> Result<Parts> {
    cs.check(w)?;
    let bw = cs.b.matvec_counted(w, flops)?;
    let cwc = cs.c.matvec_counted(w, flops)?.add(&cs.c_off)?;
    let u = eliminate_from(cs, &bw, &cwc, flops)?;
    let au = cs.a.matvec_counted(&u, flops)?.add(&cs.a_off)?;
    flops.add(2 * bw.len());
    let axial = RealVector::from_fn(bw.len(), |i| au[i] + 0.5 * bw[i] * bw[i])?;
    Ok(Parts { bw, cwc, axial })
}

fn eliminate_from(cs: &CoupledSystem, bw: &RealVector, cwc: &RealVector, flops: &mut Flops) -> Result<RealVector> {
    flops.add(bw.len());
    let rhs = RealVector::from_fn(bw.len(), |i| -(cs.a_off[i] + bw[i] * cwc[i]))?;
    cs.a_lu.solve_counted(&rhs, flops)
}

/// `U = −A⁻¹·(a + (B·W)∘(C·W + c))`.
pub fn eliminate_u(cs: &CoupledSystem, w: &RealVector) -> Result<RealVector> {
    cs.check(w)?;
    let mut flops = Flops::new();
    let bw = cs.b.matvec_counted(w, &mut flops)?;
    let cwc = cs.c.matvec_counted(w, &mut flops)?.add(&cs.c_off)?;
    eliminate_from(cs, &bw, &cwc, &mut flops)
}

fn relative_from(cs: &CoupledSystem, bw: &RealVector, cwc: &RealVector, flops: &mut Flops) -> Result<RealMatrix> {
    let m = sjt_post_counted(&cs.b, cwc, flops)?.add(&sjt_post_counted(&cs.c, bw, flops)?)?;
    Ok(cs.a_lu.solve_matrix_counted(&m, flops)?.map(|v| -v))
}

/// `∂U/∂W = −A⁻¹·(B ◇ (C·W + c) + C ◇ (B·W))`.
pub fn relative_jacobian(cs: &CoupledSystem, w: &RealVector) -> Result<RealMatrix> {
    cs.check(w)?;
    let mut flops = Flops::new();
    let bw = cs.b.matvec_counted(w, &mut flops)?;
    let cwc = cs.c.matvec_counted(w, &mut flops)?.add(&cs.c_off)?;
    relative_from(cs, &bw, &cwc, &mut flops)
}

pub fn reduced_residual(cs: &CoupledSystem, w: &RealVector) -> Result<RealVector> {
    reduced_residual_counted(cs, w, &mut Flops::new())
}

/// `ψ(W) = D·W + [(A·U + a) + ½(B·W)^∘2]∘(C·W + c) − b` with `U` eliminated.
pub fn reduced_residual_counted(cs: &CoupledSystem, w: &RealVector, flops: &mut Flops) -> Result<RealVector> {
    let p = parts(cs, w, flops)?;
    let dw = cs.d.matvec_counted(w, flops)?;
    flops.add(w.len());
    RealVector::from_fn(w.len(), |i| dw[i] + p.axial[i] * p.cwc[i] - cs.load[i])
}

pub fn reduced_jacobian(cs: &CoupledSystem, w: &RealVector) -> Result<RealMatrix> {
    reduced_jacobian_counted(cs, w, &mut Flops::new())
}

/// `D + (A·∂U/∂W + B ◇ B·W) ◇ (C·W + c) + C ◇ [(A·U + a) + ½(B·W)^∘2]`.
pub fn reduced_jacobian_counted(cs: &CoupledSystem, w: &RealVector, flops: &mut Flops) -> Result<RealMatrix> {
    let p = parts(cs, w, flops)?;
    let du = relative_from(cs, &p.bw, &p.cwc, flops)?;
    let inner = cs
        .a
        .matmul_counted(&du, flops)?
        .add(&sjt_post_counted(&cs.b, &p.bw, flops)?)?;
    cs.d
        .add(&sjt_post_counted(&inner, &p.cwc, flops)?)?
        .add(&sjt_post_counted(&cs.c, &p.axial, flops)?)
}

/// The reduced system in `W` alone, for the generic solvers.
pub struct ReducedBeam<'a>(pub &'a CoupledSystem);

impl ResidualSystem for ReducedBeam<'_> {
    fn dim(&self) -> usize {
        self.0.n()
    }

    fn defect(&self, x: &RealVector, flops: &mut Flops) -> Result<RealVector> {
        reduced_residual_counted(self.0, x, flops)
    }

    fn jacobian(&self, x: &RealVector) -> Result<(RealMatrix, JacobianStats)> {
        let mut flops = Flops::new();
        let j = reduced_jacobian_counted(self.0, x, &mut flops)?;
        Ok((
            j,
            JacobianStats {
                multiplications: flops.multiplications,
                node_visits: 0,
            },
        ))
    }
}

/// Newton on the reduced system; `U` is recovered at the final `W`.
pub fn solve_uncoupled(cs: &CoupledSystem, w0: &RealVector, opts: &SolveOptions) -> Result<CoupledSolution> {
    let report = newton(&ReducedBeam(cs), w0, opts)?;
    let w = report.solution.clone();
    let u = eliminate_u(cs, &w)?;
    Ok(CoupledSolution { w, u, report })
}

/// Newton with finite-difference Jacobians on the stacked `2n` system.
pub fn solve_monolithic(
    cs: &CoupledSystem,
    start: (&RealVector, &RealVector),
    opts: &SolveOptions,
) -> Result<CoupledSolution> {
    cs.check(start.0)?;
    cs.check(start.1)?;
    let opts = SolveOptions {
        jacobian: match opts.jacobian {
            JacobianMode::FiniteDifference { step } => JacobianMode::FiniteDifference { step },
            JacobianMode::Analytic => JacobianMode::finite_difference(),
        },
        ..*opts
    };
    let report = newton(&cs.stacked, &start.0.concat(start.1), &opts)?;
    let (w, u) = report.solution.split_at(cs.n())?;
    Ok(CoupledSolution { w, u, report })
}
