#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wrm_core::formulation::{HNode, NodeKind};
use wrm_core::hadamard::{ElementwiseFn, RealMatrix, RealVector};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RealMatrix {
    RealMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-1.0..1.0)).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> RealVector {
    RealVector::from_fn(len, |_| rng.gen_range(-1.0..1.0)).unwrap()
}

pub fn vector(v: &[f64]) -> RealVector {
    RealVector::new(v.to_vec()).unwrap()
}

/// `‖a − b‖max / max(‖a‖max, ‖b‖max)`.
pub fn rel_err(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let diff = a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    let scale = a.iter().chain(b).fold(0.0f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

pub fn mat_rel_err(a: &RealMatrix, b: &RealMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    rel_err(a.as_slice(), b.as_slice())
}

// Five-point Gauss-Legendre on [-1, 1], tabulated.
const NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189,
    0.478_628_670_499_366,
    0.568_888_888_888_889,
    0.478_628_670_499_366,
    0.236_926_885_056_189,
];

/// Composite five-point Gauss rule on 200 panels, independent of the
/// library's quadrature.
pub fn integrate(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let panels = 200;
    let h = (hi - lo) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * h;
        for (t, w) in NODES.iter().zip(WEIGHTS) {
            sum += w * 0.5 * h * f(mid + 0.5 * h * t);
        }
    }
    sum
}

/// Plain-loop evaluation of a tree, sharing no code with the library.
pub fn scalar_eval(node: &HNode, x: &[f64]) -> Vec<f64> {
    match node.kind() {
        NodeKind::Affine { matrix, offset, .. } => (0..matrix.rows())
            .map(|i| {
                let mut s = 0.0;
                for j in 0..matrix.cols() {
                    s += matrix[(i, j)] * x[j];
                }
                s + offset[i]
            })
            .collect(),
        NodeKind::Linear { matrix, child } => {
            let c = scalar_eval(child, x);
            (0..matrix.rows())
                .map(|i| (0..matrix.cols()).map(|j| matrix[(i, j)] * c[j]).sum())
                .collect()
        }
        NodeKind::HadProduct { left, right } => {
            let (l, r) = (scalar_eval(left, x), scalar_eval(right, x));
            (0..l.len()).map(|i| l[i] * r[i]).collect()
        }
        NodeKind::HadPower { child, exponent } => scalar_eval(child, x)
            .into_iter()
            .map(|v| v.powf(*exponent))
            .collect(),
        NodeKind::HadFunc { func, child } => {
            let c = scalar_eval(child, x);
            c.into_iter()
                .map(|v| match func.name() {
                    "sin" => v.sin(),
                    "cos" => v.cos(),
                    "exp" => v.exp(),
                    "log" => v.ln(),
                    other => panic!("no oracle for {other}"),
                })
                .collect()
        }
        NodeKind::Scale { factor, child } => {
            scalar_eval(child, x).into_iter().map(|v| factor * v).collect()
        }
        NodeKind::Sum { children } => {
            let mut acc = vec![0.0; node.len()];
            for c in children {
                for (a, v) in acc.iter_mut().zip(scalar_eval(c, x)) {
                    *a += v;
                }
            }
            acc
        }
        NodeKind::Const { value } => value.as_slice().to_vec(),
    }
}

/// Random tree of output length `len` over `dim` unknowns: depth ≤ `depth`,
/// entries in [-1, 1], powers in {2, 3}, functions in {sin, exp}.
pub fn random_tree(rng: &mut ChaCha8Rng, depth: usize, len: usize, dim: usize) -> HNode {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        if rng.gen_bool(0.1) {
            return HNode::constant(random_vector(rng, len), dim).unwrap();
        }
        return HNode::affine(random_matrix(rng, len, dim), random_vector(rng, len)).unwrap();
    }
    match rng.gen_range(0..6) {
        0 => HNode::had_product(
            random_tree(rng, depth - 1, len, dim),
            random_tree(rng, depth - 1, len, dim),
        )
        .unwrap(),
        1 => {
            let q = if rng.gen_bool(0.5) { 2.0 } else { 3.0 };
            HNode::had_power(random_tree(rng, depth - 1, len, dim), q).unwrap()
        }
        2 => {
            let f = if rng.gen_bool(0.5) {
                ElementwiseFn::sin()
            } else {
                ElementwiseFn::exp()
            };
            HNode::had_func(f, random_tree(rng, depth - 1, len, dim))
        }
        3 => HNode::scale(rng.gen_range(-2.0..2.0), random_tree(rng, depth - 1, len, dim)).unwrap(),
        4 => {
            let k = rng.gen_range(1..=3);
            HNode::sum((0..k).map(|_| random_tree(rng, depth - 1, len, dim)).collect()).unwrap()
        }
        _ => {
            let inner = rng.gen_range(1..=8);
            HNode::linear(random_matrix(rng, len, inner), random_tree(rng, depth - 1, inner, dim)).unwrap()
        }
    }
}
