/// Real polynomial in power form, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::new(vec![0.0])
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `a + b·t`.
    pub fn linear(a: f64, b: f64) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Self {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative vanishing at `t = from`.
    pub fn integral_from(&self, from: f64) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(0.0);
        c.extend(self.coeffs.iter().enumerate().map(|(k, &a)| a / (k + 1) as f64));
        let p = Self::new(c);
        let shift = p.eval(from);
        p.add(&Self::constant(-shift))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Self, k: usize| p.coeffs.get(k).copied().unwrap_or(0.0);
        Self::new((0..n).map(|k| get(self, k) + get(other, k)).collect())
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }
}

/// Legendre polynomials `P_0..=P_max` on `[-1, 1]` by Bonnet's recurrence.
pub fn legendre_polynomials(max: usize) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::constant(1.0)];
    if max >= 1 {
        out.push(Polynomial::linear(0.0, 1.0));
    }
    for k in 1..max {
        let kf = k as f64;
        let next = Polynomial::linear(0.0, 1.0)
            .mul(&out[k])
            .scale((2.0 * kf + 1.0) / (kf + 1.0))
            .add(&out[k - 1].scale(-kf / (kf + 1.0)));
        out.push(next);
    }
    out
}
