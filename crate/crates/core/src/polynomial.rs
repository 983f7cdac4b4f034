//! Exact univariate polynomials with rational (or rational-vector)
//! coefficients, used for the Ehrhart polynomial and the lattice-point sum
//! polynomial.

use num_traits::{One, Zero};

use crate::arith::{add_vec, is_zero_vec, rat, scale_vec, zero_vec, QVec, Rational};
use crate::error::{Error, Result};

/// Coefficients stored lowest degree first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> Rational {
        self.coeffs.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&rat(t))
    }

    /// Lowest degree first, e.g. `[1, 9/2, 9/2]`.
    pub fn to_coeff_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Vector-valued polynomial; coefficient `k` is the degree-`k` vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorPolynomial {
    dim: usize,
    coeffs: Vec<QVec>,
}

impl VectorPolynomial {
    pub fn new(dim: usize, mut coeffs: Vec<QVec>) -> Result<Self> {
        for c in &coeffs {
            if c.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: c.len(),
                });
            }
        }
        while coeffs.last().map_or(false, |c| is_zero_vec(c)) {
            coeffs.pop();
        }
        Ok(VectorPolynomial { dim, coeffs })
    }

    pub fn zero(dim: usize) -> Self {
        VectorPolynomial { dim, coeffs: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[QVec] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: usize) -> QVec {
        self.coeffs.get(deg).cloned().unwrap_or_else(|| zero_vec(self.dim))
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> QVec {
        self.coeffs.last().cloned().unwrap_or_else(|| zero_vec(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &Rational) -> QVec {
        let mut acc = zero_vec(self.dim);
        for c in self.coeffs.iter().rev() {
            acc = add_vec(&scale_vec(t, &acc), c);
        }
        acc
    }

    pub fn eval_int(&self, t: i64) -> QVec {
        self.eval(&rat(t))
    }

    /// The scalar polynomial `E(t) * b`, for comparing against this one.
    pub fn from_scalar_times_vector(p: &Polynomial, v: &[QVec; 1]) -> VectorPolynomial {
        let b = &v[0];
        let coeffs = p.coeffs().iter().map(|c| scale_vec(c, b)).collect();
        VectorPolynomial::new(b.len(), coeffs).expect("dimensions agree by construction")
    }

    pub fn to_coeff_string(&self) -> String {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|c| crate::arith::format_vector(c))
            .collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Interpolate the unique polynomial of degree <= samples.len()-1 through
/// `(t_i, y_i)`, by an exact Vandermonde solve.
pub fn interpolate(samples: &[(Rational, Rational)]) -> Result<Polynomial> {
    let n = samples.len();
    let rows: Vec<QVec> = samples
        .iter()
        .map(|(t, _)| {
            let mut row = Vec::with_capacity(n);
            let mut p = Rational::one();
            for _ in 0..n {
                row.push(p.clone());
                p *= t;
            }
            row
        })
        .collect();
    let rhs: QVec = samples.iter().map(|(_, y)| y.clone()).collect();
    let sol = crate::arith::solve_linear(rows, &rhs)?
        .ok_or_else(|| Error::internal("interpolation nodes are not distinct"))?;
    Ok(Polynomial::new(sol))
}

/// Componentwise interpolation of a vector polynomial.
pub fn interpolate_vector(dim: usize, samples: &[(Rational, QVec)]) -> Result<VectorPolynomial> {
    let mut coeffs = vec![zero_vec(dim); samples.len()];
    for j in 0..dim {
        let scalar: Vec<(Rational, Rational)> = samples
            .iter()
            .map(|(t, y)| (t.clone(), y[j].clone()))
            .collect();
        let p = interpolate(&scalar)?;
        for (deg, c) in coeffs.iter_mut().enumerate() {
            c[j] = p.coeff(deg);
        }
    }
    VectorPolynomial::new(dim, coeffs)
}
