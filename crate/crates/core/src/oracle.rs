//! Brute-force counterpart of the series and moment machinery: every
//! operator is an explicit dense matrix on `span{|0⟩, …, |dim-1⟩}`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dynamics::FrameAtTime;
use crate::error::{Error, Result};
use crate::ladder::Ladder;
use crate::nonlinearity::Nonlinearity;
use crate::states::{build_nlcs, StateCoefficients, Truncation};

type Matrix = DMatrix<Complex64>;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// A dense operator on the truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    pub matrix: Matrix,
}

impl TruncatedOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `A`: entry `(n-1, n) = √n`.
    pub fn lowering(dim: usize) -> Self {
        let mut m = Matrix::from_element(dim, dim, zero());
        for n in 1..dim {
            m[(n - 1, n)] = real((n as f64).sqrt());
        }
        Self { matrix: m }
    }

    /// `A†`, the conjugate transpose of [`TruncatedOperator::lowering`].
    pub fn raising(dim: usize) -> Self {
        Self {
            matrix: Self::lowering(dim).matrix.adjoint(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: Matrix::identity(dim, dim),
        }
    }

    /// `diag(values[0], …, values[dim-1])`.
    pub fn diagonal(values: &[f64]) -> Self {
        let v: Vec<Complex64> = values.iter().map(|&x| real(x)).collect();
        Self {
            matrix: Matrix::from_diagonal(&DVector::from_vec(v)),
        }
    }

    pub fn for_word(word: &[Ladder], dim: usize) -> Self {
        let lower = Self::lowering(dim).matrix;
        let raise = Self::raising(dim).matrix;
        let mut m = Matrix::identity(dim, dim);
        for letter in word {
            m = match letter {
                Ladder::Lower => m * &lower,
                Ladder::Raise => m * &raise,
            };
        }
        Self { matrix: m }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        }
    }

    /// `⟨ψ|M|ψ⟩`.
    pub fn expect(&self, psi: &DVector<Complex64>) -> Complex64 {
        psi.dotc(&(&self.matrix * psi))
    }
}

/// The state's amplitudes as a column of length `dim`.
pub fn state_vector(state: &StateCoefficients, dim: usize) -> Result<DVector<Complex64>> {
    if dim < state.coeffs.len() {
        return Err(Error::DimensionTooSmall {
            dim,
            required: state.coeffs.len(),
        });
    }
    let mut v = DVector::from_element(dim, zero());
    for (n, c) in state.coeffs.iter().enumerate() {
        v[n] = *c;
    }
    Ok(v)
}

fn require(dim: usize, required: usize) -> Result<()> {
    if dim < required {
        Err(Error::DimensionTooSmall { dim, required })
    } else {
        Ok(())
    }
}

/// `⟨ψ|w|ψ⟩` with `w` built as a product of dense matrices.
pub fn oracle_expect(state: &StateCoefficients, word: &[Ladder], dim: usize) -> Result<Complex64> {
    require(dim, state.n_trunc + word.len() + 2)?;
    let psi = state_vector(state, dim)?;
    Ok(TruncatedOperator::for_word(word, dim).expect(&psi))
}

/// `f(0), …, f(dim-1)`.
fn f_values(nl: &Nonlinearity, dim: usize) -> Result<Vec<f64>> {
    (0..dim).map(|n| nl.eval(n)).collect()
}

/// `f(N) A`, the deformed lowering operator written with the function on the
/// left.
pub fn b_function_first(nl: &Nonlinearity, dim: usize) -> Result<TruncatedOperator> {
    let f = TruncatedOperator::diagonal(&f_values(nl, dim)?);
    Ok(TruncatedOperator {
        matrix: f.matrix * TruncatedOperator::lowering(dim).matrix,
    })
}

/// `A f(N)`, the deformed lowering operator whose right eigenstates have the
/// weights `d_n = [√(n!) f(1)⋯f(n)]⁻¹`.
pub fn b_ladder_first(nl: &Nonlinearity, dim: usize) -> Result<TruncatedOperator> {
    let f = TruncatedOperator::diagonal(&f_values(nl, dim)?);
    Ok(TruncatedOperator {
        matrix: TruncatedOperator::lowering(dim).matrix * f.matrix,
    })
}

/// `‖(B - α)ψ‖ / |α|` for the nonlinear coherent state at `alpha`, with
/// `B = A f(N)` as a matrix. Rows at and above `n_trunc` are excluded: they
/// see the truncation corner.
pub fn oracle_b_eigencheck(alpha: Complex64, nl: &Nonlinearity, dim: usize) -> Result<f64> {
    let state = build_nlcs(alpha, nl, Truncation::default())?;
    require(dim, state.n_trunc + 2)?;
    let psi = state_vector(&state, dim)?;
    let b = b_ladder_first(nl, dim)?;
    let r = &b.matrix * &psi - &psi * alpha;
    let sum: f64 = r.iter().take(state.n_trunc).map(|x| x.norm_sqr()).sum();
    let scale = alpha.norm();
    Ok(if scale > 0.0 { sum.sqrt() / scale } else { sum.sqrt() })
}

/// Diagonal of `[B, B†]` for `B = f(N)A`.
pub fn deformed_commutator_diagonal(nl: &Nonlinearity, dim: usize) -> Result<Vec<f64>> {
    let b = b_function_first(nl, dim)?;
    let c = b.commutator(&b.adjoint());
    Ok((0..dim).map(|n| c.matrix[(n, n)].re).collect())
}

/// `a = u* A - v A†` as a matrix.
pub fn static_lowering_matrix(frame: &FrameAtTime, dim: usize) -> Matrix {
    TruncatedOperator::lowering(dim).matrix * frame.u.conj() - TruncatedOperator::raising(dim).matrix * frame.v
}

/// `(⟨ΔX₁²⟩, ⟨ΔX₂²⟩)` from explicit matrices.
pub fn oracle_variances(state: &StateCoefficients, frame: &FrameAtTime, dim: usize) -> Result<(f64, f64)> {
    require(dim, state.n_trunc + 4)?;
    let psi = state_vector(state, dim)?;
    let a = static_lowering_matrix(frame, dim);
    let ad = a.adjoint();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let x1 = (&a + &ad) * real(s);
    let x2 = (&a - &ad) * Complex64::new(0.0, -s);
    let var = |x: &Matrix| {
        let xpsi = x * &psi;
        let mean = psi.dotc(&xpsi);
        (xpsi.dotc(&xpsi) - mean * mean).re
    };
    Ok((var(&x1), var(&x2)))
}

/// `g²(0)` from explicit matrices.
pub fn oracle_g2(state: &StateCoefficients, frame: &FrameAtTime, dim: usize) -> Result<f64> {
    require(dim, state.n_trunc + 6)?;
    let psi = state_vector(state, dim)?;
    let a = static_lowering_matrix(frame, dim);
    let a2psi = &a * (&a * &psi);
    let apsi = &a * &psi;
    let mean = apsi.dotc(&apsi).re;
    if !(mean > crate::observables::VACUUM_FLOOR) {
        return Err(Error::VacuumDivergence { mean_number: mean });
    }
    Ok(a2psi.dotc(&a2psi).re / (mean * mean))
}
