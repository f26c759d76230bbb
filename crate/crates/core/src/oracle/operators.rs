use nalgebra::DMatrix;
use num_complex::Complex64;

use super::register::FockRegister;
use crate::error::{QiopaError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorKind {
    Create,
    Annihilate,
    Number,
    Displacement(Complex64),
}

/// Single-mode operator as a dense d×d matrix in the truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOperator {
    pub kind: OperatorKind,
    pub matrix: DMatrix<Complex64>,
}

impl ModeOperator {
    pub fn new(kind: OperatorKind, cutoff: usize) -> Self {
        let matrix = match kind {
            OperatorKind::Annihilate => DMatrix::from_fn(cutoff, cutoff, |r, c| {
                if c == r + 1 {
                    Complex64::new((c as f64).sqrt(), 0.0)
                } else {
                    Complex64::default()
                }
            }),
            OperatorKind::Create => DMatrix::from_fn(cutoff, cutoff, |r, c| {
                if r == c + 1 {
                    Complex64::new((r as f64).sqrt(), 0.0)
                } else {
                    Complex64::default()
                }
            }),
            OperatorKind::Number => DMatrix::from_fn(cutoff, cutoff, |r, c| {
                if r == c {
                    Complex64::new(r as f64, 0.0)
                } else {
                    Complex64::default()
                }
            }),
            OperatorKind::Displacement(alpha) => displacement_matrix(alpha, cutoff, cutoff),
        };
        Self { kind, matrix }
    }

    pub fn cutoff(&self) -> usize {
        self.matrix.nrows()
    }

    /// Kronecker lift onto `mode` of a `mode_count`-mode register, first mode
    /// most significant.
    pub fn lifted(&self, mode_count: usize, mode: usize) -> DMatrix<Complex64> {
        let d = self.cutoff();
        let left = DMatrix::<Complex64>::identity(d.pow(mode as u32), d.pow(mode as u32));
        let right_dim = d.pow((mode_count - 1 - mode) as u32);
        let right = DMatrix::<Complex64>::identity(right_dim, right_dim);
        left.kronecker(&self.matrix).kronecker(&right)
    }

    pub fn apply(&self, reg: &FockRegister, mode: usize) -> Result<FockRegister> {
        check_mode(reg, mode)?;
        if self.cutoff() != reg.cutoff() {
            return Err(QiopaError::DimensionMismatch { expected: reg.cutoff(), found: self.cutoff() });
        }
        let d = reg.cutoff();
        let s = reg.stride(mode);
        let src = reg.as_slice();
        let mut out = vec![Complex64::default(); src.len()];
        for (base, _) in src.iter().enumerate().filter(|(i, _)| (i / s) % d == 0) {
            for r in 0..d {
                let mut acc = Complex64::default();
                for c in 0..d {
                    let m = self.matrix[(r, c)];
                    if m != Complex64::default() {
                        acc += m * src[base + c * s];
                    }
                }
                out[base + r * s] = acc;
            }
        }
        FockRegister::from_vector(reg.mode_count(), d, out)
    }
}

fn check_mode(reg: &FockRegister, mode: usize) -> Result<()> {
    if mode >= reg.mode_count() {
        return Err(QiopaError::DimensionMismatch { expected: reg.mode_count(), found: mode + 1 });
    }
    Ok(())
}

/// ⟨m|D(λ)|n⟩ for m < rows, n < cols, exact (not the exponential of a
/// truncated generator). Built column by column from the coherent state
/// D(λ)|0⟩ using D(λ)a† = (a† − λ*)D(λ).
pub fn displacement_matrix(lambda: Complex64, rows: usize, cols: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::<Complex64>::zeros(rows, cols);
    let mut v = vec![Complex64::default(); rows];
    let mut c = Complex64::new((-0.5 * lambda.norm_sqr()).exp(), 0.0);
    for (k, slot) in v.iter_mut().enumerate() {
        *slot = c;
        c *= lambda / ((k + 1) as f64).sqrt();
    }
    let lc = lambda.conj();
    for n in 0..cols {
        for r in 0..rows {
            m[(r, n)] = v[r];
        }
        let mut next = vec![Complex64::default(); rows];
        for r in 0..rows {
            let raised = if r > 0 { v[r - 1] * (r as f64).sqrt() } else { Complex64::default() };
            next[r] = (raised - lc * v[r]) / ((n + 1) as f64).sqrt();
        }
        v = next;
    }
    m
}

/// a_mode applied in place of a dense matrix product.
pub fn annihilate(reg: &FockRegister, mode: usize) -> Result<FockRegister> {
    check_mode(reg, mode)?;
    let d = reg.cutoff();
    let s = reg.stride(mode);
    let src = reg.as_slice();
    let mut out = vec![Complex64::default(); src.len()];
    for (i, slot) in out.iter_mut().enumerate() {
        let n = (i / s) % d;
        if n + 1 < d {
            *slot = src[i + s] * ((n + 1) as f64).sqrt();
        }
    }
    FockRegister::from_vector(reg.mode_count(), d, out)
}

/// Linear combination Σ c_k a_{mode_k} of annihilation operators, the form of
/// every detected field.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMode {
    pub terms: Vec<(usize, Complex64)>,
}

impl LinearMode {
    pub fn apply(&self, reg: &FockRegister) -> Result<FockRegister> {
        let mut out = vec![Complex64::default(); reg.len()];
        for &(mode, coeff) in &self.terms {
            let part = annihilate(reg, mode)?;
            for (o, p) in out.iter_mut().zip(part.as_slice()) {
                *o += coeff * p;
            }
        }
        FockRegister::from_vector(reg.mode_count(), reg.cutoff(), out)
    }
}

/// Σ_t coeff_t Π_k O_{t,k}, each factor acting on one mode; factors apply
/// right to left.
#[derive(Debug, Clone, Default)]
pub struct Observable {
    pub terms: Vec<(Complex64, Vec<(usize, ModeOperator)>)>,
}

impl Observable {
    pub fn single(mode: usize, op: ModeOperator) -> Self {
        Self { terms: vec![(Complex64::new(1.0, 0.0), vec![(mode, op)])] }
    }

    pub fn add_term(mut self, coeff: Complex64, factors: Vec<(usize, ModeOperator)>) -> Self {
        self.terms.push((coeff, factors));
        self
    }
}

pub fn expectation(reg: &FockRegister, observable: &Observable) -> Result<Complex64> {
    let mut total = Complex64::default();
    for (coeff, factors) in &observable.terms {
        let mut v = reg.clone();
        for (mode, op) in factors.iter().rev() {
            v = op.apply(&v, *mode)?;
        }
        total += coeff * reg.inner(&v)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::register::{make_register, Preparation};

    #[test]
    fn number_on_single_photon() {
        let r = make_register(1, 4, &Preparation::Basis(vec![1])).unwrap();
        let n = Observable::single(0, ModeOperator::new(OperatorKind::Number, 4));
        let e = expectation(&r, &n).unwrap();
        assert!((e.re - 1.0).abs() < 1e-15 && e.im.abs() < 1e-15);
    }

    #[test]
    fn ladder_adjoint_and_commutator() {
        let d = 7;
        let a = ModeOperator::new(OperatorKind::Annihilate, d).matrix;
        let ad = ModeOperator::new(OperatorKind::Create, d).matrix;
        assert_eq!(a.adjoint(), ad);
        let comm = &a * &ad - &ad * &a;
        for r in 0..d - 1 {
            for c in 0..d - 1 {
                let expect = if r == c { 1.0 } else { 0.0 };
                assert!((comm[(r, c)].re - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn fast_annihilate_matches_matrix() {
        let mut r = FockRegister::zeros(3, 4).unwrap();
        for (i, a) in r.as_mut_slice().iter_mut().enumerate() {
            *a = Complex64::new(i as f64, 0.5 * i as f64);
        }
        let op = ModeOperator::new(OperatorKind::Annihilate, 4);
        for mode in 0..3 {
            let x = annihilate(&r, mode).unwrap();
            let y = op.apply(&r, mode).unwrap();
            let lifted = op.lifted(3, mode);
            let z = &lifted * nalgebra::DVector::from_column_slice(r.as_slice());
            for i in 0..r.len() {
                assert!((x.as_slice()[i] - y.as_slice()[i]).norm() < 1e-12);
                assert!((x.as_slice()[i] - z[i]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn displacement_of_vacuum_is_coherent() {
        let alpha = Complex64::new(0.6, -0.3);
        let m = displacement_matrix(alpha, 30, 3);
        let norm: f64 = (0..30).map(|r| m[(r, 0)].norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        // ⟨1|D(α)|0⟩ = α e^{−|α|²/2}
        let expect = alpha * (-0.5 * alpha.norm_sqr()).exp();
        assert!((m[(1, 0)] - expect).norm() < 1e-15);
        // columns stay orthonormal when enough rows are kept
        let ip: Complex64 = (0..30).map(|r| m[(r, 0)].conj() * m[(r, 2)]).sum();
        assert!(ip.norm() < 1e-13);
    }

    #[test]
    fn displacement_is_unitary_in_the_limit() {
        let alpha = Complex64::new(-0.4, 0.9);
        let big = displacement_matrix(alpha, 60, 60);
        let inv = displacement_matrix(-alpha, 60, 60);
        let prod = inv * big;
        for r in 0..10 {
            for c in 0..10 {
                let expect = if r == c { 1.0 } else { 0.0 };
                assert!((prod[(r, c)] - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }
}
