//! Dense symmetric and general square matrices with spectral utilities.
//!
//! Everything is plain row-major `Vec<f64>` storage sized for the small
//! dimensions (n <= ~32) the verification suites use. Three types split the
//! invariants: [`GeneralMatrix`] guarantees finite entries, [`SymMatrix`]
//! additionally guarantees exact entrywise symmetry (enforced on
//! construction), and [`PsdMatrix`] carries a full spectral decomposition
//! with eigenvalues verified nonnegative up to tolerance, which is what the
//! fractional powers at the heart of every operator-mean construction need.
//!
//! Eigendecompositions come from a self-contained cyclic Jacobi solver
//! ([`eig`]); random instances from seeded generation ([`random`]); a small
//! text format round-trips matrices through files for the CLI.

pub mod eig;
pub mod random;

use crate::error::{Error, Result};

/// Default relative tolerance when certifying a symmetric matrix as positive
/// semidefinite.
pub const DEFAULT_PSD_TOL: f64 = 1e-8;

/// Relative eigenvalue floor below which a matrix counts as singular for the
/// purpose of negative powers.
pub const SINGULARITY_FLOOR: f64 = 1e-12;

fn check_finite(data: &[f64]) -> Result<()> {
    if data.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { what: "matrix entry" })
    }
}

/// A square matrix with finite entries, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralMatrix {
    n: usize,
    data: Vec<f64>,
}

impl GeneralMatrix {
    /// Wraps row-major data of length `n * n`.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: data.len(),
                right: n * n,
            });
        }
        check_finite(&data)?;
        Ok(Self { n, data })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    fn check_same_dim(&self, other_n: usize) -> Result<()> {
        if self.n == other_n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other_n,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other.n)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { n: self.n, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other.n)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { n: self.n, data })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other.n)?;
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.data[i * n + k];
                if aik == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for j in 0..n {
                    dst[j] += aik * row[j];
                }
            }
        }
        Ok(Self { n, data: out })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|m_ij - m_ji|`; zero exactly when the matrix is symmetric.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// The symmetric part `(M + M^T) / 2`.
    pub fn sym_part(&self) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| (self.get(i, j) + self.get(j, i)) / 2.0)
    }
}

/// A symmetric matrix; `get(i, j)` and `get(j, i)` are bitwise equal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Builds from a generator evaluated once per unordered index pair, so
    /// symmetry is exact by construction.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    /// Wraps row-major data, averaging mirror entries to restore exact
    /// symmetry; rejects wrong sizes and non-finite entries.
    pub fn new_symmetrized(n: usize, data: Vec<f64>) -> Result<Self> {
        let general = GeneralMatrix::new(n, data)?;
        Ok(general.sym_part())
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal_of(&vec![1.0; n])
    }

    pub fn diagonal_of(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = diag[i];
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets the `(i, j)` and `(j, i)` entries together.
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { n: self.n, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { n: self.n, data })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn to_general(&self) -> GeneralMatrix {
        GeneralMatrix {
            n: self.n,
            data: self.data.clone(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Eigenvalues in nonincreasing order with matching orthonormal columns.
    pub fn eigen(&self) -> Result<(Vec<f64>, GeneralMatrix)> {
        eig::jacobi_eigen(self)
    }
}

/// A positive semidefinite matrix carrying its spectral decomposition.
///
/// `basis * diag(eigenvalues) * basis^T` reconstructs `base` to roughly
/// machine precision; eigenvalues are nonincreasing and nonnegative up to
/// the tolerance accepted at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdMatrix {
    base: SymMatrix,
    eigenvalues: Vec<f64>,
    basis: GeneralMatrix,
}

impl PsdMatrix {
    /// Decomposes a symmetric matrix, accepting eigenvalues down to
    /// `-tol * max(1, lambda_max_abs)` (rounding noise from genuinely PSD
    /// inputs); anything lower is rejected as not PSD.
    pub fn from_sym(base: SymMatrix, tol: f64) -> Result<Self> {
        let (eigenvalues, basis) = base.eigen()?;
        let scale = eigenvalues
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(1.0);
        let lambda_min = *eigenvalues.last().expect("nonempty spectrum");
        if lambda_min < -tol * scale {
            return Err(Error::NotPsd { lambda_min });
        }
        Ok(Self {
            base,
            eigenvalues,
            basis,
        })
    }

    /// Assembles `basis * diag(eigenvalues) * basis^T` from a known
    /// decomposition: eigenvalues nonincreasing and nonnegative, basis
    /// orthonormal. Used by seeded random generation, where the decomposition
    /// is known by construction.
    pub fn from_decomposition(eigenvalues: Vec<f64>, basis: GeneralMatrix) -> Result<Self> {
        if eigenvalues.len() != basis.n() {
            return Err(Error::DimensionMismatch {
                left: eigenvalues.len(),
                right: basis.n(),
            });
        }
        if eigenvalues.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(
                "eigenvalues must be in nonincreasing order".into(),
            ));
        }
        let lambda_min = *eigenvalues.last().unwrap_or(&0.0);
        if lambda_min < 0.0 {
            return Err(Error::NotPsd { lambda_min });
        }
        let n = basis.n();
        let base = SymMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| basis.get(i, k) * eigenvalues[k] * basis.get(j, k))
                .sum()
        });
        Ok(Self {
            base,
            eigenvalues,
            basis,
        })
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn base(&self) -> &SymMatrix {
        &self.base
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn basis(&self) -> &GeneralMatrix {
        &self.basis
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// Spectral norm (largest absolute eigenvalue).
    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Whether every eigenvalue clears the relative singularity floor,
    /// i.e. the matrix is safely invertible.
    pub fn is_strictly_positive(&self) -> bool {
        self.lambda_min() > SINGULARITY_FLOOR * self.lambda_max().max(0.0)
    }

    /// The matrix power `base^v` through the spectral decomposition.
    ///
    /// Tiny negative eigenvalues (inside the PSD tolerance) are clamped to
    /// zero first. Nonpositive powers require strict positivity; `v = 0`
    /// returns the identity, fractional `v > 0` maps zero eigenvalues to
    /// zero.
    pub fn power(&self, v: f64) -> Result<SymMatrix> {
        if v <= 0.0 && !self.is_strictly_positive() {
            return Err(Error::SingularMatrix {
                lambda_min: self.lambda_min(),
                lambda_max: self.lambda_max(),
            });
        }
        if v == 0.0 {
            return Ok(SymMatrix::identity(self.n()));
        }
        let powered: Vec<f64> = self
            .eigenvalues
            .iter()
            .map(|&l| {
                let clamped = l.max(0.0);
                if clamped == 0.0 {
                    0.0
                } else {
                    clamped.powf(v)
                }
            })
            .collect();
        let n = self.n();
        Ok(SymMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| self.basis.get(i, k) * powered[k] * self.basis.get(j, k))
                .sum()
        }))
    }

    /// `base^(1/2)`.
    pub fn sqrt(&self) -> SymMatrix {
        self.power(0.5).expect("positive powers cannot fail")
    }

    /// `base^(-1/2)`; fails on singular matrices.
    pub fn inv_sqrt(&self) -> Result<SymMatrix> {
        self.power(-0.5)
    }

    /// `base + eps * I`, re-wrapped with the shifted spectrum in the same
    /// basis; the standard regularization before inverting.
    pub fn regularize(&self, eps: f64) -> Result<Self> {
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::ParamOutOfRange {
                name: "regularization eps",
                value: eps,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        let eigenvalues: Vec<f64> = self
            .eigenvalues
            .iter()
            .map(|&l| l.max(0.0) + eps)
            .collect();
        let shifted = self.base.add(&SymMatrix::identity(self.n()).scale(eps))?;
        Ok(Self {
            base: shifted,
            eigenvalues,
            basis: self.basis.clone(),
        })
    }
}

/// Normalized Loewner margin of `b - a`: the smallest eigenvalue of the
/// difference divided by `max(1, its spectral norm)`.
pub fn loewner_margin(a: &SymMatrix, b: &SymMatrix) -> Result<f64> {
    let diff = b.sub(a)?;
    let (eigs, _) = diff.eigen()?;
    let spectral = eigs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(eigs.last().expect("nonempty spectrum") / spectral.max(1.0))
}

/// Whether `a <= b` in the Loewner order, up to relative tolerance `tol`.
pub fn loewner_leq(a: &SymMatrix, b: &SymMatrix, tol: f64) -> Result<bool> {
    Ok(loewner_margin(a, b)? >= -tol)
}

/// Parses the matrix text format: a dimension header followed by `n * n`
/// whitespace-separated row-major entries.
pub fn parse_general(text: &str) -> Result<GeneralMatrix> {
    let mut tokens = text.split_whitespace();
    let head = tokens
        .next()
        .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
    let n: usize = head
        .parse()
        .map_err(|_| Error::Parse(format!("matrix dimension `{head}` is not an integer")))?;
    if n == 0 {
        return Err(Error::Parse("matrix dimension must be positive".into()));
    }
    let mut data = Vec::with_capacity(n * n);
    for tok in tokens.by_ref().take(n * n) {
        let v: f64 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("matrix entry `{tok}` is not a number")))?;
        data.push(v);
    }
    if data.len() != n * n {
        return Err(Error::Parse(format!(
            "matrix text has {} entries, expected {}",
            data.len(),
            n * n
        )));
    }
    if tokens.next().is_some() {
        return Err(Error::Parse(format!(
            "matrix text has trailing entries beyond {}",
            n * n
        )));
    }
    GeneralMatrix::new(n, data)
}

/// Maximum relative asymmetry tolerated when reading a symmetric matrix from
/// text.
const TEXT_SYM_TOL: f64 = 1e-9;

/// Parses the text format and checks the entries are symmetric to within
/// `1e-9` relative before symmetrizing exactly.
pub fn parse_sym(text: &str) -> Result<SymMatrix> {
    let general = parse_general(text)?;
    let scale = general.max_abs().max(1.0);
    let asym = general.asymmetry();
    if asym > TEXT_SYM_TOL * scale {
        return Err(Error::Parse(format!(
            "matrix text is not symmetric (asymmetry {asym:e})"
        )));
    }
    Ok(general.sym_part())
}

/// Writes the matrix text format read back by [`parse_general`]; entries use
/// the shortest round-trip decimal form, so write/parse is lossless.
pub fn write_general(m: &GeneralMatrix) -> String {
    let mut out = String::new();
    out.push_str(&m.n().to_string());
    out.push('\n');
    for i in 0..m.n() {
        for j in 0..m.n() {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{}", m.get(i, j)));
        }
        out.push('\n');
    }
    out
}

/// Writes a symmetric matrix in the same text format.
pub fn write_sym(m: &SymMatrix) -> String {
    write_general(&m.to_general())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_matrix_shape_and_finite_checks() {
        assert!(GeneralMatrix::new(2, vec![1.0; 3]).is_err());
        assert!(GeneralMatrix::new(2, vec![1.0, 2.0, f64::NAN, 0.0]).is_err());
        let m = GeneralMatrix::new(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(m.get(0, 1), 2.0);
        assert_eq!(m.transpose().get(0, 1), 3.0);
    }

    #[test]
    fn matmul_matches_hand_product() {
        let a = GeneralMatrix::new(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let b = GeneralMatrix::new(2, vec![5.0, 6.0, 7.0, 8.0]).unwrap();
        let c = a.matmul(&b).unwrap();
        assert_eq!(c.data(), &[19.0, 22.0, 43.0, 50.0]);
        let i = GeneralMatrix::identity(2);
        assert_eq!(a.matmul(&i).unwrap(), a);
    }

    #[test]
    fn sym_matrix_is_exactly_symmetric() {
        let m = SymMatrix::new_symmetrized(2, vec![1.0, 2.0, 2.0 + 1e-12, 5.0]).unwrap();
        assert_eq!(m.get(0, 1).to_bits(), m.get(1, 0).to_bits());
        let f = SymMatrix::from_fn(3, |i, j| (i * 10 + j) as f64);
        assert_eq!(f.get(2, 1), f.get(1, 2));
    }

    #[test]
    fn psd_from_sym_accepts_and_rejects() {
        let ok = SymMatrix::new_symmetrized(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let psd = PsdMatrix::from_sym(ok, DEFAULT_PSD_TOL).unwrap();
        assert!((psd.lambda_max() - 3.0).abs() < 1e-12);
        assert!((psd.lambda_min() - 1.0).abs() < 1e-12);
        let indefinite = SymMatrix::diagonal_of(&[1.0, -1.0]);
        assert!(matches!(
            PsdMatrix::from_sym(indefinite, DEFAULT_PSD_TOL),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn psd_power_identities() {
        let base = SymMatrix::new_symmetrized(3, vec![
            4.0, 1.0, 0.5,
            1.0, 3.0, 0.25,
            0.5, 0.25, 2.0,
        ])
        .unwrap();
        let psd = PsdMatrix::from_sym(base.clone(), DEFAULT_PSD_TOL).unwrap();
        // sqrt squared reconstructs the base.
        let root = psd.sqrt();
        let squared = root.to_general().matmul(&root.to_general()).unwrap();
        let err = squared.sub(&base.to_general()).unwrap().max_abs();
        assert!(err < 1e-12 * base.max_abs(), "sqrt error {err:e}");
        // Negative power against the base gives the identity.
        let inv = psd.power(-1.0).unwrap();
        let prod = inv.to_general().matmul(&base.to_general()).unwrap();
        let id_err = prod.sub(&GeneralMatrix::identity(3)).unwrap().max_abs();
        assert!(id_err < 1e-12, "inverse error {id_err:e}");
        // Zero power is the identity.
        assert_eq!(psd.power(0.0).unwrap(), SymMatrix::identity(3));
    }

    #[test]
    fn singular_matrices_reject_negative_powers() {
        let singular = PsdMatrix::from_sym(
            SymMatrix::diagonal_of(&[1.0, 0.0]),
            DEFAULT_PSD_TOL,
        )
        .unwrap();
        assert!(!singular.is_strictly_positive());
        assert!(singular.power(0.5).is_ok());
        assert!(matches!(
            singular.power(-0.5),
            Err(Error::SingularMatrix { .. })
        ));
        // Regularization restores invertibility.
        let fixed = singular.regularize(1e-6).unwrap();
        assert!(fixed.is_strictly_positive());
        assert!(fixed.inv_sqrt().is_ok());
    }

    #[test]
    fn loewner_order_on_diagonal_matrices() {
        let a = SymMatrix::diagonal_of(&[1.0, 2.0]);
        let b = SymMatrix::diagonal_of(&[2.0, 3.0]);
        assert!(loewner_leq(&a, &b, 1e-12).unwrap());
        assert!(!loewner_leq(&b, &a, 1e-12).unwrap());
        let c = SymMatrix::diagonal_of(&[2.0, 1.0]);
        assert!(!loewner_leq(&a, &c, 1e-12).unwrap());
        assert!(loewner_leq(&a, &a, 0.0).unwrap());
        assert!((loewner_margin(&a, &b).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn text_format_round_trips() {
        let m = GeneralMatrix::new(2, vec![1.5, -2.25, 1.0 / 3.0, 4e-17]).unwrap();
        let text = write_general(&m);
        let back = parse_general(&text).unwrap();
        assert_eq!(m, back);
        // Symmetric read path rejects asymmetric data.
        assert!(parse_sym("2 1 2 3 4").is_err());
        let s = parse_sym("2\n1 2\n2 5\n").unwrap();
        assert_eq!(s.get(0, 1), 2.0);
        // Malformed inputs.
        assert!(parse_general("").is_err());
        assert!(parse_general("x 1 2 3 4").is_err());
        assert!(parse_general("2 1 2 3").is_err());
        assert!(parse_general("2 1 2 3 4 5").is_err());
        assert!(parse_general("0").is_err());
    }
}
