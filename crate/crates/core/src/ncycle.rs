//! n-cycle inequality engines.
//!
//! Odd cycles: the KCBS operator `K_n = sum_j |psi_j><psi_j|` built from
//! the optimal qutrit projectors, its diagonal form `(k1, k1, k3)`, the
//! classical bound `(n-1)/2`, the quantum bound `n cos(pi/n)/(1+cos(pi/n))`
//! and the `rho_33` threshold above which a qutrit violates the
//! inequality under these measurements.
//!
//! Even cycles: the chained Bell observables `X_j` (tensor leg chosen by
//! the parity of `j`), the operator
//! `O_n = cos(pi/n)(XX + ZZ) + sin(pi/n)(XZ - ZX)` with spectrum
//! `{2, 0, 0, -2}`, the inequality value along two independent routes,
//! and the extremal-eigenvalue-gap condition `lambda_1 - lambda_4 > (n-2)/n`
//! that is necessary for a violation.
//!
//! Adjacent correlators pair the two parties' settings in cycle order
//! (setting `j` on the first tensor factor, `j+1` on the second), which
//! is the convention under which the term sum equals `(n/2) O_n`.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{eigenvalues_hermitian, C64, CMat, JACOBI_TOL};

/// Hermiticity and trace tolerance for density-matrix validation.
const DM_TOL: f64 = 1e-12;

/// Eigenvalues of a density matrix may dip this far below zero;
/// measurement-grade input data carries rounding.
const PSD_TOL: f64 = -1e-10;

fn pauli_x() -> CMat {
    CMat::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])
}

fn pauli_z() -> CMat {
    CMat::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]])
}

fn require_odd_cycle(what: &'static str, n: u32) -> Result<()> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::InvalidCycle {
            what,
            parity: "odd",
            min: 5,
            n,
        });
    }
    Ok(())
}

fn require_even_cycle(what: &'static str, n: u32) -> Result<()> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidCycle {
            what,
            parity: "even",
            min: 4,
            n,
        });
    }
    Ok(())
}

/// Validated density matrix: Hermitian within 1e-12, unit trace within
/// 1e-12, eigenvalues above -1e-10.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    mat: CMat,
    eigenvalues: Vec<f64>,
}

/// Serialised form: row-major real and imaginary parts.
#[derive(Serialize, Deserialize)]
struct DensityMatrixJson {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl DensityMatrix {
    pub fn new(mat: CMat) -> Result<Self> {
        let herm = mat.hermiticity_error();
        if herm > DM_TOL {
            return Err(Error::NotHermitian { deviation: herm });
        }
        let trace = mat.trace();
        if (trace.re - 1.0).abs() > DM_TOL || trace.im.abs() > DM_TOL {
            return Err(Error::TraceNotOne { trace: trace.re });
        }
        let spectral = eigenvalues_hermitian(&mat, JACOBI_TOL)?;
        let min = *spectral.eigenvalues.last().expect("non-empty spectrum");
        if min < PSD_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self {
            mat,
            eigenvalues: spectral.eigenvalues,
        })
    }

    pub fn from_re_im(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let dim = re.len();
        if im.len() != dim
            || re.iter().any(|r| r.len() != dim)
            || im.iter().any(|r| r.len() != dim)
        {
            return Err(Error::Parse(
                "re/im must be square matrices of equal dimension".into(),
            ));
        }
        let mut mat = CMat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                mat.set(i, j, C64::new(re[i][j], im[i][j]));
            }
        }
        Self::new(mat)
    }

    /// Parses `{"dim": d, "re": [[..]], "im": [[..]]}`. Validation
    /// failures name the violated invariant (hermiticity, trace, PSD).
    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: DensityMatrixJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if parsed.re.len() != parsed.dim {
            return Err(Error::Parse(format!(
                "dim field is {} but re has {} rows",
                parsed.dim,
                parsed.re.len()
            )));
        }
        Self::from_re_im(&parsed.re, &parsed.im)
    }

    pub fn to_json(&self) -> Value {
        let d = self.dim();
        let re: Vec<Vec<f64>> = (0..d)
            .map(|i| (0..d).map(|j| self.mat.get(i, j).re).collect())
            .collect();
        let im: Vec<Vec<f64>> = (0..d)
            .map(|i| (0..d).map(|j| self.mat.get(i, j).im).collect())
            .collect();
        serde_json::json!({ "dim": d, "re": re, "im": im })
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    /// Eigenvalues sorted descending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new(CMat::identity(dim).scale_re(1.0 / dim as f64))
            .expect("maximally mixed state is valid")
    }

    /// Pure state `|v><v| / <v|v>`.
    pub fn pure_state(amplitudes: &[C64]) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sqr == 0.0 {
            return Err(Error::Parse("zero state vector".into()));
        }
        Self::new(CMat::outer(amplitudes).scale_re(1.0 / norm_sqr))
    }

    /// The two-qubit singlet `(0, 1/sqrt(2), -1/sqrt(2), 0)`.
    pub fn singlet() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::pure_state(&[
            C64::new(0.0, 0.0),
            C64::new(s, 0.0),
            C64::new(-s, 0.0),
            C64::new(0.0, 0.0),
        ])
        .expect("singlet is valid")
    }

    /// Qutrit diagonal state `diag((1-t)/2, (1-t)/2, t)`.
    pub fn qutrit_diag(rho33: f64) -> Result<Self> {
        let rest = (1.0 - rho33) / 2.0;
        Self::from_re_im(
            &[
                vec![rest, 0.0, 0.0],
                vec![0.0, rest, 0.0],
                vec![0.0, 0.0, rho33],
            ],
            &[vec![0.0; 3], vec![0.0; 3], vec![0.0; 3]],
        )
    }
}

fn normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen::<f64>().max(1e-300);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// Random full-rank mixed state `G G^dag / tr(G G^dag)` with Gaussian `G`.
pub fn random_mixed<R: Rng>(dim: usize, rng: &mut R) -> DensityMatrix {
    let mut g = CMat::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(i, j, C64::new(normal(rng), normal(rng)));
        }
    }
    let m = g.mul(&g.dagger());
    let trace = m.trace().re;
    DensityMatrix::new(m.scale_re(1.0 / trace)).expect("Gaussian state is valid")
}

/// Random pure state with Gaussian amplitudes.
pub fn random_pure<R: Rng>(dim: usize, rng: &mut R) -> DensityMatrix {
    let amps: Vec<C64> = (0..dim)
        .map(|_| C64::new(normal(rng), normal(rng)))
        .collect();
    DensityMatrix::pure_state(&amps).expect("Gaussian amplitudes are nonzero")
}

/// The odd-cycle KCBS construction for a qutrit.
#[derive(Clone, Debug)]
pub struct KcbsModel {
    n: u32,
    theta: f64,
    projectors: Vec<CMat>,
    operator: CMat,
    k1: f64,
    k3: f64,
}

impl KcbsModel {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Mixing angle with `cos^2(theta) = cos(pi/n) / (1 + cos(pi/n))`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn projectors(&self) -> &[CMat] {
        &self.projectors
    }

    /// The numerically summed operator `K_n`.
    pub fn operator(&self) -> &CMat {
        &self.operator
    }

    /// Closed-form eigenvalues `(k1, k1, k3)` of `K_n`.
    pub fn eigenvalues(&self) -> (f64, f64, f64) {
        (self.k1, self.k1, self.k3)
    }

    pub fn k1(&self) -> f64 {
        self.k1
    }

    pub fn k3(&self) -> f64 {
        self.k3
    }
}

/// Builds the `n` rank-1 projectors
/// `|psi_j> = (sin(t)cos(j pi (n-1)/n), sin(t)sin(j pi (n-1)/n), cos(t))`
/// and their sum `K_n = diag(k1, k1, k3)` with
/// `k1 = n / (2(1 + cos(pi/n)))` and `k3 = n cos(pi/n) / (1 + cos(pi/n))`.
/// Adjacent projectors (indices mod `n`) are orthogonal.
pub fn kcbs_model(n: u32) -> Result<KcbsModel> {
    require_odd_cycle("KCBS model", n)?;
    let nf = n as f64;
    let c = (PI / nf).cos();
    let theta = (c / (1.0 + c)).sqrt().acos();
    let (sin_t, cos_t) = (theta.sin(), theta.cos());

    let step = PI * (nf - 1.0) / nf;
    let mut projectors = Vec::with_capacity(n as usize);
    let mut operator = CMat::zeros(3);
    for j in 1..=n {
        let angle = j as f64 * step;
        let psi = [
            C64::new(sin_t * angle.cos(), 0.0),
            C64::new(sin_t * angle.sin(), 0.0),
            C64::new(cos_t, 0.0),
        ];
        let proj = CMat::outer(&psi);
        operator = operator.add(&proj);
        projectors.push(proj);
    }

    Ok(KcbsModel {
        n,
        theta,
        projectors,
        operator,
        k1: nf / (2.0 * (1.0 + c)),
        k3: nf * c / (1.0 + c),
    })
}

/// `tr(K_n rho) = k1 (rho_11 + rho_22) + k3 rho_33`, evaluated against
/// the numerically summed operator.
pub fn kcbs_value(model: &KcbsModel, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: rho.dim(),
        });
    }
    Ok(model.operator.trace_product(rho.mat()).re)
}

/// The `rho_33` threshold above which a qutrit violates the odd n-cycle
/// inequality under the optimal measurement configuration:
/// `(cos(pi/n)(n-1) - 1) / (n (2 cos(pi/n) - 1))`.
///
/// Necessity is scoped to that configuration; other measurement choices
/// are not covered by this threshold.
pub fn kcbs_threshold(n: u32) -> Result<f64> {
    require_odd_cycle("KCBS threshold", n)?;
    let nf = n as f64;
    let c = (PI / nf).cos();
    Ok((c * (nf - 1.0) - 1.0) / (nf * (2.0 * c - 1.0)))
}

/// `(classical, quantum)` bounds of the odd n-cycle inequality:
/// `(n-1)/2` and the odd-cycle Lovasz theta value
/// `n cos(pi/n) / (1 + cos(pi/n))`.
pub fn kcbs_bounds(n: u32) -> Result<(f64, f64)> {
    require_odd_cycle("KCBS bounds", n)?;
    let nf = n as f64;
    let c = (PI / nf).cos();
    Ok(((nf - 1.0) / 2.0, nf * c / (1.0 + c)))
}

/// The even-cycle chained Bell construction on two qubits.
#[derive(Clone, Debug)]
pub struct ChainedModel {
    n: u32,
    settings: Vec<CMat>,
    observables: Vec<CMat>,
    operator: CMat,
}

impl ChainedModel {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Single-qubit setting `X~_j = cos(j pi/n) sx + sin(j pi/n) sz`, 1-indexed.
    pub fn setting(&self, j: u32) -> &CMat {
        &self.settings[(j - 1) as usize]
    }

    /// Two-qubit observable `X_j`: the setting on the first factor for
    /// even `j`, on the second factor for odd `j`.
    pub fn observable(&self, j: u32) -> &CMat {
        &self.observables[(j - 1) as usize]
    }

    /// `O_n = cos(pi/n)(XX + ZZ) + sin(pi/n)(XZ - ZX)`.
    pub fn operator(&self) -> &CMat {
        &self.operator
    }

    /// Correlation operator of the cycle pair `(j, j+1)` (wrapping at
    /// `n`): the `j`-th setting on the first factor, its successor on
    /// the second.
    pub fn pair_operator(&self, j: u32) -> CMat {
        let next = if j == self.n { 1 } else { j + 1 };
        self.setting(j).kron(self.setting(next))
    }
}

/// Builds the chained-Bell observables and operator for even `n >= 4`.
pub fn chained_model(n: u32) -> Result<ChainedModel> {
    require_even_cycle("chained model", n)?;
    let nf = n as f64;
    let (sx, sz) = (pauli_x(), pauli_z());
    let id2 = CMat::identity(2);

    let mut settings = Vec::with_capacity(n as usize);
    let mut observables = Vec::with_capacity(n as usize);
    for j in 1..=n {
        let angle = j as f64 * PI / nf;
        let tilde = sx.scale_re(angle.cos()).add(&sz.scale_re(angle.sin()));
        observables.push(if j % 2 == 0 {
            tilde.kron(&id2)
        } else {
            id2.kron(&tilde)
        });
        settings.push(tilde);
    }

    let (c, s) = ((PI / nf).cos(), (PI / nf).sin());
    let xx = sx.kron(&sx);
    let zz = sz.kron(&sz);
    let xz = sx.kron(&sz);
    let zx = sz.kron(&sx);
    let operator = xx.add(&zz).scale_re(c).add(&xz.sub(&zx).scale_re(s));

    Ok(ChainedModel {
        n,
        settings,
        observables,
        operator,
    })
}

/// Chained inequality value
/// `sum_{j<n} <pair(j, j+1)> - <pair(n, 1)>`, summed term by term.
///
/// Equals `(n/2) tr(O_n rho)` (see [`chained_value_operator`], the
/// independent route). A violation of the n-cycle family means
/// `|value| > n - 2`; the sign states which relabelled form is violated.
pub fn chained_value(model: &ChainedModel, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    let mut value = 0.0;
    for j in 1..model.n() {
        value += model.pair_operator(j).trace_product(rho.mat()).re;
    }
    value -= model.pair_operator(model.n()).trace_product(rho.mat()).re;
    Ok(value)
}

/// The operator route for the chained value: `(n/2) tr(O_n rho)`.
pub fn chained_value_operator(model: &ChainedModel, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    Ok(model.n() as f64 / 2.0 * model.operator.trace_product(rho.mat()).re)
}

/// Outcome of the extremal-eigenvalue-gap test.
#[derive(Clone, Copy, Debug)]
pub struct GapReport {
    /// `lambda_1 - lambda_4` of the state.
    pub gap: f64,
    /// `(n-2)/n`.
    pub threshold: f64,
    /// `gap > threshold`. When false, no violation is possible with the
    /// optimal settings; the condition is necessary, not sufficient.
    pub satisfied: bool,
}

/// Necessary condition for a chained-Bell violation of cycle `n`:
/// the extremal eigenvalue gap of the state must exceed `(n-2)/n`.
pub fn chained_necessary_condition(rho: &DensityMatrix, n: u32) -> Result<GapReport> {
    require_even_cycle("chained gap condition", n)?;
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: rho.dim(),
        });
    }
    let eigs = rho.eigenvalues();
    let gap = eigs[0] - eigs[3];
    let threshold = (n as f64 - 2.0) / n as f64;
    Ok(GapReport {
        gap,
        threshold,
        satisfied: gap > threshold,
    })
}
