//! Entanglement measures and separability tests.
//!
//! Two-qubit measures act on [`QubitDensity4`]. The closed forms for the
//! decohered odd ECS live next to the general routines they are checked
//! against: `concurrence_sym_closed` against `wootters_concurrence`,
//! `fraction_*_max` against a numeric scan over the probe amplitude, and
//! `pt_eigenvalues_closed` against `pt_eigenvalues`.

use crate::channels::{AbcdCoefficients, BellMixture, LossChannel, QubitDensity4, PSD_TOL};
use crate::error::{check_finite, check_unit_interval, EcsError, Result};
use crate::linalg::{partial_transpose as dense_partial_transpose, symmetric_eigen, DenseMatrix};
use crate::search::{bracketed_max, Maximum};
use crate::states::ecs_norm;
use crate::states::Parity;

const RANGE_SLACK: f64 = 1e-12;

/// Wootters concurrence, in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Concurrence(f64);

impl Concurrence {
    /// Values within `1e-12` outside `[0, 1]` are treated as roundoff and clamped.
    pub fn new(value: f64) -> Result<Self> {
        check_finite("concurrence", value)?;
        if !(-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&value) {
            return Err(EcsError::Domain {
                name: "concurrence",
                value,
                reason: "must lie in [0, 1]",
            });
        }
        Ok(Self(value.clamp(0.0, 1.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Largest overlap with a maximally entangled probe, and the probe amplitude
/// `beta` that attains it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangledFraction {
    pub value: f64,
    pub argmax_beta: f64,
}

/// `H(x) = -x log2 x - (1-x) log2(1-x)` with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    check_unit_interval("x", x)?;
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

/// `E(C) = H((1 + sqrt(1 - C^2)) / 2)`.
pub fn eof_from_concurrence(c: Concurrence) -> f64 {
    let c = c.value();
    let x = 0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt());
    binary_entropy(x).expect("x in [1/2, 1]")
}

fn spin_flip_matrix() -> DenseMatrix {
    // sigma_y ⊗ sigma_y is real
    DenseMatrix::from_rows(&[
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ])
    .expect("constant")
}

/// `rho~ = (sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y)`; `rho* = rho` here.
pub fn spin_flip(rho: &QubitDensity4) -> DenseMatrix {
    let y = spin_flip_matrix();
    y.matmul(&rho.to_dense())
        .and_then(|m| m.matmul(&y))
        .expect("4x4")
}

/// The non-Hermitian product `rho rho~`.
pub fn rho_rho_tilde(rho: &QubitDensity4) -> DenseMatrix {
    rho.to_dense().matmul(&spin_flip(rho)).expect("4x4")
}

/// Square roots of the eigenvalues of `rho rho~`, descending.
///
/// With `rho = W Wᵀ` (`W = V diag(sqrt(w))` from the eigen-decomposition),
/// the nonzero spectrum of `rho rho~` is that of `tau^2` for the symmetric
/// `tau = Wᵀ Y W`, so the `lambda_i` are `|eig(tau)|`. Unlike square roots
/// of the eigenvalues of `rho rho~`, this keeps roundoff zeros at roundoff
/// size. Eigenvalues of `rho` above `-1e-10` are clamped to zero first.
pub fn wootters_lambdas(rho: &QubitDensity4) -> Result<[f64; 4]> {
    let eig = symmetric_eigen(&rho.to_dense())?;
    let mut w = DenseMatrix::zeros(4, 4);
    for (k, &val) in eig.values.iter().enumerate() {
        if val < -PSD_TOL {
            return Err(EcsError::Invariant(format!(
                "negative density eigenvalue {val:e} in concurrence"
            )));
        }
        let root = val.max(0.0).sqrt();
        for i in 0..4 {
            w[(i, k)] = eig.vectors[(i, k)] * root;
        }
    }
    let tau = w
        .transpose()
        .matmul(&spin_flip_matrix())
        .and_then(|m| m.matmul(&w))?;
    let tau_eig = symmetric_eigen(&tau)?;
    let mut lambdas = [0.0; 4];
    for (l, v) in lambdas.iter_mut().zip(&tau_eig.values) {
        *l = v.abs();
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok(lambdas)
}

/// `max(0, l1 - l2 - l3 - l4)`.
pub fn wootters_concurrence(rho: &QubitDensity4) -> Result<Concurrence> {
    let l = wootters_lambdas(rho)?;
    Concurrence::new((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

fn require_positive_alpha(alpha: f64) -> Result<()> {
    check_finite("alpha", alpha)?;
    if alpha > 0.0 {
        Ok(())
    } else if alpha == 0.0 {
        Err(EcsError::Degenerate("odd ECS vanishes at alpha = 0".into()))
    } else {
        Err(EcsError::Domain {
            name: "alpha",
            value: alpha,
            reason: "ECS amplitude must be positive",
        })
    }
}

/// `(e^{4 eta a^2} - 1) / (e^{4 a^2} - 1)`, evaluated as
/// `e^{-4(1-eta) a^2} (1 - e^{-4 eta a^2}) / (1 - e^{-4 a^2})` so large
/// amplitudes do not overflow.
pub fn concurrence_sym_closed(alpha: f64, eta: f64) -> Result<Concurrence> {
    require_positive_alpha(alpha)?;
    check_unit_interval("eta", eta)?;
    let a2 = alpha * alpha;
    let value = (-4.0 * (1.0 - eta) * a2).exp() * (-4.0 * eta * a2).exp_m1() / (-4.0 * a2).exp_m1();
    Concurrence::new(value)
}

/// Overlap of the symmetric-channel state with the probe ECS of amplitude `beta`.
pub fn fraction_sym(alpha: f64, eta: f64, beta: f64) -> Result<f64> {
    require_positive_alpha(alpha)?;
    check_unit_interval("eta", eta)?;
    require_probe(beta)?;
    let s = eta.sqrt() * alpha;
    let gamma2 = (-4.0 * (1.0 - eta) * alpha * alpha).exp();
    // p - q with p = e^{-(b-s)^2}, q = e^{-(b+s)^2}
    let diff = -(-(beta - s).powi(2)).exp() * (-4.0 * beta * s).exp_m1();
    Ok(probe_fraction(alpha, beta, gamma2, diff))
}

/// Overlap of the asymmetric-channel state with the probe ECS of amplitude
/// `beta`, re-derived from the reduced density operator:
/// `(1+G1)(p-q)^2 / (2 (1-e^{-4a^2}) (1-e^{-4b^2}))` with
/// `p = <b|a><-b|-s>`, `q = <-b|a><b|-s>`, `s = sqrt(eta) a`.
pub fn fraction_asym(alpha: f64, eta: f64, beta: f64) -> Result<f64> {
    require_positive_alpha(alpha)?;
    check_unit_interval("eta", eta)?;
    require_probe(beta)?;
    let s = eta.sqrt() * alpha;
    let gamma1 = (-2.0 * (1.0 - eta) * alpha * alpha).exp();
    let log_p = -0.5 * (beta - alpha).powi(2) - 0.5 * (beta - s).powi(2);
    let diff = -log_p.exp() * (-2.0 * beta * (alpha + s)).exp_m1();
    Ok(probe_fraction(alpha, beta, gamma1, diff))
}

fn require_probe(beta: f64) -> Result<()> {
    check_finite("beta", beta)?;
    if beta > 0.0 {
        Ok(())
    } else {
        Err(EcsError::Degenerate(format!(
            "probe ECS with beta = {beta} is not a state"
        )))
    }
}

fn probe_fraction(alpha: f64, beta: f64, gamma: f64, diff: f64) -> f64 {
    let n_alpha = ecs_norm(alpha, Parity::Minus).expect("alpha > 0");
    let n_beta = ecs_norm(beta, Parity::Minus).expect("beta > 0");
    // 2 (1 + G) (p - q)^2 / (N-(a) N-(b))
    2.0 * (1.0 + gamma) * diff * diff / (n_alpha * n_beta)
}

/// Tolerance by which a numeric scan may exceed the analytic maximum.
pub const SCAN_DOMINANCE_TOL: f64 = 1e-9;
const SCAN_XTOL: f64 = 1e-10;

/// Numeric maximum of a probe overlap over `beta in (0, 4 alpha]`.
pub fn scan_fraction<F>(alpha: f64, probe: F) -> Maximum
where
    F: Fn(f64) -> f64,
{
    bracketed_max(probe, 4.0 * alpha, SCAN_XTOL * alpha.max(1.0))
}

/// Symmetric-channel entanglement fidelity
/// `(1 + e^{-4(1-eta)a^2})(1 - e^{-4 eta a^2}) / (2 (1 - e^{-4a^2}))`,
/// attained at `beta = sqrt(eta) alpha`.
pub fn fraction_sym_closed(alpha: f64, eta: f64) -> Result<EntangledFraction> {
    require_positive_alpha(alpha)?;
    check_unit_interval("eta", eta)?;
    let a2 = alpha * alpha;
    let gamma2 = (-4.0 * (1.0 - eta) * a2).exp();
    let value = (1.0 + gamma2) * (-4.0 * eta * a2).exp_m1() / (2.0 * (-4.0 * a2).exp_m1());
    Ok(EntangledFraction {
        value,
        argmax_beta: eta.sqrt() * alpha,
    })
}

/// Asymmetric-channel fully entangled fraction, evaluated at the maximizing
/// probe `beta = (1 + sqrt(eta)) alpha / 2`. Fails if a numeric scan over
/// `beta` finds a larger overlap.
pub fn fraction_asym_max(alpha: f64, eta: f64) -> Result<EntangledFraction> {
    require_positive_alpha(alpha)?;
    check_unit_interval("eta", eta)?;
    let beta = 0.5 * (1.0 + eta.sqrt()) * alpha;
    let value = fraction_asym(alpha, eta, beta)?;
    let scan = scan_fraction(alpha, |b| {
        fraction_asym(alpha, eta, b).unwrap_or(f64::NEG_INFINITY)
    });
    if scan.value > value + SCAN_DOMINANCE_TOL {
        return Err(EcsError::Invariant(format!(
            "scan beats analytic maximizer: f({}) = {} > f({beta}) = {value}",
            scan.arg, scan.value
        )));
    }
    Ok(EntangledFraction {
        value,
        argmax_beta: beta,
    })
}

/// `h[f] = H(1/2 + sqrt(f(1-f)))` for `f >= 1/2`, otherwise 0.
pub fn eof_lower_bound(f: f64) -> Result<f64> {
    check_unit_interval("f", f)?;
    if f < 0.5 {
        return Ok(0.0);
    }
    binary_entropy((0.5 + (f * (1.0 - f)).sqrt()).min(1.0))
}

/// Best teleportation fidelity from a state with fully entangled fraction `f`.
pub fn teleport_fidelity(f: f64) -> Result<f64> {
    check_unit_interval("f", f)?;
    Ok((2.0 * f + 1.0) / 3.0)
}

/// Transpose of the second qubit.
pub fn partial_transpose(rho: &QubitDensity4) -> DenseMatrix {
    dense_partial_transpose(&rho.to_dense(), (2, 2)).expect("4x4")
}

/// Eigenvalues of the partial transpose, ascending.
pub fn pt_eigenvalues(rho: &QubitDensity4) -> Result<[f64; 4]> {
    let e = symmetric_eigen(&partial_transpose(rho))?;
    let mut out = [0.0; 4];
    out.copy_from_slice(&e.values);
    Ok(out)
}

/// Partial-transpose eigenvalues of the symmetric-channel state,
/// `c0 {(A+C ± sqrt((A-C)^2 + 4B^2))/2, B ± D}`, ascending.
pub fn pt_eigenvalues_closed(k: &AbcdCoefficients) -> [f64; 4] {
    let root = ((k.a - k.c).powi(2) + 4.0 * k.b * k.b).sqrt();
    let mut out = [
        k.c0 * 0.5 * (k.a + k.c + root),
        k.c0 * 0.5 * (k.a + k.c - root),
        k.c0 * (k.b + k.d),
        k.c0 * (k.b - k.d),
    ];
    out.sort_by(f64::total_cmp);
    out
}

/// `-2 Σ λ⁻` over the entries of `values` below `-PSD_TOL`.
pub fn negativity_from_eigenvalues(values: &[f64]) -> f64 {
    -2.0 * values.iter().filter(|&&v| v < -PSD_TOL).sum::<f64>()
}

/// `-2 Σ λ⁻` over the negative partial-transpose eigenvalues.
pub fn negativity(rho: &QubitDensity4) -> Result<f64> {
    Ok(negativity_from_eigenvalues(&pt_eigenvalues(rho)?))
}

/// Negativity of a bipartite density matrix on `C^dA ⊗ C^dB`.
pub fn negativity_dense(rho: &DenseMatrix, dims: (usize, usize)) -> Result<f64> {
    let pt = dense_partial_transpose(rho, dims)?;
    Ok(negativity_from_eigenvalues(&symmetric_eigen(&pt)?.values))
}

/// Peres criterion: positive partial transpose, which for two qubits is
/// equivalent to separability.
pub fn is_ppt(rho: &QubitDensity4) -> Result<bool> {
    Ok(pt_eigenvalues(rho)?[0] >= -PSD_TOL)
}

/// Fully entangled fraction of a (possibly unnormalized) real two-qubit
/// matrix: the largest eigenvalue of the real part of the matrix in the
/// magic basis. For real input that real part splits into the blocks on
/// `{Phi+, Psi-}` and `{Phi-, Psi+}`.
pub fn qubit_fully_entangled_fraction(m: &[[f64; 4]; 4]) -> f64 {
    // unnormalized ±1 vectors; the 1/2 from normalization is applied once
    let phi_p = [1.0, 0.0, 0.0, 1.0];
    let phi_m = [1.0, 0.0, 0.0, -1.0];
    let psi_p = [0.0, 1.0, 1.0, 0.0];
    let psi_m = [0.0, 1.0, -1.0, 0.0];
    let form = |u: &[f64; 4], v: &[f64; 4]| {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += u[i] * m[i][j] * v[j];
            }
        }
        0.5 * acc
    };
    let top = |u: &[f64; 4], v: &[f64; 4]| {
        let (a, b, c) = (form(u, u), form(v, v), 0.5 * (form(u, v) + form(v, u)));
        0.5 * (a + b) + (0.25 * (a - b).powi(2) + c * c).sqrt()
    };
    top(&phi_p, &psi_m).max(top(&phi_m, &psi_p))
}

/// Concurrence of a Bell mixture: only the two-photon sector can be
/// entangled, so it is that sector's weight times the concurrence of its
/// normalized block.
pub fn bell_concurrence(mixture: &BellMixture) -> Result<Concurrence> {
    let w = mixture.weight(crate::channels::BellSector::TwoPhoton);
    if w == 0.0 {
        return Concurrence::new(0.0);
    }
    let mut block = mixture.two_photon_block();
    for row in block.iter_mut() {
        for x in row.iter_mut() {
            *x /= w;
        }
    }
    let rho = QubitDensity4::new(
        block,
        crate::channels::BasisTag::PolarizationWithVacuumSector,
    )?;
    Concurrence::new(w * wootters_concurrence(&rho)?.value())
}

/// Bell state through the symmetric channel: `C = eta^2`.
pub fn bell_sym_concurrence(channel: &LossChannel) -> Result<Concurrence> {
    bell_concurrence(&crate::channels::bell_sym_density(channel))
}

/// Fully entangled fraction of a Bell mixture, over maximally entangled
/// states of the two-photon sector.
pub fn bell_fraction(mixture: &BellMixture) -> f64 {
    qubit_fully_entangled_fraction(&mixture.two_photon_block())
}

/// Negativity of a Bell mixture, from its full 3x3-per-mode matrix.
pub fn bell_negativity(mixture: &BellMixture) -> Result<f64> {
    negativity_dense(&mixture.to_dense(), (3, 3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{
        bell_asym_density, bell_sym_density, sym_density_matrix, BasisTag, EcsDensitySym,
    };
    use crate::linalg::nonsym_eigenvalues_4x4;
    use approx::assert_abs_diff_eq;

    const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn singlet() -> QubitDensity4 {
        QubitDensity4::pure([0.0, S, -S, 0.0], BasisTag::Computational).unwrap()
    }

    fn mixed() -> QubitDensity4 {
        QubitDensity4::maximally_mixed(BasisTag::Computational)
    }

    fn sym(alpha: f64, eta: f64) -> (QubitDensity4, AbcdCoefficients) {
        sym_density_matrix(&EcsDensitySym::new(alpha, eta).unwrap()).unwrap()
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // mpmath: -(1/4)log2(1/4) - (3/4)log2(3/4)
        assert_abs_diff_eq!(
            binary_entropy(0.25).unwrap(),
            0.811278124459132863909695792039,
            epsilon = 1e-15
        );
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn eof_values() {
        assert_eq!(eof_from_concurrence(Concurrence::new(1.0).unwrap()), 1.0);
        assert_eq!(eof_from_concurrence(Concurrence::new(0.0).unwrap()), 0.0);
        // mpmath: H((1 + sqrt(3/4))/2)
        let expected = 0.354578902665269884199912180175;
        assert_abs_diff_eq!(
            eof_from_concurrence(Concurrence::new(0.5).unwrap()),
            expected,
            epsilon = 1e-15
        );
        // cross-check: entropy of the reduced state of cos t|00> + sin t|11>
        // whose concurrence is sin 2t = 0.5
        let t = 0.5f64.asin() / 2.0;
        let p = t.cos().powi(2);
        assert_abs_diff_eq!(binary_entropy(p).unwrap(), expected, epsilon = 1e-14);
    }

    #[test]
    fn concurrence_range_check() {
        assert!(Concurrence::new(1.5).is_err());
        assert_eq!(Concurrence::new(1.0 + 1e-13).unwrap().value(), 1.0);
        assert_eq!(Concurrence::new(-1e-13).unwrap().value(), 0.0);
    }

    #[test]
    fn wootters_examples() {
        assert_abs_diff_eq!(
            wootters_concurrence(&singlet()).unwrap().value(),
            1.0,
            epsilon = 1e-14
        );
        assert_eq!(wootters_concurrence(&mixed()).unwrap().value(), 0.0);
        // mpmath: (e^2 - 1)/(e^4 - 1)
        let expected = 0.119202922022117555940270858698;
        let (rho, _) = sym(1.0, 0.5);
        assert_abs_diff_eq!(
            wootters_concurrence(&rho).unwrap().value(),
            expected,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            concurrence_sym_closed(1.0, 0.5).unwrap().value(),
            expected,
            epsilon = 1e-15
        );
    }

    #[test]
    fn wootters_on_pure_partially_entangled() {
        // cos t|00> + sin t|11> has C = sin 2t
        for &t in &[0.1f64, 0.3, 0.6] {
            let rho =
                QubitDensity4::pure([t.cos(), 0.0, 0.0, t.sin()], BasisTag::Computational).unwrap();
            assert_abs_diff_eq!(
                wootters_concurrence(&rho).unwrap().value(),
                (2.0 * t).sin(),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn werner_state_threshold() {
        // p |psi-><psi-| + (1-p) I/4 has C = max(0, (3p-1)/2)
        for &p in &[0.0, 0.2, 1.0 / 3.0, 0.5, 0.9] {
            let mut m = [[0.0; 4]; 4];
            let s = singlet();
            for i in 0..4 {
                for j in 0..4 {
                    m[i][j] = p * s.get(i, j) + if i == j { 0.25 * (1.0 - p) } else { 0.0 };
                }
            }
            let rho = QubitDensity4::new(m, BasisTag::Computational).unwrap();
            let c = wootters_concurrence(&rho).unwrap().value();
            assert_abs_diff_eq!(c, (0.5 * (3.0 * p - 1.0)).max(0.0), epsilon = 1e-13);
        }
    }

    #[test]
    fn lambdas_match_nonsymmetric_product() {
        for &(a, eta) in &[(1.0, 0.5), (0.5, 0.3), (2.0, 0.9)] {
            let (rho, k) = sym(a, eta);
            let lam = wootters_lambdas(&rho).unwrap();
            let expected = [2.0 * k.c0 * k.b, -2.0 * k.c0 * k.d];
            let mut top = [expected[0], expected[1]];
            top.sort_by(|x, y| y.total_cmp(x));
            assert_abs_diff_eq!(lam[0], top[0], epsilon = 1e-12);
            assert_abs_diff_eq!(lam[1], top[1], epsilon = 1e-12);
            assert!(lam[2] < 1e-12 && lam[3] < 1e-12);
            let ev = nonsym_eigenvalues_4x4(&rho_rho_tilde(&rho)).unwrap();
            for (z, l) in ev.iter().zip(&lam) {
                assert!(z.im.abs() < 1e-10);
                assert!(z.re > -1e-10);
                assert_abs_diff_eq!(z.re, l * l, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn bell_product_spectrum() {
        let ev = nonsym_eigenvalues_4x4(&rho_rho_tilde(&singlet())).unwrap();
        assert_abs_diff_eq!(ev[0].re, 1.0, epsilon = 1e-14);
        for z in &ev[1..] {
            assert!(z.norm() < 1e-14);
        }
    }

    #[test]
    fn closed_concurrence_limits() {
        assert_abs_diff_eq!(
            concurrence_sym_closed(0.001, 0.7).unwrap().value(),
            0.7,
            epsilon = 1e-4
        );
        for &a in &[0.01, 1.0, 5.0, 20.0] {
            assert_abs_diff_eq!(
                concurrence_sym_closed(a, 1.0).unwrap().value(),
                1.0,
                epsilon = 1e-15
            );
            assert_eq!(concurrence_sym_closed(a, 0.0).unwrap().value(), 0.0);
        }
        assert!(matches!(
            concurrence_sym_closed(0.0, 0.5),
            Err(EcsError::Degenerate(_))
        ));
        assert!(concurrence_sym_closed(1.0, 1.2).is_err());
    }

    #[test]
    fn closed_fraction_examples() {
        let f = fraction_sym_closed(0.001, 0.3).unwrap();
        assert_abs_diff_eq!(f.value, 0.3, epsilon = 1e-4);
        assert_eq!(f.argmax_beta, 0.3f64.sqrt() * 0.001);
        assert_abs_diff_eq!(
            fraction_sym_closed(2.0, 0.5).unwrap().value,
            0.5,
            epsilon = 4.0 * f64::EPSILON
        );
        assert_abs_diff_eq!(
            fraction_sym_closed(6.0, 0.8).unwrap().value,
            0.5,
            epsilon = 1e-3
        );
        assert!(fraction_sym_closed(0.0, 0.5).is_err());
    }

    #[test]
    fn closed_fraction_is_probe_at_argmax() {
        for &(a, eta) in &[(1.0, 0.5), (0.3, 0.9), (2.0, 0.2)] {
            let f = fraction_sym_closed(a, eta).unwrap();
            assert_abs_diff_eq!(
                fraction_sym(a, eta, f.argmax_beta).unwrap(),
                f.value,
                epsilon = 1e-14
            );
            // and equals <psi-|rho|psi-> on the cat basis: 2 B c0
            let (_, k) = sym(a, eta);
            assert_abs_diff_eq!(2.0 * k.b * k.c0, f.value, epsilon = 1e-14);
        }
    }

    #[test]
    fn asym_fraction_examples() {
        let lossless = fraction_asym_max(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(lossless.value, 1.0, epsilon = 1e-14);
        assert_eq!(lossless.argmax_beta, 1.0);
        let quarter = fraction_asym_max(1.0, 0.25).unwrap();
        assert_eq!(quarter.argmax_beta, 0.75);
        let scan = scan_fraction(1.0, |b| fraction_asym(1.0, 0.25, b).unwrap());
        assert_abs_diff_eq!(scan.arg, 0.75, epsilon = 1e-6);
        assert!(fraction_asym_max(0.3, 0.7).unwrap().value > 0.7);
        assert!(fraction_asym(1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn scans_never_beat_analytic_argmax() {
        for &a in &[0.1, 0.5, 1.0, 2.0, 3.0] {
            for k in 1..10 {
                let eta = k as f64 / 10.0;
                let sym_f = fraction_sym_closed(a, eta).unwrap();
                let s = scan_fraction(a, |b| fraction_sym(a, eta, b).unwrap());
                assert!(s.value <= sym_f.value + SCAN_DOMINANCE_TOL);
                let asym_f = fraction_asym_max(a, eta).unwrap();
                let s = scan_fraction(a, |b| fraction_asym(a, eta, b).unwrap());
                assert!(s.value <= asym_f.value + SCAN_DOMINANCE_TOL);
            }
        }
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(eof_lower_bound(0.4).unwrap(), 0.0);
        assert_eq!(eof_lower_bound(1.0).unwrap(), 1.0);
        assert_eq!(eof_lower_bound(0.5).unwrap(), 0.0);
        // mpmath: H(1/2 + sqrt(3/16))
        assert_abs_diff_eq!(
            eof_lower_bound(0.75).unwrap(),
            0.354578902665269884199912180175,
            epsilon = 1e-15
        );
        assert!(eof_lower_bound(1.2).is_err());
    }

    #[test]
    fn teleportation() {
        assert_abs_diff_eq!(teleport_fidelity(0.5).unwrap(), 2.0 / 3.0, epsilon = 1e-16);
        assert_eq!(teleport_fidelity(1.0).unwrap(), 1.0);
        assert_abs_diff_eq!(
            teleport_fidelity(0.8).unwrap(),
            13.0 / 15.0,
            epsilon = 1e-16
        );
        assert!(teleport_fidelity(-0.2).is_err());
    }

    #[test]
    fn partial_transpose_cases() {
        let ev = pt_eigenvalues(&singlet()).unwrap();
        assert_abs_diff_eq!(ev[0], -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(negativity(&singlet()).unwrap(), 1.0, epsilon = 1e-14);
        assert_eq!(negativity(&mixed()).unwrap(), 0.0);
        assert!(is_ppt(&mixed()).unwrap());
        assert!(!is_ppt(&singlet()).unwrap());

        let (rho, k) = sym(1.0, 0.5);
        let numeric = pt_eigenvalues(&rho).unwrap();
        let closed = pt_eigenvalues_closed(&k);
        for (x, y) in numeric.iter().zip(&closed) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-10);
        }
        assert!(numeric[0] < 0.0);

        for &eta in &[0.2, 0.5, 0.8] {
            let (rho, _) = sym(6.0, eta);
            assert!(pt_eigenvalues(&rho).unwrap().iter().all(|&v| v >= -1e-10));
        }
    }

    #[test]
    fn pt_matrix_layout() {
        let (rho, k) = sym(1.0, 0.5);
        let pt = partial_transpose(&rho);
        assert_abs_diff_eq!(pt[(0, 3)], -k.c0 * k.b, epsilon = 1e-15);
        assert_abs_diff_eq!(pt[(1, 2)], k.c0 * k.d, epsilon = 1e-15);
        assert_abs_diff_eq!(pt[(0, 0)], k.c0 * k.a, epsilon = 1e-15);
    }

    #[test]
    fn bell_baselines() {
        for k in 0..=10 {
            let eta = k as f64 / 10.0;
            let ch = LossChannel::new(eta).unwrap();
            assert_eq!(bell_fraction(&bell_asym_density(&ch)), eta);
            assert_abs_diff_eq!(
                bell_sym_concurrence(&ch).unwrap().value(),
                eta * eta,
                epsilon = 1e-15
            );
            assert_abs_diff_eq!(
                bell_negativity(&bell_sym_density(&ch)).unwrap(),
                eta * eta,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn fully_entangled_fraction_of_known_states() {
        assert_abs_diff_eq!(
            qubit_fully_entangled_fraction(singlet().entries()),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            qubit_fully_entangled_fraction(mixed().entries()),
            0.25,
            epsilon = 1e-15
        );
        // |00> overlaps Phi+ and Phi- by 1/2
        let prod = QubitDensity4::pure([1.0, 0.0, 0.0, 0.0], BasisTag::Computational).unwrap();
        assert_abs_diff_eq!(
            qubit_fully_entangled_fraction(prod.entries()),
            0.5,
            epsilon = 1e-15
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn density() -> impl Strategy<Value = QubitDensity4> {
            prop::collection::vec(-1.0f64..1.0, 16).prop_map(|g| {
                // rho = G Gᵀ / tr
                let mut m = [[0.0; 4]; 4];
                for i in 0..4 {
                    for j in 0..4 {
                        m[i][j] = (0..4).map(|k| g[4 * i + k] * g[4 * j + k]).sum();
                    }
                }
                let tr: f64 = (0..4).map(|i| m[i][i]).sum();
                for row in m.iter_mut() {
                    for x in row.iter_mut() {
                        *x /= tr;
                    }
                }
                QubitDensity4::new(m, BasisTag::Computational).unwrap()
            })
        }

        proptest! {
            #[test]
            fn concurrence_bounded_and_relabel_invariant(rho in density()) {
                let c = wootters_concurrence(&rho).unwrap().value();
                prop_assert!((0.0..=1.0).contains(&c));
                let c2 = wootters_concurrence(&rho.relabel_both()).unwrap().value();
                prop_assert!((c - c2).abs() < 1e-12);
            }

            #[test]
            fn peres_consistency(rho in density()) {
                let n = negativity(&rho).unwrap();
                let ppt = is_ppt(&rho).unwrap();
                prop_assert_eq!(n == 0.0, ppt);
                // two qubits: entangled iff NPT, so C > 0 iff negativity > 0
                let c = wootters_concurrence(&rho).unwrap().value();
                if n > 1e-8 { prop_assert!(c > 0.0); }
                if c > 1e-6 { prop_assert!(n > 0.0); }
            }

            #[test]
            fn eof_monotone(c in 0.0f64..0.999) {
                let lo = eof_from_concurrence(Concurrence::new(c).unwrap());
                let hi = eof_from_concurrence(Concurrence::new(c + 1e-3).unwrap());
                prop_assert!(hi > lo);
            }
        }
    }
}
