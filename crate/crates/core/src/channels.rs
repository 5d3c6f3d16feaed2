//! Decohered density operators for the odd ECS and the polarization Bell
//! state under photon loss.
//!
//! Loss is a beam splitter of transmissivity `eta` coupling each lossy mode
//! to a vacuum environment mode: `|a>|0>_E -> |sqrt(eta) a>|sqrt(1-eta) a>_E`.
//! The ECS density operators are kept symbolic (amplitude, `eta` and the
//! coherence damping factor) since their coherent components are not
//! orthogonal. Only the symmetric case is projected to a 4x4 matrix, on the
//! even/odd cat basis built from `±sqrt(eta) alpha`.

use crate::error::{check_unit_interval, EcsError, Result};
use crate::linalg::{symmetric_eigen, DenseMatrix};
use crate::states::{even_odd_norm, EcsParams, Parity};

/// Photon-loss channel; `eta` is the fraction of photons that survive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossChannel {
    eta: f64,
}

impl LossChannel {
    pub fn new(eta: f64) -> Result<Self> {
        check_unit_interval("eta", eta).map(|eta| Self { eta })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// The channel seen by the environment: `eta -> 1 - eta`.
    pub fn complement(&self) -> Self {
        Self {
            eta: 1.0 - self.eta,
        }
    }
}

fn require_odd(params: &EcsParams) -> Result<()> {
    match params.parity() {
        Parity::Minus => Ok(()),
        Parity::Plus => Err(EcsError::Domain {
            name: "parity",
            value: 1.0,
            reason: "decoherence is modelled for the odd ECS",
        }),
    }
}

/// Odd ECS after loss on mode 2 only, environment traced out:
/// `(|a,-s><a,-s| + |-a,s><-a,s| - gamma1 (|a,-s><-a,s| + h.c.)) / N-`
/// with `s = sqrt(eta) a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcsDensityAsym {
    pub alpha: f64,
    pub eta: f64,
    /// `exp(-2 (1 - eta) alpha^2)`.
    pub gamma1: f64,
}

/// Odd ECS after equal loss on both modes, both environments traced out.
/// Same form as the asymmetric state with both modes at `s = sqrt(eta) a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcsDensitySym {
    pub alpha: f64,
    pub eta: f64,
    /// `exp(-4 (1 - eta) alpha^2)`.
    pub gamma2: f64,
}

pub fn asym_decohere(params: &EcsParams, channel: &LossChannel) -> Result<EcsDensityAsym> {
    require_odd(params)?;
    let (alpha, eta) = (params.alpha(), channel.eta());
    Ok(EcsDensityAsym {
        alpha,
        eta,
        gamma1: (-2.0 * (1.0 - eta) * alpha * alpha).exp(),
    })
}

pub fn sym_decohere(params: &EcsParams, channel: &LossChannel) -> Result<EcsDensitySym> {
    require_odd(params)?;
    let (alpha, eta) = (params.alpha(), channel.eta());
    Ok(EcsDensitySym {
        alpha,
        eta,
        gamma2: (-4.0 * (1.0 - eta) * alpha * alpha).exp(),
    })
}

impl EcsDensitySym {
    /// Convenience constructor from raw numbers.
    pub fn new(alpha: f64, eta: f64) -> Result<Self> {
        sym_decohere(&EcsParams::odd(alpha)?, &LossChannel::new(eta)?)
    }
}

impl EcsDensityAsym {
    pub fn new(alpha: f64, eta: f64) -> Result<Self> {
        asym_decohere(&EcsParams::odd(alpha)?, &LossChannel::new(eta)?)
    }
}

/// Orthonormal 2x2 product basis a `QubitDensity4` is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// `{|+,+>, |+,->, |-,+>, |-,->}` with `|±>` the even/odd cats on
    /// `±sqrt(eta) alpha`.
    EvenOddCoherent,
    /// `{|H,H>, |H,V>, |V,H>, |V,V>}`, the two-photon sector of a Bell
    /// mixture whose remaining weight sits in vacuum sectors.
    PolarizationWithVacuumSector,
    /// Plain computational basis `{|00>, |01>, |10>, |11>}`.
    Computational,
}

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

/// Real symmetric two-qubit density matrix in a declared basis; index
/// `2*a + b` for `a` on mode 1 and `b` on mode 2.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitDensity4 {
    entries: [[f64; 4]; 4],
    basis: BasisTag,
}

impl QubitDensity4 {
    /// Validates symmetry, unit trace and positive semidefiniteness.
    pub fn new(entries: [[f64; 4]; 4], basis: BasisTag) -> Result<Self> {
        if entries.iter().flatten().any(|x| !x.is_finite()) {
            return Err(EcsError::Invariant(
                "density matrix has non-finite entries".into(),
            ));
        }
        for i in 0..4 {
            for j in 0..i {
                if (entries[i][j] - entries[j][i]).abs() > HERMITIAN_TOL {
                    return Err(EcsError::Invariant(format!(
                        "density matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let trace: f64 = (0..4).map(|i| entries[i][i]).sum();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(EcsError::Invariant(format!(
                "density matrix trace is {trace}"
            )));
        }
        let rho = Self { entries, basis };
        let min = symmetric_eigen(&rho.to_dense())?.values[0];
        if min < -PSD_TOL {
            return Err(EcsError::Invariant(format!(
                "density matrix is not positive semidefinite (min eigenvalue {min:e})"
            )));
        }
        Ok(rho)
    }

    /// Pure state `|psi><psi|` of a unit vector.
    pub fn pure(psi: [f64; 4], basis: BasisTag) -> Result<Self> {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = psi[i] * psi[j];
            }
        }
        Self::new(m, basis)
    }

    pub fn maximally_mixed(basis: BasisTag) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 0.25;
        }
        Self { entries: m, basis }
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_rows(&self.entries).expect("4x4 finite")
    }

    pub fn max_abs_diff(&self, other: &QubitDensity4) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                d = d.max((self.entries[i][j] - other.entries[i][j]).abs());
            }
        }
        d
    }

    /// Exchange `|0>` and `|1>` on both qubits.
    pub fn relabel_both(&self) -> Self {
        let flip = |i: usize| 3 - i;
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[flip(i)][flip(j)] = self.entries[i][j];
            }
        }
        Self {
            entries: m,
            basis: self.basis,
        }
    }
}

/// Raw entries of the symmetric-channel matrix
/// `c0 * [[A,0,0,D],[0,B,-B,0],[0,-B,B,0],[D,0,0,C]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbcdCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    /// `1 / (16 (1 - exp(-4 alpha^2)))`, which makes the trace one.
    pub c0: f64,
}

impl AbcdCoefficients {
    pub fn from_state(state: &EcsDensitySym) -> Result<Self> {
        let (alpha, eta, g) = (state.alpha, state.eta, state.gamma2);
        let n_plus = even_odd_norm(alpha, eta, Parity::Plus)?;
        // at eta = 0 the odd cat does not exist, but it carries zero weight
        let n_minus = match even_odd_norm(alpha, eta, Parity::Minus) {
            Ok(n) => n,
            Err(EcsError::Degenerate(_)) => 0.0,
            Err(e) => return Err(e),
        };
        let one_minus_g = -(-4.0 * (1.0 - eta) * alpha * alpha).exp_m1();
        let a = one_minus_g * n_plus * n_plus;
        let b = (1.0 + g) * n_plus * n_minus;
        let c = one_minus_g * n_minus * n_minus;
        let d = -one_minus_g * n_plus * n_minus;
        let c0 = 1.0 / (-16.0 * (-4.0 * alpha * alpha).exp_m1());
        Ok(Self { a, b, c, d, c0 })
    }
}

/// Symmetric-channel state on the even/odd cat basis, with its raw
/// coefficients.
pub fn sym_density_matrix(state: &EcsDensitySym) -> Result<(QubitDensity4, AbcdCoefficients)> {
    let k = AbcdCoefficients::from_state(state)?;
    let AbcdCoefficients { a, b, c, d, c0 } = k;
    let m = [
        [c0 * a, 0.0, 0.0, c0 * d],
        [0.0, c0 * b, -c0 * b, 0.0],
        [0.0, -c0 * b, c0 * b, 0.0],
        [c0 * d, 0.0, 0.0, c0 * c],
    ];
    Ok((QubitDensity4::new(m, BasisTag::EvenOddCoherent)?, k))
}

/// Photon-number sector of one term of a decohered Bell mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellSector {
    /// One photon per mode: the surviving Bell state.
    TwoPhoton,
    /// Photon in mode 1, mode 2 in vacuum.
    PhotonInMode1,
    /// Mode 1 in vacuum, photon in mode 2.
    PhotonInMode2,
    Vacuum,
}

impl BellSector {
    /// Only the two-photon sector can carry entanglement.
    pub fn is_separable(self) -> bool {
        !matches!(self, BellSector::TwoPhoton)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorTerm {
    pub sector: BellSector,
    /// Trace carried by the term.
    pub weight: f64,
}

/// Polarization singlet `(|H,V> - |V,H>)/sqrt(2)` after loss, as a sum of
/// photon-number sectors. Each mode lives in `span{|0>, |H>, |V>}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellMixture {
    pub eta: f64,
    pub terms: Vec<SectorTerm>,
}

/// Local basis index of a single mode: vacuum, H or V.
pub const VAC: usize = 0;
pub const H: usize = 1;
pub const V: usize = 2;

impl BellMixture {
    pub fn weight(&self, sector: BellSector) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.sector == sector)
            .map(|t| t.weight)
            .sum()
    }

    /// Weights in the order (two-photon, photon in 1, photon in 2, vacuum).
    pub fn sector_weights(&self) -> [f64; 4] {
        [
            self.weight(BellSector::TwoPhoton),
            self.weight(BellSector::PhotonInMode1),
            self.weight(BellSector::PhotonInMode2),
            self.weight(BellSector::Vacuum),
        ]
    }

    pub fn trace(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    /// Unnormalized two-photon block on `{HH, HV, VH, VV}`.
    pub fn two_photon_block(&self) -> [[f64; 4]; 4] {
        let w = self.weight(BellSector::TwoPhoton);
        let mut m = [[0.0; 4]; 4];
        // singlet amplitudes on HV (index 1) and VH (index 2)
        m[1][1] = 0.5 * w;
        m[2][2] = 0.5 * w;
        m[1][2] = -0.5 * w;
        m[2][1] = -0.5 * w;
        m
    }

    /// Full 9x9 matrix on `{0,H,V} ⊗ {0,H,V}` (index `3*i + j`).
    pub fn to_dense(&self) -> DenseMatrix {
        let idx = |i: usize, j: usize| 3 * i + j;
        let mut m = DenseMatrix::zeros(9, 9);
        for t in &self.terms {
            let w = t.weight;
            match t.sector {
                BellSector::TwoPhoton => {
                    let (hv, vh) = (idx(H, V), idx(V, H));
                    m[(hv, hv)] += 0.5 * w;
                    m[(vh, vh)] += 0.5 * w;
                    m[(hv, vh)] -= 0.5 * w;
                    m[(vh, hv)] -= 0.5 * w;
                }
                // identity on the single-photon polarization space of one mode
                BellSector::PhotonInMode1 => {
                    m[(idx(H, VAC), idx(H, VAC))] += 0.5 * w;
                    m[(idx(V, VAC), idx(V, VAC))] += 0.5 * w;
                }
                BellSector::PhotonInMode2 => {
                    m[(idx(VAC, H), idx(VAC, H))] += 0.5 * w;
                    m[(idx(VAC, V), idx(VAC, V))] += 0.5 * w;
                }
                BellSector::Vacuum => {
                    m[(idx(VAC, VAC), idx(VAC, VAC))] += w;
                }
            }
        }
        m
    }
}

/// `eta |Bell><Bell| + (1 - eta)/2 I_1 ⊗ |0><0|`: loss on mode 2 only.
pub fn bell_asym_density(channel: &LossChannel) -> BellMixture {
    let eta = channel.eta();
    BellMixture {
        eta,
        terms: vec![
            SectorTerm {
                sector: BellSector::TwoPhoton,
                weight: eta,
            },
            SectorTerm {
                sector: BellSector::PhotonInMode1,
                weight: 1.0 - eta,
            },
        ],
    }
}

/// Equal loss on both modes: weights `eta^2`, `eta (1-eta)` (twice) and
/// `(1-eta)^2`. The two single-photon terms are `eta(1-eta)/2` times an
/// identity of trace 2.
pub fn bell_sym_density(channel: &LossChannel) -> BellMixture {
    let eta = channel.eta();
    let loss = 1.0 - eta;
    BellMixture {
        eta,
        terms: vec![
            SectorTerm {
                sector: BellSector::TwoPhoton,
                weight: eta * eta,
            },
            SectorTerm {
                sector: BellSector::PhotonInMode1,
                weight: eta * loss,
            },
            SectorTerm {
                sector: BellSector::PhotonInMode2,
                weight: eta * loss,
            },
            SectorTerm {
                sector: BellSector::Vacuum,
                weight: loss * loss,
            },
        ],
    }
}
