//! Brute-force oracle in a truncated photon-number basis.
//!
//! States are built from Fock expansions of coherent states, loss is
//! applied as an explicit two-mode beam-splitter unitary acting on a vacuum
//! environment mode, environments are traced out, and the system modes are
//! projected onto the even/odd cat basis. None of this uses the closed forms
//! in `channels` or `entanglement`; those measures are recomputed from the
//! numerical states.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::channels::{BasisTag, QubitDensity4};
use crate::entanglement::{wootters_concurrence, Concurrence, EntangledFraction};
use crate::error::{check_finite, check_unit_interval, EcsError, Result};
use crate::search::bracketed_max;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_DIM: usize = 512;
/// Extra levels beyond the Poisson-tail requirement.
pub const DEFAULT_PAD: usize = 8;
/// Environment variable overriding the truncation cap.
pub const MAX_DIM_ENV: &str = "ECS_MAX_FOCK_DIM";

/// Residual trace allowed outside the projected two-qubit span.
pub const PROJECTION_LEAK_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-10;
const BETA_XTOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockConfig {
    /// Largest neglected Poisson mass per coherent component.
    pub tol: f64,
    pub max_dim: usize,
    pub pad: usize,
    /// Forces every mode to this dimension (used for convergence checks).
    pub dim_override: Option<usize>,
}

impl Default for FockConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_dim: DEFAULT_MAX_DIM,
            pad: DEFAULT_PAD,
            dim_override: None,
        }
    }
}

impl FockConfig {
    /// Defaults, with the cap taken from `ECS_MAX_FOCK_DIM` when set.
    pub fn from_env() -> Result<Self> {
        let mut cfg = Self::default();
        if let Ok(raw) = std::env::var(MAX_DIM_ENV) {
            cfg.max_dim = raw
                .trim()
                .parse()
                .ok()
                .filter(|&d: &usize| d > 0)
                .ok_or_else(|| {
                    EcsError::Config(format!("{MAX_DIM_ENV}={raw:?} is not a positive integer"))
                })?;
        }
        Ok(cfg)
    }

    /// Per-mode dimension for states built from amplitude `alpha`.
    pub fn mode_dim(&self, alpha: f64) -> Result<usize> {
        if let Some(d) = self.dim_override {
            return Ok(d);
        }
        let required = required_dim(alpha, self.tol, self.max_dim)? + self.pad;
        if required > self.max_dim {
            return Err(EcsError::Capacity {
                alpha,
                required,
                cap: self.max_dim,
            });
        }
        Ok(required)
    }
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Upper bound on the Poisson(`mu`) mass at `n >= dim`.
///
/// Successive ratios `p_{k+1}/p_k = mu/(k+1)` are at most `mu/(dim+1)` past
/// `dim`, so the tail is below a geometric series started at `p_dim`.
pub fn poisson_tail_bound(mu: f64, dim: usize) -> f64 {
    if mu == 0.0 {
        return if dim == 0 { 1.0 } else { 0.0 };
    }
    let next = (dim + 1) as f64;
    if next <= mu {
        return 1.0;
    }
    let p_dim = (-mu + dim as f64 * mu.ln() - ln_factorial(dim)).exp();
    (p_dim * next / (next - mu)).min(1.0)
}

/// Smallest dimension whose neglected mass for `|alpha>` is below `tol`.
pub fn required_dim(alpha: f64, tol: f64, cap: usize) -> Result<usize> {
    check_finite("alpha", alpha)?;
    if !(tol > 0.0) {
        return Err(EcsError::Domain {
            name: "tol",
            value: tol,
            reason: "must be positive",
        });
    }
    let mu = alpha * alpha;
    (1..=cap)
        .find(|&d| poisson_tail_bound(mu, d) < tol)
        .ok_or(EcsError::Capacity {
            alpha,
            required: cap + 1,
            cap,
        })
}

/// Truncated Fock expansion `e^{-a^2/2} a^n / sqrt(n!)`, unnormalized.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    amplitudes: Vec<f64>,
    tail_bound: f64,
}

impl FockState {
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|x| x * x).sum()
    }

    pub fn inner(&self, other: &FockState) -> f64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a * b)
            .sum()
    }
}

/// Coherent state with the smallest dimension whose tail mass is below `tol`.
pub fn coherent_fock(alpha: f64, tol: f64) -> Result<FockState> {
    coherent_fock_capped(alpha, tol, DEFAULT_MAX_DIM)
}

pub fn coherent_fock_capped(alpha: f64, tol: f64, cap: usize) -> Result<FockState> {
    let dim = required_dim(alpha, tol, cap)?;
    Ok(coherent_fock_dim(alpha, dim))
}

/// Coherent state truncated at a fixed dimension.
pub fn coherent_fock_dim(alpha: f64, dim: usize) -> FockState {
    let mut amplitudes = Vec::with_capacity(dim);
    let mut c = (-0.5 * alpha * alpha).exp();
    for n in 0..dim {
        if n > 0 {
            c *= alpha / (n as f64).sqrt();
        }
        amplitudes.push(c);
    }
    FockState {
        amplitudes,
        tail_bound: poisson_tail_bound(alpha * alpha, dim),
    }
}

/// Pure state of several modes; flat row-major amplitudes, mode 0 slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiModeState {
    dims: Vec<usize>,
    amps: Vec<f64>,
}

impl MultiModeState {
    pub fn new(dims: Vec<usize>, amps: Vec<f64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(EcsError::Dimension(
                "every mode needs a positive dimension".into(),
            ));
        }
        let size: usize = dims.iter().product();
        if amps.len() != size {
            return Err(EcsError::Dimension(format!(
                "{} amplitudes for mode dims {dims:?}",
                amps.len()
            )));
        }
        Ok(Self { dims, amps })
    }

    /// `self ⊗ |0>` on a new mode of dimension `dim`.
    pub fn with_vacuum_mode(&self, dim: usize) -> Self {
        let mut amps = vec![0.0; self.amps.len() * dim];
        for (k, &a) in self.amps.iter().enumerate() {
            amps[k * dim] = a;
        }
        let mut dims = self.dims.clone();
        dims.push(dim);
        Self { dims, amps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_modes(&self) -> usize {
        self.dims.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|x| x * x).sum()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_sqr().sqrt();
        if !(n > 0.0) {
            return Err(EcsError::Degenerate(
                "zero state cannot be normalized".into(),
            ));
        }
        self.amps.iter_mut().for_each(|a| *a /= n);
        Ok(self)
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for m in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[m] = strides[m + 1] * self.dims[m + 1];
        }
        strides
    }

    /// Reorders modes: mode `k` of the result is mode `order[k]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&m| m >= n || std::mem::replace(&mut seen[m], true))
        {
            return Err(EcsError::Dimension(format!(
                "{order:?} is not a permutation of {n} modes"
            )));
        }
        let src_strides = self.strides();
        let dims: Vec<usize> = order.iter().map(|&m| self.dims[m]).collect();
        let mut out = vec![0.0; self.amps.len()];
        let mut idx = vec![0usize; n];
        for slot in out.iter_mut() {
            let src: usize = (0..n).map(|k| idx[k] * src_strides[order[k]]).sum();
            *slot = self.amps[src];
            for k in (0..n).rev() {
                idx[k] += 1;
                if idx[k] < dims[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        Ok(Self { dims, amps: out })
    }
}

/// Two-mode beam splitter `a† -> t a† + r b†`, `b† -> -r a† + t b†` with
/// `t = sqrt(eta)`, `r = sqrt(1 - eta)`. Number-basis columns are computed
/// on first use and cached.
#[derive(Debug)]
pub struct BeamSplitter {
    eta: f64,
    dim_i: usize,
    dim_j: usize,
    ln_t: f64,
    ln_r: f64,
    ln_fact: Vec<f64>,
    columns: Vec<OnceLock<Column>>,
}

/// Output amplitudes `<p, N-p| U |n, m>` for `p` in `p_lo..p_lo+coefs.len()`.
#[derive(Debug)]
struct Column {
    p_lo: usize,
    coefs: Vec<f64>,
}

impl BeamSplitter {
    pub fn new(eta: f64, dim_i: usize, dim_j: usize) -> Result<Self> {
        check_unit_interval("eta", eta)?;
        if dim_i == 0 || dim_j == 0 {
            return Err(EcsError::Dimension(
                "beam splitter modes need positive dimension".into(),
            ));
        }
        let max_n = dim_i + dim_j;
        let mut ln_fact = vec![0.0; max_n + 1];
        for k in 2..=max_n {
            ln_fact[k] = ln_fact[k - 1] + (k as f64).ln();
        }
        Ok(Self {
            eta,
            dim_i,
            dim_j,
            ln_t: eta.sqrt().ln(),
            ln_r: (1.0 - eta).sqrt().ln(),
            ln_fact,
            columns: (0..dim_i * dim_j).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    fn ln_binom(&self, n: usize, k: usize) -> f64 {
        self.ln_fact[n] - self.ln_fact[k] - self.ln_fact[n - k]
    }

    // x^e in log form with 0^0 = 1
    fn ln_pow(ln_base: f64, e: usize) -> f64 {
        if e == 0 {
            0.0
        } else {
            e as f64 * ln_base
        }
    }

    fn column(&self, n: usize, m: usize) -> &Column {
        self.columns[n * self.dim_j + m].get_or_init(|| {
            let total = n + m;
            // outputs that fit the truncation: p < dim_i, total - p < dim_j
            let p_lo = total.saturating_sub(self.dim_j - 1);
            let p_hi = total.min(self.dim_i - 1);
            let mut coefs = Vec::with_capacity(p_hi + 1 - p_lo.min(p_hi + 1));
            for p in p_lo..=p_hi {
                let q = total - p;
                let norm =
                    0.5 * (self.ln_fact[p] + self.ln_fact[q] - self.ln_fact[n] - self.ln_fact[m]);
                let mut acc = 0.0;
                // k photons of a† land in mode i, l = p - k photons of b† do
                for k in p.saturating_sub(m)..=n.min(p) {
                    let l = p - k;
                    let ln_mag = self.ln_binom(n, k)
                        + self.ln_binom(m, l)
                        + Self::ln_pow(self.ln_t, k + m - l)
                        + Self::ln_pow(self.ln_r, n - k + l)
                        + norm;
                    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                    acc += sign * ln_mag.exp();
                }
                coefs.push(acc);
            }
            Column { p_lo, coefs }
        })
    }

    /// Applies the splitter to modes `(i, j)` of `state`.
    pub fn apply(&self, state: &MultiModeState, modes: (usize, usize)) -> Result<MultiModeState> {
        let (i, j) = modes;
        let n_modes = state.num_modes();
        if i >= n_modes || j >= n_modes || i == j {
            return Err(EcsError::Dimension(format!(
                "beam splitter modes ({i}, {j}) invalid for a {n_modes}-mode state"
            )));
        }
        if state.dims[i] != self.dim_i || state.dims[j] != self.dim_j {
            return Err(EcsError::Dimension(format!(
                "beam splitter built for dims ({}, {}), modes have ({}, {})",
                self.dim_i, self.dim_j, state.dims[i], state.dims[j]
            )));
        }
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(EcsError::Invariant(format!(
                "beam splitter input has norm^2 {norm}"
            )));
        }
        let strides = state.strides();
        let (si, sj) = (strides[i], strides[j]);
        let mut out = vec![0.0; state.amps.len()];
        for (idx, &amp) in state.amps.iter().enumerate() {
            if amp == 0.0 {
                continue;
            }
            let n = (idx / si) % self.dim_i;
            let m = (idx / sj) % self.dim_j;
            let base = idx - n * si - m * sj;
            let total = n + m;
            let col = self.column(n, m);
            for (off, &c) in col.coefs.iter().enumerate() {
                let p = col.p_lo + off;
                out[base + p * si + (total - p) * sj] += c * amp;
            }
        }
        let out = MultiModeState {
            dims: state.dims.clone(),
            amps: out,
        };
        // photons pushed past either truncation show up as lost norm
        let drift = (out.norm_sqr() - norm).abs();
        if drift > NORM_TOL {
            return Err(EcsError::Invariant(format!(
                "beam splitter output lost norm {drift:e} to truncation"
            )));
        }
        Ok(out)
    }
}

/// One-shot beam splitter on modes `(i, j)`; use `FockOracle` to reuse tables.
pub fn beam_splitter(
    state: &MultiModeState,
    modes: (usize, usize),
    eta: f64,
) -> Result<MultiModeState> {
    let (i, j) = modes;
    let dims = state.dims();
    if i >= dims.len() || j >= dims.len() {
        return Err(EcsError::Dimension(format!(
            "mode index out of range for {} modes",
            dims.len()
        )));
    }
    BeamSplitter::new(eta, dims[i], dims[j])?.apply(state, modes)
}

/// `c_i c_j ((-1)^j - (-1)^i)`: the Fock amplitudes of `|b,-b> - |-b,b>`
/// using `<n|-b> = (-1)^n <n|b>`, so no cancellation occurs at small `b`.
fn odd_ecs_amplitudes(coh: &[f64], dim: usize) -> Vec<f64> {
    let mut amps = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            if (i + j) % 2 == 1 {
                let sign = if i % 2 == 1 { 2.0 } else { -2.0 };
                amps[i * dim + j] = sign * coh[i] * coh[j];
            }
        }
    }
    amps
}

/// Odd ECS `(|a>|-a> - |-a>|a>)/sqrt(N-)` with both modes at dimension `dim`.
pub fn odd_ecs_fock(alpha: f64, dim: usize) -> Result<MultiModeState> {
    check_finite("alpha", alpha)?;
    if alpha == 0.0 {
        return Err(EcsError::Degenerate("odd ECS vanishes at alpha = 0".into()));
    }
    let coh = coherent_fock_dim(alpha, dim);
    MultiModeState::new(vec![dim, dim], odd_ecs_amplitudes(coh.amplitudes(), dim))?.normalized()
}

/// Orthonormal even/odd cats on `±amp`, truncated to `dim`. The odd vector
/// is Gram-Schmidt orthogonalized against the even one.
fn cat_basis(amp: f64, dim: usize) -> Result<[Vec<f64>; 2]> {
    if amp == 0.0 {
        return Err(EcsError::Degenerate(
            "odd cat basis vector vanishes at zero amplitude".into(),
        ));
    }
    let coh = coherent_fock_dim(amp, dim);
    let parity_part = |odd: bool| -> Vec<f64> {
        coh.amplitudes()
            .iter()
            .enumerate()
            .map(|(n, &c)| if (n % 2 == 1) == odd { 2.0 * c } else { 0.0 })
            .collect()
    };
    let normalize = |v: &mut Vec<f64>| -> Result<()> {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(n > 0.0) {
            return Err(EcsError::Degenerate(
                "cat basis vector is zero after truncation".into(),
            ));
        }
        v.iter_mut().for_each(|x| *x /= n);
        Ok(())
    };
    let mut even = parity_part(false);
    normalize(&mut even)?;
    let mut odd = parity_part(true);
    let overlap: f64 = even.iter().zip(&odd).map(|(a, b)| a * b).sum();
    odd.iter_mut()
        .zip(&even)
        .for_each(|(o, e)| *o -= overlap * e);
    normalize(&mut odd)?;
    Ok([even, odd])
}

/// `Σ_r (Σ_s probe[s] psi[s, r])^2` for a state whose first two modes match
/// the probe's shape.
fn probe_overlap(psi: &MultiModeState, probe: &[f64]) -> f64 {
    let rest = psi.amps.len() / probe.len();
    let mut v = vec![0.0; rest];
    for (s, &p) in probe.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let row = &psi.amps[s * rest..(s + 1) * rest];
        v.iter_mut().zip(row).for_each(|(acc, &x)| *acc += p * x);
    }
    v.iter().map(|x| x * x).sum()
}

/// Projects the first two modes of `psi` onto `basis ⊗ basis` and traces
/// out the rest. Returns the 4x4 block and the trace left outside it.
fn project_first_two(psi: &MultiModeState, basis: &[Vec<f64>; 2]) -> ([[f64; 4]; 4], f64) {
    let (da, db) = (psi.dims[0], psi.dims[1]);
    let rest = psi.amps.len() / (da * db);
    let mut phi = vec![vec![0.0; rest]; 4];
    for x in 0..2 {
        for y in 0..2 {
            let target = &mut phi[2 * x + y];
            for i in 0..da {
                let ui = basis[x][i];
                if ui == 0.0 {
                    continue;
                }
                for j in 0..db {
                    let w = ui * basis[y][j];
                    if w == 0.0 {
                        continue;
                    }
                    let row = &psi.amps[(i * db + j) * rest..(i * db + j + 1) * rest];
                    target
                        .iter_mut()
                        .zip(row)
                        .for_each(|(acc, &v)| *acc += w * v);
                }
            }
        }
    }
    let mut m = [[0.0; 4]; 4];
    for a in 0..4 {
        for b in 0..=a {
            let s: f64 = phi[a].iter().zip(&phi[b]).map(|(x, y)| x * y).sum();
            m[a][b] = s;
            m[b][a] = s;
        }
    }
    let captured: f64 = (0..4).map(|k| m[k][k]).sum();
    (m, psi.norm_sqr() - captured)
}

fn to_density(mut m: [[f64; 4]; 4], leak: f64) -> Result<QubitDensity4> {
    if leak > PROJECTION_LEAK_TOL {
        return Err(EcsError::ProjectionLeak(leak));
    }
    let trace: f64 = (0..4).map(|k| m[k][k]).sum();
    m.iter_mut().flatten().for_each(|x| *x /= trace);
    QubitDensity4::new(m, BasisTag::EvenOddCoherent)
}

/// Builds decohered states by brute force and recomputes the measures.
///
/// Beam-splitter tables are cached per `(eta, dims)`. An oracle is meant to
/// be owned by one worker; parallel sweeps give each worker its own.
#[derive(Debug, Default)]
pub struct FockOracle {
    config: FockConfig,
    splitters: HashMap<(u64, usize, usize), Arc<BeamSplitter>>,
}

impl FockOracle {
    pub fn new(config: FockConfig) -> Self {
        Self {
            config,
            splitters: HashMap::new(),
        }
    }

    pub fn config(&self) -> &FockConfig {
        &self.config
    }

    pub fn splitter(&mut self, eta: f64, dim_i: usize, dim_j: usize) -> Result<Arc<BeamSplitter>> {
        let key = (eta.to_bits(), dim_i, dim_j);
        if let Some(bs) = self.splitters.get(&key) {
            return Ok(Arc::clone(bs));
        }
        let bs = Arc::new(BeamSplitter::new(eta, dim_i, dim_j)?);
        self.splitters.insert(key, Arc::clone(&bs));
        Ok(bs)
    }

    fn check_inputs(alpha: f64, eta: f64) -> Result<()> {
        check_finite("alpha", alpha)?;
        check_unit_interval("eta", eta)?;
        if alpha <= 0.0 {
            return Err(EcsError::Degenerate(format!(
                "odd ECS needs alpha > 0, got {alpha}"
            )));
        }
        Ok(())
    }

    /// `|psi->_{12} |0>_E` after loss on mode 2; modes `[1, 2, E]`.
    pub fn asym_output(&mut self, alpha: f64, eta: f64) -> Result<MultiModeState> {
        Self::check_inputs(alpha, eta)?;
        let d = self.config.mode_dim(alpha)?;
        let state = odd_ecs_fock(alpha, d)?.with_vacuum_mode(d);
        self.splitter(eta, d, d)?.apply(&state, (1, 2))
    }

    /// `|psi->_{12} |0>_{E1} |0>_{E2}` after equal loss on both modes;
    /// modes `[1, 2, E1, E2]`.
    pub fn sym_output(&mut self, alpha: f64, eta: f64) -> Result<MultiModeState> {
        Self::check_inputs(alpha, eta)?;
        let d = self.config.mode_dim(alpha)?;
        let state = odd_ecs_fock(alpha, d)?
            .with_vacuum_mode(d)
            .with_vacuum_mode(d);
        let bs = self.splitter(eta, d, d)?;
        let state = bs.apply(&state, (0, 2))?;
        bs.apply(&state, (1, 3))
    }

    /// Symmetric-channel system state on the even/odd cat basis of
    /// `±sqrt(eta) alpha`.
    pub fn oracle_sym_matrix(&mut self, alpha: f64, eta: f64) -> Result<QubitDensity4> {
        let out = self.sym_output(alpha, eta)?;
        let basis = cat_basis(eta.sqrt() * alpha, out.dims()[0])?;
        let (m, leak) = project_first_two(&out, &basis);
        to_density(m, leak)
    }

    /// Environment pair `(E1, E2)` on the cat basis of `±sqrt(1-eta) alpha`.
    pub fn oracle_env_matrix(&mut self, alpha: f64, eta: f64) -> Result<QubitDensity4> {
        let out = self.sym_output(alpha, eta)?.permuted(&[2, 3, 0, 1])?;
        let basis = cat_basis((1.0 - eta).sqrt() * alpha, out.dims()[0])?;
        let (m, leak) = project_first_two(&out, &basis);
        to_density(m, leak)
    }

    /// Concurrence between the two environment modes of the symmetric channel.
    pub fn oracle_env_entanglement(&mut self, alpha: f64, eta: f64) -> Result<Concurrence> {
        if eta == 1.0 {
            // nothing is transmitted to the environments: check they are vacuum
            let out = self.sym_output(alpha, eta)?.permuted(&[2, 3, 0, 1])?;
            let rest = out.amps.len() / (out.dims[0] * out.dims[1]);
            let vac: f64 = out.amps[..rest].iter().map(|x| x * x).sum();
            if (1.0 - vac).abs() > PROJECTION_LEAK_TOL {
                return Err(EcsError::ProjectionLeak(1.0 - vac));
            }
            return Concurrence::new(0.0);
        }
        wootters_concurrence(&self.oracle_env_matrix(alpha, eta)?)
    }

    /// Numeric fully entangled fraction of the first two modes of `psi`
    /// over probes `|b,-b> - |-b,b>` with `b in (0, beta_max]`.
    fn scan_probe(&self, psi: &MultiModeState, beta_max: f64) -> Result<EntangledFraction> {
        check_finite("beta_max", beta_max)?;
        if beta_max <= 0.0 {
            return Err(EcsError::Domain {
                name: "beta_max",
                value: beta_max,
                reason: "must be positive",
            });
        }
        let (da, db) = (psi.dims[0], psi.dims[1]);
        if da != db {
            return Err(EcsError::Dimension(
                "probe modes must share a dimension".into(),
            ));
        }
        let tol = self.config.tol;
        let cap = self.config.max_dim.max(da);
        let probe_at = |beta: f64| -> f64 {
            // the probe norm is taken over its own (possibly larger) truncation
            let dim = required_dim(beta, tol, cap).unwrap_or(cap).max(da);
            let coh = coherent_fock_dim(beta, dim);
            let (even, odd) =
                coh.amplitudes()
                    .iter()
                    .enumerate()
                    .fold((0.0, 0.0), |(e, o), (n, c)| {
                        if n % 2 == 0 {
                            (e + c * c, o)
                        } else {
                            (e, o + c * c)
                        }
                    });
            // |b,-b> - |-b,b> has norm^2 8 E O
            let norm2 = 8.0 * even * odd;
            let amps = odd_ecs_amplitudes(&coh.amplitudes()[..da], da);
            probe_overlap(psi, &amps) / norm2
        };
        let best = bracketed_max(probe_at, beta_max, BETA_XTOL * beta_max.max(1.0));
        Ok(EntangledFraction {
            value: best.value,
            argmax_beta: best.arg,
        })
    }

    /// Asymmetric channel: best overlap of `rho_{12}` with an ECS probe.
    pub fn oracle_asym_fraction(
        &mut self,
        alpha: f64,
        eta: f64,
        beta_max: f64,
    ) -> Result<EntangledFraction> {
        let out = self.asym_output(alpha, eta)?;
        self.scan_probe(&out, beta_max)
    }

    /// Asymmetric channel: the same for the pair (mode 1, environment).
    pub fn oracle_asym_env_fraction(
        &mut self,
        alpha: f64,
        eta: f64,
        beta_max: f64,
    ) -> Result<EntangledFraction> {
        let out = self.asym_output(alpha, eta)?.permuted(&[0, 2, 1])?;
        self.scan_probe(&out, beta_max)
    }

    /// Symmetric channel: best overlap of `rho_{12}` with an ECS probe.
    pub fn oracle_sym_fraction(
        &mut self,
        alpha: f64,
        eta: f64,
        beta_max: f64,
    ) -> Result<EntangledFraction> {
        let out = self.sym_output(alpha, eta)?;
        self.scan_probe(&out, beta_max)
    }
}

/// One-shot symmetric-channel oracle matrix with tail tolerance `tol`.
pub fn oracle_sym_matrix(alpha: f64, eta: f64, tol: f64) -> Result<QubitDensity4> {
    let config = FockConfig {
        tol,
        ..FockConfig::from_env()?
    };
    FockOracle::new(config).oracle_sym_matrix(alpha, eta)
}
