//! Coherent-state algebra on real amplitudes.
//!
//! Only real amplitudes are supported. The sign of `alpha` is absorbed into
//! the mode labels of the ECS, so `EcsParams` takes `alpha >= 0`.
//!
//! Exponentials are evaluated directly in double precision. `exp(-4 alpha^2)`
//! underflows to zero around `alpha ~ 13`, which is the correct limit.

use crate::error::{check_finite, EcsError, Result};

/// Real amplitude labelling the coherent state `|alpha>`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CoherentLabel(f64);

impl CoherentLabel {
    pub fn new(amplitude: f64) -> Result<Self> {
        check_finite("amplitude", amplitude).map(Self)
    }

    pub fn amplitude(self) -> f64 {
        self.0
    }

    pub fn overlap(self, other: CoherentLabel) -> f64 {
        (-0.5 * (self.0 - other.0).powi(2)).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    /// `|a>|-a> + |-a>|a>`, or the even cat `|a> + |-a>`.
    Plus,
    /// `|a>|-a> - |-a>|a>`, or the odd cat `|a> - |-a>`.
    Minus,
}

impl Parity {
    /// Relative sign between the two branches.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }
}

/// Parameters of the two-mode ECS `(|a>|-a> ± |-a>|a>)/sqrt(N±)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcsParams {
    alpha: f64,
    parity: Parity,
}

impl EcsParams {
    pub fn new(alpha: f64, parity: Parity) -> Result<Self> {
        check_finite("alpha", alpha)?;
        if alpha < 0.0 {
            return Err(EcsError::Domain {
                name: "alpha",
                value: alpha,
                reason: "ECS amplitude must be non-negative",
            });
        }
        ecs_norm(alpha, parity)?;
        Ok(Self { alpha, parity })
    }

    /// The odd ECS, which is maximally entangled for every `alpha > 0`.
    pub fn odd(alpha: f64) -> Result<Self> {
        Self::new(alpha, Parity::Minus)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn norm(&self) -> f64 {
        ecs_norm(self.alpha, self.parity).expect("validated at construction")
    }
}

/// `<a|b> = exp(-(a-b)^2/2)` for real amplitudes.
pub fn coherent_overlap(a: f64, b: f64) -> Result<f64> {
    let a = CoherentLabel::new(a)?;
    let b = CoherentLabel::new(b)?;
    Ok(a.overlap(b))
}

/// `N± = 2 ± 2 exp(-4 alpha^2)`.
pub fn ecs_norm(alpha: f64, parity: Parity) -> Result<f64> {
    check_finite("alpha", alpha)?;
    cat_norm(2.0 * alpha * alpha, parity, "odd ECS vanishes at alpha = 0")
}

/// `N±(eta) = 2 ± 2 exp(-2 eta alpha^2)`, the norms of the even/odd cats
/// built on `±sqrt(eta) alpha`.
pub fn even_odd_norm(alpha: f64, eta: f64, parity: Parity) -> Result<f64> {
    check_finite("alpha", alpha)?;
    crate::error::check_unit_interval("eta", eta)?;
    cat_norm(
        eta * alpha * alpha,
        parity,
        "odd cat vanishes when eta * alpha^2 = 0",
    )
}

/// `2 ± 2 exp(-2x)`; `x` is half the squared distance between the two
/// components, so `exp(-2x)` is their overlap.
fn cat_norm(x: f64, parity: Parity, degenerate: &str) -> Result<f64> {
    match parity {
        Parity::Plus => Ok(2.0 + 2.0 * (-2.0 * x).exp()),
        Parity::Minus if x > 0.0 => Ok(-2.0 * (-2.0 * x).exp_m1()),
        Parity::Minus => Err(EcsError::Degenerate(degenerate.to_string())),
    }
}

/// Coefficients of `|±sqrt(eta) alpha>` on the even/odd cat basis:
/// `|s> = (sqrt(N+)|+> + sqrt(N-)|->)/2`, `|-s> = (sqrt(N+)|+> - sqrt(N-)|->)/2`.
pub fn cat_components(alpha: f64, eta: f64) -> Result<(f64, f64)> {
    let plus = even_odd_norm(alpha, eta, Parity::Plus)?;
    let minus = match even_odd_norm(alpha, eta, Parity::Minus) {
        Ok(n) => n,
        Err(EcsError::Degenerate(_)) => 0.0,
        Err(e) => return Err(e),
    };
    Ok((0.5 * plus.sqrt(), 0.5 * minus.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Fock inner product with enough terms that the neglected Poisson mass
    // is far below 1e-14; independent of the closed forms under test.
    fn fock_vec(a: f64, n: usize) -> Vec<f64> {
        let mut v = Vec::with_capacity(n);
        let mut c = (-0.5 * a * a).exp();
        for k in 0..n {
            if k > 0 {
                c *= a / (k as f64).sqrt();
            }
            v.push(c);
        }
        v
    }

    fn dot(x: &[f64], y: &[f64]) -> f64 {
        x.iter().zip(y).map(|(a, b)| a * b).sum()
    }

    #[test]
    fn overlap_examples() {
        assert_abs_diff_eq!(
            coherent_overlap(1.0, -1.0).unwrap(),
            (-2.0f64).exp(),
            epsilon = 1e-16
        );
        assert_abs_diff_eq!(
            coherent_overlap(1.0, -1.0).unwrap(),
            0.135335283236612,
            epsilon = 1e-12
        );
        assert_eq!(coherent_overlap(0.7, 0.7).unwrap(), 1.0);
        // mpmath: exp(-0.125)
        let expected = 0.882496902584595402864892143229;
        assert_abs_diff_eq!(
            coherent_overlap(0.8, 0.3).unwrap(),
            expected,
            epsilon = 1e-15
        );
        let fock = dot(&fock_vec(0.8, 60), &fock_vec(0.3, 60));
        assert_abs_diff_eq!(fock, expected, epsilon = 1e-14);
    }

    #[test]
    fn overlap_rejects_non_finite() {
        assert!(matches!(
            coherent_overlap(f64::NAN, 0.0),
            Err(EcsError::Domain { .. })
        ));
        assert!(coherent_overlap(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn ecs_norm_examples() {
        assert_eq!(ecs_norm(0.0, Parity::Plus).unwrap(), 4.0);
        assert_eq!(ecs_norm(20.0, Parity::Minus).unwrap(), 2.0);
        // mpmath: 2 - 2 exp(-1)
        let expected = 1.26424111765711535680895245968;
        assert_abs_diff_eq!(
            ecs_norm(0.5, Parity::Minus).unwrap(),
            expected,
            epsilon = 1e-15
        );
        assert!(matches!(
            ecs_norm(0.0, Parity::Minus),
            Err(EcsError::Degenerate(_))
        ));
        assert!(EcsParams::odd(0.0).is_err());
        assert!(EcsParams::odd(-1.0).is_err());
    }

    #[test]
    fn ecs_norm_matches_fock_vector_norm() {
        for &a in &[0.1, 0.5, 1.0, 2.0] {
            for parity in [Parity::Plus, Parity::Minus] {
                let p = fock_vec(a, 80);
                let m = fock_vec(-a, 80);
                // |a>|-a> ± |-a>|a>: norm^2 = 2 ± 2 <a|-a>^2
                let cross = dot(&p, &m);
                let n2 = 2.0 * dot(&p, &p) * dot(&m, &m) + parity.sign() * 2.0 * cross * cross;
                assert_abs_diff_eq!(ecs_norm(a, parity).unwrap(), n2, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn even_odd_norm_examples() {
        // mpmath: 2 + 2 exp(-2)
        assert_abs_diff_eq!(
            even_odd_norm(1.0, 1.0, Parity::Plus).unwrap(),
            2.27067056647322538378799898994,
            epsilon = 1e-15
        );
        assert_eq!(even_odd_norm(3.7, 0.0, Parity::Plus).unwrap(), 4.0);
        assert_abs_diff_eq!(
            even_odd_norm(1.0, 0.5, Parity::Minus).unwrap(),
            1.26424111765711535680895245968,
            epsilon = 1e-15
        );
        assert!(matches!(
            even_odd_norm(1.0, 0.0, Parity::Minus),
            Err(EcsError::Degenerate(_))
        ));
        assert!(even_odd_norm(1.0, 1.5, Parity::Plus).is_err());
    }

    #[test]
    fn even_odd_basis_is_orthonormal_in_fock_space() {
        for &(a, eta) in &[(1.0, 1.0), (1.0, 0.5), (0.3, 0.2), (2.0, 0.9)] {
            let s = f64::sqrt(eta) * a;
            let p = fock_vec(s, 80);
            let m = fock_vec(-s, 80);
            let np = even_odd_norm(a, eta, Parity::Plus).unwrap();
            let nm = even_odd_norm(a, eta, Parity::Minus).unwrap();
            let even: Vec<f64> = p.iter().zip(&m).map(|(x, y)| (x + y) / np.sqrt()).collect();
            let odd: Vec<f64> = p.iter().zip(&m).map(|(x, y)| (x - y) / nm.sqrt()).collect();
            assert_abs_diff_eq!(dot(&even, &even), 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(dot(&odd, &odd), 1.0, epsilon = 1e-10);
            assert_abs_diff_eq!(dot(&even, &odd), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn cat_components_reassemble_coherent_state() {
        let (a, eta) = (1.2, 0.6);
        let (cp, cm) = cat_components(a, eta).unwrap();
        // |<s|+>|^2 + |<s|->|^2 = 1
        assert_abs_diff_eq!(cp * cp + cm * cm, 1.0, epsilon = 1e-15);
        let (cp0, cm0) = cat_components(a, 0.0).unwrap();
        assert_eq!((cp0, cm0), (1.0, 0.0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn overlap_symmetries(a in -20.0f64..20.0, b in -20.0f64..20.0) {
                prop_assert_eq!(coherent_overlap(a, a).unwrap(), 1.0);
                let ab = coherent_overlap(a, b).unwrap();
                prop_assert_eq!(ab, coherent_overlap(b, a).unwrap());
                prop_assert_eq!(ab, coherent_overlap(-a, -b).unwrap());
                prop_assert!(ab >= 0.0 && ab <= 1.0);
            }

            #[test]
            fn odd_norm_in_range(a in 1e-6f64..30.0) {
                let n = ecs_norm(a, Parity::Minus).unwrap();
                prop_assert!(n > 0.0 && n <= 2.0);
                let p = ecs_norm(a, Parity::Plus).unwrap();
                prop_assert!(p >= 2.0 && p <= 4.0);
            }
        }
    }
}
