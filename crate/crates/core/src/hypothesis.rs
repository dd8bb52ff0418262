//! Hypothetical off-line zeros ρ = β + iγ and the derived quantities the
//! bound machinery runs on: the reduced phase δ of 2^{−iγ}, the modulus
//! |ρ| (which may be injected symbolically), and U = |ρ|·D^{1/4}·log D.

use core::f64::consts::PI;

use crate::error::Error;
use crate::kronecker::is_fundamental;
use crate::{Complex, Result};

const TAU_HI: f64 = core::f64::consts::TAU;
const TAU_LO: f64 = 2.449_293_598_294_706_4e-16;

/// Phase window treated as the ±π boundary and snapped to +π, per the
/// half-open convention δ ∈ (−π, π].
const BOUNDARY_SNAP: f64 = 1e-12;

/// Reduce a phase into (−π, π], Cody–Waite style with a two-part 2π and
/// fused multiply-adds; accurate to a few ulp for |r| up to ~1e6.
pub fn reduce_phase(r: f64) -> f64 {
    let k = libm::round(r / TAU_HI);
    let mut delta = libm::fma(-k, TAU_LO, libm::fma(-k, TAU_HI, r));
    if delta > PI {
        delta -= TAU_HI;
    } else if delta <= -PI {
        delta += TAU_HI;
    }
    if delta <= -PI + BOUNDARY_SNAP {
        delta += TAU_HI;
    }
    delta
}

/// The δ ∈ (−π, π] with log 2·γ ≡ δ (mod 2π), so 2^{−iγ} = exp(−iδ).
pub fn delta_of_gamma(gamma: f64) -> f64 {
    reduce_phase(core::f64::consts::LN_2 * gamma)
}

/// A hypothetical zero ρ = β + iγ of ζ(s) off the critical line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroHypothesis {
    pub beta: f64,
    pub gamma: f64,
    /// δ ∈ (−π, π] with log 2·γ ≡ δ (mod 2π).
    pub delta: f64,
    /// |ρ|; defaults to hypot(β, γ) but may be overridden to model the
    /// regime |ρ| > 2.4e12 where γ itself is not representable usefully.
    pub rho_modulus: f64,
}

impl ZeroHypothesis {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(beta > 0.5 && beta < 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidArgument(alloc::format!(
                "need 1/2 < beta < 1 and finite gamma, got beta = {beta}, gamma = {gamma}"
            )));
        }
        Ok(ZeroHypothesis {
            beta,
            gamma,
            delta: delta_of_gamma(gamma),
            rho_modulus: libm::hypot(beta, gamma),
        })
    }

    /// Build from (β, δ) directly, taking γ = δ/log 2 so the phase
    /// relation holds exactly; used by grid scans over the phase.
    pub fn from_beta_delta(beta: f64, delta: f64) -> Result<Self> {
        if !(beta > 0.5 && beta < 1.0) || !(delta > -PI && delta <= PI) {
            return Err(Error::InvalidArgument(alloc::format!(
                "need 1/2 < beta < 1 and -pi < delta <= pi, got ({beta}, {delta})"
            )));
        }
        let gamma = delta / core::f64::consts::LN_2;
        Ok(ZeroHypothesis { beta, gamma, delta, rho_modulus: libm::hypot(beta, gamma) })
    }

    /// Replace |ρ| with an injected value (e.g. 2.4e12).
    pub fn with_rho_modulus(mut self, modulus: f64) -> Result<Self> {
        if !(modulus > 0.0) || !modulus.is_finite() {
            return Err(Error::InvalidArgument(alloc::format!("bad |rho| = {modulus}")));
        }
        self.rho_modulus = modulus;
        Ok(self)
    }

    pub fn rho(&self) -> Complex {
        Complex::new(self.beta, self.gamma)
    }

    pub fn two_rho(&self) -> Complex {
        Complex::new(2.0 * self.beta, 2.0 * self.gamma)
    }

    /// Whether the headline hypotheses β > 7/8 and |δ| > π/100 hold.
    pub fn theorem_mode(&self) -> bool {
        self.beta > 0.875 && libm::fabs(self.delta) > PI / 100.0
    }
}

/// Discriminant-side inputs: D and an optional symbolic |ρ|.
#[derive(Debug, Clone, Copy)]
pub struct BoundInputs {
    pub d: u64,
    pub rho_modulus_override: Option<f64>,
}

impl BoundInputs {
    pub fn new(d: u64, rho_modulus_override: Option<f64>) -> Result<Self> {
        if !is_fundamental(-(d as i64))? {
            return Err(Error::InvalidArgument(alloc::format!(
                "-{d} is not a fundamental discriminant"
            )));
        }
        if let Some(m) = rho_modulus_override {
            if !(m > 0.0) || !m.is_finite() {
                return Err(Error::InvalidArgument(alloc::format!("bad |rho| override {m}")));
            }
        }
        Ok(BoundInputs { d, rho_modulus_override })
    }

    pub fn effective_rho_modulus(&self, h: &ZeroHypothesis) -> f64 {
        self.rho_modulus_override.unwrap_or(h.rho_modulus)
    }

    /// U = |ρ|·D^{1/4}·log D.
    pub fn u(&self, h: &ZeroHypothesis) -> f64 {
        let d = self.d as f64;
        self.effective_rho_modulus(h) * libm::pow(d, 0.25) * libm::log(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_examples() {
        assert_eq!(delta_of_gamma(0.0), 0.0);
        let full_period = core::f64::consts::TAU / core::f64::consts::LN_2;
        assert!(delta_of_gamma(full_period).abs() < 1e-12);
        let half = PI / core::f64::consts::LN_2;
        assert!((delta_of_gamma(half) - PI).abs() < 1e-12, "{}", delta_of_gamma(half));
    }

    #[test]
    fn delta_is_the_phase_of_two_to_minus_i_gamma() {
        // exp(−i·log2·γ) must equal exp(−iδ) to 1e−12
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let gamma = (next() - 0.5) * 2e6;
            let delta = delta_of_gamma(gamma);
            assert!(delta > -PI && delta <= PI);
            let r = core::f64::consts::LN_2 * gamma;
            let direct = Complex::new(libm::cos(r), -libm::sin(r));
            let reduced = Complex::new(libm::cos(delta), -libm::sin(delta));
            assert!(
                (direct - reduced).norm() < 1e-12,
                "gamma={gamma}: {direct} vs {reduced}"
            );
        }
    }

    #[test]
    fn hypothesis_constructors_validate() {
        assert!(ZeroHypothesis::new(0.5, 1.0).is_err());
        assert!(ZeroHypothesis::new(1.0, 1.0).is_err());
        assert!(ZeroHypothesis::new(0.9, f64::NAN).is_err());
        let h = ZeroHypothesis::new(0.9, 3.0).unwrap();
        assert!((h.delta - (3.0 * core::f64::consts::LN_2 - 0.0)).abs() < 1e-15);
        assert!(h.theorem_mode());
        let h = ZeroHypothesis::from_beta_delta(0.9, PI).unwrap();
        assert_eq!(h.delta, PI);
        assert!((delta_of_gamma(h.gamma) - PI).abs() < 1e-12);
        let low = ZeroHypothesis::from_beta_delta(0.9, PI / 200.0).unwrap();
        assert!(!low.theorem_mode());
    }

    #[test]
    fn bound_inputs_and_u() {
        let h = ZeroHypothesis::new(0.9, 3.0).unwrap();
        let inputs = BoundInputs::new(4, Some(2.4e12)).unwrap();
        let u = inputs.u(&h);
        let expected = 2.4e12 * libm::pow(4.0, 0.25) * libm::log(4.0);
        assert!((u - expected).abs() < 1e-3);
        assert!(BoundInputs::new(12, None).is_err());
        assert!(BoundInputs::new(4, Some(-1.0)).is_err());
        let desk = BoundInputs::new(4, None).unwrap();
        assert!((desk.effective_rho_modulus(&h) - libm::hypot(0.9, 3.0)).abs() < 1e-15);
    }
}
