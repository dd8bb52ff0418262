//! Suite configuration: parsed flags, validation, and the derived
//! zero-hypothesis list.

use std::path::PathBuf;

use deuring_core::kronecker::is_fundamental;
use deuring_core::sieve::MAX_SIEVE_LIMIT;
use deuring_core::ZeroHypothesis;

/// Seed echoed into every report; all sampling in the suites derives
/// from it.
pub const DEFAULT_SEED: u64 = 42;

/// Desk-scale U values driven by the lemma and decomposition suites.
pub const U_DESK: [f64; 2] = [2.0, 3.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Lemma1,
    Lemma2,
    Sigma,
    Threshold,
    Bound,
    GeneralQ,
    Scan,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Lemma1 => "lemma1",
            Suite::Lemma2 => "lemma2",
            Suite::Sigma => "sigma",
            Suite::Threshold => "threshold",
            Suite::Bound => "bound",
            Suite::GeneralQ => "general-q",
            Suite::Scan => "scan",
            Suite::All => "all",
        }
    }

    /// Whether the suite sums over n ≤ U_desk¹² and therefore needs the
    /// sieve to cover the largest requested U_desk.
    fn needs_desk_sums(self) -> bool {
        matches!(self, Suite::Lemma1 | Suite::Sigma | Suite::All)
    }

    /// Whether per-discriminant checks require D ≡ 0 (mod 4).
    fn needs_even_discriminants(self) -> bool {
        matches!(
            self,
            Suite::Identities | Suite::Lemma2 | Suite::Sigma | Suite::Bound | Suite::All
        )
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub nmax: u64,
    pub disc: Vec<u64>,
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub q: Vec<u64>,
    pub rho_modulus: Option<f64>,
    pub tolerance: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl SuiteConfig {
    /// Analytic slack added on top of computed tail certificates.
    pub fn analytic_slack(&self) -> f64 {
        self.tolerance.unwrap_or(1e-6)
    }

    /// Validate everything the suites rely on; errors are usage errors.
    pub fn validate(&self) -> Result<(), String> {
        if self.nmax < 2 || self.nmax > MAX_SIEVE_LIMIT {
            return Err(format!("--nmax {} outside 2..={MAX_SIEVE_LIMIT}", self.nmax));
        }
        for &d in &self.disc {
            if d == 0 || d > i64::MAX as u64 {
                return Err(format!("--disc {d} is not a valid modulus"));
            }
            match is_fundamental(-(d as i64)) {
                Ok(true) => {}
                _ => {
                    return Err(format!(
                        "-{d} is not a fundamental discriminant; \
                         the attached character would not be primitive"
                    ))
                }
            }
            if self.suite.needs_even_discriminants() && d % 4 != 0 {
                return Err(format!(
                    "discriminant -{d} is odd; the {} suite needs D ≡ 0 (mod 4) \
                     (odd fundamental discriminants only feed the general-q pipeline)",
                    self.suite.name()
                ));
            }
            if d > self.nmax {
                return Err(format!("--disc {d} exceeds --nmax {}", self.nmax));
            }
        }
        if !(self.beta.len() == self.gamma.len()
            || self.beta.len() == 1
            || self.gamma.len() == 1)
        {
            return Err(format!(
                "--beta has {} values and --gamma has {}; lengths must match or one must be 1",
                self.beta.len(),
                self.gamma.len()
            ));
        }
        for &b in &self.beta {
            if !(b > 0.5 && b < 1.0) {
                return Err(format!("--beta {b} outside the open strip (1/2, 1)"));
            }
        }
        for &g in &self.gamma {
            if !g.is_finite() || g.abs() > 1e6 {
                return Err(format!("--gamma {g} outside the desk-scale cap |gamma| <= 1e6"));
            }
        }
        for &q in &self.q {
            if !deuring_core::sieve::is_prime_u64(q) {
                return Err(format!("--q {q} is not prime"));
            }
        }
        if let Some(m) = self.rho_modulus {
            if !(m > 0.0) || !m.is_finite() {
                return Err(format!("--rho-modulus {m} must be a positive finite value"));
            }
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) || !t.is_finite() {
                return Err(format!("--tolerance {t} must be a positive finite value"));
            }
        }
        if self.suite.needs_desk_sums() {
            let worst = U_DESK.iter().fold(0u64, |acc, &u| acc.max(u.powi(12) as u64));
            if self.nmax < worst {
                return Err(format!(
                    "--nmax {} cannot cover U_desk^12 = {worst}; raise it or skip the {} suite",
                    self.nmax,
                    self.suite.name()
                ));
            }
        }
        Ok(())
    }

    /// Zip β against γ, broadcasting a singleton side, and apply the
    /// |ρ| override if given.
    pub fn hypotheses(&self) -> Result<Vec<ZeroHypothesis>, String> {
        let n = self.beta.len().max(self.gamma.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let beta = self.beta[i.min(self.beta.len() - 1)];
            let gamma = self.gamma[i.min(self.gamma.len() - 1)];
            let mut h = ZeroHypothesis::new(beta, gamma).map_err(|e| e.to_string())?;
            if let Some(m) = self.rho_modulus {
                h = h.with_rho_modulus(m).map_err(|e| e.to_string())?;
            }
            out.push(h);
        }
        Ok(out)
    }
}

/// Comma-separated list parser that treats an empty string as an empty list.
pub fn parse_list<T: std::str::FromStr>(raw: &str, what: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    let mut out = Vec::new();
    for piece in raw.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        out.push(
            piece
                .parse::<T>()
                .map_err(|e| format!("bad {what} value {piece:?}: {e}"))?,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base(suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suite,
            nmax: 1_000_000,
            disc: vec![4, 8, 20, 24],
            beta: vec![0.9, 0.875],
            gamma: vec![3.0, 5.0],
            q: vec![2, 3, 5, 7, 11],
            rho_modulus: None,
            tolerance: None,
            format: Format::Json,
            out: None,
            seed: DEFAULT_SEED,
        }
    }

    #[test]
    fn default_config_is_valid() {
        for suite in [
            Suite::Identities,
            Suite::Lemma1,
            Suite::Lemma2,
            Suite::Sigma,
            Suite::Threshold,
            Suite::Bound,
            Suite::GeneralQ,
            Suite::Scan,
            Suite::All,
        ] {
            base(suite).validate().unwrap();
        }
    }

    #[test]
    fn non_fundamental_discriminant_is_named() {
        let mut cfg = base(Suite::Identities);
        cfg.disc = vec![12];
        let msg = cfg.validate().unwrap_err();
        assert!(msg.contains("-12"), "{msg}");
    }

    #[test]
    fn odd_discriminant_rejected_where_even_needed() {
        let mut cfg = base(Suite::Sigma);
        cfg.disc = vec![3];
        let msg = cfg.validate().unwrap_err();
        assert!(msg.contains("-3"), "{msg}");
        let mut cfg = base(Suite::GeneralQ);
        cfg.disc = vec![3];
        cfg.validate().unwrap();
    }

    #[test]
    fn nmax_must_cover_desk_sums() {
        let mut cfg = base(Suite::Sigma);
        cfg.nmax = 10_000;
        assert!(cfg.validate().is_err());
        let mut cfg = base(Suite::Identities);
        cfg.nmax = 10_000;
        cfg.disc = vec![4, 8];
        cfg.validate().unwrap();
    }

    #[test]
    fn hypothesis_broadcast() {
        let mut cfg = base(Suite::Lemma1);
        cfg.beta = vec![0.9];
        cfg.gamma = vec![3.0, 5.0, 7.0];
        let hyps = cfg.hypotheses().unwrap();
        assert_eq!(hyps.len(), 3);
        assert!(hyps.iter().all(|h| h.beta == 0.9));
        cfg.beta = vec![0.9, 0.95];
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list::<u64>("4,8,20", "disc").unwrap(), vec![4, 8, 20]);
        assert_eq!(parse_list::<u64>("", "disc").unwrap(), Vec::<u64>::new());
        assert!(parse_list::<u64>("4,x", "disc").is_err());
    }
}
