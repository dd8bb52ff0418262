//! The verification suites behind each subcommand.
//!
//! Every suite is a list of independent units; units run in parallel but
//! their reports are assembled in a fixed order, and each unit's
//! arithmetic is single-threaded and deterministic, so the final
//! document is byte-stable.

use std::f64::consts::PI;
use std::io::Write as _;
use std::time::Instant;

use deuring_core::error::Error;
use deuring_core::quadchar::QuadraticCharacter;
use deuring_core::report::anchor;
use deuring_core::series::{
    one_star_chi_over_n_estimate, phi_at, sbp_identity_check, tau_over_n_hyperbola,
    tau_sqrt_hyperbola,
};
use deuring_core::sum::NeumaierSum;
use deuring_core::table::{dirichlet_convolve, FunctionTable};
use deuring_core::verify::{
    general_q_factor, general_q_factor_parts, general_q_grid_min, lemma1_check,
    lemma2_inner_check, main_factor, main_factor_grid_min, ramanujan_series_check,
    sigma2_threshold_check, sigma_decomposition, theorem_bound, threshold_chain_value,
    zeta_ratio_check,
};
use deuring_core::{BoundInputs, CheckReport, Complex, SieveTable, ZeroHypothesis};
use rayon::prelude::*;

use crate::config::{Suite, SuiteConfig, U_DESK};
use crate::output::ReportDocument;

pub enum RunError {
    /// Bad parameters; exit status 2.
    Usage(String),
    /// A self-check inside the library failed; exit status 3.
    Internal(String),
}

fn classify(e: Error) -> RunError {
    match e {
        Error::InvariantViolation(msg) => RunError::Internal(msg),
        other => RunError::Usage(other.to_string()),
    }
}

/// Shared immutable state for one run.
pub struct Context {
    pub sieve: SieveTable,
    pub chars: Vec<QuadraticCharacter>,
    pub hyps: Vec<ZeroHypothesis>,
}

impl Context {
    pub fn build(cfg: &SuiteConfig) -> Result<Self, RunError> {
        let sieve = load_or_build_sieve(cfg.nmax).map_err(classify)?;
        let mut chars = Vec::new();
        for &d in &cfg.disc {
            chars.push(QuadraticCharacter::new(d).map_err(classify)?);
        }
        let hyps = cfg.hypotheses().map_err(RunError::Usage)?;
        Ok(Context { sieve, chars, hyps })
    }
}

/// Build the sieve, reusing an SPFT cache file when the cache directory
/// environment variable is set.
fn load_or_build_sieve(nmax: u64) -> Result<SieveTable, Error> {
    let cache_dir = std::env::var_os("DEURING_SIEVE_CACHE");
    if let Some(dir) = &cache_dir {
        let path = std::path::Path::new(dir).join(format!("spft-{nmax}.bin"));
        if let Ok(bytes) = std::fs::read(&path) {
            match SieveTable::from_spft_bytes(&bytes) {
                Ok(t) if t.limit() == nmax => return Ok(t),
                _ => eprintln!("ignoring corrupt sieve cache {}", path.display()),
            }
        }
    }
    let t = SieveTable::build(nmax)?;
    if let Some(dir) = &cache_dir {
        let path = std::path::Path::new(dir).join(format!("spft-{nmax}.bin"));
        if let Err(e) = std::fs::write(&path, t.to_spft_bytes()) {
            eprintln!("could not write sieve cache {}: {e}", path.display());
        }
    }
    Ok(t)
}

type Unit<'a> = Box<dyn Fn() -> Result<Vec<CheckReport>, Error> + Send + Sync + 'a>;

fn run_units(units: Vec<Unit<'_>>) -> Result<Vec<CheckReport>, RunError> {
    let results: Vec<Result<Vec<CheckReport>, Error>> =
        units.par_iter().map(|unit| unit()).collect();
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r.map_err(classify)?);
    }
    Ok(checks)
}

pub fn run(cfg: &SuiteConfig) -> Result<ReportDocument, RunError> {
    let start = Instant::now();
    let ctx = Context::build(cfg)?;
    let mut units: Vec<Unit> = Vec::new();
    match cfg.suite {
        Suite::Identities => identities_units(&ctx, cfg, &mut units),
        Suite::Lemma1 => lemma1_units(&ctx, cfg, &mut units),
        Suite::Lemma2 => lemma2_units(&ctx, cfg, &mut units),
        Suite::Sigma => sigma_units(&ctx, cfg, &mut units),
        Suite::Threshold => threshold_units(&mut units),
        Suite::Bound => bound_units(&ctx, cfg, &mut units),
        Suite::GeneralQ => general_q_units(&ctx, cfg, &mut units),
        Suite::Scan => scan_units(&ctx, cfg, &mut units),
        Suite::All => {
            identities_units(&ctx, cfg, &mut units);
            lemma1_units(&ctx, cfg, &mut units);
            lemma2_units(&ctx, cfg, &mut units);
            sigma_units(&ctx, cfg, &mut units);
            threshold_units(&mut units);
            bound_units(&ctx, cfg, &mut units);
            general_q_units(&ctx, cfg, &mut units);
        }
    }
    let checks = run_units(units)?;
    Ok(ReportDocument {
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: cfg.suite.name().to_string(),
        config: cfg.clone(),
        checks,
        wall_time: start.elapsed(),
    })
}

fn identities_units<'a>(ctx: &'a Context, cfg: &'a SuiteConfig, units: &mut Vec<Unit<'a>>) {
    let t = &ctx.sieve;
    let slack = cfg.analytic_slack();
    let conv_limit = cfg.nmax.min(10_000);
    let indicator_limit = cfg.nmax.min(100_000);
    let analytic_x = cfg.nmax.min(1_000_000);

    units.push(Box::new(move || convolution_identity_checks(t, conv_limit)));
    units.push(Box::new(move || {
        let mut failures = 0i64;
        for n in 1..=indicator_limit {
            // one_star_lambda_odd itself cross-checks divisor sum vs indicator
            if t.one_star_lambda_odd(n)? > 1 {
                failures += 1;
            }
        }
        Ok(vec![CheckReport::asserted(
            format!("square-indicator[n<={indicator_limit}]"),
            anchor::PRELIMINARIES,
            failures,
            0i64,
            -failures as f64,
            0.0,
            failures == 0,
        )])
    }));

    for chi in &ctx.chars {
        let d = chi.modulus();
        let eq1_limit = cfg.nmax.min(10_000);
        units.push(Box::new(move || {
            let mut failures = 0i64;
            let mut first_failure = 0u64;
            for n in 1..=eq1_limit {
                let r = chi.check_eq1(t, n)?;
                if !r.passed() {
                    failures += 1;
                    if first_failure == 0 {
                        first_failure = n;
                    }
                }
            }
            let mut report = CheckReport::asserted(
                format!("eq1-suite[D={d},n<={eq1_limit}]"),
                anchor::EQ1,
                failures,
                0i64,
                -failures as f64,
                0.0,
                failures == 0,
            )
            .with_param("D", d);
            if first_failure > 0 {
                report = report.with_param("first_failure", first_failure);
            }
            Ok(vec![report])
        }));
        units.push(Box::new(move || Ok(vec![chi.polya_vinogradov_check(cfg.nmax)?])));
        units.push(Box::new(move || {
            let s = chi.char_sum(d);
            Ok(vec![CheckReport::asserted(
                format!("period-sum[D={d}]"),
                anchor::PRELIMINARIES,
                s,
                0i64,
                -(s.abs() as f64),
                0.0,
                s == 0,
            )])
        }));
        units.push(Box::new(move || {
            let (value, tail) = chi.l_one(cfg.nmax)?;
            let known = match d {
                4 => Some(PI / 4.0),
                8 => Some(PI / 8f64.sqrt()),
                20 => Some(PI / 5f64.sqrt()),
                24 => Some(PI / 6f64.sqrt()),
                40 => Some(PI / 10f64.sqrt()),
                _ => None,
            };
            let name = format!("l-one[D={d}]");
            let report = match known {
                Some(target) => {
                    let diff = (value - target).abs();
                    CheckReport::asserted(
                        name,
                        anchor::THEOREM,
                        value,
                        target,
                        tail - diff,
                        tail,
                        diff <= tail,
                    )
                }
                None => CheckReport::info(name, anchor::THEOREM, value, value, tail),
            };
            Ok(vec![report.with_param("D", d).with_param("X", cfg.nmax).with_param("tail", tail)])
        }));
        if cfg.nmax >= 10_000 {
            units.push(Box::new(move || {
                Ok(vec![one_star_chi_over_n_estimate(t, chi, 100, 10_000)?])
            }));
        }
    }

    // analytic identity suite
    units.push(Box::new(move || {
        let s = Complex::new(2.0, 0.0);
        let sum = phi_at(s, analytic_x)?;
        let target = -PI * PI / 12.0;
        let diff = (sum.partial - target).norm();
        let tol = sum.tail_bound + slack;
        Ok(vec![CheckReport::asserted(
            format!("phi-at-two[X={analytic_x}]"),
            anchor::LEMMA1,
            sum.partial,
            target,
            tol - diff,
            tol,
            diff <= tol,
        )])
    }));
    units.push(Box::new(move || {
        let s = Complex::new(1.0, 0.0);
        let sum = phi_at(s, analytic_x)?;
        let target = -core::f64::consts::LN_2;
        let diff = (sum.partial - target).norm();
        let tol = sum.tail_bound + slack;
        Ok(vec![CheckReport::asserted(
            format!("phi-at-one[X={analytic_x}]"),
            anchor::LEMMA2,
            sum.partial,
            target,
            tol - diff,
            tol,
            diff <= tol,
        )])
    }));
    units.push(Box::new(move || {
        let mut acc = NeumaierSum::new();
        for n in (1..=analytic_x).step_by(2) {
            acc.add(t.liouville(n)? as f64 / (n as f64 * n as f64));
        }
        let value = acc.value();
        let target = PI * PI / 12.0;
        // |tail| <= Σ_{n>X} n^{-2}
        let tail = deuring_core::series::euler_tail_bound(analytic_x as f64, Complex::new(2.0, 0.0))?;
        let tol = tail + slack;
        let diff = (value - target).abs();
        Ok(vec![CheckReport::asserted(
            format!("lambda-odd-series[X={analytic_x}]"),
            anchor::PRELIMINARIES,
            value,
            target,
            tol - diff,
            tol,
            diff <= tol,
        )])
    }));
    units.push(Box::new(move || {
        ramanujan_series_check(3, Complex::new(2.0, 0.0), analytic_x, t)
    }));
    for x in [1_000u64, 10_000, 100_000, 1_000_000] {
        if x <= cfg.nmax {
            units.push(Box::new(move || Ok(vec![tau_sqrt_hyperbola(t, x)?])));
            units.push(Box::new(move || Ok(vec![tau_over_n_hyperbola(t, x)?])));
        }
    }
}

fn convolution_identity_checks(t: &SieveTable, limit: u64) -> Result<Vec<CheckReport>, Error> {
    let ones = FunctionTable::ones(limit);
    let shrink = |full: &FunctionTable| -> Result<FunctionTable, Error> {
        FunctionTable::from_fn(limit, |n| full.get(n))
    };
    let tau = shrink(&FunctionTable::tau(t)?)?;
    let tau_odd = shrink(&FunctionTable::tau_odd(t)?)?;
    let lambda = shrink(&FunctionTable::liouville(t)?)?;
    let lambda_odd = shrink(&FunctionTable::liouville_odd(t)?)?;
    let pow_nu = shrink(&FunctionTable::nu_pow2(t)?)?;
    let mut out = Vec::new();
    for (name, f, weight, g) in [
        ("conv-identity-lambda", &lambda, &pow_nu, &tau),
        ("conv-identity-lambda-odd", &lambda_odd, &pow_nu, &tau_odd),
    ] {
        let lhs = dirichlet_convolve(&ones, f)?;
        let rhs = dirichlet_convolve(&weight.pointwise_mul(f)?, g)?;
        let mut failures = 0i64;
        for n in 1..=limit {
            if lhs.get(n)? != rhs.get(n)? {
                failures += 1;
            }
        }
        out.push(CheckReport::asserted(
            format!("{name}[n<={limit}]"),
            anchor::PRELIMINARIES,
            failures,
            0i64,
            -failures as f64,
            0.0,
            failures == 0,
        ));
    }
    Ok(out)
}

fn lemma1_units<'a>(ctx: &'a Context, cfg: &'a SuiteConfig, units: &mut Vec<Unit<'a>>) {
    let Some(&d0) = cfg.disc.first() else { return };
    let t = &ctx.sieve;
    units.push(Box::new(move || {
        let g = main_factor_grid_min(1e-3, 1e-3);
        Ok(vec![CheckReport::asserted(
            "main-factor-grid",
            anchor::LEMMA1,
            g.min,
            0.04,
            g.min - 0.04,
            0.0,
            g.min > 0.04,
        )
        .with_param("argmin_beta", g.at_beta)
        .with_param("argmin_delta", g.at_delta)
        .with_param("beta_step", 1e-3)
        .with_param("delta_step", 1e-3)])
    }));
    for h in &ctx.hyps {
        units.push(Box::new(move || Ok(vec![zeta_ratio_check(h)?])));
        for u in U_DESK {
            units.push(Box::new(move || {
                let inputs = BoundInputs::new(d0, cfg.rho_modulus)?;
                lemma1_check(h, &inputs, t, u)
            }));
        }
    }
}

fn lemma2_units<'a>(ctx: &'a Context, cfg: &'a SuiteConfig, units: &mut Vec<Unit<'a>>) {
    let t = &ctx.sieve;
    for chi in &ctx.chars {
        for h in &ctx.hyps {
            let y = cfg.nmax.min(10_000) as f64;
            units.push(Box::new(move || lemma2_inner_check(h, chi, y, t)));
        }
    }
    for sigma in [0.6, 0.875, 0.9, 2.0] {
        for t_im in [0.0, 5.0, 14.1, 20.0, 100.0] {
            for w in [50.0, 1000.0] {
                units.push(Box::new(move || {
                    Ok(vec![sbp_identity_check(Complex::new(sigma, t_im), w)?])
                }));
            }
        }
    }
}

fn sigma_units<'a>(ctx: &'a Context, cfg: &'a SuiteConfig, units: &mut Vec<Unit<'a>>) {
    let t = &ctx.sieve;
    let _ = cfg;
    for chi in &ctx.chars {
        for h in &ctx.hyps {
            for u in U_DESK {
                units.push(Box::new(move || Ok(vec![sigma_decomposition(h, chi, t, u)?])));
            }
        }
    }
}

const U_GRID: [f64; 9] = [1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22, 1e23, 1e24];

fn threshold_units(units: &mut Vec<Unit<'_>>) {
    units.push(Box::new(|| Ok(vec![sigma2_threshold_check(1e-3, &U_GRID)?])));
    units.push(Box::new(|| {
        let mut out = Vec::new();
        for (beta, u) in [(0.875 + 1e-6, 1e16), (0.95, 1e20), (5.0 / 6.0, 1e16)] {
            let v = threshold_chain_value(beta, u)?;
            out.push(
                CheckReport::info(
                    format!("threshold-chain[beta={beta},U={u:e}]"),
                    anchor::LOWER_BOUNDS_AGAIN,
                    v,
                    0.02,
                    v - 0.02,
                )
                .with_param("beta", beta)
                .with_param("U", u),
            );
        }
        Ok(out)
    }));
}

fn bound_units<'a>(ctx: &'a Context, cfg: &'a SuiteConfig, units: &mut Vec<Unit<'a>>) {
    for &d in &cfg.disc {
        for h in &ctx.hyps {
            units.push(Box::new(move || {
                if !h.theorem_mode() {
                    // the bound op itself rejects these; record why instead
                    let why = if h.beta <= 0.875 { "beta > 7/8" } else { "|delta| > pi/100" };
                    return Ok(vec![CheckReport::info(
                        format!("theorem-bound-skipped[D={d},beta={},gamma={}]", h.beta, h.gamma),
                        anchor::THEOREM,
                        0.0,
                        0.0,
                        0.0,
                    )
                    .with_param("unsatisfied_hypothesis", why)]);
                }
                let inputs = BoundInputs::new(d, cfg.rho_modulus)?;
                let bound = theorem_bound(h, &inputs)?;
                let mut out = Vec::new();
                out.push(
                    CheckReport::info(
                        format!("theorem-bound[D={d},beta={},gamma={}]", h.beta, h.gamma),
                        anchor::THEOREM,
                        bound,
                        0.0,
                        bound,
                    )
                    .with_param("U", inputs.u(h))
                    .with_param("rho_modulus", inputs.effective_rho_modulus(h))
                    .with_param("D_exceeds_1e9", d > 1_000_000_000),
                );
                // monotone: increasing in beta, decreasing in U
                let mut ok = true;
                if h.beta + 1e-3 < 1.0 {
                    let up = ZeroHypothesis::new(h.beta + 1e-3, h.gamma)?
                        .with_rho_modulus(inputs.effective_rho_modulus(h))?;
                    ok &= theorem_bound(&up, &inputs)? > bound;
                }
                let bigger_rho =
                    BoundInputs::new(d, Some(10.0 * inputs.effective_rho_modulus(h)))?;
                ok &= theorem_bound(h, &bigger_rho)? < bound;
                out.push(CheckReport::asserted(
                    format!("theorem-bound-monotone[D={d},beta={},gamma={}]", h.beta, h.gamma),
                    anchor::THEOREM,
                    bound,
                    bound,
                    0.0,
                    0.0,
                    ok,
                ));
                Ok(out)
            }));
        }
    }
}

fn general_q_units<'a>(ctx: &'a Context, cfg: &'a SuiteConfig, units: &mut Vec<Unit<'a>>) {
    let t = &ctx.sieve;
    let x = cfg.nmax.min(1_000_000);
    let qs = cfg.q.clone();
    units.push(Box::new(move || {
        let mut out = Vec::new();
        let mut prev = f64::INFINITY;
        let mut monotone = true;
        for &q in &qs {
            let g = general_q_grid_min(q, 1e-3, 1e-3)?;
            monotone &= g.min <= prev;
            prev = g.min;
            out.push(
                CheckReport::info(
                    format!("general-q-grid-min[q={q}]"),
                    anchor::GENERAL_CASE,
                    g.min,
                    0.04,
                    g.min - 0.04,
                )
                .with_param("argmin_beta", g.at_beta)
                .with_param("argmin_delta", g.at_delta),
            );
        }
        if qs.len() > 1 {
            out.push(CheckReport::asserted(
                "general-q-minima-non-increasing",
                anchor::GENERAL_CASE,
                qs.len() as i64,
                qs.len() as i64,
                0.0,
                0.0,
                monotone,
            ));
        }
        Ok(out)
    }));
    units.push(Box::new(move || {
        let mut worst = 0.0f64;
        for h in &ctx.hyps {
            worst = worst.max((general_q_factor(2, h)? - main_factor(h)).abs());
        }
        Ok(vec![CheckReport::asserted(
            "general-q-matches-main-factor",
            anchor::GENERAL_CASE,
            worst,
            1e-12,
            1e-12 - worst,
            1e-12,
            worst < 1e-12,
        )])
    }));
    units.push(Box::new(move || {
        let f = general_q_factor_parts(3, 1.0 - 1e-9, 0.0)?;
        Ok(vec![CheckReport::info(
            "general-q-trivial-zero[q=3]",
            anchor::GENERAL_CASE,
            f,
            0.0,
            -f,
        )])
    }));
    for &q in &cfg.q {
        units.push(Box::new(move || ramanujan_series_check(q, Complex::new(2.0, 0.0), x, t)));
    }
    if let Some(h) = ctx.hyps.first() {
        for &q in &cfg.q {
            units.push(Box::new(move || ramanujan_series_check(q, h.rho(), x, t)));
        }
    }
}

fn scan_units<'a>(ctx: &'a Context, cfg: &'a SuiteConfig, units: &mut Vec<Unit<'a>>) {
    for h in &ctx.hyps {
        let qs = cfg.q.clone();
        let disc = cfg.disc.clone();
        units.push(Box::new(move || {
            let mut report = CheckReport::info(
                format!("scan-point[beta={},gamma={}]", h.beta, h.gamma),
                anchor::LEMMA1,
                main_factor(h),
                0.04,
                main_factor(h) - 0.04,
            )
            .with_param("delta", h.delta)
            .with_param("main_factor", main_factor(h));
            for &q in &qs {
                report = report
                    .with_param(&format!("factor_q{q}"), general_q_factor(q, h)?);
            }
            if let Some(&d) = disc.first() {
                let inputs = BoundInputs::new(d, cfg.rho_modulus)?;
                if h.theorem_mode() && d % 4 == 0 {
                    report = report.with_param("theorem_bound", theorem_bound(h, &inputs)?);
                }
            }
            Ok(vec![report])
        }));
    }
    units.push(Box::new(|| {
        let g = main_factor_grid_min(1e-3, 1e-3);
        Ok(vec![CheckReport::info(
            "main-factor-grid-min",
            anchor::LEMMA1,
            g.min,
            0.04,
            g.min - 0.04,
        )
        .with_param("argmin_beta", g.at_beta)
        .with_param("argmin_delta", g.at_delta)])
    }));
    let qs = cfg.q.clone();
    units.push(Box::new(move || {
        let mut out = Vec::new();
        for &q in &qs {
            let g = general_q_grid_min(q, 1e-3, 1e-3)?;
            out.push(
                CheckReport::info(
                    format!("general-q-grid-min[q={q}]"),
                    anchor::GENERAL_CASE,
                    g.min,
                    0.04,
                    g.min - 0.04,
                )
                .with_param("argmin_beta", g.at_beta)
                .with_param("argmin_delta", g.at_delta),
            );
        }
        Ok(out)
    }));
}

/// Human-readable run summary on stderr; the serialized document itself
/// stays byte-deterministic.
pub fn print_summary(doc: &ReportDocument) {
    let s = doc.summary();
    let mut err = std::io::stderr().lock();
    let _ = writeln!(
        err,
        "{}: {} pass, {} fail, {} informational ({} checks in {:.2?})",
        doc.command,
        s.pass,
        s.fail,
        s.info,
        doc.checks.len(),
        doc.wall_time,
    );
}
