//! Sampled majorization `w1 <= C * w2^g` on geometric radius shells.
//!
//! Everything runs on the log scale: `a = ln w1`, `b = ln w2`. With shells
//! `0..K`, the two largest training shells `K-3` and `K-2` fix the smallest
//! exponent `g` for which the envelope `max(a - g*b)` stops growing; the
//! constant is that envelope over all training shells. The outermost shell
//! is held out: the fit holds if every held-out sample satisfies
//! `a <= c + ln 1.05 + 1.05*g*b`, and is violated if some sample exceeds
//! this bound by more than `ln 5`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Domain, Point, Weight, WeightError};

const SLACK: f64 = 1.05;
const VIOLATION_FACTOR: f64 = 5.0;
const GAMMA_MAX: f64 = 1e6;
const MAX_SIGN_PROBE_ARITY: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub count: usize,
    pub radii: Vec<f64>,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { count: 256, radii: vec![1.0, 10.0, 100.0, 1000.0], seed: 0 }
    }
}

impl SamplerConfig {
    pub fn with_seed(seed: u64) -> Self {
        SamplerConfig { seed, ..Self::default() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub shell: usize,
    pub point: Point,
    pub log_lhs: f64,
    pub log_rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Holds { c: f64, gamma: f64 },
    Violated { witness: Point, log_lhs: f64, log_bound: f64 },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds { .. })
    }

    pub fn violated(&self) -> bool {
        matches!(self, Verdict::Violated { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds { .. } => "holds",
            Verdict::Violated { .. } => "violated",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationReport {
    pub verdict: Verdict,
    pub records: Vec<SampleRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict {
    /// `w1 <= C w2^g`.
    pub forward: MajorizationReport,
    /// `w2 <= C w1^g`.
    pub backward: MajorizationReport,
}

impl EquivalenceVerdict {
    pub fn label(&self) -> &'static str {
        if self.forward.verdict.holds() && self.backward.verdict.holds() {
            "equivalent"
        } else if self.forward.verdict.violated() || self.backward.verdict.violated() {
            "not equivalent"
        } else {
            "inconclusive"
        }
    }

    pub fn is_equivalent(&self) -> bool {
        self.label() == "equivalent"
    }
}

fn random_in_disc(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    let rho = r * rng.gen::<f64>().sqrt();
    Complex64::from_polar(rho, rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Sample points of `C^arity` on each radius shell. The first shell is the
/// full polydisc and contains the origin; later shells have sup-norm
/// log-uniform between the geometric mean of the previous radius and `R`,
/// and `R`. Every shell also carries the probes `(+-R, ..., +-R)` (for
/// arity up to 8) and `R e_j`.
pub fn sample_shells(arity: usize, cfg: &SamplerConfig) -> Vec<Vec<Point>> {
    let mut shells = Vec::with_capacity(cfg.radii.len());
    for (k, &r) in cfg.radii.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(k as u64);
        let mut shell = Vec::with_capacity(cfg.count + arity + (1 << arity.min(MAX_SIGN_PROBE_ARITY)));
        if k == 0 {
            shell.push(Point::Complex(vec![Complex64::new(0.0, 0.0); arity]));
        }
        for _ in 0..cfg.count {
            let mut z: Vec<Complex64> = (0..arity).map(|_| random_in_disc(&mut rng, 1.0)).collect();
            let sup = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
            let scale = if k == 0 {
                r
            } else if sup > 0.0 {
                let lo = (cfg.radii[k - 1] * r).sqrt();
                rng.gen_range(lo.ln()..=r.ln()).exp() / sup
            } else {
                0.0
            };
            z.iter_mut().for_each(|c| *c *= scale);
            shell.push(Point::Complex(z));
        }
        if arity <= MAX_SIGN_PROBE_ARITY {
            for signs in 0..1u32 << arity {
                let z = (0..arity).map(|j| Complex64::new(if signs >> j & 1 == 1 { -r } else { r }, 0.0));
                shell.push(Point::Complex(z.collect()));
            }
        }
        for j in 0..arity {
            let mut z = vec![Complex64::new(0.0, 0.0); arity];
            z[j] = Complex64::new(r, 0.0);
            shell.push(Point::Complex(z));
        }
        shells.push(shell);
    }
    shells
}

fn envelope(records: &[SampleRecord], shell: usize, gamma: f64) -> f64 {
    records
        .iter()
        .filter(|r| r.shell == shell)
        .map(|r| r.log_lhs - gamma * r.log_rhs)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Majorization test on caller-supplied shells, innermost first.
pub fn majorizes_on_shells(w1: &Weight, w2: &Weight, shells: &[Vec<Point>]) -> Result<MajorizationReport, WeightError> {
    let mut records = Vec::new();
    for (shell, points) in shells.iter().enumerate() {
        for p in points {
            records.push(SampleRecord { shell, point: p.clone(), log_lhs: w1.log_eval(p)?, log_rhs: w2.log_eval(p)? });
        }
    }
    let k = shells.len();
    if k < 3 {
        let reason = "at least three radius shells are needed".to_string();
        return Ok(MajorizationReport { verdict: Verdict::Inconclusive { reason }, records });
    }
    let (outer, inner) = (k - 2, k - 3);
    let settled = |g: f64| {
        let (co, ci) = (envelope(&records, outer, g), envelope(&records, inner, g));
        co <= ci + 1e-9 * (1.0 + ci.abs())
    };
    let (gamma, bounded) = if settled(0.0) {
        (0.0, true)
    } else if !settled(GAMMA_MAX) {
        (GAMMA_MAX, false)
    } else {
        let (mut lo, mut hi) = (0.0, GAMMA_MAX);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if settled(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (hi, true)
    };
    let c_fit = (0..k - 1).map(|s| envelope(&records, s, gamma)).fold(f64::NEG_INFINITY, f64::max);
    let test = k - 1;
    let mut worst: Option<(&SampleRecord, f64, f64)> = None;
    for r in records.iter().filter(|r| r.shell == test) {
        let bound = c_fit + SLACK.ln() + SLACK * gamma * r.log_rhs;
        let excess = r.log_lhs - bound;
        if worst.is_none_or(|(_, e, _)| excess > e) {
            worst = Some((r, excess, bound));
        }
    }
    let verdict = match worst {
        Some((r, excess, bound)) if excess > VIOLATION_FACTOR.ln() => {
            Verdict::Violated { witness: r.point.clone(), log_lhs: r.log_lhs, log_bound: bound }
        }
        Some((_, excess, _)) if excess > 0.0 => Verdict::Inconclusive {
            reason: format!("held-out shell exceeds the fit by a factor {:.3}", excess.exp()),
        },
        _ if !bounded => Verdict::Inconclusive { reason: "no finite exponent settles the envelope".into() },
        _ => {
            let c = records.iter().map(|r| r.log_lhs - gamma * r.log_rhs).fold(f64::NEG_INFINITY, f64::max);
            Verdict::Holds { c: c.exp(), gamma }
        }
    };
    Ok(MajorizationReport { verdict, records })
}

fn common_arity(w1: &Weight, w2: &Weight) -> Result<usize, WeightError> {
    w1.validate()?;
    w2.validate()?;
    match (w1.domain(), w2.domain()) {
        (Domain::Complex(a), Domain::Complex(b)) if a == b => Ok(a),
        (d1, d2) => Err(WeightError::Domain { expected: d1.to_string(), found: d2.to_string() }),
    }
}

/// `w1 <= C * w2^g` tested on `sample_shells`.
pub fn majorizes(w1: &Weight, w2: &Weight, cfg: &SamplerConfig) -> Result<MajorizationReport, WeightError> {
    let arity = common_arity(w1, w2)?;
    majorizes_on_shells(w1, w2, &sample_shells(arity, cfg))
}

pub fn equivalent(w1: &Weight, w2: &Weight, cfg: &SamplerConfig) -> Result<EquivalenceVerdict, WeightError> {
    let arity = common_arity(w1, w2)?;
    let shells = sample_shells(arity, cfg);
    Ok(EquivalenceVerdict {
        forward: majorizes_on_shells(w1, w2, &shells)?,
        backward: majorizes_on_shells(w2, w1, &shells)?,
    })
}

/// Two-sided comparison of `w(z_1, ..., z_k)` with `prod_i parts[i](z_i)`.
pub fn decompose_check(w: &Weight, parts: &[Weight], cfg: &SamplerConfig) -> Result<EquivalenceVerdict, WeightError> {
    equivalent(w, &Weight::Tensor(parts.to_vec()), cfg)
}
