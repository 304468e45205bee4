//! Closed-form redundancy bounds and the data behind the asymptotic
//! (availability exponent, redundancy exponent) plot.
//!
//! Order-level quantities (Ω / O) are evaluated with constant 1 and flagged
//! as not exact. Only `r >= k - 1` and `r <= ℓ k q^(ℓ+1)` are exact.

use std::fmt::Write as _;

use crate::field::is_prime_power;

/// Largest ℓ in the explicit family that reports and plots cover.
pub const MAX_ELL: u32 = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitBound {
    pub ell: u32,
    pub q: u64,
    /// `q^(2ℓ+1)`, the construction's information length (at least `n`).
    pub n_rounded: u128,
    /// `ℓ k q^(ℓ+1)`.
    pub value: u128,
    /// Whether `k <= floor(q / ℓ^2)`.
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub k: u64,
    pub lower_k_minus_1: u64,
    /// `max(sqrt(n), k)`, constant-free.
    pub lower_order: f64,
    pub explicit: Vec<ExplicitBound>,
    /// `k^(3/2) sqrt(n) ln n`, constant-free.
    pub random_order: f64,
    /// Whether `k < sqrt(n) / 12`, the random construction's working range.
    pub random_valid: bool,
}

/// Smallest prime power `q` with `q^exp >= n`.
pub fn smallest_prime_power_root(n: u64, exp: u32) -> u64 {
    let mut q = ((n as f64).powf(1.0 / f64::from(exp)).floor() as u64)
        .saturating_sub(1)
        .max(2);
    loop {
        let reaches = u128::from(q)
            .checked_pow(exp)
            .is_none_or(|v| v >= u128::from(n));
        if reaches && is_prime_power(q) {
            return q;
        }
        q += 1;
    }
}

pub fn bound_report(n: u64, k: u64) -> BoundReport {
    assert!(n >= 1 && k >= 1, "bound_report needs n >= 1 and k >= 1");
    let nf = n as f64;
    let kf = k as f64;
    let explicit = (1..=MAX_ELL)
        .map(|ell| {
            let q = smallest_prime_power_root(n, 2 * ell + 1);
            let q128 = u128::from(q);
            ExplicitBound {
                ell,
                q,
                n_rounded: q128.pow(2 * ell + 1),
                value: u128::from(ell) * u128::from(k) * q128.pow(ell + 1),
                valid: k <= q / u64::from(ell * ell),
            }
        })
        .collect();
    BoundReport {
        n,
        k,
        lower_k_minus_1: k - 1,
        lower_order: nf.sqrt().max(kf),
        explicit,
        random_order: kf.powf(1.5) * nf.sqrt() * nf.ln(),
        random_valid: kf < nf.sqrt() / 12.0,
    }
}

/// `108 k^(3/2) sqrt(n) ln n`, the random construction's redundancy target.
pub fn random_redundancy_target(n: u64, k: u64) -> f64 {
    let nf = n as f64;
    108.0 * (k as f64).powf(1.5) * nf.sqrt() * nf.ln()
}

impl BoundReport {
    /// Rows `name,value,exact,valid`, header included.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,value,exact,valid\n");
        let mut row = |name: &str, value: String, exact: bool, valid: bool| {
            writeln!(out, "{name},{value},{exact},{valid}").unwrap();
        };
        row(
            "lower_k_minus_1",
            self.lower_k_minus_1.to_string(),
            true,
            true,
        );
        row("lower_order", self.lower_order.to_string(), false, true);
        for b in &self.explicit {
            row(
                &format!("explicit_l{}", b.ell),
                b.value.to_string(),
                true,
                b.valid,
            );
            row(
                &format!("explicit_l{}_q", b.ell),
                b.q.to_string(),
                true,
                b.valid,
            );
            row(
                &format!("explicit_l{}_n", b.ell),
                b.n_rounded.to_string(),
                true,
                b.valid,
            );
        }
        row(
            "random_order",
            self.random_order.to_string(),
            false,
            self.random_valid,
        );
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigurePoint {
    pub series: String,
    pub epsilon: f64,
    pub delta: f64,
}

/// Redundancy exponent of the explicit family at availability exponent
/// `eps`, valid for `eps <= 1 / (2ℓ+1)`.
pub fn explicit_delta(ell: u32, eps: f64) -> f64 {
    eps + f64::from(ell + 1) / f64::from(2 * ell + 1)
}

// Prior-work upper bound polyline, as drawn in the published figure.
const PRIOR_WORK: [(f64, f64); 8] = [
    (0.0, 0.5),
    (0.15, 0.8),
    (0.2, 0.8),
    (0.21875, 0.875),
    (0.25, 0.875),
    (0.25, 0.91666666),
    (0.5, 0.999),
    (1.0, 0.99999999),
];

/// Segment endpoints for every plotted series.
pub fn figure1_data() -> Vec<FigurePoint> {
    let mut out = Vec::new();
    let mut push = |series: &str, pts: &[(f64, f64)]| {
        out.extend(pts.iter().map(|&(epsilon, delta)| FigurePoint {
            series: series.to_string(),
            epsilon,
            delta,
        }));
    };
    push("lower_bound", &[(0.0, 0.5), (0.5, 0.5), (1.0, 1.0)]);
    push("prior_work", &PRIOR_WORK);
    push("theorem1", &[(0.0, 0.5), (1.0 / 3.0, 1.0)]);
    for ell in 1..=MAX_ELL {
        let right = 1.0 / f64::from(2 * ell + 1);
        push(
            &format!("theorem3_l{ell}"),
            &[
                (0.0, explicit_delta(ell, 0.0)),
                (right, explicit_delta(ell, right)),
            ],
        );
    }
    out
}

pub fn figure1_csv() -> String {
    let mut out = String::from("series,epsilon,delta\n");
    for p in figure1_data() {
        writeln!(out, "{},{},{}", p.series, p.epsilon, p.delta).unwrap();
    }
    out
}
