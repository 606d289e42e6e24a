//! Reference values, checked end to end. Used by the CLI
//! `selftest` command and the test suites.

use std::collections::BTreeSet;

use num_rational::Ratio;

use crate::cyclotomic::{fourier_cosets, hartley_cosets, nu_g_formula, nu_h_formula};
use crate::error::Result;
use crate::field::GaloisInt;
use crate::pipeline::{metrics, Multiplexer};
use crate::system::GaloisSystem;
use crate::transform::{ffht_forward, Kind};
use crate::trig::{carrier_matrix, cas, rationalize_walsh};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl GoldenCheck {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

/// The cas table over GI(5) with zeta = 2, as `(re, im)` pairs by row `i`
/// and column `k`.
pub const CAS_GI5: [[(u32, u32); 4]; 4] = [
    [(1, 0), (1, 0), (1, 0), (1, 0)],
    [(1, 0), (0, 3), (4, 0), (0, 2)],
    [(1, 0), (4, 0), (1, 0), (4, 0)],
    [(1, 0), (0, 2), (4, 0), (0, 3)],
];

/// Carriers over GF(5) after substituting j = 2.
pub const WALSH_GF5: [[i32; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];

/// Users' symbols and the spectrum they produce over GI(5).
pub const MUX_INPUT: [u32; 4] = [4, 0, 1, 2];
pub const MUX_SPECTRUM: [(u32, u32); 4] = [(2, 0), (3, 4), (3, 0), (3, 1)];

pub const FOURIER_COSETS_26: [&[usize]; 10] = [
    &[0],
    &[1, 3, 9],
    &[2, 6, 18],
    &[4, 12, 10],
    &[5, 15, 19],
    &[7, 21, 11],
    &[8, 24, 20],
    &[13],
    &[14, 16, 22],
    &[17, 25, 23],
];

pub const HARTLEY_COSETS_26: [&[usize]; 6] = [
    &[0],
    &[1, 23, 9, 25, 3, 17],
    &[2, 6, 18, 8, 24, 20],
    &[4, 14, 10, 22, 12, 16],
    &[5, 11, 19, 21, 15, 7],
    &[13],
];

fn pairs(sys: &GaloisSystem, v: &[(u32, u32)]) -> Vec<GaloisInt> {
    v.iter().map(|&(a, b)| sys.ring().from_pair(a, b)).collect()
}

fn as_sets(cosets: &[Vec<usize>]) -> BTreeSet<BTreeSet<usize>> {
    cosets.iter().map(|c| c.iter().copied().collect()).collect()
}

fn expected_sets(cosets: &[&[usize]]) -> BTreeSet<BTreeSet<usize>> {
    cosets.iter().map(|c| c.iter().copied().collect()).collect()
}

pub fn cas_table_check() -> Result<GoldenCheck> {
    let sys = GaloisSystem::new(5, 1, 4, None)?;
    let mut bad = Vec::new();
    for (i, row) in CAS_GI5.iter().enumerate() {
        let expected = pairs(&sys, row);
        for (k, want) in expected.iter().enumerate() {
            if cas(&sys, i, k) != *want {
                bad.push(format!("cas_{i}({k})"));
            }
        }
    }
    Ok(GoldenCheck::new(
        "cas table over GI(5)",
        bad.is_empty(),
        if bad.is_empty() {
            "16/16 entries match".to_string()
        } else {
            format!("mismatch at {}", bad.join(", "))
        },
    ))
}

pub fn walsh_check() -> Result<GoldenCheck> {
    let sys = GaloisSystem::new(5, 1, 4, None)?;
    let got = rationalize_walsh(&sys, &carrier_matrix(&sys))?;
    let ok = got
        .iter()
        .zip(WALSH_GF5.iter())
        .all(|(g, w)| g[..] == w[..]);
    Ok(GoldenCheck::new(
        "Walsh carriers over GF(5)",
        ok,
        format!("{got:?}"),
    ))
}

pub fn mux_example_check() -> Result<GoldenCheck> {
    let sys = GaloisSystem::new(5, 1, 4, None)?;
    let spectrum = ffht_forward(&sys, &MUX_INPUT)?;
    let ok = spectrum.values == pairs(&sys, &MUX_SPECTRUM);
    let shown: Vec<String> = spectrum
        .values
        .iter()
        .map(|z| sys.ring().format(z))
        .collect();
    let mux = Multiplexer::new(sys, Kind::Hartley)?;
    let back = mux.demux(&mux.mux(&MUX_INPUT)?)?;
    Ok(GoldenCheck::new(
        "Hartley spectrum of {4,0,1,2}",
        ok && back == MUX_INPUT,
        format!("({}) -> {back:?}", shown.join(", ")),
    ))
}

pub fn coset_check() -> Result<GoldenCheck> {
    let f = fourier_cosets(26, 3)?;
    let h = hartley_cosets(26, 3)?;
    let ok = as_sets(&f.cosets) == expected_sets(&FOURIER_COSETS_26)
        && as_sets(&h.cosets) == expected_sets(&HARTLEY_COSETS_26);
    Ok(GoldenCheck::new(
        "cyclotomic cosets of N = 26 over GF(3)",
        ok,
        format!("nu_G = {}, nu_H = {}", f.nu(), h.nu()),
    ))
}

pub fn counting_check() -> GoldenCheck {
    let g = nu_g_formula(3, 3);
    let h = nu_h_formula(g, 26);
    GoldenCheck::new(
        "coset counts for GI(27)",
        g == 10 && h == 6,
        format!("nu_G = {g}, nu_H = {h}"),
    )
}

pub fn metrics_check() -> GoldenCheck {
    let m = metrics(26, 6, 3);
    let eta = 13.0 / 3.0 * 3f64.log2();
    let ok = m.gamma_cc == Ratio::new(13, 3)
        && m.extra_channels == Ratio::from_integer(20)
        && (m.eta_gdm - eta).abs() < 1e-9;
    GoldenCheck::new(
        "efficiency of GI(27) Hartley",
        ok,
        format!(
            "gamma = {}, gain = {:.2}%, eta = {:.4}",
            m.gamma_cc,
            m.gain_f64(),
            m.eta_gdm
        ),
    )
}

/// Every reference check; construction failures count as failed checks.
pub fn run_all() -> Vec<GoldenCheck> {
    let wrap = |name: &'static str, r: Result<GoldenCheck>| {
        r.unwrap_or_else(|e| GoldenCheck::new(name, false, e.to_string()))
    };
    vec![
        wrap("cas table over GI(5)", cas_table_check()),
        wrap("Walsh carriers over GF(5)", walsh_check()),
        wrap("Hartley spectrum of {4,0,1,2}", mux_example_check()),
        wrap("cyclotomic cosets of N = 26 over GF(3)", coset_check()),
        counting_check(),
        metrics_check(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pass() {
        for c in run_all() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
