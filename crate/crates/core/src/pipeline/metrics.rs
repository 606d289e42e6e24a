use num_rational::Ratio;

use crate::error::{Error, Result};

/// Spectral-efficiency figures of a multiplexer with `nu` coefficients per
/// frame of `n` users.
#[derive(Debug, Clone, PartialEq)]
pub struct MuxMetrics {
    pub n: usize,
    pub p: u32,
    pub nu: usize,
    /// Compression ratio `N / nu`.
    pub gamma_cc: Ratio<u64>,
    /// `100 (1 - 1/gamma)`, the channel gain over TDM/FDM in percent.
    pub gain_percent: Ratio<u64>,
    /// `(1 - 1/gamma) N = N - nu`.
    pub extra_channels: Ratio<u64>,
    /// `gamma log2 p` in bits/s/Hz.
    pub eta_gdm: f64,
    /// Multiplexed bandwidth in units of one user's bandwidth, `nu`.
    pub b_gdm_over_b1: Ratio<u64>,
}

pub fn metrics(n: usize, nu: usize, p: u32) -> MuxMetrics {
    let (n64, nu64) = (n as u64, nu as u64);
    let gamma_cc = Ratio::new(n64, nu64);
    let saved = Ratio::new(n64 - nu64, n64);
    MuxMetrics {
        n,
        p,
        nu,
        gamma_cc,
        gain_percent: saved * 100,
        extra_channels: saved * n64,
        eta_gdm: ratio_f64(gamma_cc) * (p as f64).log2(),
        b_gdm_over_b1: Ratio::from_integer(nu64),
    }
}

pub(crate) fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl MuxMetrics {
    pub fn gamma_f64(&self) -> f64 {
        ratio_f64(self.gamma_cc)
    }

    pub fn gain_f64(&self) -> f64 {
        ratio_f64(self.gain_percent)
    }

    /// Smallest linear SNR at which `gamma <= log_p(1 + snr)`.
    pub fn min_snr(&self) -> f64 {
        (self.p as f64).powf(self.gamma_f64()) - 1.0
    }
}

/// Shannon admissibility of a compression ratio at a given SNR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityCheck {
    /// `log(1 + snr) / log(p)`.
    pub gamma_max: f64,
    pub min_snr: f64,
    pub admissible: bool,
}

pub fn capacity_check(metrics: &MuxMetrics, snr_linear: f64) -> Result<CapacityCheck> {
    if snr_linear.is_nan() || snr_linear < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "SNR must be a non-negative number, got {snr_linear}"
        )));
    }
    let min_snr = metrics.min_snr();
    Ok(CapacityCheck {
        gamma_max: snr_linear.ln_1p() / (metrics.p as f64).ln(),
        min_snr,
        // p^gamma - 1 is exact for integer gamma, so the boundary is exact
        admissible: snr_linear >= min_snr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hartley_26() {
        let m = metrics(26, 6, 3);
        assert_eq!(m.gamma_cc, Ratio::new(13, 3));
        assert_eq!(m.extra_channels, Ratio::from_integer(20));
        assert_eq!(m.gain_percent, Ratio::new(1000, 13));
        assert!((m.eta_gdm - 6.8685).abs() < 1e-3);
        assert_eq!(m.b_gdm_over_b1, Ratio::from_integer(6));
    }

    #[test]
    fn tdm_parity() {
        let m = metrics(4, 4, 5);
        assert_eq!(m.gamma_cc, Ratio::from_integer(1));
        assert_eq!(m.gain_percent, Ratio::from_integer(0));
        assert!((m.eta_gdm - 5f64.log2()).abs() < 1e-12);
    }

    #[test]
    fn capacity() {
        let fourier = metrics(26, 10, 3);
        let c = capacity_check(&fourier, 8.0).unwrap();
        assert!((c.gamma_max - 2.0).abs() < 1e-12);
        assert!(!c.admissible);
        let silent = capacity_check(&fourier, 0.0).unwrap();
        assert_eq!(silent.gamma_max, 0.0);
        assert!(!silent.admissible);
        let h = metrics(26, 6, 3);
        assert!((h.min_snr() - 115.82).abs() < 0.01);
        assert!(capacity_check(&h, -1.0).is_err());
        let two = metrics(4, 2, 3);
        assert!(capacity_check(&two, 8.0).unwrap().admissible);
    }
}
