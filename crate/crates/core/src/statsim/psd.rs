use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use rustfft::FftPlanner;

use super::{embed, symbol_power, SymbolSource};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::pipeline::Multiplexer;

/// Main-lobe bins used by [`PsdEstimate::fit`]: `|f Tsym| < MAIN_LOBE`.
/// The relative error is undefined at the first null, `|f Tsym| = 1`.
pub const MAIN_LOBE: f64 = 0.75;
pub const MIN_REALIZATIONS: usize = 100;
const RC_SPAN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PulseShape {
    Rectangular,
    /// Raised-cosine pulse with roll-off `beta` in (0, 1], truncated to
    /// eight symbols on either side.
    RaisedCosine {
        beta: f64,
    },
}

/// A unit-energy pulse sampled at `samples_per_symbol` points per symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPulse {
    pub shape: PulseShape,
    pub symbol_period: f64,
    pub samples_per_symbol: usize,
    pub taps: Vec<f64>,
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

impl SampledPulse {
    pub fn new(shape: PulseShape, symbol_period: f64, samples_per_symbol: usize) -> Result<Self> {
        if samples_per_symbol == 0 || symbol_period.is_nan() || symbol_period <= 0.0 {
            return Err(Error::InvalidArgument(
                "pulse needs a positive symbol period and sample count".into(),
            ));
        }
        let l = samples_per_symbol;
        let mut taps: Vec<f64> = match shape {
            PulseShape::Rectangular => vec![1.0; l],
            PulseShape::RaisedCosine { beta } => {
                if !(beta > 0.0 && beta <= 1.0) {
                    return Err(Error::InvalidArgument(format!(
                        "roll-off must lie in (0, 1], got {beta}"
                    )));
                }
                let half = (RC_SPAN * l) as isize;
                (-half..=half)
                    .map(|i| {
                        let t = i as f64 / l as f64;
                        let d = 1.0 - (2.0 * beta * t).powi(2);
                        if d.abs() < 1e-12 {
                            PI / 4.0 * sinc(1.0 / (2.0 * beta))
                        } else {
                            sinc(t) * (PI * beta * t).cos() / d
                        }
                    })
                    .collect()
            }
        };
        let dt = symbol_period / l as f64;
        let energy: f64 = taps.iter().map(|h| h * h).sum::<f64>() * dt;
        let gain = energy.sqrt().recip();
        taps.iter_mut().for_each(|h| *h *= gain);
        Ok(Self {
            shape,
            symbol_period,
            samples_per_symbol,
            taps,
        })
    }

    pub fn dt(&self) -> f64 {
        self.symbol_period / self.samples_per_symbol as f64
    }

    pub fn energy(&self) -> f64 {
        self.taps.iter().map(|h| h * h).sum::<f64>() * self.dt()
    }

    /// `|U(f)|^2` of the continuous unit-energy pulse.
    pub fn spectrum_sq(&self, f: f64) -> f64 {
        let t = self.symbol_period;
        match self.shape {
            PulseShape::Rectangular => t * sinc(f * t).powi(2),
            PulseShape::RaisedCosine { beta } => {
                let af = f.abs() * t;
                let lo = (1.0 - beta) / 2.0;
                let hi = (1.0 + beta) / 2.0;
                let u = if af <= lo {
                    1.0
                } else if af <= hi {
                    0.5 * (1.0 + (PI / beta * (af - lo)).cos())
                } else {
                    0.0
                };
                t * u * u / (1.0 - beta / 4.0)
            }
        }
    }
}

/// Sampled complex baseband signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub samples: Vec<Complex64>,
    pub dt: f64,
}

impl Envelope {
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.dt
    }

    pub fn mean_power(&self) -> f64 {
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }
}

/// Pulse train `sum_k a_k u(t - k Tsym)`, symbol `k` starting at sample
/// `k * samples_per_symbol`.
pub fn synthesize_envelope(symbols: &[Complex64], pulse: &SampledPulse) -> Envelope {
    let l = pulse.samples_per_symbol;
    let len = if symbols.is_empty() {
        0
    } else {
        (symbols.len() - 1) * l + pulse.taps.len()
    };
    let mut samples = vec![Complex64::new(0.0, 0.0); len];
    for (k, a) in symbols.iter().enumerate() {
        for (t, h) in pulse.taps.iter().enumerate() {
            samples[k * l + t] += a * h;
        }
    }
    Envelope {
        samples,
        dt: pulse.dt(),
    }
}

/// Where the transmitted symbols come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymbolModel {
    /// Embedded coset-leader coefficients of random frames.
    #[default]
    Gdm,
    /// Complex Gaussian symbols, ν per frame, as a control.
    WhiteGaussian,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PsdConfig {
    pub pulse: PulseShape,
    pub samples_per_symbol: usize,
    pub nfft: usize,
    pub realizations: usize,
    pub frames_per_realization: usize,
    /// Duration T of one frame (one symbol of every user), in seconds.
    pub frame_period: f64,
    pub model: SymbolModel,
}

impl Default for PsdConfig {
    fn default() -> Self {
        Self {
            pulse: PulseShape::Rectangular,
            samples_per_symbol: 32,
            nfft: 1024,
            realizations: MIN_REALIZATIONS,
            frames_per_realization: 1000,
            frame_period: 1.0,
            model: SymbolModel::Gdm,
        }
    }
}

/// Averaged periodogram with the predicted curve `(P / Tsym) |U(f)|^2`,
/// where `P` is the measured mean symbol power.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdEstimate {
    pub freqs: Vec<f64>,
    pub power: Vec<f64>,
    pub theory: Vec<f64>,
    pub realizations: usize,
    pub frames: usize,
    pub segments: usize,
    pub symbol_power: f64,
    pub symbol_period: f64,
}

/// Agreement of an estimate with its theory curve after fitting a scale.
#[derive(Debug, Clone, PartialEq)]
pub struct PsdFit {
    pub bins: usize,
    /// Mean of `estimate / theory` over the bins.
    pub scale: f64,
    /// Largest `|estimate - scale * theory| / (scale * theory)`.
    pub max_rel_error: f64,
    /// `(max ratio - min ratio) / mean ratio`.
    pub ratio_spread: f64,
}

impl PsdEstimate {
    /// Compares shapes over bins with `|f Tsym| < lobe` and positive theory.
    pub fn fit(&self, lobe: f64) -> PsdFit {
        let ratios: Vec<f64> = self
            .freqs
            .iter()
            .zip(self.power.iter().zip(&self.theory))
            .filter(|(f, (_, th))| (*f * self.symbol_period).abs() < lobe && **th > 0.0)
            .map(|(_, (est, th))| est / th)
            .collect();
        if ratios.is_empty() {
            return PsdFit {
                bins: 0,
                scale: f64::NAN,
                max_rel_error: f64::NAN,
                ratio_spread: f64::NAN,
            };
        }
        let scale = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = ratios.iter().cloned().fold(f64::MAX, f64::min);
        PsdFit {
            bins: ratios.len(),
            scale,
            max_rel_error: ratios
                .iter()
                .map(|r| (r / scale - 1.0).abs())
                .fold(0.0, f64::max),
            ratio_spread: (max - min) / scale,
        }
    }
}

struct Partial {
    psd: Vec<f64>,
    segments: usize,
    power_sum: f64,
    symbols: usize,
}

/// Monte-Carlo PSD of the multiplexed baseband signal. The mux emits ν
/// symbols per frame period T, so `Tsym = T / ν`. Each realization starts
/// at a random offset within one frame and is estimated by Welch's method
/// (Hann window, half overlap).
pub fn psd_estimate(
    mux: &Multiplexer,
    cfg: &PsdConfig,
    seed: u64,
    exec: Exec,
) -> Result<PsdEstimate> {
    let sys = mux.system();
    if sys.m() != 1 {
        return Err(Error::ExtensionNotEmbeddable(sys.m()));
    }
    if cfg.realizations < MIN_REALIZATIONS {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_REALIZATIONS} realizations are needed, got {}",
            cfg.realizations
        )));
    }
    let nu = mux.nu();
    let tsym = cfg.frame_period / nu as f64;
    let pulse = SampledPulse::new(cfg.pulse, tsym, cfg.samples_per_symbol)?;
    let l = cfg.samples_per_symbol;
    let frame_samples = nu * l;
    let window_len = cfg.frames_per_realization * frame_samples;
    if cfg.nfft < 2 || window_len < cfg.nfft {
        return Err(Error::InvalidArgument(format!(
            "{} frames of {frame_samples} samples cannot fill a {}-point segment",
            cfg.frames_per_realization, cfg.nfft
        )));
    }
    let pad = pulse.taps.len().div_ceil(frame_samples) + 1;
    let total_frames = cfg.frames_per_realization + 2 * pad;

    let nfft = cfg.nfft;
    let hop = nfft / 2;
    let window: Vec<f64> = (0..nfft)
        .map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / nfft as f64).cos())
        .collect();
    let wnorm: f64 = window.iter().map(|w| w * w).sum();
    let fft = FftPlanner::new().plan_fft_forward(nfft);
    let dt = pulse.dt();
    let gauss = Normal::new(0.0, symbol_power(sys.p()).sqrt()).expect("positive variance");

    let partials = exec.map(cfg.realizations, |r| -> Result<Partial> {
        let mut src = SymbolSource::with_stream(sys.p(), seed, r as u64)?;
        let mut block = vec![0u32; sys.n()];
        let mut symbols = Vec::with_capacity(total_frames * nu);
        for _ in 0..total_frames {
            match cfg.model {
                SymbolModel::Gdm => {
                    src.fill(&mut block);
                    for z in &mux.mux(&block)?.leaders {
                        symbols.push(embed(sys.ring(), z)?);
                    }
                }
                SymbolModel::WhiteGaussian => {
                    for _ in 0..nu {
                        let rng = src.rng();
                        symbols.push(Complex64::new(gauss.sample(rng), gauss.sample(rng)));
                    }
                }
            }
        }
        let offset = src.rng().random_range(0..frame_samples);
        let env = synthesize_envelope(&symbols, &pulse);
        let start = pad * frame_samples + offset;
        let x = &env.samples[start..start + window_len];

        let mut psd = vec![0.0; nfft];
        let mut segments = 0;
        let mut buf = vec![Complex64::new(0.0, 0.0); nfft];
        let mut s = 0;
        while s + nfft <= x.len() {
            for i in 0..nfft {
                buf[i] = x[s + i] * window[i];
            }
            fft.process(&mut buf);
            for (acc, v) in psd.iter_mut().zip(&buf) {
                *acc += v.norm_sqr() * dt / wnorm;
            }
            segments += 1;
            s += hop;
        }
        let used = &symbols[pad * nu..(pad + cfg.frames_per_realization) * nu];
        Ok(Partial {
            psd,
            segments,
            power_sum: used.iter().map(|a| a.norm_sqr()).sum(),
            symbols: used.len(),
        })
    });

    let mut sum = vec![0.0; nfft];
    let mut segments = 0;
    let mut power_sum = 0.0;
    let mut symbol_count = 0;
    for part in partials {
        let part = part?;
        sum.iter_mut().zip(&part.psd).for_each(|(a, b)| *a += b);
        segments += part.segments;
        power_sum += part.power_sum;
        symbol_count += part.symbols;
    }
    let symbol_power = power_sum / symbol_count as f64;
    let df = 1.0 / (nfft as f64 * dt);
    let half = nfft / 2;
    let mut freqs = Vec::with_capacity(nfft);
    let mut power = Vec::with_capacity(nfft);
    let mut theory = Vec::with_capacity(nfft);
    for i in 0..nfft {
        let k = (i + half) % nfft;
        let f = (i as f64 - half as f64) * df;
        freqs.push(f);
        power.push(sum[k] / segments as f64);
        theory.push(symbol_power / tsym * pulse.spectrum_sq(f));
    }
    Ok(PsdEstimate {
        freqs,
        power,
        theory,
        realizations: cfg.realizations,
        frames: cfg.realizations * cfg.frames_per_realization,
        segments,
        symbol_power,
        symbol_period: tsym,
    })
}

/// CSV with header `freq_hz,psd_est,psd_theory`.
pub fn write_psd_csv<W: Write>(mut out: W, psd: &PsdEstimate) -> std::io::Result<()> {
    writeln!(out, "freq_hz,psd_est,psd_theory")?;
    for ((f, est), th) in psd.freqs.iter().zip(&psd.power).zip(&psd.theory) {
        writeln!(out, "{f},{est},{th}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::GaloisSystem;
    use crate::transform::Kind;

    fn table_one() -> Multiplexer {
        Multiplexer::new(GaloisSystem::new(5, 1, 4, None).unwrap(), Kind::Hartley).unwrap()
    }

    #[test]
    fn unit_energy_pulses() {
        let rect = SampledPulse::new(PulseShape::Rectangular, 0.25, 16).unwrap();
        assert!((rect.energy() - 1.0).abs() < 1e-12);
        let rc = SampledPulse::new(PulseShape::RaisedCosine { beta: 0.5 }, 0.25, 16).unwrap();
        assert!((rc.energy() - 1.0).abs() < 1e-12);
        assert!(SampledPulse::new(PulseShape::RaisedCosine { beta: 0.0 }, 1.0, 4).is_err());
        assert!((rect.spectrum_sq(0.0) - 0.25).abs() < 1e-15);
        assert!(rect.spectrum_sq(4.0) < 1e-30);
    }

    #[test]
    fn analytic_spectrum_has_unit_energy() {
        for shape in [
            PulseShape::Rectangular,
            PulseShape::RaisedCosine { beta: 0.35 },
        ] {
            let p = SampledPulse::new(shape, 1.0, 8).unwrap();
            let df = 1e-3;
            let e: f64 = (-200_000..=200_000)
                .map(|i| p.spectrum_sq(i as f64 * df))
                .sum::<f64>()
                * df;
            assert!((e - 1.0).abs() < 2e-3, "{shape:?}: {e}");
        }
    }

    #[test]
    fn single_symbol_and_back_to_back() {
        let pulse = SampledPulse::new(PulseShape::Rectangular, 0.5, 4).unwrap();
        let one = synthesize_envelope(&[Complex64::new(1.0, 0.0)], &pulse);
        assert_eq!(one.samples.len(), 4);
        assert!((one.energy() - 1.0).abs() < 1e-12);
        let two = synthesize_envelope(
            &[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            &pulse,
        );
        assert_eq!(two.samples.len(), 8);
        let h = 2f64.sqrt();
        assert!(two.samples[..4].iter().all(|s| (s.re - h).abs() < 1e-12));
        assert!(two.samples[4..].iter().all(|s| (s.re + h).abs() < 1e-12));
        assert!(synthesize_envelope(&[], &pulse).samples.is_empty());
    }

    #[test]
    fn envelope_power_is_symbol_power_over_tsym() {
        let pulse = SampledPulse::new(PulseShape::Rectangular, 1.0 / 3.0, 8).unwrap();
        let mut src = SymbolSource::new(5, 4).unwrap();
        let syms: Vec<Complex64> = (0..30_000)
            .map(|_| Complex64::new(src.next_centered() as f64, src.next_centered() as f64))
            .collect();
        let p = syms.iter().map(|a| a.norm_sqr()).sum::<f64>() / syms.len() as f64;
        let env = synthesize_envelope(&syms, &pulse);
        assert!((env.mean_power() * pulse.symbol_period / p - 1.0).abs() < 1e-9);
    }

    #[test]
    fn flat_over_the_main_lobe() {
        let cfg = PsdConfig {
            frames_per_realization: 300,
            ..PsdConfig::default()
        };
        let est = psd_estimate(&table_one(), &cfg, 5, Exec::default()).unwrap();
        let fit = est.fit(MAIN_LOBE);
        assert!(fit.bins > 10);
        assert!(fit.max_rel_error < 0.08, "{fit:?}");
        assert!((fit.scale - 1.0).abs() < 0.05, "{fit:?}");
        assert!(est.power.iter().all(|&x| x >= 0.0));
        assert!((est.symbol_power - 8.0 / 3.0).abs() < 0.05);
    }

    #[test]
    fn deterministic_across_policies() {
        let cfg = PsdConfig {
            frames_per_realization: 20,
            nfft: 256,
            ..PsdConfig::default()
        };
        let mux = table_one();
        assert_eq!(
            psd_estimate(&mux, &cfg, 1, Exec::Sequential).unwrap(),
            psd_estimate(&mux, &cfg, 1, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn rejects() {
        let mux = table_one();
        let few = PsdConfig {
            realizations: 10,
            ..PsdConfig::default()
        };
        assert!(psd_estimate(&mux, &few, 0, Exec::Sequential).is_err());
        let short = PsdConfig {
            frames_per_realization: 2,
            ..PsdConfig::default()
        };
        assert!(psd_estimate(&mux, &short, 0, Exec::Sequential).is_err());
        let wide =
            Multiplexer::new(GaloisSystem::new(3, 2, 8, None).unwrap(), Kind::Hartley).unwrap();
        assert_eq!(
            psd_estimate(&wide, &PsdConfig::default(), 0, Exec::Sequential),
            Err(Error::ExtensionNotEmbeddable(2))
        );
    }
}
