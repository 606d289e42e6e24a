use std::io::Write;

use num_complex::Complex64;

use super::{embed, SymbolSource};
use crate::error::{Error, Result};
use crate::exec::{chunks, Exec};
use crate::system::GaloisSystem;
use crate::transform::{fast_transform, Kind};

const FRAMES_PER_CHUNK: usize = 1024;
pub const MIN_FRAMES: usize = 1000;

/// Sample autocorrelation `R(j) = <x_k conj(x_{k-j})>` by lag, with the
/// standard error of each lag's mean.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfEstimate {
    pub values: Vec<Complex64>,
    pub stderr: Vec<f64>,
    /// Products averaged at each lag.
    pub counts: Vec<u64>,
}

impl AcfEstimate {
    pub fn max_lag(&self) -> usize {
        self.values.len() - 1
    }

    pub fn r0(&self) -> f64 {
        self.values[0].re
    }

    /// `|R(j)| / R(0)`, or 0 for an all-zero stream.
    pub fn normalized(&self, lag: usize) -> f64 {
        let r0 = self.r0();
        if r0 == 0.0 {
            0.0
        } else {
            self.values[lag].norm() / r0
        }
    }

    /// Largest `|R(j)| / R(0)` over `j != 0`.
    pub fn max_offpeak(&self) -> f64 {
        (1..self.values.len())
            .map(|j| self.normalized(j))
            .fold(0.0, f64::max)
    }

    /// Largest `|R(j)|` in units of its standard error, over `j != 0`.
    pub fn max_offpeak_z(&self) -> f64 {
        (1..self.values.len())
            .map(|j| {
                let se = self.stderr[j];
                if se == 0.0 {
                    0.0
                } else {
                    self.values[j].norm() / se
                }
            })
            .fold(0.0, f64::max)
    }

    /// Estimate over a single stream.
    pub fn of_stream(x: &[Complex64], max_lag: usize) -> Self {
        let mut acc = Accumulator::new(max_lag);
        acc.push_stream(x);
        acc.finish()
    }
}

#[derive(Debug, Clone)]
struct Accumulator {
    sum: Vec<Complex64>,
    sum_sq: Vec<f64>,
    counts: Vec<u64>,
}

impl Accumulator {
    fn new(max_lag: usize) -> Self {
        Self {
            sum: vec![Complex64::new(0.0, 0.0); max_lag + 1],
            sum_sq: vec![0.0; max_lag + 1],
            counts: vec![0; max_lag + 1],
        }
    }

    fn push_stream(&mut self, x: &[Complex64]) {
        for j in 0..self.sum.len().min(x.len()) {
            for k in j..x.len() {
                let prod = x[k] * x[k - j].conj();
                self.sum[j] += prod;
                self.sum_sq[j] += prod.norm_sqr();
            }
            self.counts[j] += (x.len() - j) as u64;
        }
    }

    fn merge(&mut self, other: &Self) {
        for j in 0..self.sum.len() {
            self.sum[j] += other.sum[j];
            self.sum_sq[j] += other.sum_sq[j];
            self.counts[j] += other.counts[j];
        }
    }

    fn finish(self) -> AcfEstimate {
        let mut values = Vec::with_capacity(self.sum.len());
        let mut stderr = Vec::with_capacity(self.sum.len());
        for j in 0..self.sum.len() {
            let n = self.counts[j] as f64;
            if n == 0.0 {
                values.push(Complex64::new(0.0, 0.0));
                stderr.push(0.0);
                continue;
            }
            let mean = self.sum[j] / n;
            let var = (self.sum_sq[j] / n - mean.norm_sqr()).max(0.0);
            values.push(mean);
            stderr.push((var / n).sqrt());
        }
        AcfEstimate {
            values,
            stderr,
            counts: self.counts,
        }
    }
}

/// Time-domain and Galois-domain autocorrelations of the same random
/// frames.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfReport {
    pub frames: usize,
    /// ACF of the centered input symbols, frames concatenated.
    pub time: AcfEstimate,
    /// ACF of the embedded full spectra, frames concatenated.
    pub galois: AcfEstimate,
}

impl AcfReport {
    /// `R_V(0) / R_v(0)`.
    pub fn power_ratio(&self) -> f64 {
        self.galois.r0() / self.time.r0()
    }
}

/// Transforms `frames` uniform random blocks and estimates both ACFs up to
/// lag 2N. Work is split into fixed chunks with their own RNG stream, so the
/// result depends only on `seed` and `frames`.
pub fn galois_acf(
    sys: &GaloisSystem,
    kind: Kind,
    frames: usize,
    seed: u64,
    exec: Exec,
) -> Result<AcfReport> {
    if sys.m() != 1 {
        return Err(Error::ExtensionNotEmbeddable(sys.m()));
    }
    if frames < MIN_FRAMES {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_FRAMES} frames are needed, got {frames}"
        )));
    }
    let n = sys.n();
    let max_lag = 2 * n;
    let parts = chunks(frames, FRAMES_PER_CHUNK);
    let partial = exec.map_slice(
        &parts,
        |&(start, len)| -> Result<(Accumulator, Accumulator)> {
            let mut src =
                SymbolSource::with_stream(sys.p(), seed, (start / FRAMES_PER_CHUNK) as u64)?;
            let fp = *sys.ext().prime_field();
            let mut time = Vec::with_capacity(len * n);
            let mut galois = Vec::with_capacity(len * n);
            let mut block = vec![0u32; n];
            for _ in 0..len {
                src.fill(&mut block);
                time.extend(
                    block
                        .iter()
                        .map(|&x| Complex64::new(fp.centered(x) as f64, 0.0)),
                );
                let spectrum = fast_transform(sys, kind, &block)?;
                for z in &spectrum.values {
                    galois.push(embed(sys.ring(), z)?);
                }
            }
            let mut t = Accumulator::new(max_lag);
            t.push_stream(&time);
            let mut g = Accumulator::new(max_lag);
            g.push_stream(&galois);
            Ok((t, g))
        },
    );
    let mut time = Accumulator::new(max_lag);
    let mut galois = Accumulator::new(max_lag);
    for part in partial {
        let (t, g) = part?;
        time.merge(&t);
        galois.merge(&g);
    }
    Ok(AcfReport {
        frames,
        time: time.finish(),
        galois: galois.finish(),
    })
}

/// CSV with header `lag,acf_re,acf_im,stderr`.
pub fn write_acf_csv<W: Write>(mut out: W, acf: &AcfEstimate) -> std::io::Result<()> {
    writeln!(out, "lag,acf_re,acf_im,stderr")?;
    for (j, (v, se)) in acf.values.iter().zip(&acf.stderr).enumerate() {
        writeln!(out, "{j},{},{},{}", v.re, v.im, se)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_stream() {
        let acf = AcfEstimate::of_stream(&vec![Complex64::new(0.0, 0.0); 100], 8);
        assert!(acf.values.iter().all(|v| v.norm() == 0.0));
        assert_eq!(acf.max_offpeak(), 0.0);
    }

    #[test]
    fn short_stream_lags() {
        let x = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];
        let acf = AcfEstimate::of_stream(&x, 4);
        assert_eq!(acf.counts, vec![2, 1, 0, 0, 0]);
        assert_eq!(acf.values[0], Complex64::new(1.0, 0.0));
        assert_eq!(acf.values[1], Complex64::new(0.0, 1.0));
    }

    #[test]
    fn white_on_table_one() {
        let sys = GaloisSystem::new(5, 1, 4, None).unwrap();
        let r = galois_acf(&sys, Kind::Hartley, 20_000, 1, Exec::default()).unwrap();
        assert!(r.galois.r0() > 0.0);
        assert!((r.time.r0() - 2.0).abs() < 0.05);
        assert!(r.galois.max_offpeak() < 0.05);
        assert!(r.time.max_offpeak_z() < 5.0);
        assert_eq!(r.galois.max_lag(), 8);
    }

    #[test]
    fn policies_agree() {
        let sys = GaloisSystem::new(5, 1, 4, None).unwrap();
        let a = galois_acf(&sys, Kind::Hartley, 3000, 9, Exec::Sequential).unwrap();
        let b = galois_acf(&sys, Kind::Hartley, 3000, 9, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects() {
        let sys = GaloisSystem::new(3, 2, 8, None).unwrap();
        assert_eq!(
            galois_acf(&sys, Kind::Hartley, 1000, 0, Exec::Sequential),
            Err(Error::ExtensionNotEmbeddable(2))
        );
        let sys = GaloisSystem::new(5, 1, 4, None).unwrap();
        assert!(galois_acf(&sys, Kind::Hartley, 10, 0, Exec::Sequential).is_err());
    }

    #[test]
    fn csv_layout() {
        let acf = AcfEstimate::of_stream(&[Complex64::new(1.0, 0.0)], 1);
        let mut out = Vec::new();
        write_acf_csv(&mut out, &acf).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "lag,acf_re,acf_im,stderr\n0,1,0,0\n1,0,0,0\n"
        );
    }
}
