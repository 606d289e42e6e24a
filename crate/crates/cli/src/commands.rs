use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use gdm_core::cyclotomic::{approx_nu, CosetTable};
use gdm_core::pipeline::{capacity_check, demux_stream, mux_stream};
use gdm_core::statsim::{
    galois_acf, psd_estimate, write_acf_csv, write_psd_csv, PsdConfig, PulseShape, SymbolModel,
    MAIN_LOBE,
};
use gdm_core::trig::{carrier_matrix, check_orthogonality, rationalize_walsh};
use gdm_core::{golden, Exec, GaloisSystem, Kind, Multiplexer};

use crate::{IoArgs, SystemArgs, EXIT_SELFTEST};

fn parse_poly(text: &str) -> Result<Vec<u32>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u32>()
                .with_context(|| format!("bad polynomial coefficient {t:?}"))
        })
        .collect()
}

fn system(args: &SystemArgs) -> Result<GaloisSystem> {
    let poly = args.poly.as_deref().map(parse_poly).transpose()?;
    let n = match args.n {
        Some(n) => n,
        None => {
            let size = (args.p as u64)
                .checked_pow(args.m as u32)
                .context("field size overflows")?;
            (size - 1) as usize
        }
    };
    Ok(GaloisSystem::new(args.p, args.m, n, poly.as_deref())?)
}

fn multiplexer(args: &SystemArgs) -> Result<Multiplexer> {
    Ok(Multiplexer::new(system(args)?, args.kind)?)
}

fn poly_string(p_low: &[u32]) -> String {
    let m = p_low.len();
    let mut terms = vec![match m {
        1 => "x".to_string(),
        _ => format!("x^{m}"),
    }];
    for (e, &c) in p_low.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && e > 0 {
            String::new()
        } else {
            c.to_string()
        };
        terms.push(match e {
            0 => coeff,
            1 => format!("{coeff}x"),
            _ => format!("{coeff}x^{e}"),
        });
    }
    terms.join(" + ")
}

fn open_input(path: &Option<PathBuf>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("cannot open {}", p.display()))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

pub fn design(args: &SystemArgs) -> Result<ExitCode> {
    let sys = system(args)?;
    let mux = Multiplexer::new(sys.clone(), args.kind)?;
    let ext = sys.ext();
    let m = mux.metrics();
    let log2p = (sys.p() as f64).log2();
    let (p, deg, n) = (sys.p(), sys.m(), sys.n());
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "field        GF({p}^{deg}), modulus {}",
        poly_string(&ext.modulus())
    )?;
    writeln!(
        out,
        "ring         GI({}), {}",
        ext.size(),
        if sys.ring().is_field() {
            "a field"
        } else {
            "not a field"
        }
    )?;
    writeln!(out, "N            {n}")?;
    writeln!(
        out,
        "zeta         {} (coefficients, constant first)",
        ext.format(sys.zeta())
    )?;
    writeln!(out, "transform    {}", args.kind)?;
    writeln!(out, "cosets")?;
    for line in mux.cosets().to_string().lines() {
        writeln!(out, "  {line}")?;
    }
    let (ag, ah) = approx_nu(n as u64, deg as u64);
    writeln!(
        out,
        "nu           {} (rule of thumb: fourier {ag}, hartley {ah})",
        m.nu
    )?;
    writeln!(out, "gamma_cc     {} = {:.4}", m.gamma_cc, m.gamma_f64())?;
    writeln!(
        out,
        "gain         {} % = {:.2} %",
        m.gain_percent,
        m.gain_f64()
    )?;
    writeln!(out, "extra users  {}", m.extra_channels)?;
    writeln!(
        out,
        "bandwidth    one user B1, TDM {n} B1, GDM {} B1",
        m.b_gdm_over_b1
    )?;
    writeln!(
        out,
        "efficiency   one user {log2p:.4}, TDM {log2p:.4}, GDM {:.4} bits/s/Hz",
        m.eta_gdm
    )?;
    let cap = capacity_check(&m, 0.0)?;
    writeln!(
        out,
        "min SNR      {:.4} ({:.2} dB)",
        cap.min_snr,
        10.0 * cap.min_snr.log10()
    )?;
    if m.nu == n {
        writeln!(
            out,
            "note         no gain when the transform is taken without alphabet extension"
        )?;
    } else if deg == 1 {
        writeln!(
            out,
            "note         m = 1: the only redundancy is the pairing of k with -k"
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

pub fn cosets(p: u32, n: usize, kind: Kind) -> Result<ExitCode> {
    let table = CosetTable::new(kind, n, p)?;
    print!("{table}");
    println!("nu = {}", table.nu());
    Ok(ExitCode::SUCCESS)
}

pub fn carriers(args: &SystemArgs) -> Result<ExitCode> {
    let sys = system(args)?;
    let ring = sys.ring();
    let matrix = carrier_matrix(&sys);
    for row in &matrix.rows {
        let cells: Vec<String> = row.samples.iter().map(|z| ring.format(z)).collect();
        println!("carrier {:>3}: {}", row.index, cells.join(" "));
    }
    if let Ok(walsh) = rationalize_walsh(&sys, &matrix) {
        println!("with j = sqrt(-1) in GF({}):", sys.p());
        for (i, row) in walsh.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            println!("carrier {i:>3}: {}", cells.join(" "));
        }
    }
    if sys.n() <= 256 {
        let o = check_orthogonality(&sys, &matrix);
        println!(
            "orthogonal (bilinear): rows {}, columns {}, equal energy {}",
            o.rows_orthogonal, o.columns_orthogonal, o.equal_energy
        );
        let partners: Vec<String> = o
            .hermitian_partners
            .iter()
            .filter(|(i, k)| i < k)
            .map(|(i, k)| format!("({i},{k})"))
            .collect();
        println!(
            "hermitian partners: {}",
            if partners.is_empty() {
                "none".into()
            } else {
                partners.join(" ")
            }
        );
    }
    Ok(ExitCode::SUCCESS)
}

pub fn mux(args: &SystemArgs, io: &IoArgs, exec: Exec) -> Result<ExitCode> {
    let mux = multiplexer(args)?;
    mux_stream(&mux, open_input(&io.input)?, open_output(&io.output)?, exec)?;
    Ok(ExitCode::SUCCESS)
}

pub fn demux(args: &SystemArgs, io: &IoArgs, exec: Exec) -> Result<ExitCode> {
    let mux = multiplexer(args)?;
    let mut input: Box<dyn Read> = open_input(&io.input)?;
    demux_stream(&mux, &mut input, open_output(&io.output)?, exec)?;
    Ok(ExitCode::SUCCESS)
}

pub fn crosstalk(
    args: &SystemArgs,
    user: Option<usize>,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<ExitCode> {
    let mux = multiplexer(args)?;
    let users: Vec<usize> = match user {
        Some(u) => vec![u],
        None => (0..mux.system().n()).collect(),
    };
    let mut clean = true;
    for u in users {
        let r = gdm_core::pipeline::crosstalk_probe(&mux, Some(u), trials, seed, exec)?;
        let leaked: u64 = r.leaks.iter().sum();
        println!(
            "user {u:>3}: {trials} trials, leaked symbols {leaked}, own errors {}",
            r.active_errors
        );
        clean &= r.is_clean();
    }
    println!("cross-talk {}", if clean { "none" } else { "DETECTED" });
    Ok(if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(crate::EXIT_DATA)
    })
}

pub struct PsdArgs {
    pub seed: u64,
    pub frames: usize,
    pub realizations: usize,
    pub nfft: usize,
    pub samples_per_symbol: usize,
    pub rolloff: Option<f64>,
    pub white: bool,
    pub output: Option<PathBuf>,
    pub acf_out: Option<PathBuf>,
}

pub fn psd(args: &SystemArgs, a: &PsdArgs, exec: Exec) -> Result<ExitCode> {
    let mux = multiplexer(args)?;
    let realizations = a.realizations.max(1);
    let cfg = PsdConfig {
        pulse: match a.rolloff {
            Some(beta) => PulseShape::RaisedCosine { beta },
            None => PulseShape::Rectangular,
        },
        samples_per_symbol: a.samples_per_symbol,
        nfft: a.nfft,
        realizations,
        frames_per_realization: a.frames / realizations,
        frame_period: 1.0,
        model: if a.white {
            SymbolModel::WhiteGaussian
        } else {
            SymbolModel::Gdm
        },
    };
    let est = psd_estimate(&mux, &cfg, a.seed, exec)?;
    let mut out = open_output(&a.output)?;
    write_psd_csv(&mut out, &est)?;
    out.flush()?;
    let fit = est.fit(MAIN_LOBE);
    eprintln!(
        "psd: {} realizations x {} frames, symbol power {:.4}, fitted scale {:.4}, \
         main-lobe max error {:.2} %, ratio spread {:.2} %",
        est.realizations,
        cfg.frames_per_realization,
        est.symbol_power,
        fit.scale,
        100.0 * fit.max_rel_error,
        100.0 * fit.ratio_spread
    );
    if let Some(path) = &a.acf_out {
        let acf = galois_acf(mux.system(), mux.kind(), a.frames, a.seed, exec)?;
        write_acf_csv(open_output(&Some(path.clone()))?, &acf.galois)?;
        eprintln!(
            "acf: R_V(0) = {:.4}, R_v(0) = {:.4}, max |R_V(j)|/R_V(0) = {:.4}",
            acf.galois.r0(),
            acf.time.r0(),
            acf.galois.max_offpeak()
        );
    }
    Ok(ExitCode::SUCCESS)
}

pub fn selftest() -> Result<ExitCode> {
    let checks = golden::run_all();
    let mut ok = true;
    for c in &checks {
        println!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
        ok &= c.passed;
    }
    println!(
        "{}/{} reference checks passed",
        checks.iter().filter(|c| c.passed).count(),
        checks.len()
    );
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_SELFTEST)
    })
}
