//! Command-line front end. The binary parses a [`RunConfig`] and hands it
//! to [`run_command`].

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cipher::{
    build_decryption_circuit, build_encoder, build_encryption_circuit, decrypt, encrypt, keyspace_summary,
    Compression, EncryptionKey,
};
use crate::error::{Error, Result};
use crate::metrics::{differential_image, npcr_with, MetricReport, NpcrConvention};
use crate::qcircuit::{dump_netlist, transpile_to_basis};
use crate::qimage::{read_pgm_file, reconstruct_image, write_pgm_file, GrayImage, NeqrLayout, PgmFormat};
use crate::qsim::{
    noise_sweep_all, parse_gamma_grid, run_statevector, sample_counts, sweep_csv, CompositionMode, StateVector,
    MAX_DENSITY_QUBITS, MAX_STATEVECTOR_QUBITS,
};
use crate::synth::SynthReport;

/// Statevector width allowed without `--allow-large`.
pub const DEFAULT_STATEVECTOR_LIMIT: usize = 18;

#[derive(Debug, Parser)]
#[command(name = "neqr-cipher", version, about = "Quantum image encoding, encryption and analysis")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Key file (JSON with n, P, Q, s, t, L0, delta).
    #[arg(long, global = true)]
    pub key: Option<PathBuf>,

    /// Measurement shots for sampled histograms.
    #[arg(long, global = true, default_value_t = 8192, value_parser = clap::value_parser!(u64).range(1..))]
    pub shots: u64,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Gamma grid as `start:stop:step`.
    #[arg(long, global = true, default_value = "0:1:0.1", conflicts_with = "gamma")]
    pub gammas: String,

    /// A single gamma value.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = NoiseMode::Cptp)]
    pub noise_mode: NoiseMode,

    /// Lower circuits to {H, X, SX, RZ, CX} before writing them.
    #[arg(long, global = true)]
    pub basis: bool,

    /// Output file (or directory for `encode`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Permit statevector simulations wider than the default limit.
    #[arg(long, global = true)]
    pub allow_large: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Build the NEQR circuit for an image; write netlist, amplitudes and a sampled histogram.
    Encode {
        image: PathBuf,
        #[arg(long, value_enum, default_value_t = Variant::Naive)]
        variant: Variant,
    },
    /// Compare naive, minimized and factored circuits.
    Synth { image: PathBuf },
    /// Encrypt a PGM image.
    Encrypt {
        image: PathBuf,
        /// Run the encryption circuit on a statevector instead of the classical path.
        #[arg(long)]
        via_circuit: bool,
    },
    /// Decrypt a PGM image.
    Decrypt {
        image: PathBuf,
        #[arg(long)]
        via_circuit: bool,
    },
    /// Correlation, NPCR, UACI, MSE and PSNR between two images.
    Analyze {
        first: PathBuf,
        second: PathBuf,
        /// Also write the absolute-difference image here.
        #[arg(long)]
        diff: Option<PathBuf>,
        /// Also report NPCR counting equal pixels.
        #[arg(long)]
        npcr_equal: bool,
    },
    /// Fidelity under each noise channel across a gamma grid.
    NoiseSweep {
        /// Image to encode; the bundled 2x2 test image when omitted.
        image: Option<PathBuf>,
    },
    /// Write a random valid key and summarize the key space.
    Keygen {
        #[arg(long, default_value_t = 1)]
        order: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NoiseMode {
    Cptp,
    /// Matched Kraus index on every qubit, first two operators only.
    Paper,
}

impl From<NoiseMode> for CompositionMode {
    fn from(m: NoiseMode) -> Self {
        match m {
            NoiseMode::Cptp => CompositionMode::PerQubit,
            NoiseMode::Paper => CompositionMode::MatchedIndex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Naive,
    Minimized,
    Factored,
}

impl From<Variant> for Compression {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Naive => Compression::Naive,
            Variant::Minimized => Compression::Minimized,
            Variant::Factored => Compression::Factored,
        }
    }
}

/// Process exit status for an error.
pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Pgm(_) | Error::InvalidImage(_) => 3,
        Error::InvalidKey(_) | Error::NotInvertible(..) | Error::Json(_) => 4,
        Error::NotPowerOfTwo(_) => 5,
        Error::Io(_) => 6,
        Error::TooWide { .. } => 7,
        _ => 1,
    }
}

/// The 2x2 image used when no input is given.
pub fn test_image() -> GrayImage {
    GrayImage::new(1, vec![255, 0, 200, 100]).expect("valid")
}

/// Executes one subcommand. Reports go to `--out` when given, otherwise
/// to `stdout`; file-producing commands print a short summary.
pub fn run_command(config: &RunConfig, stdout: &mut dyn Write) -> Result<()> {
    let o = &config.options;
    match &config.command {
        Command::Encode { image, variant } => encode(o, image, (*variant).into(), stdout),
        Command::Synth { image } => {
            let img = read_pgm_file(image)?;
            let key = o.key.as_deref().map(EncryptionKey::load).transpose()?;
            let report = SynthReport::build(&img, key.as_ref())?;
            let text = match o.format {
                Format::Csv => report.to_csv(),
                Format::Table => report.to_table(),
            };
            emit(o, &text, stdout)
        }
        Command::Encrypt { image, via_circuit } => transform(o, image, *via_circuit, true, stdout),
        Command::Decrypt { image, via_circuit } => transform(o, image, *via_circuit, false, stdout),
        Command::Analyze {
            first,
            second,
            diff,
            npcr_equal,
        } => {
            let a = read_pgm_file(first)?;
            let b = read_pgm_file(second)?;
            let report = MetricReport::compute(&a, &b)?;
            let mut text = match o.format {
                Format::Csv => report.to_csv(),
                Format::Table => report.to_table(),
            };
            if *npcr_equal {
                let eq = npcr_with(&a, &b, NpcrConvention::Equal)?;
                match o.format {
                    Format::Csv => writeln!(text, "# npcr_equal_pixels,{eq:.6}").unwrap(),
                    Format::Table => writeln!(text, "{:<16} {eq:.6}", "NPCR % (equal)").unwrap(),
                }
            }
            if let Some(path) = diff {
                write_pgm_file(path, &differential_image(&a, &b)?, PgmFormat::Raw)?;
            }
            emit(o, &text, stdout)
        }
        Command::NoiseSweep { image } => {
            let img = match image {
                Some(p) => read_pgm_file(p)?,
                None => test_image(),
            };
            let width = NeqrLayout::new(img.order()).width();
            if width > MAX_DENSITY_QUBITS {
                return Err(Error::TooWide {
                    width,
                    limit: MAX_DENSITY_QUBITS,
                    mode: "density-matrix",
                });
            }
            let grid = match o.gamma {
                Some(g) => parse_gamma_grid(&g.to_string())?,
                None => parse_gamma_grid(&o.gammas)?,
            };
            let state = crate::qimage::neqr_state(&img)?;
            let points = noise_sweep_all(&state, &grid, o.noise_mode.into())?;
            let text = match o.format {
                Format::Csv => sweep_csv(&points),
                Format::Table => {
                    let mut s = format!("{:<18} {:>6} {:>14} {:>14}\n", "channel", "gamma", "fidelity", "trace");
                    for p in &points {
                        writeln!(s, "{:<18} {:>6.3} {:>14.10} {:>14.10}", p.channel, p.gamma, p.fidelity, p.trace)
                            .unwrap();
                    }
                    s
                }
            };
            emit(o, &text, stdout)
        }
        Command::Keygen { order } => {
            let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
            let key = EncryptionKey::random(*order, &mut rng)?;
            let ks = keyspace_summary(*order)?;
            match &o.out {
                Some(path) => {
                    key.save(path)?;
                    writeln!(stdout, "wrote {}", path.display())?;
                }
                None => write!(stdout, "{}", key.to_json())?,
            }
            writeln!(
                stdout,
                "keyspace (log2): affine {:.2}, logistic {:.2} (double precision; unbounded over the reals), \
                 additive {:.2}, multiplicative {:.2}",
                ks.affine_bits, ks.logistic_bits, ks.additive_bits, ks.multiplicative_bits
            )?;
            Ok(())
        }
    }
}

fn emit(o: &Options, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &o.out {
        Some(path) => fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_key(o: &Options) -> Result<EncryptionKey> {
    let path = o
        .key
        .as_deref()
        .ok_or_else(|| Error::InvalidKey("--key is required".into()))?;
    EncryptionKey::load(path)
}

fn check_statevector_width(o: &Options, width: usize) -> Result<()> {
    let limit = if o.allow_large {
        MAX_STATEVECTOR_QUBITS
    } else {
        DEFAULT_STATEVECTOR_LIMIT
    };
    if width > limit {
        return Err(Error::TooWide {
            width,
            limit,
            mode: if o.allow_large { "statevector" } else { "default statevector (see --allow-large)" },
        });
    }
    Ok(())
}

fn transform(o: &Options, image: &Path, via_circuit: bool, forward: bool, stdout: &mut dyn Write) -> Result<()> {
    let img = read_pgm_file(image)?;
    let key = load_key(o)?;
    let out = if via_circuit {
        let cc = if forward {
            build_encryption_circuit(&img, &key, Compression::Minimized)?
        } else {
            build_decryption_circuit(&img, &key, Compression::Minimized)?
        };
        check_statevector_width(o, cc.circuit.width())?;
        cc.read_image(&run_statevector(&cc.circuit, None)?)?
    } else if forward {
        encrypt(&img, &key)?
    } else {
        decrypt(&img, &key)?
    };
    let path = o
        .out
        .as_deref()
        .ok_or_else(|| Error::Io(std::io::Error::new(std::io::ErrorKind::InvalidInput, "--out is required")))?;
    write_pgm_file(path, &out, PgmFormat::Raw)?;
    writeln!(stdout, "wrote {} ({}x{})", path.display(), out.side(), out.side())?;
    Ok(())
}

fn encode(o: &Options, image: &Path, variant: Compression, stdout: &mut dyn Write) -> Result<()> {
    let img = read_pgm_file(image)?;
    let dir = o.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir)?;
    let circuit = build_encoder(&img, variant);
    check_statevector_width(o, circuit.width())?;

    let written = if o.basis { transpile_to_basis(&circuit) } else { circuit.clone() };
    fs::write(dir.join("circuit.netlist"), dump_netlist(&written))?;

    let data_width = NeqrLayout::new(img.order()).width();
    let state = run_statevector(&circuit, None)?.truncate(data_width, 1e-12)?;
    fs::write(dir.join("statevector.csv"), amplitudes_csv(&state))?;

    let counts = sample_counts(&state, o.shots, o.seed)?;
    let mut hist = String::from("bitstring,count\n");
    for (bits, n) in &counts {
        writeln!(hist, "{bits},{n}").unwrap();
    }
    fs::write(dir.join("histogram.csv"), hist)?;

    let (recovered, coverage) = reconstruct_image(&counts, img.order())?;
    write_pgm_file(dir.join("reconstructed.pgm"), &recovered, PgmFormat::Raw)?;
    writeln!(
        stdout,
        "{} qubits, {} gates{}; reconstruction {} ({} coordinates unobserved)",
        written.width(),
        written.len(),
        if o.basis { " after basis lowering" } else { "" },
        if recovered == img { "exact" } else { "differs" },
        coverage.missing.len()
    )?;
    Ok(())
}

fn amplitudes_csv(state: &StateVector) -> String {
    let mut s = String::from("index,bitstring,re,im\n");
    for k in state.support() {
        let a = state.amplitude(k);
        writeln!(s, "{k},{},{:.12},{:.12}", state.bitstring(k), a.re, a.im).unwrap();
    }
    s
}
