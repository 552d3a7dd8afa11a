//! `zz`: scan tables, DCT spectra and the volumetric block codec from the
//! command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or format error.
//! Diagnostics go to stderr; verbosity is set with `ZZ_LOG`
//! (`error`, `info`, `debug`; default `info`).

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};

use zz_core::codec::{
    compare_scan_orders, decode_volume, encode_volume, CodecConfig, ScanId, StreamHeader,
    BLOCK_SIZES, STREAM_MAGIC,
};
use zz_core::scan::{cubic_zigzag_order, raster_order_3d, rect_zigzag_order, square_zigzag_order};
use zz_core::spectrum::{spectrum, SpectrumMode};
use zz_core::volume_io::{
    read_pgm_sequence, read_vol, write_csv_spectrum, write_vol, Volume, VOL_MAGIC,
};

#[derive(Debug, Parser)]
#[command(
    name = "zz",
    version,
    about = "Zigzag scans, DCT spectra and a volumetric block codec"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a scan order as `pos,row,col[,band]` CSV.
    Scan {
        /// Grid extents, `RxC` or `NxNxN`.
        #[arg(long)]
        dims: String,
        #[arg(long, value_enum)]
        order: OrderKind,
    },
    /// Zigzag-ordered DCT coefficients of seeded uniform random data, as CSV.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compress a ZZV1 volume (or a directory of PGM frames) to ZZC1.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 8)]
        block: usize,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u16).range(1..))]
        q: u16,
        #[arg(long, value_enum, default_value_t = ScanArg::Zigzag3d)]
        scan: ScanArg,
    },
    /// Decompress a ZZC1 stream to a ZZV1 volume.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encode with every scan order and tabulate size and PSNR.
    Compare {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 8)]
        block: usize,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u16).range(1..))]
        q: u16,
    },
    /// Print the header of a ZZV1 or ZZC1 file.
    Info {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderKind {
    Square,
    Rect,
    Cube,
    Raster,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    #[value(name = "2d")]
    TwoD,
    #[value(name = "3d")]
    ThreeD,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ScanArg {
    Raster3d,
    Zigzag3d,
    #[value(name = "zigzag2d_per_band")]
    Zigzag2dPerBand,
}

impl From<ScanArg> for ScanId {
    fn from(s: ScanArg) -> Self {
        match s {
            ScanArg::Raster3d => ScanId::Raster3d,
            ScanArg::Zigzag3d => ScanId::Zigzag3d,
            ScanArg::Zigzag2dPerBand => ScanId::Zigzag2dPerBand,
        }
    }
}

enum CliError {
    Usage(String),
    Data(String),
}

impl From<zz_core::Error> for CliError {
    fn from(e: zz_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("ZZ_LOG", "info"))
        .format_timestamp(None)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };

    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Scan { dims, order } => cmd_scan(&dims, order),
        Command::Spectrum { n, mode, seed, out } => cmd_spectrum(n, mode, seed, out.as_deref()),
        Command::Encode {
            input,
            out,
            block,
            q,
            scan,
        } => cmd_encode(&input, &out, block, q, scan.into()),
        Command::Decode { input, out } => cmd_decode(&input, &out),
        Command::Compare { input, block, q } => cmd_compare(&input, block, q),
        Command::Info { input } => cmd_info(&input),
    }
}

fn parse_dims(dims: &str) -> CliResult<Vec<usize>> {
    let parts = dims
        .split('x')
        .map(|p| p.trim().parse::<usize>().ok().filter(|&v| v > 0))
        .collect::<Option<Vec<_>>>();
    match parts {
        Some(v) if v.len() == 2 || v.len() == 3 => Ok(v),
        _ => Err(CliError::Usage(format!(
            "--dims must be RxC or NxNxN with positive integers, got '{dims}'"
        ))),
    }
}

fn cmd_scan(dims: &str, kind: OrderKind) -> CliResult<()> {
    let dims = parse_dims(dims)?;
    let cube_side = || match dims[..] {
        [a, b, c] if a == b && b == c => Ok(a),
        _ => Err(CliError::Usage(format!(
            "--order {} needs cube dims NxNxN",
            kind.to_possible_value().unwrap().get_name()
        ))),
    };
    let order = match kind {
        OrderKind::Square => match dims[..] {
            [r, c] if r == c => square_zigzag_order(r)?,
            _ => return Err(CliError::Usage("--order square needs dims NxN".into())),
        },
        OrderKind::Rect => match dims[..] {
            [r, c] => rect_zigzag_order(r, c)?,
            _ => return Err(CliError::Usage("--order rect needs 2D dims RxC".into())),
        },
        OrderKind::Cube => cubic_zigzag_order(cube_side()?)?,
        OrderKind::Raster => raster_order_3d(cube_side()?)?,
    };

    let mut out = String::with_capacity(order.len() * 12);
    if dims.len() == 2 {
        out.push_str("pos,row,col\n");
        for (p, c) in order.coords2().iter().enumerate() {
            writeln!(out, "{p},{},{}", c.row, c.col).unwrap();
        }
    } else {
        out.push_str("pos,row,col,band\n");
        for (p, c) in order.coords3().iter().enumerate() {
            writeln!(out, "{p},{},{},{}", c.row, c.col, c.band).unwrap();
        }
    }
    write_stdout(out.as_bytes())
}

fn cmd_spectrum(n: usize, mode: ModeArg, seed: u64, out: Option<&Path>) -> CliResult<()> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let mode = match mode {
        ModeArg::TwoD => SpectrumMode::TwoD,
        ModeArg::ThreeD => SpectrumMode::ThreeD,
    };
    let trace = spectrum(n, mode, seed)?;
    debug!("spectrum {}: {} values", trace.label, trace.values.len());
    let csv = write_csv_spectrum(&trace)?;
    match out {
        Some(path) => write_file(path, csv.as_bytes()),
        None => write_stdout(csv.as_bytes()),
    }
}

fn codec_config(block: usize, q: u16, scan: ScanId) -> CliResult<CodecConfig> {
    if !BLOCK_SIZES.contains(&block) {
        return Err(CliError::Usage(format!(
            "--block must be one of {BLOCK_SIZES:?}, got {block}"
        )));
    }
    CodecConfig::new(block, q, scan).map_err(|e| CliError::Usage(e.to_string()))
}

/// Loads a ZZV1 file, or every `*.pgm` in a directory sorted by name.
fn load_volume(path: &Path) -> CliResult<Volume> {
    if path.is_dir() {
        let mut frames: Vec<PathBuf> = fs::read_dir(path)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "pgm"))
            .collect();
        frames.sort();
        if frames.is_empty() {
            return Err(CliError::Data(format!(
                "{}: no .pgm frames",
                path.display()
            )));
        }
        debug!(
            "reading {} PGM frames from {}",
            frames.len(),
            path.display()
        );
        return Ok(read_pgm_sequence(&frames)?);
    }
    Ok(read_vol(&read_file(path)?)?)
}

fn cmd_encode(input: &Path, out: &Path, block: usize, q: u16, scan: ScanId) -> CliResult<()> {
    let cfg = codec_config(block, q, scan)?;
    let volume = load_volume(input)?;
    let bytes = encode_volume(&volume, &cfg)?;
    write_file(out, &bytes)?;
    eprintln!(
        "encoded {} samples to {} bytes ({:.4} bits/sample)",
        volume.len(),
        bytes.len(),
        bytes.len() as f64 * 8.0 / volume.len() as f64
    );
    Ok(())
}

fn cmd_decode(input: &Path, out: &Path) -> CliResult<()> {
    let bytes = read_file(input)?;
    let volume = decode_volume(&bytes)?;
    write_file(out, &write_vol(&volume))?;
    eprintln!(
        "decoded {} bytes to {}x{}x{} volume ({:.4} bits/sample)",
        bytes.len(),
        volume.rows(),
        volume.cols(),
        volume.bands(),
        bytes.len() as f64 * 8.0 / volume.len() as f64
    );
    Ok(())
}

fn cmd_compare(input: &Path, block: usize, q: u16) -> CliResult<()> {
    codec_config(block, q, ScanId::Zigzag3d)?;
    let volume = load_volume(input)?;
    let reports = compare_scan_orders(&volume, block, q)?;
    let mut out = format!("{:<18} {:>10} {:>10}\n", "scan", "bytes", "psnr_db");
    for r in &reports {
        let psnr = if r.psnr_db.is_infinite() {
            "inf".to_string()
        } else {
            format!("{:.4}", r.psnr_db)
        };
        writeln!(
            out,
            "{:<18} {:>10} {:>10}",
            r.scan.name(),
            r.compressed_bytes,
            psnr
        )
        .unwrap();
    }
    info!(
        "compared {} scan orders at block {block}, q {q}",
        reports.len()
    );
    write_stdout(out.as_bytes())
}

fn cmd_info(input: &Path) -> CliResult<()> {
    let bytes = read_file(input)?;
    let line = if bytes.starts_with(&VOL_MAGIC) {
        let v = read_vol(&bytes)?;
        format!(
            "ZZV1 rows={} cols={} bands={}\n",
            v.rows(),
            v.cols(),
            v.bands()
        )
    } else if bytes.starts_with(&STREAM_MAGIC) {
        let h = StreamHeader::parse(&bytes)?;
        format!(
            "ZZC1 version={} scan={} block={} quant_step={} rows={} cols={} bands={} bytes={}\n",
            bytes[4],
            h.config.scan,
            h.config.block_size,
            h.config.quant_step,
            h.rows,
            h.cols,
            h.bands,
            bytes.len()
        )
    } else {
        return Err(CliError::Data(format!(
            "{}: unknown magic",
            input.display()
        )));
    };
    write_stdout(line.as_bytes())
}

fn read_file(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn write_stdout(bytes: &[u8]) -> CliResult<()> {
    let mut stdout = io::stdout().lock();
    stdout
        .write_all(bytes)
        .and_then(|_| stdout.flush())
        .map_err(|e| CliError::Data(format!("stdout: {e}")))
}
