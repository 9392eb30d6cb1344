use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Parser, Subcommand};
use rwm_core::sweep::emit_labeled_csv;
use rwm_core::{
    average_rows, capacity_bpp, decode_key, embed_image, emit_csv, encode_key, extract_image,
    parse_bpp, psnr, read_pbm, read_pgm, sweep, write_pbm, write_pgm, BitImage, Bpp, GrayImage,
};

#[derive(Parser)]
#[command(name = "rwm", version, about = "Reversible watermarking in the integer wavelet domain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a PBM logo into a PGM cover, writing the watermarked image and a key file.
    Embed {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        logo: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        key: PathBuf,
    },
    /// Recover the original cover and the logo from a watermarked image and its key.
    Extract {
        #[arg(long)]
        image: PathBuf,
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        out_cover: PathBuf,
        #[arg(long)]
        out_logo: PathBuf,
    },
    /// Embed and extract in memory and check both recoveries are bit-exact.
    Verify {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        logo: PathBuf,
    },
    /// Capacity-distortion sweep over one cover or a directory of PGM covers.
    #[command(group(ArgGroup::new("input").required(true).args(["cover", "dir"])))]
    Bench {
        #[arg(long)]
        cover: Option<PathBuf>,
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Comma-separated rates in bits per pixel, e.g. 0.1,0.5,1.5
        #[arg(long, value_delimiter = ',', required = true, value_parser = parse_bpp)]
        bpp: Vec<Bpp>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_pgm(path: &Path) -> Result<GrayImage> {
    read_pgm(&read_file(path)?).with_context(|| format!("{} is not a valid PGM", path.display()))
}

fn load_pbm(path: &Path) -> Result<BitImage> {
    read_pbm(&read_file(path)?).with_context(|| format!("{} is not a valid PBM", path.display()))
}

/// Writes through a temporary file in the target directory so that a
/// failure never leaves a partial output behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("cannot create a temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.persist(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn fmt_db(v: f64) -> String {
    if v.is_infinite() {
        "inf".into()
    } else {
        format!("{v:.2}")
    }
}

fn embed(cover: &Path, logo: &Path, out: &Path, key: &Path) -> Result<()> {
    let cover = load_pgm(cover)?;
    let logo = load_pbm(logo)?;
    let (marked, side) = embed_image(&cover, &logo)?;
    let bpp = capacity_bpp(logo.len(), cover.width(), cover.height())?;
    let db = psnr(&cover, &marked)?;
    write_atomic(out, &write_pgm(&marked))?;
    write_atomic(key, &encode_key(&side))?;
    println!(
        "bpp={:.4} psnr={} ledger={}",
        *bpp.numer() as f64 / *bpp.denom() as f64,
        fmt_db(db),
        side.ledger.len()
    );
    Ok(())
}

fn extract(image: &Path, key: &Path, out_cover: &Path, out_logo: &Path) -> Result<()> {
    let marked = load_pgm(image)?;
    let side = decode_key(&read_file(key)?).with_context(|| format!("bad key file {}", key.display()))?;
    let (cover, logo) = extract_image(&marked, &side)?;
    write_atomic(out_cover, &write_pgm(&cover))?;
    write_atomic(out_logo, &write_pbm(&logo))?;
    Ok(())
}

fn verify(cover: &Path, logo: &Path) -> Result<()> {
    let cover = load_pgm(cover)?;
    let logo = load_pbm(logo)?;
    let (marked, side) = embed_image(&cover, &logo)?;
    let side = decode_key(&encode_key(&side))?;
    let (recovered, extracted) = extract_image(&marked, &side)?;
    if let Some((r, c)) = recovered.first_difference(&cover) {
        bail!("recovered cover differs at row {r}, col {c}");
    }
    if let Some((r, c)) = extracted.first_difference(&logo) {
        bail!("extracted logo differs at row {r}, col {c}");
    }
    println!("ok bits={} ledger={}", logo.len(), side.ledger.len());
    Ok(())
}

fn pgm_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("cannot read directory {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")) {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        bail!("no .pgm files in {}", dir.display());
    }
    Ok(files)
}

fn bench(cover: Option<&Path>, dir: Option<&Path>, rates: &[Bpp], seed: u64, out: &Path) -> Result<()> {
    if let Some(path) = cover {
        let rows = sweep(&load_pgm(path)?, rates, seed)?;
        write_atomic(out, emit_csv(&rows).as_bytes())?;
        println!("seed={seed} images=1 rows={}", rows.len());
        return Ok(());
    }
    let files = pgm_files(dir.expect("clap enforces --cover or --dir"))?;
    let mut labels = Vec::with_capacity(files.len());
    let mut sweeps = Vec::with_capacity(files.len());
    for path in &files {
        let rows = sweep(&load_pgm(path)?, rates, seed).with_context(|| format!("sweep failed on {}", path.display()))?;
        labels.push(path.file_name().unwrap_or_default().to_string_lossy().into_owned());
        sweeps.push(rows);
    }
    let avg = average_rows(&sweeps)?;
    let labeled = labels
        .iter()
        .zip(&sweeps)
        .flat_map(|(label, rows)| rows.iter().map(move |r| (label.as_str(), r)))
        .chain(avg.iter().map(|r| ("avg", r)));
    write_atomic(out, emit_labeled_csv(labeled).as_bytes())?;
    println!("seed={seed} images={} rows={}", files.len(), sweeps.iter().map(Vec::len).sum::<usize>() + avg.len());
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Embed { cover, logo, out, key } => embed(&cover, &logo, &out, &key),
        Command::Extract { image, key, out_cover, out_logo } => extract(&image, &key, &out_cover, &out_logo),
        Command::Verify { cover, logo } => verify(&cover, &logo),
        Command::Bench { cover, dir, bpp, seed, out } => bench(cover.as_deref(), dir.as_deref(), &bpp, seed, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
