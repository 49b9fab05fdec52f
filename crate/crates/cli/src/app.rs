//! Command-line surface.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bitretrieval::cyclotomic::text::{parse_document, write_document, Document, Element};
use bitretrieval::cyclotomic::{real_autocorrelation_from_cyclo, RingElement};
use bitretrieval::instances::{hadamard_legendre, pi_sequence, random_binary, BinaryKey};
use bitretrieval::lattice::{counterfeit_attack_with, ideal_discovery_experiment_with, Metric, CLASSIC_DELTA};
use bitretrieval::signature::{
    asymptotic_delta_o, fidelity_with_factor, hash_to_element, keygen, private_key_document, private_key_from_document,
    public_key_document, public_key_from_document, Envelope, PublicKey, Quantizer, SigningKey, Verdict, VerifyOptions,
    DEFAULT_DELTA_FACTOR, DEFAULT_TOLERANCE,
};
use bitretrieval::solver::{solve, SolverConfig};
use bitretrieval::watermark::{
    forge_demo, read_pgm, rescale_range, signed_pixel_rms, watermark_sign, watermark_verify_with, write_pgm, BlockPlan,
};
use bitretrieval::{Error, Result};

use crate::bench::{bench_complexity, stats_distribution, InstanceSpec};
use crate::mip::emit_mip;

#[derive(Debug, Parser)]
#[command(name = "bitretrieval", version, about = "Bit retrieval, cyclotomic signatures and fragile watermarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a binary key (π, Legendre or random) or its autocorrelation.
    Gen(GenArgs),
    /// Recover a binary key from an autocorrelation with the difference map.
    Solve(SolveArgs),
    /// Mean iterations over several instances, with a fitted growth rate.
    Bench(BenchArgs),
    /// Distribution of iteration counts for one instance.
    Stats(StatsArgs),
    /// Generate a signing key pair.
    Keygen(KeygenArgs),
    /// Sign a document (hashed) or a ring element.
    Sign(SignArgs),
    /// Verify a signed envelope against a public key.
    Verify(VerifyArgs),
    /// Watermark a PGM image block by block.
    WatermarkSign(WatermarkSignArgs),
    /// Check every block of a watermarked PGM image.
    WatermarkVerify(WatermarkVerifyArgs),
    /// Forge a watermark with a counterfeit key taken from a signed image.
    ForgeDemo(ForgeArgs),
    /// LLL counterfeit-key attack on two signed elements.
    Attack(AttackArgs),
    /// Recover principal generators of random binary ideals by LLL.
    IdealDiscovery(DiscoveryArgs),
    /// Emit the linear-relaxation integer program for an autocorrelation.
    EmitMip(EmitMipArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KeyKind {
    Pi,
    Legendre,
    Random,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value = "pi")]
    pub kind: KeyKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the autocorrelation α = ββ̄ instead of the key.
    #[arg(long)]
    pub autocorrelation: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 0.7)]
    pub beta: f64,
    #[arg(long, default_value_t = 10_000_000)]
    pub max_iterations: u64,
    /// Restart from a fresh random point after this many iterations. `bench`
    /// and `stats` default to 100·2^{0.22N}; `solve` never restarts by default.
    #[arg(long)]
    pub restart_after: Option<u64>,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            max_iterations: self.max_iterations,
            restart_after: self.restart_after,
            ..SolverConfig::with_beta(self.beta)
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Autocorrelation file: ring=O (α, or a private key), or ring=R/Z (α in R).
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated instances: pi:<N>, hadamard:<N>, random:<N>:<seed>.
    #[arg(long, value_delimiter = ',', default_value = "pi:29,pi:31,pi:37,pi:41,pi:43,pi:47,pi:53,pi:61")]
    pub instances: Vec<InstanceSpec>,
    #[arg(long, default_value_t = 100)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, default_value = "pi:41")]
    pub instance: InstanceSpec,
    #[arg(long, default_value_t = 500)]
    pub runs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Histogram CSV of I/I₀.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-run iteration counts CSV.
    #[arg(long)]
    pub counts_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct KeygenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random keys drawn; the one with the largest norm is kept.
    #[arg(long, default_value_t = 16)]
    pub candidates: usize,
    /// Output prefix; writes <out>.key and <out>.pub.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SignArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Treat the input as a ring element file instead of hashing its bytes.
    #[arg(long)]
    pub element: bool,
    #[arg(long, default_value = "zr:0.5")]
    pub quantizer: Quantizer,
    /// Distance threshold Δ as a multiple of Δ_β.
    #[arg(long, default_value_t = DEFAULT_DELTA_FACTOR)]
    pub delta_factor: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "pub")]
    pub public: PathBuf,
    /// Signed envelope.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Original document, enabling the distance check.
    #[arg(long)]
    pub original: Option<PathBuf>,
    /// The original is a ring element file rather than raw bytes.
    #[arg(long)]
    pub element: bool,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
}

fn parse_block(s: &str) -> std::result::Result<BlockPlan, String> {
    let (w, h) = s.split_once('x').ok_or("block must be <w>x<h>")?;
    let w = w.parse().map_err(|_| "bad block width")?;
    let h = h.parse().map_err(|_| "bad block height")?;
    BlockPlan::new(w, h).map_err(|e| e.to_string())
}

fn parse_range(s: &str) -> std::result::Result<(u8, u8), String> {
    let (lo, hi) = s.split_once(':').ok_or("range must be <lo>:<hi>")?;
    Ok((lo.parse().map_err(|_| "bad lower bound")?, hi.parse().map_err(|_| "bad upper bound")?))
}

#[derive(Debug, Args)]
pub struct WatermarkSignArgs {
    #[arg(long)]
    pub key: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_parser = parse_block, default_value = "19x20")]
    pub block: BlockPlan,
    /// Pixel range applied before signing.
    #[arg(long, value_parser = parse_range, default_value = "5:250")]
    pub range: (u8, u8),
    /// Sign the pixels as they are.
    #[arg(long)]
    pub no_rescale: bool,
}

#[derive(Debug, Args)]
pub struct WatermarkVerifyArgs {
    #[arg(long = "pub")]
    pub public: PathBuf,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_block, default_value = "19x20")]
    pub block: BlockPlan,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// PBM mask of failing blocks.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ForgeArgs {
    #[arg(long = "pub")]
    pub public: PathBuf,
    /// A genuinely signed image to take the counterfeit key from.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// The image to forge a watermark on.
    #[arg(long)]
    pub fresh: PathBuf,
    #[arg(long, value_parser = parse_block, default_value = "19x20")]
    pub block: BlockPlan,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = CLASSIC_DELTA)]
    pub lll_delta: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Coefficients,
    Perp,
}

#[derive(Debug, Args)]
pub struct DiscoveryArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = CLASSIC_DELTA)]
    pub lll_delta: f64,
    #[arg(long, value_enum, default_value = "coefficients")]
    pub metric: MetricArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EmitMipArgs {
    /// Autocorrelation file, as for `solve`.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_document(path: &Path) -> Result<Document> {
    parse_document(&read_text(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(p) => fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

/// α in R from a file holding α in O, a private key, or α in R/Z.
fn load_alpha(path: &Path) -> Result<RingElement<f64>> {
    let doc = read_document(path)?;
    match doc.element {
        Element::Cyclo(_) if doc.meta("key") == Some("private") => Ok(real_autocorrelation_from_cyclo(
            &private_key_from_document(&doc)?.autocorrelation(),
        )),
        Element::Cyclo(a) => Ok(real_autocorrelation_from_cyclo(&a)),
        Element::Real(a) => Ok(a),
        Element::Integer(a) => Ok(a.to_real()),
    }
}

fn load_private(path: &Path) -> Result<BinaryKey> {
    private_key_from_document(&read_document(path)?)
}

fn load_public(path: &Path) -> Result<PublicKey> {
    PublicKey::new(public_key_from_document(&read_document(path)?)?)
}

/// The data element for a document: a ring element file, or the hash of
/// the raw bytes.
fn load_data(path: &Path, element: bool, n: usize) -> Result<RingElement<f64>> {
    if element {
        match read_document(path)?.element {
            Element::Real(r) => Ok(r),
            Element::Integer(z) => Ok(z.to_real()),
            Element::Cyclo(_) => Err(Error::Parse("data element must be ring=R or ring=Z".into())),
        }
    } else {
        Ok(hash_to_element(&fs::read(path)?, n, 256)?.to_real())
    }
}

fn gen(a: &GenArgs) -> Result<ExitCode> {
    let key = match a.kind {
        KeyKind::Pi => pi_sequence(a.n)?,
        KeyKind::Legendre => hadamard_legendre(a.n)?,
        KeyKind::Random => random_binary(a.n, a.seed)?,
    };
    let doc = if a.autocorrelation {
        public_key_document(&key.autocorrelation()).with_meta("provenance", key.provenance().to_string())
    } else {
        private_key_document(&key)
    };
    emit(a.out.as_deref(), write_document(&doc).as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn solve_cmd(a: &SolveArgs) -> Result<ExitCode> {
    let alpha = load_alpha(&a.input)?;
    let cfg = a.solver.config().seeded(a.seed);
    let r = solve(&alpha, &cfg)?;
    match r.solution {
        Some(key) => {
            eprintln!("solved in {} iterations ({} restarts)", r.iterations, r.restarts);
            let doc = Document::new(Element::Cyclo(key.element().clone()))
                .with_meta("key", "private")
                .with_meta("provenance", "explicit")
                .with_meta("iterations", r.iterations.to_string());
            emit(a.out.as_deref(), write_document(&doc).as_bytes())?;
            Ok(ExitCode::SUCCESS)
        }
        None => {
            eprintln!("no solution within {} iterations", r.iterations);
            Ok(ExitCode::from(1))
        }
    }
}

fn bench_cmd(a: &BenchArgs) -> Result<ExitCode> {
    let report = bench_complexity(&a.instances, a.runs, a.seed, &a.solver.config())?;
    emit(a.out.as_deref(), report.to_csv().as_bytes())?;
    eprint!("{}", report.fit_summary());
    Ok(ExitCode::SUCCESS)
}

fn stats_cmd(a: &StatsArgs) -> Result<ExitCode> {
    let report = stats_distribution(&a.instance, a.runs, a.seed, &a.solver.config())?;
    emit(a.out.as_deref(), report.histogram_csv().as_bytes())?;
    if let Some(p) = &a.counts_out {
        fs::write(p, report.counts_csv())?;
    }
    eprint!("{}", report.summary());
    Ok(ExitCode::SUCCESS)
}

fn keygen_cmd(a: &KeygenArgs) -> Result<ExitCode> {
    let kp = keygen(a.n, a.candidates, a.seed)?;
    let base = a.out.to_string_lossy();
    fs::write(format!("{base}.key"), write_document(&private_key_document(&kp.private_key)))?;
    fs::write(format!("{base}.pub"), write_document(&public_key_document(&kp.public_key)))?;
    eprintln!("wrote {base}.key and {base}.pub (N={})", a.n);
    Ok(ExitCode::SUCCESS)
}

fn sign_cmd(a: &SignArgs) -> Result<ExitCode> {
    let key = load_private(&a.key)?;
    let n = key.n();
    let rho = load_data(&a.input, a.element, n)?;
    let signed = SigningKey::from_binary(&key).sign(&rho, a.quantizer)?;
    let params = fidelity_with_factor(key.element(), asymptotic_delta_o(n), a.delta_factor)?;
    let env = Envelope {
        signed,
        quantizer: a.quantizer,
        big_delta: params.big_delta,
    };
    emit(a.out.as_deref(), write_document(&env.to_document()).as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(a: &VerifyArgs) -> Result<ExitCode> {
    let pk = load_public(&a.public)?;
    let env = Envelope::from_document(&read_document(&a.input)?)?;
    let original = match &a.original {
        Some(p) => Some(load_data(p, a.element, pk.n())?),
        None => None,
    };
    let opts = VerifyOptions {
        tolerance: a.tolerance,
        big_delta: original.as_ref().map(|_| env.big_delta),
        original,
    };
    match pk.verify(&env.signed, &opts)? {
        Verdict::Accept => {
            println!("accept");
            Ok(ExitCode::SUCCESS)
        }
        Verdict::Reject(reason) => {
            println!("reject: {reason}");
            Ok(ExitCode::from(1))
        }
    }
}

fn watermark_sign_cmd(a: &WatermarkSignArgs) -> Result<ExitCode> {
    let key = load_private(&a.key)?;
    let img = read_pgm(&fs::read(&a.input)?)?;
    let img = if a.no_rescale { img } else { rescale_range(&img, a.range.0, a.range.1)? };
    let out = watermark_sign(&img, &a.block, &SigningKey::from_binary(&key))?;
    fs::write(&a.out, write_pgm(&out.image))?;
    eprintln!(
        "rms change {:.3}, amplified blocks {}, shifted blocks {}, clamped pixels {}",
        signed_pixel_rms(&img, &out.image, &a.block)?,
        out.amplified_blocks,
        out.shifted_blocks,
        out.clamped_pixels
    );
    Ok(ExitCode::SUCCESS)
}

fn watermark_verify_cmd(a: &WatermarkVerifyArgs) -> Result<ExitCode> {
    let pk = load_public(&a.public)?;
    let img = read_pgm(&fs::read(&a.input)?)?;
    let opts = VerifyOptions {
        tolerance: a.tolerance,
        ..VerifyOptions::default()
    };
    let map = watermark_verify_with(&img, &a.block, &pk, &opts)?;
    if let Some(p) = &a.out {
        fs::write(p, map.to_pbm())?;
    }
    print!("{}", map.summary());
    Ok(if map.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn forge_cmd(a: &ForgeArgs) -> Result<ExitCode> {
    let pk = load_public(&a.public)?;
    let signed = read_pgm(&fs::read(&a.input)?)?;
    let fresh = read_pgm(&fs::read(&a.fresh)?)?;
    let (forged, r) = forge_demo(&signed, &a.block, &pk, &fresh)?;
    fs::write(&a.out, write_pgm(&forged))?;
    println!("block,counterfeit_perp_norm,key_perp_norm,predicted_factor,range_lo,range_hi,measured_rms,clamped_pixels");
    println!(
        "{}:{},{:.3},{:.3},{:.3},{},{},{:.3},{}",
        r.block.0,
        r.block.1,
        r.counterfeit_perp_norm,
        r.key_perp_norm,
        r.predicted_factor,
        r.range.0,
        r.range.1,
        r.measured_rms,
        r.clamped_pixels
    );
    Ok(ExitCode::SUCCESS)
}

fn attack_cmd(a: &AttackArgs) -> Result<ExitCode> {
    let report = counterfeit_attack_with(a.n, a.seed, a.trials, a.lll_delta)?;
    emit(a.out.as_deref(), report.to_csv().as_bytes())?;
    eprintln!("best ratio {:.4}", report.best_ratio);
    Ok(ExitCode::SUCCESS)
}

fn discovery_cmd(a: &DiscoveryArgs) -> Result<ExitCode> {
    let metric = match a.metric {
        MetricArg::Coefficients => Metric::Coefficients,
        MetricArg::Perp => Metric::Perp,
    };
    let report = ideal_discovery_experiment_with(a.n, a.seed, a.trials, a.lll_delta, metric)?;
    emit(a.out.as_deref(), report.to_csv().as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn emit_mip_cmd(a: &EmitMipArgs) -> Result<ExitCode> {
    let model = emit_mip(&load_alpha(&a.input)?)?;
    emit(a.out.as_deref(), model.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

pub fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve_cmd(a),
        Command::Bench(a) => bench_cmd(a),
        Command::Stats(a) => stats_cmd(a),
        Command::Keygen(a) => keygen_cmd(a),
        Command::Sign(a) => sign_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::WatermarkSign(a) => watermark_sign_cmd(a),
        Command::WatermarkVerify(a) => watermark_verify_cmd(a),
        Command::ForgeDemo(a) => forge_cmd(a),
        Command::Attack(a) => attack_cmd(a),
        Command::IdealDiscovery(a) => discovery_cmd(a),
        Command::EmitMip(a) => emit_mip_cmd(a),
    }
}

/// Sizes the global worker pool from `BITRETRIEVAL_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("BITRETRIEVAL_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| Error::Parse(format!("BITRETRIEVAL_THREADS must be a positive integer, got {v:?}")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Precondition(e.to_string()))?;
    }
    Ok(())
}
