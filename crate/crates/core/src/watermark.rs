//! Fragile block watermarking of 8-bit grayscale images.
//!
//! An image is cut into `block_w × block_h` tiles with `block_w·block_h − 1`
//! prime. Within a tile, pixels are read row-major; the first N form the
//! data element that gets signed and the last pixel is left untouched.
//! Verification checks every tile independently, so tampering is localized
//! to the tiles it touches.

use log::{debug, info};
use rayon::prelude::*;

use crate::cyclotomic::{is_odd_prime, CycloElement, RingElement};
use crate::error::{Error, Result};
use crate::signature::{fidelity, Amplification, PublicKey, Quantizer, SigningKey, VerifyOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::domain("image must be non-empty"));
        }
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch(pixels.len(), width * height));
        }
        Ok(GrayImage { width, height, pixels })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self> {
        let pixels = (0..height).flat_map(|y| (0..width).map(move |x| (x, y))).map(|(x, y)| f(x, y)).collect();
        GrayImage::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: u8) {
        self.pixels[y * self.width + x] = v;
    }
}

fn header_token(bytes: &[u8], pos: &mut usize) -> Result<usize> {
    loop {
        match bytes.get(*pos) {
            Some(b'#') => {
                while bytes.get(*pos).is_some_and(|&b| b != b'\n') {
                    *pos += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            Some(_) => break,
            None => return Err(Error::parse("PGM header is truncated")),
        }
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse("malformed PGM header field"))
}

/// Reads a binary (P5) PGM with maxval 255.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if !bytes.starts_with(b"P5") {
        return Err(Error::parse("not a binary PGM (expected magic P5)"));
    }
    let mut pos = 2;
    let width = header_token(bytes, &mut pos)?;
    let height = header_token(bytes, &mut pos)?;
    let maxval = header_token(bytes, &mut pos)?;
    if maxval != 255 {
        return Err(Error::parse(format!("only 8-bit PGM is supported, maxval is {maxval}")));
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(Error::parse("PGM header must end with one whitespace byte"));
    }
    pos += 1;
    let len = width
        .checked_mul(height)
        .ok_or_else(|| Error::parse("PGM dimensions overflow"))?;
    let data = bytes
        .get(pos..pos + len)
        .ok_or_else(|| Error::parse(format!("PGM payload truncated: need {len} bytes, have {}", bytes.len() - pos)))?;
    GrayImage::new(width, height, data.to_vec())
}

pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.pixels);
    out
}

/// Binary PBM (P4); `true` bits are written as 1 (black).
pub fn write_pbm(width: usize, height: usize, bits: &[bool]) -> Result<Vec<u8>> {
    if bits.len() != width * height {
        return Err(Error::DimensionMismatch(bits.len(), width * height));
    }
    let mut out = format!("P4\n{width} {height}\n").into_bytes();
    for row in bits.chunks(width) {
        for byte in row.chunks(8) {
            let mut b = 0u8;
            for (i, &bit) in byte.iter().enumerate() {
                if bit {
                    b |= 0x80 >> i;
                }
            }
            out.push(b);
        }
    }
    Ok(out)
}

pub const DEFAULT_RANGE: (u8, u8) = (5, 250);

/// Affine map of the pixel range [min, max] onto [lo, hi], rounded.
/// A constant image becomes the rounded midpoint.
pub fn rescale_range(img: &GrayImage, lo: u8, hi: u8) -> Result<GrayImage> {
    if lo >= hi {
        return Err(Error::Precondition(format!("rescale range needs lo < hi, got {lo}..{hi}")));
    }
    let min = *img.pixels.iter().min().expect("non-empty");
    let max = *img.pixels.iter().max().expect("non-empty");
    let (lo_f, hi_f) = (f64::from(lo), f64::from(hi));
    let pixels = if min == max {
        vec![((lo_f + hi_f) / 2.0).round() as u8; img.pixels.len()]
    } else {
        let s = (hi_f - lo_f) / f64::from(max - min);
        img.pixels
            .iter()
            .map(|&v| (lo_f + f64::from(v - min) * s).round() as u8)
            .collect()
    };
    GrayImage::new(img.width, img.height, pixels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockPlan {
    pub block_w: usize,
    pub block_h: usize,
    pub n: usize,
    /// Position of the untouched pixel within a block (row-major).
    pub spare_index: usize,
}

impl BlockPlan {
    pub fn new(block_w: usize, block_h: usize) -> Result<Self> {
        let size = block_w * block_h;
        if size < 4 || !is_odd_prime(size - 1) {
            return Err(Error::domain(format!(
                "block {block_w}×{block_h} has {size} pixels; need one more than an odd prime"
            )));
        }
        Ok(BlockPlan {
            block_w,
            block_h,
            n: size - 1,
            spare_index: size - 1,
        })
    }

    /// Grid size (columns, rows) for an image, or an error if the blocks do
    /// not tile it.
    pub fn grid(&self, img: &GrayImage) -> Result<(usize, usize)> {
        if img.width % self.block_w != 0 || img.height % self.block_h != 0 {
            return Err(Error::Precondition(format!(
                "{}×{} image is not tiled by {}×{} blocks",
                img.width, img.height, self.block_w, self.block_h
            )));
        }
        Ok((img.width / self.block_w, img.height / self.block_h))
    }

    /// Image coordinates of position `t` within block (bx, by).
    pub fn pixel(&self, bx: usize, by: usize, t: usize) -> (usize, usize) {
        (bx * self.block_w + t % self.block_w, by * self.block_h + t / self.block_w)
    }

    pub fn block_values(&self, img: &GrayImage, bx: usize, by: usize) -> Vec<i64> {
        (0..self.n)
            .map(|t| {
                let (x, y) = self.pixel(bx, by, t);
                i64::from(img.get(x, y))
            })
            .collect()
    }

    fn blocks(&self, img: &GrayImage) -> Result<Vec<(usize, usize)>> {
        let (cols, rows) = self.grid(img)?;
        Ok((0..rows).flat_map(|by| (0..cols).map(move |bx| (bx, by))).collect())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WatermarkOutcome {
    pub image: GrayImage,
    /// Blocks moved by a constant to fit [0, 255]; still valid codewords.
    pub shifted_blocks: usize,
    /// Pixels clamped because a block's span exceeded 255.
    pub clamped_pixels: usize,
    /// Blocks whose contrast was amplified before quantization.
    pub amplified_blocks: usize,
}

/// Signs every block with Q_Z̃ (r = 1/2).
///
/// A signed block that leaves [0, 255] is first moved by a constant, which
/// adds a multiple of Φ_N and keeps it a codeword. Only blocks spanning more
/// than 255 levels are clamped; those are counted and will not verify.
pub fn watermark_sign(img: &GrayImage, plan: &BlockPlan, key: &SigningKey) -> Result<WatermarkOutcome> {
    sign_blocks(img, plan, key, Some(Amplification::default()))
}

fn sign_blocks(
    img: &GrayImage,
    plan: &BlockPlan,
    key: &SigningKey,
    amplification: Option<Amplification>,
) -> Result<WatermarkOutcome> {
    if key.n() != plan.n {
        return Err(Error::DimensionMismatch(key.n(), plan.n));
    }
    let signed = plan
        .blocks(img)?
        .into_par_iter()
        .map(|(bx, by)| {
            let rho = RingElement::new(plan.block_values(img, bx, by))?.to_real();
            let out = key.sign_with(&rho, Quantizer::Z(0.5), amplification)?;
            Ok(((bx, by), out))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut image = img.clone();
    let mut shifted_blocks = 0;
    let mut clamped_pixels = 0;
    let mut amplified_blocks = 0;
    for ((bx, by), out) in signed {
        if out.amplification > 0 {
            amplified_blocks += 1;
        }
        let data = out.signed.data.coeffs();
        let lo = *data.iter().min().expect("non-empty block");
        let hi = *data.iter().max().expect("non-empty block");
        let shift = if hi - lo > 255 {
            0
        } else if hi > 255 {
            255 - hi
        } else if lo < 0 {
            -lo
        } else {
            0
        };
        if shift != 0 {
            shifted_blocks += 1;
        }
        for (t, &v) in data.iter().enumerate() {
            let (x, y) = plan.pixel(bx, by, t);
            let v = v + shift;
            if !(0..=255).contains(&v) {
                clamped_pixels += 1;
            }
            image.set(x, y, v.clamp(0, 255) as u8);
        }
    }
    if shifted_blocks > 0 {
        debug!("shifted {shifted_blocks} signed blocks into [0, 255]");
    }
    if clamped_pixels > 0 {
        info!("clamped {clamped_pixels} signed pixels into [0, 255]");
    }
    debug!("{amplified_blocks} blocks needed contrast amplification");
    Ok(WatermarkOutcome {
        image,
        shifted_blocks,
        clamped_pixels,
        amplified_blocks,
    })
}

/// Per-block verification outcome, row-major over the block grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMap {
    pub cols: usize,
    pub rows: usize,
    pub passed: Vec<bool>,
}

impl BlockMap {
    pub fn passed_at(&self, bx: usize, by: usize) -> bool {
        self.passed[by * self.cols + bx]
    }

    pub fn failed_blocks(&self) -> Vec<(usize, usize)> {
        self.passed
            .iter()
            .enumerate()
            .filter(|(_, &p)| !p)
            .map(|(i, _)| (i % self.cols, i / self.cols))
            .collect()
    }

    pub fn all_passed(&self) -> bool {
        self.passed.iter().all(|&p| p)
    }

    /// `blocks_total,blocks_failed,failed_coords` with coordinates written
    /// as `bx:by` separated by spaces.
    pub fn summary(&self) -> String {
        let failed = self.failed_blocks();
        let coords: Vec<String> = failed.iter().map(|(x, y)| format!("{x}:{y}")).collect();
        format!(
            "blocks_total,blocks_failed,failed_coords\n{},{},{}\n",
            self.passed.len(),
            failed.len(),
            coords.join(" ")
        )
    }

    /// One bit per block, set where verification failed.
    pub fn to_pbm(&self) -> Vec<u8> {
        let failed: Vec<bool> = self.passed.iter().map(|p| !p).collect();
        write_pbm(self.cols, self.rows, &failed).expect("grid dimensions match")
    }
}

/// Divisibility check of every block. No distance check is possible here
/// since the original image is not available to the verifier.
pub fn watermark_verify(img: &GrayImage, plan: &BlockPlan, key: &PublicKey) -> Result<BlockMap> {
    watermark_verify_with(img, plan, key, &VerifyOptions::default())
}

pub fn watermark_verify_with(
    img: &GrayImage,
    plan: &BlockPlan,
    key: &PublicKey,
    opts: &VerifyOptions,
) -> Result<BlockMap> {
    if key.n() != plan.n {
        return Err(Error::DimensionMismatch(key.n(), plan.n));
    }
    let (cols, rows) = plan.grid(img)?;
    let opts = VerifyOptions {
        original: None,
        big_delta: None,
        ..opts.clone()
    };
    let passed = plan
        .blocks(img)?
        .into_par_iter()
        .map(|(bx, by)| {
            let data = RingElement::new(plan.block_values(img, bx, by))?;
            let signed = crate::signature::SignedElement { data };
            Ok(key.verify(&signed, &opts)?.accepted())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockMap { cols, rows, passed })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ForgeReport {
    /// Block the counterfeit key was taken from.
    pub block: (usize, usize),
    /// ‖β′‖_⊥ of the counterfeit key.
    pub counterfeit_perp_norm: f64,
    /// ‖β‖_⊥ of the genuine key, from the public key.
    pub key_perp_norm: f64,
    /// √(‖β′‖_⊥ / ‖β‖_⊥).
    pub predicted_factor: f64,
    /// Pixel range the fresh image was compressed into before signing.
    pub range: (u8, u8),
    /// RMS of forged − compressed source over signed pixels.
    pub measured_rms: f64,
    pub clamped_pixels: usize,
}

/// The counterfeiting attack: take the verifying block with the smallest
/// perp norm as a key β′ = βγ, compress a fresh image so the signed values
/// fit in [0, 255], and sign it with β′ (no contrast amplification).
pub fn forge_demo(
    signed_img: &GrayImage,
    plan: &BlockPlan,
    alpha: &PublicKey,
    fresh: &GrayImage,
) -> Result<(GrayImage, ForgeReport)> {
    let map = watermark_verify(signed_img, plan, alpha)?;
    let (cols, _) = plan.grid(signed_img)?;
    let mut best: Option<(f64, (usize, usize), CycloElement)> = None;
    for (i, _) in map.passed.iter().enumerate().filter(|(_, &p)| p) {
        let (bx, by) = (i % cols, i / cols);
        let candidate = RingElement::new(plan.block_values(signed_img, bx, by))?.quotient()?;
        if candidate.is_zero() {
            continue;
        }
        let norm = candidate.perp_norm();
        if best.as_ref().is_none_or(|(b, _, _)| norm < *b) {
            best = Some((norm, (bx, by), candidate));
        }
    }
    let (counterfeit_perp_norm, block, element) =
        best.ok_or_else(|| Error::Precondition("no verifying non-constant block to forge from".into()))?;
    let key = SigningKey::new(element)?;

    // Compress the fresh image until the forged blocks fit without
    // clamping, starting from a margin of three predicted RMS errors.
    let delta_rms = fidelity(key.element(), (plan.n as f64 - 1.0) / 12.0)?.delta_rms;
    let mut margin = 3.0 * delta_rms;
    let (range, source, out) = loop {
        let m = margin.ceil().min(127.0) as u8;
        let range = (m, 255 - m);
        let source = if range.0 < range.1 {
            rescale_range(fresh, range.0, range.1)?
        } else {
            GrayImage::new(fresh.width, fresh.height, vec![127; fresh.pixels.len()])?
        };
        let out = sign_blocks(&source, plan, &key, None)?;
        if out.clamped_pixels == 0 || m == 127 {
            break (range, source, out);
        }
        margin += delta_rms;
    };
    let measured_rms = signed_pixel_rms(&source, &out.image, plan)?;
    let key_perp_norm = alpha.key_perp_norm();
    let report = ForgeReport {
        block,
        counterfeit_perp_norm,
        key_perp_norm,
        predicted_factor: (counterfeit_perp_norm / key_perp_norm).sqrt(),
        range,
        measured_rms,
        clamped_pixels: out.clamped_pixels,
    };
    Ok((out.image, report))
}

/// RMS pixel difference over the signed (non-spare) pixels.
pub fn signed_pixel_rms(a: &GrayImage, b: &GrayImage, plan: &BlockPlan) -> Result<f64> {
    if a.width != b.width || a.height != b.height {
        return Err(Error::DimensionMismatch(a.pixels.len(), b.pixels.len()));
    }
    let blocks = plan.blocks(a)?;
    let mut sum = 0.0;
    for &(bx, by) in &blocks {
        for t in 0..plan.n {
            let (x, y) = plan.pixel(bx, by, t);
            sum += (f64::from(a.get(x, y)) - f64::from(b.get(x, y))).powi(2);
        }
    }
    Ok((sum / (blocks.len() * plan.n) as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::random_binary;

    fn small_plan() -> BlockPlan {
        // 4×6 blocks hold 23 signed pixels.
        BlockPlan::new(4, 6).unwrap()
    }

    fn textured(w: usize, h: usize, seed: u64) -> GrayImage {
        GrayImage::from_fn(w, h, |x, y| {
            let v = (x * 7 + y * 13 + (x * y) % 31) as u64 ^ seed;
            (40 + v % 170) as u8
        })
        .unwrap()
    }

    #[test]
    fn pgm_roundtrip_and_errors() {
        let img = textured(5, 3, 1);
        let bytes = write_pgm(&img);
        assert_eq!(read_pgm(&bytes).unwrap(), img);
        assert_eq!(write_pgm(&read_pgm(&bytes).unwrap()), bytes);
        let one = GrayImage::new(1, 1, vec![200]).unwrap();
        assert_eq!(read_pgm(&write_pgm(&one)).unwrap(), one);
        let commented = b"P5\n# made by hand\n2 1\n255\n\x01\x02";
        assert_eq!(read_pgm(commented).unwrap().pixels(), &[1, 2]);

        assert!(read_pgm(b"P5\n2 1\n65535\n\x00\x01\x00\x02").is_err());
        assert!(read_pgm(b"P5\n2 2\n255\n\x01\x02").is_err());
        assert!(read_pgm(b"P2\n1 1\n255\n7").is_err());
        assert!(read_pgm(b"P5\n1").is_err());
    }

    #[test]
    fn pbm_layout() {
        let bits = [true, false, false, false, false, false, false, false, true, false];
        let out = write_pbm(10, 1, &bits).unwrap();
        assert_eq!(out, b"P4\n10 1\n\x80\x80".to_vec());
    }

    #[test]
    fn rescaling() {
        let full = GrayImage::from_fn(16, 16, |x, y| (x * 16 + y) as u8).unwrap();
        let mut spanning = full.clone();
        spanning.set(0, 0, 0);
        spanning.set(1, 0, 255);
        let r = rescale_range(&spanning, 5, 250).unwrap();
        assert_eq!(*r.pixels().iter().min().unwrap(), 5);
        assert_eq!(*r.pixels().iter().max().unwrap(), 250);
        assert_eq!(rescale_range(&r, 5, 250).unwrap(), r);

        let flat = GrayImage::new(3, 3, vec![17; 9]).unwrap();
        assert_eq!(rescale_range(&flat, 5, 250).unwrap().pixels(), &[128; 9]);
        assert!(rescale_range(&flat, 9, 9).is_err());
    }

    #[test]
    fn plans() {
        let p = BlockPlan::new(19, 20).unwrap();
        assert_eq!((p.n, p.spare_index), (379, 379));
        assert!(BlockPlan::new(4, 4).is_err());
        assert!(BlockPlan::new(2, 2).is_ok());
        let img = GrayImage::new(361, 420, vec![0; 361 * 420]).unwrap();
        assert_eq!(p.grid(&img).unwrap(), (19, 21));
        assert!(p.grid(&GrayImage::new(360, 420, vec![0; 360 * 420]).unwrap()).is_err());
        assert_eq!(p.pixel(1, 2, 20), (20, 41));
    }

    #[test]
    fn sign_verify_tamper() {
        let plan = small_plan();
        let key = random_binary(23, 3).unwrap();
        let sk = SigningKey::from_binary(&key);
        let pk = PublicKey::new(key.autocorrelation()).unwrap();
        let img = rescale_range(&textured(16, 18, 5), 5, 250).unwrap();
        let out = watermark_sign(&img, &plan, &sk).unwrap();
        assert_eq!(out.clamped_pixels, 0);
        let map = watermark_verify(&out.image, &plan, &pk).unwrap();
        assert!(map.all_passed());
        assert!(!watermark_verify(&img, &plan, &pk).unwrap().all_passed());

        // The spare pixel of every block is untouched.
        for by in 0..3 {
            for bx in 0..4 {
                let (x, y) = plan.pixel(bx, by, plan.spare_index);
                assert_eq!(out.image.get(x, y), img.get(x, y));
            }
        }

        let mut tampered = out.image.clone();
        let (x, y) = plan.pixel(2, 1, 5);
        let v = tampered.get(x, y);
        tampered.set(x, y, if v < 255 { v + 1 } else { v - 1 });
        let map = watermark_verify(&tampered, &plan, &pk).unwrap();
        assert_eq!(map.failed_blocks(), vec![(2, 1)]);
        assert_eq!(map.summary(), "blocks_total,blocks_failed,failed_coords\n12,1,2:1\n");
        assert_eq!(map.to_pbm(), b"P4\n4 3\n\x00\x20\x00".to_vec());

        let again = watermark_sign(&out.image, &plan, &sk).unwrap();
        assert!(watermark_verify(&again.image, &plan, &pk).unwrap().all_passed());
    }

    #[test]
    fn constant_blocks_sign_cleanly() {
        let plan = small_plan();
        let key = random_binary(23, 4).unwrap();
        let img = GrayImage::new(8, 12, vec![90; 96]).unwrap();
        let out = watermark_sign(&img, &plan, &SigningKey::from_binary(&key)).unwrap();
        assert_eq!(out.image, img);
        let pk = PublicKey::new(key.autocorrelation()).unwrap();
        assert!(watermark_verify(&out.image, &plan, &pk).unwrap().all_passed());
    }

    #[test]
    fn mismatched_plans_are_rejected() {
        let key = random_binary(23, 5).unwrap();
        let img = GrayImage::new(10, 12, vec![90; 120]).unwrap();
        assert!(watermark_sign(&img, &small_plan(), &SigningKey::from_binary(&key)).is_err());
        let plan = BlockPlan::new(2, 2).unwrap();
        assert!(watermark_sign(&img, &plan, &SigningKey::from_binary(&key)).is_err());
    }
}
