//! Lattice renderings coloured by the Prim step at which each vertex joins.

use crate::error::{CliError, CliResult};
use primlocal::spanning::NEVER;
use primlocal::PrimTrace;
use std::io::Write;

pub const GREEN: [u8; 3] = [0, 160, 0];
pub const YELLOW: [u8; 3] = [240, 220, 0];
pub const RED: [u8; 3] = [200, 0, 0];
pub const ROOT: [u8; 3] = [64, 224, 208];
pub const BACKGROUND: [u8; 3] = [255, 255, 255];

/// Relative depth of the periodic shading.
const SHADE: f64 = 0.15;

fn lerp(a: [u8; 3], b: [u8; 3], x: f64) -> [f64; 3] {
    [0, 1, 2].map(|i| a[i] as f64 + (b[i] as f64 - a[i] as f64) * x)
}

/// Green to yellow to red over `step / n`, darkened by up to 15% with a
/// 256-step period.
pub fn step_colour(step: usize, n: usize) -> [u8; 3] {
    let x = if n == 0 { 0.0 } else { (step as f64 / n as f64).clamp(0.0, 1.0) };
    let base = if x <= 0.5 { lerp(GREEN, YELLOW, 2.0 * x) } else { lerp(YELLOW, RED, 2.0 * x - 1.0) };
    let shade = 1.0 - SHADE * (step % 256) as f64 / 256.0;
    base.map(|c| (c * shade).round().clamp(0.0, 255.0) as u8)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl Image {
    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let i = 3 * (y * self.width + x);
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    fn set(&mut self, x: usize, y: usize, c: [u8; 3]) {
        let i = 3 * (y * self.width + x);
        self.pixels[i..i + 3].copy_from_slice(&c);
    }

    /// Binary PPM (P6).
    pub fn write_ppm<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        write!(out, "P6\n{} {}\n255\n", self.width, self.height)?;
        out.write_all(&self.pixels)
    }
}

/// Renders vertex `row * side + col` at pixel `(col, row)` of a square
/// window of side `crop` centred on the root, wrapping around the lattice.
/// Vertices joining after `fraction * n` steps are left blank.
pub fn render_lattice(trace: &PrimTrace, side: usize, fraction: f64, crop: Option<usize>) -> CliResult<Image> {
    let n = trace.n();
    if side * side != n {
        return Err(CliError::Usage(format!("trace has {n} vertices, not a {side}x{side} lattice")));
    }
    if !(0.0..=1.0).contains(&fraction) {
        return Err(CliError::Usage(format!("fraction {fraction} outside [0, 1]")));
    }
    let w = crop.unwrap_or(side);
    if w == 0 || w > side {
        return Err(CliError::Usage(format!("crop {w} must lie in 1..={side}")));
    }
    let limit = (fraction * n as f64).floor() as u64;
    let (root_row, root_col) = (trace.root() / side, trace.root() % side);
    let origin = |centre: usize| (centre + side - w / 2) % side;
    let (row0, col0) = (origin(root_row), origin(root_col));

    let steps = trace.vertex_steps();
    let mut img = Image {
        width: w,
        height: w,
        pixels: Vec::with_capacity(3 * w * w),
    };
    for y in 0..w {
        let row = (row0 + y) % side;
        for x in 0..w {
            let s = steps[row * side + (col0 + x) % side];
            let c = if s == NEVER || s as u64 > limit { BACKGROUND } else { step_colour(s as usize, n) };
            img.pixels.extend_from_slice(&c);
        }
    }

    // root marker, a few pixels wide on large images
    let glyph = w / 500;
    let (cy, cx) = ((root_row + side - row0) % side, (root_col + side - col0) % side);
    for y in cy.saturating_sub(glyph)..=(cy + glyph).min(w - 1) {
        for x in cx.saturating_sub(glyph)..=(cx + glyph).min(w - 1) {
            img.set(x, y, ROOT);
        }
    }
    Ok(img)
}
