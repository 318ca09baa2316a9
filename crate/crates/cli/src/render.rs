//! Sphere colourings in floating point. This is the only inexact code path;
//! nothing here feeds back into the exact computations.
//!
//! The image shows the unit sphere seen along the first axis. A pixel inside
//! the disk lifts to the visible hemisphere and then maps to the plane by
//! stereographic projection from the top pole, so `∞` sits at the top edge,
//! `0` at the bottom edge and `1` in the centre.

use std::io::Write;
use std::path::Path;

use merodec::projective::octahedral_e7;
use merodec::{MeroFn, UniPoly};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::commands::Failure;

const RED: [u8; 3] = [255, 0, 0];
const BLUE: [u8; 3] = [0, 0, 255];
const GREEN: [u8; 3] = [0, 255, 0];
const BACKGROUND: [u8; 3] = [0, 0, 0];

/// A point of the sphere as a homogeneous pair `[a : b]`.
type Pair = (Complex64, Complex64);

struct Target {
    num: Vec<Complex64>,
    den: Vec<Complex64>,
}

fn coeffs(p: &UniPoly, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|k| {
            let (re, im) = p.coeff(k).to_f64_pair();
            Complex64::new(re, im)
        })
        .collect()
}

impl Target {
    fn new(f: &MeroFn) -> Self {
        let degree = f.degree();
        Self {
            num: coeffs(f.num(), degree + 1),
            den: coeffs(f.den(), degree + 1),
        }
    }

    /// Homogeneous form of degree `d`: `sum c_k a^k b^(d-k)`.
    fn form(c: &[Complex64], (a, b): Pair) -> Complex64 {
        // Horner in whichever chart keeps the powers bounded
        if a.norm() <= b.norm() {
            let t = a / b;
            let mut acc = Complex64::new(0.0, 0.0);
            for ck in c.iter().rev() {
                acc = acc * t + ck;
            }
            acc * b.powu(c.len() as u32 - 1)
        } else {
            let t = b / a;
            let mut acc = Complex64::new(0.0, 0.0);
            for ck in c.iter() {
                acc = acc * t + ck;
            }
            acc * a.powu(c.len() as u32 - 1)
        }
    }

    fn apply(&self, z: Pair) -> Pair {
        let (p, q) = (Self::form(&self.num, z), Self::form(&self.den, z));
        let s = p.norm().max(q.norm());
        if s > 0.0 && s.is_finite() {
            (p / s, q / s)
        } else {
            (p, q)
        }
    }
}

/// Pixel centre to a point of the sphere, or `None` outside the disk.
fn pixel_point(i: usize, j: usize, size: usize) -> Option<Pair> {
    let x = 2.0 * (i as f64 + 0.5) / size as f64 - 1.0;
    let y = 1.0 - 2.0 * (j as f64 + 0.5) / size as f64;
    let r2 = x * x + y * y;
    if r2 > 1.0 {
        return None;
    }
    let depth = (1.0 - r2).sqrt();
    // sphere point (depth, x, y); project from (0, 0, 1)
    Some((Complex64::new(depth, x), Complex64::new(1.0 - y, 0.0)))
}

fn colour((a, b): Pair) -> [u8; 3] {
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if !(n > 0.0 && n.is_finite()) {
        return BACKGROUND;
    }
    let to_zero = a.norm() / n;
    let to_one = (a - b).norm() / (n * std::f64::consts::SQRT_2);
    let to_inf = b.norm() / n;
    if to_zero <= to_one && to_zero <= to_inf {
        RED
    } else if to_one <= to_inf {
        BLUE
    } else {
        GREEN
    }
}

/// PPM (P6) bytes of the colouring of `f`, or of `E7 ∘ f`.
pub fn render(f: &MeroFn, size: usize, through_e7: bool) -> Vec<u8> {
    let target = Target::new(f);
    let e7 = Target::new(octahedral_e7());
    let rows: Vec<Vec<u8>> = (0..size)
        .into_par_iter()
        .map(|j| {
            let mut row = Vec::with_capacity(3 * size);
            for i in 0..size {
                let rgb = match pixel_point(i, j, size) {
                    None => BACKGROUND,
                    Some(z) => {
                        let w = target.apply(z);
                        colour(if through_e7 { e7.apply(w) } else { w })
                    }
                };
                row.extend_from_slice(&rgb);
            }
            row
        })
        .collect();
    let mut out = format!("P6\n{size} {size}\n255\n").into_bytes();
    for row in rows {
        out.extend(row);
    }
    out
}

#[derive(Serialize)]
struct RenderOutput<'a> {
    target: String,
    size: usize,
    through_e7: bool,
    out: Option<&'a str>,
}

pub fn run(target: &str, out: Option<&Path>, size: usize, through_e7: bool, json: bool) -> Result<(), Failure> {
    let f = if target.trim() == "e7" {
        octahedral_e7().clone()
    } else {
        target.parse::<MeroFn>().map_err(Failure::from)?
    };
    let bytes = render(&f, size, through_e7);
    match out {
        Some(path) => std::fs::write(path, &bytes)
            .map_err(|e| Failure::internal(format!("cannot write {}: {e}", path.display())))?,
        None => std::io::stdout()
            .write_all(&bytes)
            .map_err(|e| Failure::internal(e.to_string()))?,
    }
    if json {
        let info = RenderOutput {
            target: f.to_string(),
            size,
            through_e7,
            out: out.and_then(|p| p.to_str()),
        };
        let s = serde_json::to_string_pretty(&info).map_err(|e| Failure::internal(e.to_string()))?;
        eprintln!("{s}");
    }
    Ok(())
}
