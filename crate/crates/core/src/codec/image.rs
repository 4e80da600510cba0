use std::fs;
use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};

/// 8-bit grayscale image, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageGray8 {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl ImageGray8 {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(Error::DimensionMismatch {
                expected: format!("{} pixels", width * height),
                found: pixels.len().to_string(),
            });
        }
        Ok(ImageGray8 { width, height, pixels })
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Self {
        let mut pixels = Vec::with_capacity(width * height);
        for r in 0..height {
            for c in 0..width {
                pixels.push(f(r, c));
            }
        }
        ImageGray8 { width, height, pixels }
    }

    /// Rounds and clamps a real-valued image to bytes.
    pub fn from_real(image: &Array2<f64>) -> Self {
        let (height, width) = image.dim();
        let pixels = image.iter().map(|&v| v.round().clamp(0.0, 255.0) as u8).collect();
        ImageGray8 { width, height, pixels }
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

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    /// `height x width` matrix of pixel values.
    pub fn to_real(&self) -> Array2<f64> {
        Array2::from_shape_fn((self.height, self.width), |(r, c)| f64::from(self.get(r, c)))
    }

    pub fn parse_pgm(bytes: &[u8]) -> Result<Self> {
        let mut pos = 0;
        if bytes.get(..2) != Some(b"P5") {
            return Err(Error::Pgm("missing P5 magic".into()));
        }
        pos += 2;
        let mut fields = [0usize; 3];
        for (k, name) in ["width", "height", "maxval"].iter().enumerate() {
            fields[k] = header_number(bytes, &mut pos, name)?;
        }
        let [width, height, maxval] = fields;
        if maxval != 255 {
            return Err(Error::Pgm(format!("maxval {maxval} unsupported, expected 255")));
        }
        // Exactly one whitespace byte separates the header from the raster.
        match bytes.get(pos) {
            Some(b) if b.is_ascii_whitespace() => pos += 1,
            _ => return Err(Error::Pgm("no whitespace after maxval".into())),
        }
        let needed = width * height;
        let raster = &bytes[pos..];
        if raster.len() < needed {
            return Err(Error::Pgm(format!(
                "raster truncated: {} of {needed} bytes",
                raster.len()
            )));
        }
        ImageGray8::new(width, height, raster[..needed].to_vec())
    }

    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }

    pub fn read_pgm(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = fs::read(path).map_err(|e| Error::from(e).in_file(path))?;
        Self::parse_pgm(&bytes).map_err(|e| e.in_file(path))
    }

    pub fn write_pgm(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_pgm()).map_err(|e| Error::from(e).in_file(path))
    }
}

fn header_number(bytes: &[u8], pos: &mut usize, name: &str) -> Result<usize> {
    loop {
        match bytes.get(*pos) {
            Some(b'#') => {
                while bytes.get(*pos).is_some_and(|&b| b != b'\n') {
                    *pos += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            _ => break,
        }
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Pgm(format!("bad {name} field at byte {start}")))
}
