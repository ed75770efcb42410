//! Plain (P2) and raw (P5) PGM with maxval 255.

use std::fs;
use std::path::Path;

use super::GrayImage;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PgmFormat {
    /// ASCII samples.
    Plain,
    /// Binary samples.
    #[default]
    Raw,
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.buf.len() {
            match self.buf[self.pos] {
                b'#' => {
                    while self.pos < self.buf.len() && self.buf[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn token(&mut self) -> Result<&str> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.buf.len() && !self.buf[self.pos].is_ascii_whitespace() && self.buf[self.pos] != b'#' {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Pgm("unexpected end of data".into()));
        }
        std::str::from_utf8(&self.buf[start..self.pos]).map_err(|_| Error::Pgm("non-ASCII header".into()))
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let t = self.token()?;
        t.parse()
            .map_err(|_| Error::Pgm(format!("bad {what} {t:?}")))
    }
}

pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor { buf: bytes, pos: 0 };
    let format = match cur.token()? {
        "P2" => PgmFormat::Plain,
        "P5" => PgmFormat::Raw,
        other => return Err(Error::Pgm(format!("unsupported magic {other:?}"))),
    };
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    let maxval = cur.number("maxval")?;
    if maxval != 255 {
        return Err(Error::Pgm(format!("maxval {maxval} (only 255 is supported)")));
    }
    if width != height {
        return Err(Error::InvalidImage(format!("{width}x{height} image is not square")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::Pgm("dimensions overflow".into()))?;

    let pixels = match format {
        PgmFormat::Plain => {
            let mut px = Vec::with_capacity(count);
            for _ in 0..count {
                let v = cur.number("sample")?;
                if v > 255 {
                    return Err(Error::Pgm(format!("sample {v} exceeds maxval")));
                }
                px.push(v as u8);
            }
            px
        }
        PgmFormat::Raw => {
            // exactly one whitespace byte separates maxval from the raster
            let start = cur.pos + 1;
            let end = start + count;
            if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() || end > bytes.len() {
                return Err(Error::Pgm(format!(
                    "raster truncated: need {count} bytes"
                )));
            }
            bytes[start..end].to_vec()
        }
    };
    GrayImage::from_side(width, pixels)
}

pub fn write_pgm(image: &GrayImage, format: PgmFormat) -> Vec<u8> {
    let side = image.side();
    match format {
        PgmFormat::Raw => {
            let mut out = format!("P5\n{side} {side}\n255\n").into_bytes();
            out.extend_from_slice(image.pixels());
            out
        }
        PgmFormat::Plain => {
            let mut s = format!("P2\n{side} {side}\n255\n");
            for row in image.pixels().chunks(side) {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                s.push_str(&line.join(" "));
                s.push('\n');
            }
            s.into_bytes()
        }
    }
}

pub fn read_pgm_file(path: impl AsRef<Path>) -> Result<GrayImage> {
    read_pgm(&fs::read(path)?)
}

pub fn write_pgm_file(path: impl AsRef<Path>, image: &GrayImage, format: PgmFormat) -> Result<()> {
    fs::write(path, write_pgm(image, format))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_with_comments() {
        let src = b"P2\n# test image\n2 2\n255\n255 0\n200 100\n";
        let img = read_pgm(src).unwrap();
        assert_eq!(img.pixels(), &[255, 0, 200, 100]);
    }

    #[test]
    fn raw_roundtrip_bytes() {
        let img = GrayImage::new(1, vec![255, 0, 200, 100]).unwrap();
        let bytes = write_pgm(&img, PgmFormat::Raw);
        assert_eq!(&bytes[..11], b"P5\n2 2\n255\n");
        assert_eq!(read_pgm(&bytes).unwrap(), img);
        assert_eq!(write_pgm(&read_pgm(&bytes).unwrap(), PgmFormat::Raw), bytes);
    }

    #[test]
    fn plain_roundtrip() {
        let img = GrayImage::new(2, (0..16).map(|i| i * 16).collect()).unwrap();
        assert_eq!(read_pgm(&write_pgm(&img, PgmFormat::Plain)).unwrap(), img);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(read_pgm(b"P3\n2 2\n255\n"), Err(Error::Pgm(_))));
        assert!(matches!(read_pgm(b"P2\n2 2\n15\n0 0 0 0"), Err(Error::Pgm(_))));
        assert!(matches!(read_pgm(b"P2\n2 2\n255\n0 0 0"), Err(Error::Pgm(_))));
        assert!(matches!(read_pgm(b"P2\n2 2\n255\n0 0 0 256"), Err(Error::Pgm(_))));
        assert!(matches!(read_pgm(b"P5\n2 2\n255\n\x01\x02"), Err(Error::Pgm(_))));
        assert!(matches!(read_pgm(b"P2\n3 3\n255\n0 0 0 0 0 0 0 0 0"), Err(Error::NotPowerOfTwo(3))));
        assert!(matches!(read_pgm(b"P2\n2 4\n255\n0 0 0 0 0 0 0 0"), Err(Error::InvalidImage(_))));
    }
}
