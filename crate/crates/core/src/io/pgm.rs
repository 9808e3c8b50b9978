//! Binary PGM (`P5`) with maxval 255.

use std::fs;
use std::path::Path;

use crate::codec::GrayImage;
use crate::{Error, Result};

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> std::result::Result<u32, String> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(format!("expected {what}"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|e| format!("{what}: {e}"))
    }
}

/// Decodes a P5 image from memory. `path` is only used in error messages.
pub fn decode_pgm(bytes: &[u8], path: &Path) -> Result<GrayImage> {
    let malformed = |reason: String| Error::MalformedHeader {
        path: path.to_path_buf(),
        reason,
    };
    match bytes.get(..2) {
        Some(b"P5") => {}
        Some(magic) if magic[0] == b'P' => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                reason: format!(
                    "magic {:?}, only binary P5 is supported",
                    String::from_utf8_lossy(magic)
                ),
            })
        }
        _ => {
            return Err(Error::UnsupportedFormat {
                path: path.to_path_buf(),
                reason: "not a PGM file".into(),
            })
        }
    }
    let mut h = Header { bytes, pos: 2 };
    if !h.bytes.get(2).is_some_and(|b| b.is_ascii_whitespace() || *b == b'#') {
        return Err(malformed("missing whitespace after magic".into()));
    }
    let width = h.number("width").map_err(malformed)? as usize;
    let height = h.number("height").map_err(malformed)? as usize;
    let maxval = h.number("maxval").map_err(malformed)?;
    if width == 0 || height == 0 {
        return Err(malformed(format!("zero dimension {width}×{height}")));
    }
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval {
            path: path.to_path_buf(),
            maxval,
        });
    }
    // Exactly one whitespace byte separates the header from the raster.
    if !h.bytes.get(h.pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(malformed("missing whitespace before raster".into()));
    }
    let payload = &bytes[h.pos + 1..];
    let expected = width * height;
    if payload.len() < expected {
        return Err(Error::TruncatedPayload {
            path: path.to_path_buf(),
            expected,
            found: payload.len(),
        });
    }
    GrayImage::new(width, height, payload[..expected].to_vec())
}

pub fn encode_pgm(image: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
    out.extend_from_slice(image.samples());
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_pgm(&bytes, path)
}

pub fn write_pgm(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_pgm(image)).map_err(|e| Error::io(path, e))
}
