//! Point clouds from CSV files and from PGM images (plain `P2` and raw `P5`).

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::metric::{Metric, PointCloud, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Csv,
    Pgm,
}

impl FromStr for InputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(InputFormat::Csv),
            "pgm" => Ok(InputFormat::Pgm),
            _ => input(format!("unknown input format {s:?}; expected csv or pgm")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadOptions {
    /// Taken from the file extension when absent.
    pub format: Option<InputFormat>,
    /// Pixels at or above this value become points; defaults to half the maximum value.
    pub threshold: Option<u32>,
    pub metric: Metric,
}

pub fn load_points(path: &Path, opts: &LoadOptions) -> Result<PointCloud> {
    let format = match opts.format {
        Some(f) => f,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some(ext) => ext.parse()?,
            None => return input(format!("cannot tell the format of {}", path.display())),
        },
    };
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match format {
        InputFormat::Csv => parse_csv(&bytes, opts.metric),
        InputFormat::Pgm => parse_pgm(&bytes, opts.threshold, opts.metric),
    }
}

/// One point per record; coordinates are integers or fractions `p/q`. Lines starting with
/// `#` are skipped.
pub fn parse_csv(bytes: &[u8], metric: Metric) -> Result<PointCloud> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(bytes);
    let mut points: Vec<Vec<Rational>> = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::Parse {
                line,
                column: 0,
                message: e.to_string(),
            }
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let mut p = Vec::with_capacity(rec.len());
        for (k, field) in rec.iter().enumerate() {
            let v = Rational::from_str(field).map_err(|e| Error::Parse {
                line,
                column: k + 1,
                message: format!("field {}: {field:?} is not a number ({e})", k + 1),
            })?;
            p.push(v);
        }
        if let Some(first) = points.first() {
            if first.len() != p.len() {
                return Err(Error::Parse {
                    line,
                    column: 0,
                    message: format!("expected {} coordinates, found {}", first.len(), p.len()),
                });
            }
        }
        points.push(p);
    }
    PointCloud::new(points, metric)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> std::result::Result<u64, (usize, String)> {
        self.skip_space();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.bytes.get(self.pos) {
                None => (self.pos, format!("unexpected end of file, expected {what}")),
                Some(&c) => (self.pos, format!("expected {what}, found {:?}", c as char)),
            });
        }
        if self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() && self.bytes[self.pos] != b'#' {
            return Err((self.pos, format!("expected {what}, found {:?}", self.bytes[self.pos] as char)));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| (start, format!("{what} is too large")))
    }
}

fn byte_error((offset, message): (usize, String)) -> Error {
    Error::ParseBytes { offset, message }
}

fn line_error(bytes: &[u8], (offset, message): (usize, String)) -> Error {
    let before = &bytes[..offset.min(bytes.len())];
    let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
    let column = offset - before.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1) + 1;
    Error::Parse { line, column, message }
}

/// Pixels with value at least `threshold` become the points `(column, row)`, in raster order.
/// Raw samples above 255 are two bytes, most significant first.
pub fn parse_pgm(bytes: &[u8], threshold: Option<u32>, metric: Metric) -> Result<PointCloud> {
    let plain = match bytes.get(..2) {
        Some(b"P2") => true,
        Some(b"P5") => false,
        Some([b'P', d]) if d.is_ascii_digit() => {
            return Err(Error::Format(format!("unsupported image type P{}; expected P2 or P5", *d as char)))
        }
        _ => return Err(Error::Format("not a PGM image: missing P2/P5 magic number".into())),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    let header = |cur: &mut Cursor, what: &str| cur.number(what).map_err(byte_error);
    let width = header(&mut cur, "width")? as usize;
    let height = header(&mut cur, "height")? as usize;
    let maxval_at = cur.pos;
    let maxval = header(&mut cur, "maximum value")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::ParseBytes {
            offset: maxval_at,
            message: format!("maximum value {maxval} is outside 1..=65535"),
        });
    }
    let threshold = threshold.unwrap_or((maxval as u32).div_ceil(2));
    let count = width.checked_mul(height).ok_or_else(|| Error::Format("image too large".into()))?;
    let mut samples = Vec::with_capacity(count);
    if plain {
        for k in 0..count {
            cur.skip_space();
            let at = cur.pos;
            let v = cur.number("a sample").map_err(|e| line_error(bytes, e))?;
            if v > maxval {
                return Err(line_error(bytes, (at, format!("sample {k} = {v} exceeds {maxval}"))));
            }
            samples.push(v as u32);
        }
    } else {
        match bytes.get(cur.pos) {
            Some(c) if c.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(byte_error((cur.pos, "expected one whitespace byte before the raster".into()))),
        }
        let wide = maxval > 255;
        let need = count * if wide { 2 } else { 1 };
        let raster = bytes.get(cur.pos..cur.pos + need).ok_or_else(|| {
            byte_error((bytes.len(), format!("raster truncated: expected {need} bytes from offset {}", cur.pos)))
        })?;
        for k in 0..count {
            let v = if wide {
                u16::from_be_bytes([raster[2 * k], raster[2 * k + 1]]) as u64
            } else {
                raster[k] as u64
            };
            if v > maxval {
                let offset = cur.pos + if wide { 2 * k } else { k };
                return Err(byte_error((offset, format!("sample {k} = {v} exceeds {maxval}"))));
            }
            samples.push(v as u32);
        }
    }
    let mut points = Vec::new();
    let mut intensity = Vec::new();
    for (k, &v) in samples.iter().enumerate() {
        if v >= threshold {
            points.push(vec![Rational::from_integer((k % width) as i64), Rational::from_integer((k / width) as i64)]);
            intensity.push(v);
        }
    }
    let mut cloud = PointCloud::new(points, metric)?;
    cloud.intensity = Some(intensity);
    Ok(cloud)
}
