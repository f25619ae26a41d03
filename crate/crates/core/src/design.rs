//! Designs in the unit hypercube, problem-space bounds, and the plain-text
//! design file format.
//!
//! A design file holds one point per line, `d` comma-separated decimal
//! coordinates in `[0, 1]`, no header, `.` as decimal separator and LF line
//! endings. Coordinates are written with the shortest representation that
//! round-trips exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{DoeError, Result};

/// An ordered set of `n` points in `[0, 1]^d`.
///
/// Points are stored row-major. Insertion order is preserved, which the
/// sequential samplers rely on. Duplicate points are allowed; the pairwise
/// metrics then report zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DesignMatrix {
    /// An empty design of dimension `dim`.
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(DoeError::InvalidArgument("design dimension must be positive".into()));
        }
        Ok(Self {
            dim,
            data: Vec::new(),
        })
    }

    pub fn from_rows<R: AsRef<[f64]>>(dim: usize, rows: &[R]) -> Result<Self> {
        let mut design = Self::new(dim)?;
        for row in rows {
            design.push(row.as_ref())?;
        }
        Ok(design)
    }

    pub fn from_flat(dim: usize, data: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(DoeError::InvalidArgument("design dimension must be positive".into()));
        }
        if !data.len().is_multiple_of(dim) {
            return Err(DoeError::LengthMismatch {
                left: data.len(),
                right: dim,
            });
        }
        for (i, &x) in data.iter().enumerate() {
            check_unit(i % dim, x)?;
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.dim)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    /// Appends a point after checking its dimension and range.
    pub fn push(&mut self, point: &[f64]) -> Result<()> {
        if point.len() != self.dim {
            return Err(DoeError::DimensionMismatch {
                expected: self.dim,
                found: point.len(),
            });
        }
        for (k, &x) in point.iter().enumerate() {
            check_unit(k, x)?;
        }
        self.data.extend_from_slice(point);
        Ok(())
    }

    /// The first `n` points as a new design.
    pub fn prefix(&self, n: usize) -> Self {
        let n = n.min(self.size());
        Self {
            dim: self.dim,
            data: self.data[..n * self.dim].to_vec(),
        }
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::with_capacity(self.data.len() * 20);
        for point in self.points() {
            for (k, x) in point.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                write!(out, "{x}").expect("writing to a String cannot fail");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut data = Vec::new();
        let mut rows = 0usize;
        let mut blank_at = None;
        for (idx, raw) in text.split('\n').enumerate() {
            let line_no = idx + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim().is_empty() {
                blank_at.get_or_insert(line_no);
                continue;
            }
            if let Some(blank) = blank_at {
                return Err(DoeError::Parse {
                    line: blank,
                    message: "empty row inside the design".into(),
                });
            }
            let mut count = 0usize;
            for (k, field) in line.split(',').enumerate() {
                let field = field.trim();
                let x: f64 = field.parse().map_err(|_| DoeError::Parse {
                    line: line_no,
                    message: format!("column {}: `{field}` is not a number", k + 1),
                })?;
                if !(0.0..=1.0).contains(&x) {
                    return Err(DoeError::Parse {
                        line: line_no,
                        message: format!("column {}: {x} lies outside [0, 1]", k + 1),
                    });
                }
                data.push(x);
                count += 1;
            }
            match dim {
                None => dim = Some(count),
                Some(d) if d != count => {
                    return Err(DoeError::Parse {
                        line: line_no,
                        message: format!("row has {count} columns, expected {d}"),
                    })
                }
                Some(_) => {}
            }
            rows += 1;
        }
        match dim {
            Some(d) if rows > 0 => Ok(Self { dim: d, data }),
            _ => Err(DoeError::Parse {
                line: 1,
                message: "design file contains no points".into(),
            }),
        }
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| DoeError::from(e).in_file(path))?;
        Self::parse_csv(&text).map_err(|e| e.in_file(path))
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_csv_string())?;
        Ok(())
    }
}

fn check_unit(coordinate: usize, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(DoeError::OutOfBounds {
            coordinate,
            value: x,
            lower: 0.0,
            upper: 1.0,
        })
    }
}

/// Axis-aligned box `[lower[k], upper[k]]` in problem units.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(DoeError::DimensionMismatch {
                expected: lower.len(),
                found: upper.len(),
            });
        }
        if lower.is_empty() {
            return Err(DoeError::InvalidArgument("bounds need at least one coordinate".into()));
        }
        for (k, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) || !lo.is_finite() || !hi.is_finite() {
                return Err(DoeError::InvalidBounds {
                    coordinate: k,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lower, upper]` on every one of `dim` axes.
    pub fn uniform(lower: f64, upper: f64, dim: usize) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| lo <= v && v <= hi)
    }

    pub fn to_unit(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x.len())?;
        x.iter()
            .enumerate()
            .map(|(k, &v)| {
                let (lo, hi) = (self.lower[k], self.upper[k]);
                if !(lo <= v && v <= hi) {
                    return Err(DoeError::OutOfBounds {
                        coordinate: k,
                        value: v,
                        lower: lo,
                        upper: hi,
                    });
                }
                Ok(((v - lo) / (hi - lo)).clamp(0.0, 1.0))
            })
            .collect()
    }

    pub fn from_unit(&self, u: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(u.len())?;
        u.iter()
            .enumerate()
            .map(|(k, &t)| {
                check_unit(k, t)?;
                let (lo, hi) = (self.lower[k], self.upper[k]);
                // exact at both end points
                Ok((lo * (1.0 - t) + hi * t).clamp(lo, hi))
            })
            .collect()
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(DoeError::DimensionMismatch {
                expected: self.dim(),
                found,
            })
        }
    }
}

/// Maps points given in problem units onto the unit hypercube.
pub fn scale_to_unit<R: AsRef<[f64]>>(points: &[R], bounds: &Bounds) -> Result<DesignMatrix> {
    let mut design = DesignMatrix::new(bounds.dim())?;
    for p in points {
        design.push(&bounds.to_unit(p.as_ref())?)?;
    }
    Ok(design)
}

/// Maps every design point back into problem units.
pub fn scale_from_unit(design: &DesignMatrix, bounds: &Bounds) -> Result<Vec<Vec<f64>>> {
    design.points().map(|p| bounds.from_unit(p)).collect()
}
