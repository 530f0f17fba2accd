//! Binary field snapshots.
//!
//! Layout (little-endian): magic `ZKFLD1`, `u16` version, `u8` kind
//! (0 real scalar, 1 complex 3-vector), `u32` points per dimension, `f64`
//! box length, `f64` time, `f64` alpha (−1 for the limit system), then the
//! physical-space samples as `f64`, x fastest. Vector payloads store each
//! component in turn with values interleaved as `(re, im)`.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;
use zakharov::{Alpha, Field, Grid, Repr, ScalarField, VectorField};

pub const MAGIC: &[u8; 6] = b"ZKFLD1";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 6 + 2 + 1 + 4 + 8 * 3;

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("not a field snapshot (bad magic)")]
    BadMagic,
    #[error("unsupported snapshot version {0}")]
    BadVersion(u16),
    #[error("unknown field kind {0}")]
    BadKind(u8),
    #[error("snapshot truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("snapshot has {0} trailing bytes")]
    TrailingBytes(usize),
    #[error("invalid snapshot header: {0}")]
    BadHeader(String),
    #[error("snapshot holds a {found} field, expected {expected}")]
    WrongKind {
        expected: &'static str,
        found: &'static str,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnapshotKind {
    RealScalar = 0,
    ComplexVector = 1,
}

impl SnapshotKind {
    fn name(self) -> &'static str {
        match self {
            SnapshotKind::RealScalar => "real scalar",
            SnapshotKind::ComplexVector => "complex vector",
        }
    }

    fn doubles_per_point(self) -> usize {
        match self {
            SnapshotKind::RealScalar => 1,
            SnapshotKind::ComplexVector => 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FieldSnapshot {
    pub kind: SnapshotKind,
    pub n: u32,
    pub length: f64,
    pub time: f64,
    /// `−1` encodes α = ∞.
    pub alpha: f64,
    pub payload: Vec<f64>,
}

fn encode_alpha(alpha: Alpha) -> f64 {
    match alpha {
        Alpha::Finite(a) => a.get(),
        Alpha::Infinite => -1.0,
    }
}

impl FieldSnapshot {
    pub fn from_scalar(f: &ScalarField, time: f64, alpha: Alpha) -> Self {
        let g = f.grid();
        let payload = f.to_physical().values().iter().map(|v| v.re).collect();
        Self {
            kind: SnapshotKind::RealScalar,
            n: g.n() as u32,
            length: g.length(),
            time,
            alpha: encode_alpha(alpha),
            payload,
        }
    }

    pub fn from_vector(u: &VectorField, time: f64, alpha: Alpha) -> Self {
        let g = u.grid();
        let u = u.to_physical();
        let mut payload = Vec::with_capacity(6 * g.len());
        for c in u.components() {
            for v in c {
                payload.push(v.re);
                payload.push(v.im);
            }
        }
        Self {
            kind: SnapshotKind::ComplexVector,
            n: g.n() as u32,
            length: g.length(),
            time,
            alpha: encode_alpha(alpha),
            payload,
        }
    }

    /// `None` for α = ∞.
    pub fn alpha(&self) -> Option<f64> {
        (self.alpha >= 1.0).then_some(self.alpha)
    }

    pub fn grid(&self) -> Result<Arc<Grid>, SnapshotError> {
        Grid::new(self.n as usize, self.length).map_err(|e| SnapshotError::BadHeader(e.to_string()))
    }

    fn expect_kind(&self, kind: SnapshotKind) -> Result<(), SnapshotError> {
        if self.kind != kind {
            return Err(SnapshotError::WrongKind {
                expected: kind.name(),
                found: self.kind.name(),
            });
        }
        Ok(())
    }

    pub fn to_scalar(&self) -> Result<ScalarField, SnapshotError> {
        self.expect_kind(SnapshotKind::RealScalar)?;
        ScalarField::from_real_values(&self.grid()?, self.payload.clone())
            .map_err(|e| SnapshotError::BadHeader(e.to_string()))
    }

    pub fn to_vector(&self) -> Result<VectorField, SnapshotError> {
        self.expect_kind(SnapshotKind::ComplexVector)?;
        let grid = self.grid()?;
        let len = grid.len();
        let comps = [0, 1, 2].map(|c| {
            (0..len)
                .map(|i| {
                    let k = 2 * (c * len + i);
                    Complex64::new(self.payload[k], self.payload[k + 1])
                })
                .collect::<Vec<_>>()
        });
        VectorField::from_components(&grid, Repr::Physical, comps)
            .map_err(|e| SnapshotError::BadHeader(e.to_string()))
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * self.payload.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.push(self.kind as u8);
        out.extend_from_slice(&self.n.to_le_bytes());
        out.extend_from_slice(&self.length.to_le_bytes());
        out.extend_from_slice(&self.time.to_le_bytes());
        out.extend_from_slice(&self.alpha.to_le_bytes());
        for v in &self.payload {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, SnapshotError> {
        if bytes.len() < HEADER_LEN {
            if !bytes.is_empty() && !MAGIC.starts_with(&bytes[..bytes.len().min(6)]) {
                return Err(SnapshotError::BadMagic);
            }
            return Err(SnapshotError::Truncated {
                expected: HEADER_LEN,
                found: bytes.len(),
            });
        }
        if &bytes[..6] != MAGIC {
            return Err(SnapshotError::BadMagic);
        }
        let u16_at = |o: usize| u16::from_le_bytes(bytes[o..o + 2].try_into().expect("2 bytes"));
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().expect("4 bytes"));
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().expect("8 bytes"));
        let version = u16_at(6);
        if version != VERSION {
            return Err(SnapshotError::BadVersion(version));
        }
        let kind = match bytes[8] {
            0 => SnapshotKind::RealScalar,
            1 => SnapshotKind::ComplexVector,
            k => return Err(SnapshotError::BadKind(k)),
        };
        let n = u32_at(9);
        let (length, time, alpha) = (f64_at(13), f64_at(21), f64_at(29));
        if n < 4 || !n.is_power_of_two() || n > 1024 {
            return Err(SnapshotError::BadHeader(format!("grid size {n}")));
        }
        let count = (n as usize).pow(3) * kind.doubles_per_point();
        let expected = HEADER_LEN + 8 * count;
        if bytes.len() < expected {
            return Err(SnapshotError::Truncated {
                expected,
                found: bytes.len(),
            });
        }
        if bytes.len() > expected {
            return Err(SnapshotError::TrailingBytes(bytes.len() - expected));
        }
        let payload = bytes[HEADER_LEN..]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        Ok(Self {
            kind,
            n,
            length,
            time,
            alpha,
            payload,
        })
    }

    pub fn write(&self, path: &Path) -> Result<(), SnapshotError> {
        let mut f = fs::File::create(path)?;
        f.write_all(&self.to_bytes())?;
        f.sync_all()?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, SnapshotError> {
        Self::from_bytes(&fs::read(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (ScalarField, VectorField) {
        let g = Grid::new(4, 2.5).unwrap();
        let n = ScalarField::from_real_fn(&g, |x| x[0] - 0.3 * x[2]);
        let u = VectorField::from_fn(&g, |x| {
            [
                Complex64::new(x[1], -x[0]),
                Complex64::new(0.1, x[2]),
                Complex64::new(-1.0, 1e-300),
            ]
        });
        (n, u)
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let (n, u) = sample();
        for snap in [
            FieldSnapshot::from_scalar(&n, 0.25, Alpha::Infinite),
            FieldSnapshot::from_vector(&u, 1.0 / 3.0, Alpha::finite(8.0).unwrap()),
        ] {
            let bytes = snap.to_bytes();
            let back = FieldSnapshot::from_bytes(&bytes).unwrap();
            assert_eq!(back.to_bytes(), bytes);
            assert_eq!(back, snap);
        }
        let snap = FieldSnapshot::from_vector(&u, 0.0, Alpha::Infinite);
        assert_eq!(snap.alpha, -1.0);
        assert_eq!(snap.alpha(), None);
        let back = snap.to_vector().unwrap();
        assert_eq!(back.components(), u.components());
        assert_eq!(
            FieldSnapshot::from_scalar(&n, 0.0, Alpha::Infinite)
                .to_scalar()
                .unwrap()
                .values(),
            n.values()
        );
    }

    #[test]
    fn header_layout() {
        let (n, _) = sample();
        let bytes = FieldSnapshot::from_scalar(&n, 2.0, Alpha::finite(3.0).unwrap()).to_bytes();
        assert_eq!(&bytes[..6], b"ZKFLD1");
        assert_eq!(&bytes[6..8], &[1, 0]);
        assert_eq!(bytes[8], 0);
        assert_eq!(&bytes[9..13], &[4, 0, 0, 0]);
        assert_eq!(f64::from_le_bytes(bytes[29..37].try_into().unwrap()), 3.0);
        assert_eq!(bytes.len(), HEADER_LEN + 8 * 64);
    }

    #[test]
    fn corrupt_inputs_are_errors() {
        let (_, u) = sample();
        let bytes = FieldSnapshot::from_vector(&u, 0.0, Alpha::Infinite).to_bytes();
        assert!(matches!(
            FieldSnapshot::from_bytes(&bytes[..bytes.len() - 3]),
            Err(SnapshotError::Truncated { .. })
        ));
        assert!(matches!(
            FieldSnapshot::from_bytes(&bytes[..10]),
            Err(SnapshotError::Truncated { .. })
        ));
        let mut bad = bytes.clone();
        bad[0] = b'X';
        assert!(matches!(
            FieldSnapshot::from_bytes(&bad),
            Err(SnapshotError::BadMagic)
        ));
        let mut bad = bytes.clone();
        bad[8] = 7;
        assert!(matches!(
            FieldSnapshot::from_bytes(&bad),
            Err(SnapshotError::BadKind(7))
        ));
        let mut long = bytes.clone();
        long.push(0);
        assert!(matches!(
            FieldSnapshot::from_bytes(&long),
            Err(SnapshotError::TrailingBytes(1))
        ));
        let snap = FieldSnapshot::from_bytes(&bytes).unwrap();
        assert!(snap.to_scalar().is_err());
    }
}
