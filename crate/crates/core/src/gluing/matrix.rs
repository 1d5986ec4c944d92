use std::fmt;

use crate::error::{Error, Result};

/// Row-major 2×2 integer matrix acting on column vectors.
pub type Mat2 = [[i64; 2]; 2];

pub fn det(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub fn is_unimodular(m: &Mat2) -> bool {
    det(m).abs() == 1
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Integer inverse of a matrix with `det = ±1` (adjugate times det).
pub fn unimodular_inverse(m: &Mat2) -> Option<Mat2> {
    let d = det(m);
    if d.abs() != 1 {
        return None;
    }
    Some([[d * m[1][1], -d * m[0][1]], [-d * m[1][0], d * m[0][0]]])
}

/// `j_*` on `π₁(∂𝕍³₊) = ℤα ⊕ ℤβ`.
///
/// Columns are images of the longitude and meridian: `α ↦ (r, s)`,
/// `β ↦ (p, q)`, so the matrix reads `[[r, p], [s, q]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GluingMatrix {
    r: i64,
    p: i64,
    s: i64,
    q: i64,
}

impl GluingMatrix {
    pub fn new(r: i64, p: i64, s: i64, q: i64) -> Result<Self> {
        Self::from_rows([[r, p], [s, q]])
    }

    pub fn from_rows(rows: Mat2) -> Result<Self> {
        if !is_unimodular(&rows) {
            return Err(Error::NotUnimodular { det: det(&rows) });
        }
        Ok(GluingMatrix {
            r: rows[0][0],
            p: rows[0][1],
            s: rows[1][0],
            q: rows[1][1],
        })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn rows(&self) -> Mat2 {
        [[self.r, self.p], [self.s, self.q]]
    }

    pub fn det(&self) -> i64 {
        det(&self.rows())
    }

    /// Image of the meridian, `(p, q)`.
    pub fn meridian_image(&self) -> (i64, i64) {
        (self.p, self.q)
    }

    pub fn inverse(&self) -> GluingMatrix {
        let inv = unimodular_inverse(&self.rows()).expect("constructor guarantees |det| = 1");
        GluingMatrix {
            r: inv[0][0],
            p: inv[0][1],
            s: inv[1][0],
            q: inv[1][1],
        }
    }
}

impl fmt::Display for GluingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.r, self.p, self.s, self.q)
    }
}
