//! Gluing data for model flows.
//!
//! A model flow is two copies of the same handle (generalized solid torus or
//! solid Klein bottle) glued along their boundaries by a homeomorphism `j`.
//! Only the action of `j` that the equivalence criteria can see is stored:
//!
//! * `n = 2`: routing of boundary circles and the orientation sign on each,
//! * `n = 3`, orientable handle: the unimodular matrix of `j_*` on
//!   `π₁(T²)` in the (longitude, meridian) basis,
//! * everything else: the sign by which `j` acts on the image of the
//!   boundary generator in `π₁` of the handle.

mod certificate;
mod manifold;
mod matrix;
mod surface;

use std::fmt;
use std::ops::{Mul, Neg};

pub use certificate::Certificate;
pub use manifold::ManifoldId;
pub use matrix::{det, is_unimodular, mat_mul, unimodular_inverse, GluingMatrix, Mat2};
pub use surface::{compose_surface, invert_surface, SurfaceGluing};

use crate::error::{Error, Result};

/// An orientation sign. `Plus` sorts before `Minus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn from_i64(value: i64) -> Result<Sign> {
        match value {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidSign(other)),
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which handle the two glued pieces are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HandleKind {
    /// `𝔻ⁿ⁻¹ × S¹`, quotient of the cover by `g₊`.
    Orientable,
    /// `𝔻ⁿ⁻¹ ×̃ S¹`, quotient of the cover by `g₋`.
    NonOrientable,
}

impl HandleKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HandleKind::Orientable => "orientable",
            HandleKind::NonOrientable => "nonorientable",
        }
    }

    /// Sign applied to the first coordinate by one deck transformation.
    pub fn deck_sign(self) -> Sign {
        match self {
            HandleKind::Orientable => Sign::Plus,
            HandleKind::NonOrientable => Sign::Minus,
        }
    }
}

impl fmt::Display for HandleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for HandleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "orientable" => Ok(HandleKind::Orientable),
            "nonorientable" => Ok(HandleKind::NonOrientable),
            other => Err(Error::MalformedSpec(format!(
                "unknown handle kind {other:?}"
            ))),
        }
    }
}

/// Action of `j` on the generator of `π₁` of the handle: `[c] ↦ ±[c]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignGluing {
    pub sign: Sign,
}

impl SignGluing {
    pub fn new(sign: Sign) -> Self {
        SignGluing { sign }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gluing {
    Surface(SurfaceGluing),
    Matrix(GluingMatrix),
    Sign(SignGluing),
}

/// A model flow `f^t_j`: dimension, handle kind and gluing datum.
///
/// The constructor enforces that the gluing variant matches `(dim, handle)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelFlow {
    dim: usize,
    handle: HandleKind,
    gluing: Gluing,
}

impl ModelFlow {
    pub fn new(dim: usize, handle: HandleKind, gluing: Gluing) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        let fits = match (&gluing, dim, handle) {
            (Gluing::Surface(s), 2, h) => s.handle() == h,
            (Gluing::Matrix(_), 3, HandleKind::Orientable) => true,
            (Gluing::Sign(_), 3, HandleKind::NonOrientable) => true,
            (Gluing::Sign(_), d, _) => d > 3,
            _ => false,
        };
        if !fits {
            return Err(Error::GluingMismatch { dim, handle });
        }
        Ok(ModelFlow {
            dim,
            handle,
            gluing,
        })
    }

    pub fn surface(gluing: SurfaceGluing) -> Self {
        ModelFlow {
            dim: 2,
            handle: gluing.handle(),
            gluing: Gluing::Surface(gluing),
        }
    }

    pub fn lens(matrix: GluingMatrix) -> Self {
        ModelFlow {
            dim: 3,
            handle: HandleKind::Orientable,
            gluing: Gluing::Matrix(matrix),
        }
    }

    pub fn with_sign(dim: usize, handle: HandleKind, sign: Sign) -> Result<Self> {
        ModelFlow::new(dim, handle, Gluing::Sign(SignGluing::new(sign)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn handle(&self) -> HandleKind {
        self.handle
    }

    pub fn gluing(&self) -> &Gluing {
        &self.gluing
    }

    /// Gluing datum of `j⁻¹`.
    pub fn inverse_gluing(&self) -> Gluing {
        match self.gluing {
            Gluing::Surface(s) => Gluing::Surface(invert_surface(s)),
            Gluing::Matrix(m) => Gluing::Matrix(m.inverse()),
            Gluing::Sign(s) => Gluing::Sign(s),
        }
    }

    /// True when both flows live on the same kind of handle in the same dimension.
    pub fn same_family(&self, other: &ModelFlow) -> bool {
        self.dim == other.dim && self.handle == other.handle
    }
}

impl fmt::Display for ModelFlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {} ", self.dim, self.handle)?;
        match &self.gluing {
            Gluing::Surface(s) => write!(f, "{s}"),
            Gluing::Matrix(m) => write!(f, "{m}"),
            Gluing::Sign(s) => write!(f, "sign {}", s.sign),
        }
    }
}
