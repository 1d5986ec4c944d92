use std::fmt;

use super::{HandleKind, Sign};
use crate::error::{Error, Result};

/// Boundary homeomorphism of a two-dimensional handle, up to isotopy.
///
/// The annulus (orientable handle) has two boundary circles, indexed 0 and 1
/// here (1 and 2 in user-facing output). A gluing sends circle `i` to circle
/// `σ(i)` with `λ ↦ signs[i]·λ`, where `σ` is the swap when `swap` is set.
/// Signs are indexed by the source circle. The Möbius band (nonorientable
/// handle) has a single boundary circle and carries one sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceGluing {
    Annulus { swap: bool, signs: [Sign; 2] },
    Mobius { sign: Sign },
}

impl SurfaceGluing {
    pub fn annulus(swap: bool, signs: [Sign; 2]) -> Self {
        SurfaceGluing::Annulus { swap, signs }
    }

    pub fn mobius(sign: Sign) -> Self {
        SurfaceGluing::Mobius { sign }
    }

    pub fn identity(handle: HandleKind) -> Self {
        match handle {
            HandleKind::Orientable => SurfaceGluing::annulus(false, [Sign::Plus; 2]),
            HandleKind::NonOrientable => SurfaceGluing::mobius(Sign::Plus),
        }
    }

    pub fn handle(&self) -> HandleKind {
        match self {
            SurfaceGluing::Annulus { .. } => HandleKind::Orientable,
            SurfaceGluing::Mobius { .. } => HandleKind::NonOrientable,
        }
    }

    /// Where boundary circle `component` goes and with which orientation sign.
    pub fn route(&self, component: usize) -> (usize, Sign) {
        match *self {
            SurfaceGluing::Annulus { swap, signs } => {
                let target = if swap { 1 - component } else { component };
                (target, signs[component])
            }
            SurfaceGluing::Mobius { sign } => (0, sign),
        }
    }

    /// Every boundary circle keeps its orientation.
    pub fn preserves_orientations(&self) -> bool {
        match self {
            SurfaceGluing::Annulus { signs, .. } => signs.iter().all(|s| s.is_plus()),
            SurfaceGluing::Mobius { sign } => sign.is_plus(),
        }
    }

    /// All eight annulus gluings followed by the two Möbius gluings.
    pub fn all(handle: HandleKind) -> Vec<SurfaceGluing> {
        match handle {
            HandleKind::Orientable => [false, true]
                .into_iter()
                .flat_map(|swap| {
                    Sign::BOTH.into_iter().flat_map(move |a| {
                        Sign::BOTH
                            .into_iter()
                            .map(move |b| SurfaceGluing::annulus(swap, [a, b]))
                    })
                })
                .collect(),
            HandleKind::NonOrientable => {
                Sign::BOTH.into_iter().map(SurfaceGluing::mobius).collect()
            }
        }
    }
}

/// Gluing datum of `a ∘ b`.
pub fn compose_surface(a: SurfaceGluing, b: SurfaceGluing) -> Result<SurfaceGluing> {
    match (a, b) {
        (SurfaceGluing::Annulus { swap: sa, .. }, SurfaceGluing::Annulus { swap: sb, .. }) => {
            let mut signs = [Sign::Plus; 2];
            for (i, sign) in signs.iter_mut().enumerate() {
                let (mid, sign_b) = b.route(i);
                let (_, sign_a) = a.route(mid);
                *sign = sign_b * sign_a;
            }
            Ok(SurfaceGluing::annulus(sa ^ sb, signs))
        }
        (SurfaceGluing::Mobius { sign: x }, SurfaceGluing::Mobius { sign: y }) => {
            Ok(SurfaceGluing::mobius(x * y))
        }
        _ => Err(Error::HandleMismatch {
            left: a.handle(),
            right: b.handle(),
        }),
    }
}

pub fn invert_surface(a: SurfaceGluing) -> SurfaceGluing {
    match a {
        SurfaceGluing::Annulus { swap, signs } => {
            let mut inv = [Sign::Plus; 2];
            for (i, &sign) in signs.iter().enumerate() {
                let (target, _) = a.route(i);
                inv[target] = sign;
            }
            SurfaceGluing::annulus(swap, inv)
        }
        SurfaceGluing::Mobius { .. } => a,
    }
}

impl fmt::Display for SurfaceGluing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceGluing::Annulus { swap, signs } => write!(
                f,
                "({},({},{}))",
                if *swap { "swap" } else { "no-swap" },
                signs[0],
                signs[1]
            ),
            SurfaceGluing::Mobius { sign } => write!(f, "({sign})"),
        }
    }
}
