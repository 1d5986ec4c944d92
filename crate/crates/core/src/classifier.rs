//! Exact decision procedures on gluing data.
//!
//! Equivalence is side-preserving: a conjugacy must map the repeller handle
//! to the repeller handle, and it restricts to boundary maps `h₀` (repeller
//! side) and `h₁ = j′ h₀ j⁻¹` (attractor side), both acting trivially on the
//! generator of `π₁` of the handle. Each dimension has its own closed form
//! for when such an `h₀` exists.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gluing::{
    compose_surface, invert_surface, Certificate, Gluing, GluingMatrix, HandleKind, ManifoldId,
    ModelFlow, Sign, SurfaceGluing,
};

/// Complete invariant of a flow's equivalence class within its family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassInvariant {
    /// `(|p|, r mod |p|)`; `r` itself when `p = 0`.
    Lens {
        p: i64,
        r: i64,
    },
    /// Annulus gluing signs, sorted.
    AnnulusSigns([Sign; 2]),
    Sign(Sign),
}

/// Orientability of the surface glued from two annuli.
///
/// Searches orientations `(o₀, o₁)` of the two annuli. With `o` fixed, an
/// annulus induces opposite orientations on its two boundary circles
/// (`+o` on circle 0, `−o` on circle 1). The surface is orientable iff some
/// choice makes `j` reverse the induced orientation on every glued pair.
pub fn annulus_gluing_orientable(swap: bool, signs: [Sign; 2]) -> bool {
    let gluing = SurfaceGluing::annulus(swap, signs);
    let induced = [Sign::Plus, Sign::Minus];
    Sign::BOTH.iter().any(|&o0| {
        Sign::BOTH.iter().any(|&o1| {
            (0..2).all(|i| {
                let (target, sign) = gluing.route(i);
                sign * o0 * induced[i] == -(o1 * induced[target])
            })
        })
    })
}

pub fn manifold_of(f: &ModelFlow) -> ManifoldId {
    match *f.gluing() {
        Gluing::Surface(SurfaceGluing::Annulus { swap, signs }) => {
            if annulus_gluing_orientable(swap, signs) {
                ManifoldId::Torus
            } else {
                ManifoldId::KleinBottle
            }
        }
        Gluing::Surface(SurfaceGluing::Mobius { .. }) => ManifoldId::KleinBottle,
        Gluing::Matrix(m) => {
            let (p, q) = m.meridian_image();
            ManifoldId::lens_from_meridian(p, q)
                .expect("columns of a unimodular matrix are coprime")
        }
        Gluing::Sign(_) => match f.handle() {
            HandleKind::Orientable => ManifoldId::SphereProdCircle(f.dim()),
            HandleKind::NonOrientable => ManifoldId::TwistedSphereBundle(f.dim()),
        },
    }
}

/// Lens spaces compare by `|p′| = |p|` and `q′ ≡ ±q (mod |p|)`; everything
/// else by identity. Invalid identifiers are never homeomorphic.
pub fn manifolds_homeomorphic(a: &ManifoldId, b: &ManifoldId) -> bool {
    match (a.normalized(), b.normalized()) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

/// `(repeller twisted, attractor twisted)`.
pub fn orbit_twisted(f: &ModelFlow) -> (bool, bool) {
    let twisted = f.handle() == HandleKind::NonOrientable;
    (twisted, twisted)
}

pub fn class_invariant(f: &ModelFlow) -> ClassInvariant {
    match *f.gluing() {
        Gluing::Matrix(m) => {
            let p = m.p().abs();
            let r = if p == 0 { m.r() } else { m.r().rem_euclid(p) };
            ClassInvariant::Lens { p, r }
        }
        Gluing::Surface(SurfaceGluing::Annulus { signs, .. }) => {
            let mut sorted = signs;
            sorted.sort();
            ClassInvariant::AnnulusSigns(sorted)
        }
        Gluing::Surface(SurfaceGluing::Mobius { sign }) => ClassInvariant::Sign(sign),
        Gluing::Sign(s) => ClassInvariant::Sign(s.sign),
    }
}

/// A certificate when `f` and `g` are topologically equivalent, `None`
/// otherwise (including when they differ in dimension or handle kind).
pub fn flows_equivalent(f: &ModelFlow, g: &ModelFlow) -> Option<Certificate> {
    if !f.same_family(g) {
        return None;
    }
    match (f.gluing(), g.gluing()) {
        (Gluing::Matrix(a), Gluing::Matrix(b)) => matrix_certificate(a, b),
        (Gluing::Surface(a), Gluing::Surface(b)) => surface_certificate(*a, *b),
        (Gluing::Sign(a), Gluing::Sign(b)) => (a.sign == b.sign).then_some(Certificate::Sign {
            h0: Sign::Plus,
            h1: Sign::Plus,
        }),
        _ => None,
    }
}

/// Solves `h₁ j = j′ h₀` with `h_k = [[1,0],[m_k,δ_k]]`.
///
/// The first row gives `p = δ₀ p′` and `r = r′ + m₀ p′`; the second row is
/// then a 2×2 system in `(m₁, δ₁)` with matrix `jᵀ`, solved by Cramer's rule.
fn matrix_certificate(j: &GluingMatrix, jp: &GluingMatrix) -> Option<Certificate> {
    let (r, p, s, q) = (j.r(), j.p(), j.s(), j.q());
    let (r2, p2, s2, q2) = (jp.r(), jp.p(), jp.s(), jp.q());
    if p.abs() != p2.abs() {
        return None;
    }
    let (m0, delta0) = if p == 0 {
        // m₀ is free here; r′ = r is the whole condition
        if r != r2 {
            return None;
        }
        (0, 1)
    } else {
        if (r - r2) % p2 != 0 {
            return None;
        }
        ((r - r2) / p2, p / p2)
    };
    let rhs_a = s2 + q2 * m0;
    let rhs_b = q2 * delta0;
    let d = j.det();
    let m1 = (rhs_a * q - s * rhs_b) * d;
    let delta1 = (r * rhs_b - p * rhs_a) * d;
    let cert = Certificate::Matrix {
        m0,
        delta0: Sign::from_i64(delta0).ok()?,
        m1,
        delta1: Sign::from_i64(delta1).ok()?,
    };
    debug_assert!(cert.verify(&ModelFlow::lens(*j), &ModelFlow::lens(*jp)));
    Some(cert)
}

/// Tries `h₀ ∈ {identity, swap}` (identity only on the Möbius band) and
/// accepts when `h₁ = j′ h₀ j⁻¹` keeps every circle's orientation.
fn surface_certificate(j: SurfaceGluing, jp: SurfaceGluing) -> Option<Certificate> {
    let candidates: &[SurfaceGluing] = match j.handle() {
        HandleKind::Orientable => &[
            SurfaceGluing::Annulus {
                swap: false,
                signs: [Sign::Plus; 2],
            },
            SurfaceGluing::Annulus {
                swap: true,
                signs: [Sign::Plus; 2],
            },
        ],
        HandleKind::NonOrientable => &[SurfaceGluing::Mobius { sign: Sign::Plus }],
    };
    candidates.iter().find_map(|&h0| {
        let h1 = compose_surface(compose_surface(jp, h0).ok()?, invert_surface(j)).ok()?;
        h1.preserves_orientations()
            .then_some(Certificate::Surface { h0, h1 })
    })
}

/// Whether the classes of `r` and `−r` coincide on lens spaces with this `p`:
/// is `r + n₁p = −r + n₂p` solvable with `gcd(r, p) = 1`?
fn reversal_merges_classes(p: i64) -> bool {
    p > 0 && (0..p).any(|r| r.gcd(&p) == 1 && (2 * r) % p == 0)
}

/// Number of equivalence classes of flows on `m`.
pub fn count_classes(m: &ManifoldId) -> Result<usize> {
    Ok(match m.normalized()? {
        ManifoldId::Torus => 2,
        ManifoldId::KleinBottle => 3,
        ManifoldId::Lens { p, .. } => {
            if reversal_merges_classes(p) {
                1
            } else {
                2
            }
        }
        ManifoldId::SphereProdCircle(_) | ManifoldId::TwistedSphereBundle(_) => 2,
    })
}

/// One flow per equivalence class on `m`, in a fixed order.
///
/// Lens spaces list the `+r₀` class before `−r₀`, surfaces list `+` signs
/// before `−` and annulus gluings before Möbius gluings.
pub fn representatives(m: &ManifoldId) -> Result<Vec<ModelFlow>> {
    use Sign::{Minus, Plus};
    let reps = match m.normalized()? {
        ManifoldId::Torus => vec![
            ModelFlow::surface(SurfaceGluing::annulus(false, [Plus, Plus])),
            ModelFlow::surface(SurfaceGluing::annulus(false, [Minus, Minus])),
        ],
        ManifoldId::KleinBottle => vec![
            ModelFlow::surface(SurfaceGluing::annulus(false, [Minus, Plus])),
            ModelFlow::surface(SurfaceGluing::mobius(Plus)),
            ModelFlow::surface(SurfaceGluing::mobius(Minus)),
        ],
        ManifoldId::Lens { p, q } => lens_representatives(p, q)?,
        ManifoldId::SphereProdCircle(n) => Sign::BOTH
            .iter()
            .map(|&s| ModelFlow::with_sign(n, HandleKind::Orientable, s))
            .collect::<Result<_>>()?,
        ManifoldId::TwistedSphereBundle(n) => Sign::BOTH
            .iter()
            .map(|&s| ModelFlow::with_sign(n, HandleKind::NonOrientable, s))
            .collect::<Result<_>>()?,
    };
    debug_assert_eq!(reps.len(), count_classes(m)?);
    Ok(reps)
}

fn lens_representatives(p: i64, q: i64) -> Result<Vec<ModelFlow>> {
    if p == 0 {
        return [1, -1]
            .into_iter()
            .map(|r| GluingMatrix::new(r, 0, 0, 1).map(ModelFlow::lens))
            .collect();
    }
    // r₀ q ≡ 1 (mod p)
    let r0 = q.extended_gcd(&p).x.rem_euclid(p);
    let mut residues = vec![r0];
    if !reversal_merges_classes(p) {
        residues.push(-r0);
    }
    residues
        .into_iter()
        .map(|r| {
            // smallest |s| with r q − p s = ±1, preferring s ≥ 0
            let s = [1, -1]
                .into_iter()
                .filter(|d| (r * q - d) % p == 0)
                .map(|d| (r * q - d) / p)
                .min_by_key(|s| (s.abs(), *s < 0))
                .ok_or(Error::InvalidLens { p, q })?;
            GluingMatrix::new(r, p, s, q).map(ModelFlow::lens)
        })
        .collect()
}
