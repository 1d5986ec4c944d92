//! Exhaustive reference path for the classifier.
//!
//! Nothing here calls into [`crate::classifier`]. Matrix certificates are
//! found by enumerating `h₀` and computing `h₁ = j′ h₀ j⁻¹` with integer
//! inverses; surface certificates by enumerating admissible `(h₀, h₁)` pairs
//! and comparing `h₁ ∘ j` with `j′ ∘ h₀` pointwise on labelled sample points.

use crate::gluing::{
    is_unimodular, mat_mul, unimodular_inverse, Certificate, Gluing, GluingMatrix, HandleKind,
    ModelFlow, Sign, SurfaceGluing,
};

/// Bound on `|m₀|` used when none is given. Enough for every pair of
/// matrices with entries in `[−3, 3]`, since `|m₀| = |r − r′| / |p′| ≤ 6`.
pub const DEFAULT_SEARCH_BOUND: u32 = 8;

/// `0, 1, −1, 2, −2, …, bound, −bound`.
fn centered(bound: u32) -> impl Iterator<Item = i64> {
    let bound = i64::from(bound);
    std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k]))
}

pub fn search_certificate(f: &ModelFlow, g: &ModelFlow, bound: u32) -> Option<Certificate> {
    if !f.same_family(g) {
        return None;
    }
    match (f.gluing(), g.gluing()) {
        (Gluing::Matrix(j), Gluing::Matrix(jp)) => search_matrix(j, jp, bound),
        (Gluing::Surface(j), Gluing::Surface(jp)) => search_surface(*j, *jp),
        (Gluing::Sign(j), Gluing::Sign(jp)) => {
            // h₀ = h₁ = +1 is the only admissible choice
            let (h0, h1) = (Sign::Plus, Sign::Plus);
            (h1 * j.sign == jp.sign * h0).then_some(Certificate::Sign { h0, h1 })
        }
        _ => None,
    }
}

fn search_matrix(j: &GluingMatrix, jp: &GluingMatrix, bound: u32) -> Option<Certificate> {
    let j_inv = unimodular_inverse(&j.rows())?;
    for m0 in centered(bound) {
        for delta0 in Sign::BOTH {
            let h0 = [[1, 0], [m0, delta0.to_i64()]];
            let h1 = mat_mul(&mat_mul(&jp.rows(), &h0), &j_inv);
            if h1[0] == [1, 0] {
                if let Ok(delta1) = Sign::from_i64(h1[1][1]) {
                    return Some(Certificate::Matrix {
                        m0,
                        delta0,
                        m1: h1[1][0],
                        delta1,
                    });
                }
            }
        }
    }
    None
}

/// A point on the boundary of a surface handle: circle index and angle.
type CirclePoint = (usize, f64);

const SAMPLE_ANGLES: [f64; 2] = [0.125, 0.375];

/// Acts on a sample point: orientation-reversing maps send `x` to `1 − x`.
fn eval_surface(g: SurfaceGluing, (circle, x): CirclePoint) -> CirclePoint {
    let (target, flip) = match g {
        SurfaceGluing::Annulus { swap, signs } => (
            if swap { 1 - circle } else { circle },
            signs[circle] == Sign::Minus,
        ),
        SurfaceGluing::Mobius { sign } => (0, sign == Sign::Minus),
    };
    (target, if flip { 1.0 - x } else { x })
}

fn admissible(handle: HandleKind) -> Vec<SurfaceGluing> {
    match handle {
        HandleKind::Orientable => [false, true]
            .into_iter()
            .map(|swap| SurfaceGluing::annulus(swap, [Sign::Plus; 2]))
            .collect(),
        HandleKind::NonOrientable => vec![SurfaceGluing::mobius(Sign::Plus)],
    }
}

fn search_surface(j: SurfaceGluing, jp: SurfaceGluing) -> Option<Certificate> {
    let handle = j.handle();
    let circles = if handle == HandleKind::Orientable {
        2
    } else {
        1
    };
    let points: Vec<CirclePoint> = (0..circles)
        .flat_map(|c| SAMPLE_ANGLES.map(|x| (c, x)))
        .collect();
    let candidates = admissible(handle);
    for &h0 in &candidates {
        for &h1 in &candidates {
            let agrees = points.iter().all(|&pt| {
                eval_surface(h1, eval_surface(j, pt)) == eval_surface(jp, eval_surface(h0, pt))
            });
            if agrees {
                return Some(Certificate::Surface { h0, h1 });
            }
        }
    }
    None
}

/// All gluing data of one family, in a fixed order.
///
/// Matrices (n = 3, orientable handle) range over unimodular matrices with
/// entries in `[−entry_bound, entry_bound]`, ordered by `(r, p, s, q)`.
pub fn enumerate_gluings(dim: usize, handle: HandleKind, entry_bound: u32) -> Vec<ModelFlow> {
    match (dim, handle) {
        (0 | 1, _) => Vec::new(),
        (2, _) => SurfaceGluing::all(handle)
            .into_iter()
            .map(ModelFlow::surface)
            .collect(),
        (3, HandleKind::Orientable) => {
            let b = i64::from(entry_bound);
            let mut out = Vec::new();
            for r in -b..=b {
                for p in -b..=b {
                    for s in -b..=b {
                        for q in -b..=b {
                            if is_unimodular(&[[r, p], [s, q]]) {
                                let m = GluingMatrix::new(r, p, s, q).expect("checked");
                                out.push(ModelFlow::lens(m));
                            }
                        }
                    }
                }
            }
            out
        }
        _ => Sign::BOTH
            .iter()
            .filter_map(|&s| ModelFlow::with_sign(dim, handle, s).ok())
            .collect(),
    }
}

/// Blocks of the relation "a certificate exists within `bound`".
///
/// Each flow joins the first block whose founding member it is related to.
pub fn partition_by_equivalence(flows: &[ModelFlow], bound: u32) -> Vec<Vec<ModelFlow>> {
    let mut blocks: Vec<Vec<ModelFlow>> = Vec::new();
    for f in flows {
        match blocks
            .iter_mut()
            .find(|block| search_certificate(&block[0], f, bound).is_some())
        {
            Some(block) => block.push(*f),
            None => blocks.push(vec![*f]),
        }
    }
    blocks
}
