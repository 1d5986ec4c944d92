use super::{boundary_radius, frac, norm};
use crate::error::{Error, Result};
use crate::gluing::{Gluing, HandleKind, ModelFlow, SurfaceGluing};
use crate::scalar::Scalar;

/// A point of the boundary `∂𝕍ⁿ±`.
///
/// `lambda` is the longitude coordinate (the height `h` of the point on
/// `|y| = 2^{−h}`). The variants depend on the family:
///
/// * `Circle` for `n = 2` with an annulus handle: circle 1 is `y > 0`,
///   circle 2 is `y < 0`.
/// * `Torus` for `n = 3` with a solid-torus handle: `mu` is the angle of
///   `y` in turns. The longitude runs along `lambda`, the meridian along `mu`.
/// * `Sphere` otherwise: `u = y/|y|`. On a nonorientable handle
///   `(u, 1) ~ (u′, 0)` with the first coordinate of `u` flipped.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryPoint<T> {
    Circle { component: u8, lambda: T },
    Torus { lambda: T, mu: T },
    Sphere { u: Vec<T>, lambda: T },
}

impl<T: Scalar> BoundaryPoint<T> {
    pub fn lambda(&self) -> T {
        match self {
            BoundaryPoint::Circle { lambda, .. }
            | BoundaryPoint::Torus { lambda, .. }
            | BoundaryPoint::Sphere { lambda, .. } => *lambda,
        }
    }

    /// Boundary coordinates of a chart point with `|y| = 2^{−λ}`.
    pub fn from_chart(f: &ModelFlow, y: &[T], lambda: T) -> BoundaryPoint<T> {
        match (f.dim(), f.handle()) {
            (2, HandleKind::Orientable) => BoundaryPoint::Circle {
                component: if y[0] > T::zero() { 1 } else { 2 },
                lambda,
            },
            (3, HandleKind::Orientable) => BoundaryPoint::Torus {
                lambda,
                mu: frac(y[1].atan2(y[0]) / T::TAU()),
            },
            _ => {
                let r = norm(y);
                BoundaryPoint::Sphere {
                    u: y.iter().map(|v| *v / r).collect(),
                    lambda,
                }
            }
        }
    }

    /// The chart coordinates `(y, h)` of this boundary point.
    pub fn to_chart(&self) -> (Vec<T>, T) {
        let lambda = self.lambda();
        let r = boundary_radius(lambda);
        let y = match self {
            BoundaryPoint::Circle { component, .. } => {
                vec![if *component == 1 { r } else { -r }]
            }
            BoundaryPoint::Torus { mu, .. } => {
                let angle = *mu * T::TAU();
                vec![r * angle.cos(), r * angle.sin()]
            }
            BoundaryPoint::Sphere { u, .. } => u.iter().map(|v| *v * r).collect(),
        };
        (y, lambda)
    }

    fn check_reduced(&self) -> Result<()> {
        let unit = |x: T| x >= T::zero() && x < T::one();
        let ok = match self {
            BoundaryPoint::Circle { component, lambda } => {
                (*component == 1 || *component == 2) && unit(*lambda)
            }
            BoundaryPoint::Torus { lambda, mu } => unit(*lambda) && unit(*mu),
            BoundaryPoint::Sphere { u, lambda } => !u.is_empty() && unit(*lambda),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::NotReduced(format!("boundary point {self:?}")))
        }
    }
}

/// A concrete boundary homeomorphism inducing the gluing datum of `f`.
///
/// * matrix: the linear torus map `(λ, μ) ↦ (rλ + pμ, sλ + qμ) mod 1`,
/// * annulus: circle routing, `λ ↦ ±λ mod 1` per source circle,
/// * Möbius band: `φ ↦ ±φ mod 1` on the boundary circle `φ = (λ + k)/2`,
///   `k = 0` on `u = +1` and `k = 1` on `u = −1`,
/// * sign data: identity for `+1`, `(u, λ) ↦ (u, 1 − λ)` for `−1`.
pub fn realize_gluing<T: Scalar>(f: &ModelFlow, b: &BoundaryPoint<T>) -> Result<BoundaryPoint<T>> {
    realize(f.handle(), f.gluing(), b)
}

/// Realization of `j⁻¹`; inverse to [`realize_gluing`] pointwise.
pub fn realize_gluing_inverse<T: Scalar>(
    f: &ModelFlow,
    b: &BoundaryPoint<T>,
) -> Result<BoundaryPoint<T>> {
    realize(f.handle(), &f.inverse_gluing(), b)
}

fn reflect<T: Scalar>(x: T, plus: bool) -> T {
    if plus {
        x
    } else {
        frac(-x)
    }
}

fn realize<T: Scalar>(
    handle: HandleKind,
    gluing: &Gluing,
    b: &BoundaryPoint<T>,
) -> Result<BoundaryPoint<T>> {
    b.check_reduced()?;
    let int = |v: i64| T::of(v as f64);
    match (gluing, b) {
        (Gluing::Matrix(m), BoundaryPoint::Torus { lambda, mu }) => Ok(BoundaryPoint::Torus {
            lambda: frac(int(m.r()) * *lambda + int(m.p()) * *mu),
            mu: frac(int(m.s()) * *lambda + int(m.q()) * *mu),
        }),
        (
            Gluing::Surface(g @ SurfaceGluing::Annulus { .. }),
            BoundaryPoint::Circle { component, lambda },
        ) => {
            let (target, sign) = g.route(usize::from(*component - 1));
            Ok(BoundaryPoint::Circle {
                component: target as u8 + 1,
                lambda: reflect(*lambda, sign.is_plus()),
            })
        }
        (Gluing::Surface(SurfaceGluing::Mobius { sign }), BoundaryPoint::Sphere { u, lambda })
            if u.len() == 1 =>
        {
            let sheet = if u[0] > T::zero() {
                T::zero()
            } else {
                T::one()
            };
            let phi = reflect((*lambda + sheet) / T::two(), sign.is_plus());
            let doubled = phi * T::two();
            let (u, lambda) = if doubled < T::one() {
                (T::one(), doubled)
            } else {
                (-T::one(), doubled - T::one())
            };
            Ok(BoundaryPoint::Sphere { u: vec![u], lambda })
        }
        (Gluing::Sign(s), BoundaryPoint::Sphere { u, lambda }) => {
            if s.sign.is_plus() {
                return Ok(b.clone());
            }
            if *lambda == T::zero() {
                // λ = 1 is identified with λ = 0 through one deck map
                let mut u = u.clone();
                if handle == HandleKind::NonOrientable {
                    u[0] = -u[0];
                }
                Ok(BoundaryPoint::Sphere {
                    u,
                    lambda: T::zero(),
                })
            } else {
                Ok(BoundaryPoint::Sphere {
                    u: u.clone(),
                    lambda: T::one() - *lambda,
                })
            }
        }
        _ => Err(Error::InvalidParameter(format!(
            "boundary point {b:?} does not belong to this gluing"
        ))),
    }
}
