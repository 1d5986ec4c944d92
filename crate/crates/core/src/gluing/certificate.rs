use super::{compose_surface, mat_mul, Gluing, Mat2, ModelFlow, Sign, SurfaceGluing};

/// Witness that two model flows are topologically equivalent.
///
/// It records the boundary actions of `h₀` (repeller side) and
/// `h₁ = j′ h₀ j⁻¹` (attractor side). Both must act trivially on the
/// generator of `π₁` of the handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// `h_{k*} = [[1, 0], [m_k, δ_k]]`.
    Matrix {
        m0: i64,
        delta0: Sign,
        m1: i64,
        delta1: Sign,
    },
    Surface {
        h0: SurfaceGluing,
        h1: SurfaceGluing,
    },
    Sign {
        h0: Sign,
        h1: Sign,
    },
}

fn lower_triangular(m: i64, delta: Sign) -> Mat2 {
    [[1, 0], [m, delta.to_i64()]]
}

impl Certificate {
    pub fn h0_matrix(&self) -> Option<Mat2> {
        match *self {
            Certificate::Matrix { m0, delta0, .. } => Some(lower_triangular(m0, delta0)),
            _ => None,
        }
    }

    pub fn h1_matrix(&self) -> Option<Mat2> {
        match *self {
            Certificate::Matrix { m1, delta1, .. } => Some(lower_triangular(m1, delta1)),
            _ => None,
        }
    }

    /// Checks `h₁ j = j′ h₀` together with the `i_*` conditions on `h₀`, `h₁`.
    pub fn verify(&self, j: &ModelFlow, j_prime: &ModelFlow) -> bool {
        if !j.same_family(j_prime) {
            return false;
        }
        match (*self, j.gluing(), j_prime.gluing()) {
            (Certificate::Matrix { .. }, Gluing::Matrix(a), Gluing::Matrix(b)) => {
                // lower-triangular form with unit diagonal entry is the i_* condition
                let h0 = self.h0_matrix().unwrap();
                let h1 = self.h1_matrix().unwrap();
                mat_mul(&h1, &a.rows()) == mat_mul(&b.rows(), &h0)
            }
            (Certificate::Surface { h0, h1 }, Gluing::Surface(a), Gluing::Surface(b)) => {
                if !(h0.preserves_orientations() && h1.preserves_orientations()) {
                    return false;
                }
                match (compose_surface(h1, *a), compose_surface(*b, h0)) {
                    (Ok(left), Ok(right)) => left == right,
                    _ => false,
                }
            }
            (Certificate::Sign { h0, h1 }, Gluing::Sign(a), Gluing::Sign(b)) => {
                h0.is_plus() && h1.is_plus() && h1 * a.sign == b.sign * h0
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::{GluingMatrix, HandleKind};

    fn lens(r: i64, p: i64, s: i64, q: i64) -> ModelFlow {
        ModelFlow::lens(GluingMatrix::new(r, p, s, q).unwrap())
    }

    #[test]
    fn matrix_certificate_check() {
        let j = lens(1, 2, 0, 1);
        let jp = lens(-1, 2, 1, -1);
        let good = Certificate::Matrix {
            m0: 1,
            delta0: Sign::Plus,
            m1: 0,
            delta1: Sign::Minus,
        };
        assert!(good.verify(&j, &jp));
        let bad = Certificate::Matrix {
            m0: 1,
            delta0: Sign::Plus,
            m1: -1,
            delta1: Sign::Plus,
        };
        assert!(!bad.verify(&j, &jp));
    }

    #[test]
    fn surface_certificate_requires_positive_signs() {
        use Sign::{Minus as M, Plus as P};
        let j = ModelFlow::surface(SurfaceGluing::annulus(false, [M, P]));
        let jp = ModelFlow::surface(SurfaceGluing::annulus(false, [P, M]));
        let swap = SurfaceGluing::annulus(true, [P, P]);
        let cert = Certificate::Surface { h0: swap, h1: swap };
        assert!(cert.verify(&j, &jp));
        let neg = SurfaceGluing::annulus(false, [M, M]);
        let fake = Certificate::Surface { h0: neg, h1: neg };
        assert!(!fake.verify(&j, &j));
    }

    #[test]
    fn certificate_kind_must_match_flow() {
        let j = ModelFlow::with_sign(3, HandleKind::NonOrientable, Sign::Plus).unwrap();
        let cert = Certificate::Sign {
            h0: Sign::Plus,
            h1: Sign::Plus,
        };
        assert!(cert.verify(&j, &j));
        let other = ModelFlow::with_sign(4, HandleKind::NonOrientable, Sign::Plus).unwrap();
        assert!(!cert.verify(&j, &other));
        let m = Certificate::Matrix {
            m0: 0,
            delta0: Sign::Plus,
            m1: 0,
            delta1: Sign::Plus,
        };
        assert!(!m.verify(&j, &j));
    }
}
