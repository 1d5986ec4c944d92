use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Ambient manifold of a flow with one attractor and one repeller.
///
/// `Lens { p, q }` is `L(p,q)`: `p ≥ 0`, `gcd(p,q) = 1`, `0 ≤ q < p` when
/// `p > 0` and `q = 1` when `p = 0`. `L(1,0)` is `S³`, `L(2,1)` is `ℝP³`,
/// `L(0,1)` is `S²×S¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ManifoldId {
    Torus,
    KleinBottle,
    Lens {
        p: i64,
        q: i64,
    },
    /// `Sⁿ⁻¹ × S¹`, `n ≥ 3`.
    SphereProdCircle(usize),
    /// `Sⁿ⁻¹ ×̃ S¹`, `n ≥ 3`.
    TwistedSphereBundle(usize),
}

impl ManifoldId {
    pub fn lens(p: i64, q: i64) -> Result<Self> {
        let ok = if p == 0 {
            q == 1
        } else {
            p > 0 && (0..p).contains(&q) && p.gcd(&q) == 1
        };
        if ok {
            Ok(ManifoldId::Lens { p, q })
        } else {
            Err(Error::InvalidLens { p, q })
        }
    }

    /// Lens space with meridian image `(p, q)`, where `p` and `q` may be any
    /// coprime integers. The result is normalized.
    pub fn lens_from_meridian(p: i64, q: i64) -> Result<Self> {
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidLens { p, q });
        }
        let p = p.abs();
        if p == 0 {
            return Ok(ManifoldId::Lens { p: 0, q: 1 });
        }
        let q = q.rem_euclid(p).min((-q).rem_euclid(p));
        Ok(ManifoldId::Lens { p, q })
    }

    /// Checks the invariants of the variant.
    pub fn validate(&self) -> Result<()> {
        match *self {
            ManifoldId::Lens { p, q } => ManifoldId::lens(p, q).map(|_| ()),
            ManifoldId::SphereProdCircle(n) | ManifoldId::TwistedSphereBundle(n) if n < 3 => Err(
                Error::InvalidManifold(format!("sphere bundles are indexed by n >= 3, got {n}")),
            ),
            _ => Ok(()),
        }
    }

    /// Canonical form up to homeomorphism: `q ↦ min(q, p − q)` for lens
    /// spaces and `S²×S¹ ↦ L(0,1)`.
    pub fn normalized(&self) -> Result<Self> {
        self.validate()?;
        Ok(match *self {
            ManifoldId::Lens { p, q } => ManifoldId::lens_from_meridian(p, q)?,
            ManifoldId::SphereProdCircle(3) => ManifoldId::Lens { p: 0, q: 1 },
            other => other,
        })
    }

    pub fn is_orientable(&self) -> bool {
        !matches!(
            self,
            ManifoldId::KleinBottle | ManifoldId::TwistedSphereBundle(_)
        )
    }
}

impl fmt::Display for ManifoldId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldId::Torus => f.write_str("Torus"),
            ManifoldId::KleinBottle => f.write_str("KleinBottle"),
            ManifoldId::Lens { p, q } => write!(f, "L({p},{q})"),
            ManifoldId::SphereProdCircle(n) => write!(f, "SxS1({n})"),
            ManifoldId::TwistedSphereBundle(n) => write!(f, "StxS1({n})"),
        }
    }
}

fn parenthesized<'a>(s: &'a str, prefix: &str) -> Option<&'a str> {
    s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')
}

/// Parses `T2`, `K2`, `L(p,q)`, `SxS1(n)`, `StxS1(n)` and the `Display`
/// names `Torus` and `KleinBottle`. The result is validated, not normalized.
impl FromStr for ManifoldId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidManifold(s.clone());
        let int = |t: &str| t.parse::<i64>().map_err(|_| bad());
        let dim = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let m = match s.as_str() {
            "T2" | "Torus" => ManifoldId::Torus,
            "K2" | "KleinBottle" => ManifoldId::KleinBottle,
            _ => {
                if let Some(args) = parenthesized(&s, "L") {
                    let (p, q) = args.split_once(',').ok_or_else(bad)?;
                    ManifoldId::lens(int(p)?, int(q)?)?
                } else if let Some(n) = parenthesized(&s, "SxS1") {
                    ManifoldId::SphereProdCircle(dim(n)?)
                } else if let Some(n) = parenthesized(&s, "StxS1") {
                    ManifoldId::TwistedSphereBundle(dim(n)?)
                } else {
                    return Err(bad());
                }
            }
        };
        m.validate()?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lens_invariants() {
        assert!(ManifoldId::lens(1, 0).is_ok());
        assert!(ManifoldId::lens(0, 1).is_ok());
        assert!(ManifoldId::lens(0, 0).is_err());
        assert!(ManifoldId::lens(4, 2).is_err());
        assert!(ManifoldId::lens(5, 5).is_err());
        assert!(ManifoldId::lens(-5, 1).is_err());
        assert!(ManifoldId::lens(5, 4).is_ok());
    }

    #[test]
    fn meridian_normalization() {
        assert_eq!(
            ManifoldId::lens_from_meridian(1, 0).unwrap(),
            ManifoldId::Lens { p: 1, q: 0 }
        );
        assert_eq!(
            ManifoldId::lens_from_meridian(2, 1).unwrap(),
            ManifoldId::Lens { p: 2, q: 1 }
        );
        assert_eq!(
            ManifoldId::lens_from_meridian(-5, 4).unwrap(),
            ManifoldId::Lens { p: 5, q: 1 }
        );
        assert_eq!(
            ManifoldId::lens_from_meridian(7, -9).unwrap(),
            ManifoldId::Lens { p: 7, q: 2 }
        );
        assert_eq!(
            ManifoldId::lens_from_meridian(0, -1).unwrap(),
            ManifoldId::Lens { p: 0, q: 1 }
        );
        assert!(ManifoldId::lens_from_meridian(4, 6).is_err());
    }

    #[test]
    fn sphere_product_in_dimension_three_is_l01() {
        assert_eq!(
            ManifoldId::SphereProdCircle(3).normalized().unwrap(),
            ManifoldId::Lens { p: 0, q: 1 }
        );
        assert!(ManifoldId::TwistedSphereBundle(2).normalized().is_err());
    }

    #[test]
    fn parse_and_display() {
        for (text, id) in [
            ("L(5,1)", ManifoldId::Lens { p: 5, q: 1 }),
            ("L(1, 0)", ManifoldId::Lens { p: 1, q: 0 }),
            ("T2", ManifoldId::Torus),
            ("KleinBottle", ManifoldId::KleinBottle),
            ("SxS1(4)", ManifoldId::SphereProdCircle(4)),
            ("StxS1(4)", ManifoldId::TwistedSphereBundle(4)),
        ] {
            let parsed: ManifoldId = text.parse().unwrap();
            assert_eq!(parsed, id);
            assert_eq!(parsed.to_string().parse::<ManifoldId>().unwrap(), id);
        }
        for bad in ["L(4,2)", "L(5)", "S3", "SxS1(x)", "StxS1(2)", ""] {
            assert!(bad.parse::<ManifoldId>().is_err(), "{bad}");
        }
    }
}
