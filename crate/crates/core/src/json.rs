//! JSON encodings shared by the library and the command line.
//!
//! Flow spec:
//! `{"dim": n, "handle": "orientable"|"nonorientable", "gluing": G}` with `G`
//! one of `{"matrix": [[r,p],[s,q]]}`, `{"swap": bool, "signs": [±1,±1]}` or
//! `{"sign": ±1}` (the last one also encodes the Möbius-band gluing at
//! `n = 2`).
//!
//! Trajectory: `{"flow": spec, "samples": [[t, chart, [y…], h]…],
//! "transits": [[t, before, after]…]}` with chart `"R"` or `"A"`.
//!
//! Output is deterministic: keys are sorted and reals are rounded to 12
//! significant digits.

use serde_json::{json, Map, Value};

use crate::classifier::ClassInvariant;
use crate::error::{Error, Result};
use crate::gluing::{
    Certificate, Gluing, GluingMatrix, HandleKind, ModelFlow, Sign, SignGluing, SurfaceGluing,
};
use crate::scalar::Scalar;
use crate::simulator::{BoundaryPoint, Chart, ChartPoint, Trajectory};

pub const SCHEMA_VERSION: u32 = 1;

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedSpec(msg.into())
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn real<T: Scalar>(x: T) -> Value {
    json!(round_sig(x.to_f64().unwrap_or(f64::NAN)))
}

fn sign_value(s: Sign) -> Value {
    json!(s.to_i64())
}

fn as_sign(v: &Value) -> Result<Sign> {
    let n = v
        .as_i64()
        .ok_or_else(|| malformed(format!("expected ±1, got {v}")))?;
    Sign::from_i64(n)
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| malformed(format!("{what} must be an object")))
}

fn only_keys(map: &Map<String, Value>, allowed: &[&str], what: &str) -> Result<()> {
    match map.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(malformed(format!("unknown field {k:?} in {what}"))),
        None => Ok(()),
    }
}

pub fn parse_flow_spec(text: &str) -> Result<ModelFlow> {
    flow_from_value(&serde_json::from_str(text)?)
}

pub fn flow_from_value(v: &Value) -> Result<ModelFlow> {
    let map = object(v, "flow spec")?;
    only_keys(map, &["dim", "handle", "gluing"], "flow spec")?;
    let dim = map
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| malformed("\"dim\" must be a positive integer"))? as usize;
    let handle: HandleKind = map
        .get("handle")
        .and_then(Value::as_str)
        .ok_or_else(|| malformed("\"handle\" must be a string"))?
        .parse()?;
    let g = object(
        map.get("gluing")
            .ok_or_else(|| malformed("missing \"gluing\""))?,
        "gluing",
    )?;

    let gluing = if let Some(m) = g.get("matrix") {
        only_keys(g, &["matrix"], "gluing")?;
        let rows: [[i64; 2]; 2] = serde_json::from_value(m.clone())
            .map_err(|_| malformed("\"matrix\" must be [[r,p],[s,q]] with integer entries"))?;
        Gluing::Matrix(GluingMatrix::from_rows(rows)?)
    } else if let Some(signs) = g.get("signs") {
        only_keys(g, &["swap", "signs"], "gluing")?;
        let swap = match g.get("swap") {
            None => false,
            Some(s) => s
                .as_bool()
                .ok_or_else(|| malformed("\"swap\" must be a boolean"))?,
        };
        let signs = signs
            .as_array()
            .ok_or_else(|| malformed("\"signs\" must be an array"))?
            .iter()
            .map(as_sign)
            .collect::<Result<Vec<_>>>()?;
        match (signs.as_slice(), handle) {
            (&[a, b], HandleKind::Orientable) => {
                Gluing::Surface(SurfaceGluing::annulus(swap, [a, b]))
            }
            (&[s], HandleKind::NonOrientable) if !swap => Gluing::Surface(SurfaceGluing::mobius(s)),
            _ => return Err(Error::GluingMismatch { dim, handle }),
        }
    } else if let Some(s) = g.get("sign") {
        only_keys(g, &["sign"], "gluing")?;
        let sign = as_sign(s)?;
        if dim == 2 && handle == HandleKind::NonOrientable {
            Gluing::Surface(SurfaceGluing::mobius(sign))
        } else {
            Gluing::Sign(SignGluing::new(sign))
        }
    } else {
        return Err(malformed(
            "gluing needs one of \"matrix\", \"signs\", \"sign\"",
        ));
    };
    ModelFlow::new(dim, handle, gluing)
}

pub fn flow_to_value(f: &ModelFlow) -> Value {
    let gluing = match *f.gluing() {
        Gluing::Matrix(m) => json!({ "matrix": m.rows() }),
        Gluing::Surface(SurfaceGluing::Annulus { swap, signs }) => {
            json!({ "swap": swap, "signs": [signs[0].to_i64(), signs[1].to_i64()] })
        }
        Gluing::Surface(SurfaceGluing::Mobius { sign }) | Gluing::Sign(SignGluing { sign }) => {
            json!({ "sign": sign.to_i64() })
        }
    };
    json!({ "dim": f.dim(), "handle": f.handle().as_str(), "gluing": gluing })
}

fn surface_value(g: &SurfaceGluing) -> Value {
    match *g {
        SurfaceGluing::Annulus { swap, signs } => {
            json!({ "swap": swap, "signs": [signs[0].to_i64(), signs[1].to_i64()] })
        }
        SurfaceGluing::Mobius { sign } => json!({ "sign": sign.to_i64() }),
    }
}

pub fn certificate_to_value(c: &Certificate) -> Value {
    match c {
        Certificate::Matrix {
            m0,
            delta0,
            m1,
            delta1,
        } => json!({
            "kind": "matrix",
            "m0": m0, "delta0": sign_value(*delta0),
            "m1": m1, "delta1": sign_value(*delta1),
        }),
        Certificate::Surface { h0, h1 } => json!({
            "kind": "surface", "h0": surface_value(h0), "h1": surface_value(h1),
        }),
        Certificate::Sign { h0, h1 } => json!({
            "kind": "sign", "h0": sign_value(*h0), "h1": sign_value(*h1),
        }),
    }
}

pub fn invariant_to_value(inv: &ClassInvariant) -> Value {
    match inv {
        ClassInvariant::Lens { p, r } => json!({ "p": p, "r": r }),
        ClassInvariant::AnnulusSigns(s) => json!({ "signs": [s[0].to_i64(), s[1].to_i64()] }),
        ClassInvariant::Sign(s) => json!({ "sign": s.to_i64() }),
    }
}

pub fn boundary_to_value<T: Scalar>(b: &BoundaryPoint<T>) -> Value {
    match b {
        BoundaryPoint::Circle { component, lambda } => {
            json!({ "component": component, "lambda": real(*lambda) })
        }
        BoundaryPoint::Torus { lambda, mu } => json!({ "lambda": real(*lambda), "mu": real(*mu) }),
        BoundaryPoint::Sphere { u, lambda } => json!({
            "u": u.iter().map(|v| real(*v)).collect::<Vec<_>>(),
            "lambda": real(*lambda),
        }),
    }
}

fn point_entries<T: Scalar>(p: &ChartPoint<T>) -> (Value, Value, Value) {
    (
        json!(p.chart.tag()),
        Value::Array(p.y.iter().map(|v| real(*v)).collect()),
        real(p.h),
    )
}

pub fn trajectory_to_value<T: Scalar>(f: &ModelFlow, traj: &Trajectory<T>) -> Value {
    let samples: Vec<Value> = traj
        .samples
        .iter()
        .map(|(t, p)| {
            let (chart, y, h) = point_entries(p);
            json!([real(*t), chart, y, h])
        })
        .collect();
    let transits: Vec<Value> = traj
        .transits
        .iter()
        .map(|tr| {
            json!([
                real(tr.time),
                boundary_to_value(&tr.before),
                boundary_to_value(&tr.after)
            ])
        })
        .collect();
    json!({ "flow": flow_to_value(f), "samples": samples, "transits": transits })
}

/// `{"version": 1, "trajectories": [...]}`.
pub fn trajectories_document<T: Scalar>(f: &ModelFlow, trajs: &[Trajectory<T>]) -> Value {
    json!({
        "version": SCHEMA_VERSION,
        "trajectories": trajs.iter().map(|t| trajectory_to_value(f, t)).collect::<Vec<_>>(),
    })
}

/// Seeds as `[[chart, [y…], h], …]`.
pub fn parse_seeds<T: Scalar>(text: &str, dim: usize) -> Result<Vec<ChartPoint<T>>> {
    let v: Value = serde_json::from_str(text)?;
    let items = v
        .as_array()
        .ok_or_else(|| malformed("seeds must be an array"))?;
    items
        .iter()
        .map(|item| {
            let bad = || malformed(format!("seed {item} must be [\"R\"|\"A\", [y...], h]"));
            let parts = item.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
            let chart = match parts[0].as_str() {
                Some("R") => Chart::Repeller,
                Some("A") => Chart::Attractor,
                _ => return Err(bad()),
            };
            let y = parts[1]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|c| c.as_f64().map(T::of).ok_or_else(bad))
                .collect::<Result<Vec<T>>>()?;
            if y.len() + 1 != dim {
                return Err(malformed(format!(
                    "seed {item} needs {} coordinates",
                    dim - 1
                )));
            }
            let h = parts[2].as_f64().map(T::of).ok_or_else(bad)?;
            Ok(ChartPoint::new(chart, y, h))
        })
        .collect()
}

/// Compact serialization followed by a newline.
pub fn to_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_each_gluing_variant() {
        let f =
            parse_flow_spec(r#"{"dim":3,"handle":"orientable","gluing":{"matrix":[[0,1],[1,0]]}}"#)
                .unwrap();
        assert_eq!(f, ModelFlow::lens(GluingMatrix::new(0, 1, 1, 0).unwrap()));

        let f = parse_flow_spec(
            r#"{"dim":2,"handle":"orientable","gluing":{"swap":true,"signs":[1,-1]}}"#,
        )
        .unwrap();
        assert_eq!(
            f,
            ModelFlow::surface(SurfaceGluing::annulus(true, [Sign::Plus, Sign::Minus]))
        );

        let f =
            parse_flow_spec(r#"{"dim":2,"handle":"nonorientable","gluing":{"sign":-1}}"#).unwrap();
        assert_eq!(f, ModelFlow::surface(SurfaceGluing::mobius(Sign::Minus)));

        let f = parse_flow_spec(r#"{"dim":5,"handle":"orientable","gluing":{"sign":1}}"#).unwrap();
        assert_eq!(
            f,
            ModelFlow::with_sign(5, HandleKind::Orientable, Sign::Plus).unwrap()
        );
    }

    #[test]
    fn rejects_bad_specs() {
        let cases = [
            r#"{"dim":3,"handle":"orientable","gluing":{"matrix":[[2,0],[0,1]]}}"#,
            r#"{"dim":3,"handle":"orientable","gluing":{"matrix":[[1,0]]}}"#,
            r#"{"dim":3,"handle":"sideways","gluing":{"sign":1}}"#,
            r#"{"dim":3,"handle":"orientable","gluing":{"sign":1}}"#,
            r#"{"dim":2,"handle":"orientable","gluing":{"signs":[1]}}"#,
            r#"{"dim":4,"handle":"orientable","gluing":{"sign":2}}"#,
            r#"{"dim":4,"handle":"orientable","gluing":{"sign":1},"extra":0}"#,
            r#"{"dim":4,"handle":"orientable"}"#,
            r#"[1,2]"#,
            r#"{not json"#,
        ];
        for c in cases {
            assert!(parse_flow_spec(c).is_err(), "{c}");
        }
        let err = parse_flow_spec(cases[0]).unwrap_err();
        assert!(err.to_string().contains("matrix not unimodular"));
    }

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig(0.1 + 0.2), 0.3);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(-2.5e-20), -2.5e-20);
    }

    #[test]
    fn seeds_parse() {
        let seeds: Vec<ChartPoint<f64>> =
            parse_seeds(r#"[["R",[0.25],0.5],["A",[0],0]]"#, 2).unwrap();
        assert_eq!(seeds[0], ChartPoint::new(Chart::Repeller, vec![0.25], 0.5));
        assert_eq!(seeds[1].chart, Chart::Attractor);
        assert!(parse_seeds::<f64>(r#"[["R",[0.25,0.1],0.5]]"#, 2).is_err());
        assert!(parse_seeds::<f64>(r#"[["X",[0.25],0.5]]"#, 2).is_err());
    }

    proptest! {
        #[test]
        fn flow_spec_round_trip(idx in 0usize..500, dim in 2usize..7, orientable in any::<bool>()) {
            let handle = if orientable { HandleKind::Orientable } else { HandleKind::NonOrientable };
            let flows = crate::oracle::enumerate_gluings(dim, handle, 2);
            prop_assume!(!flows.is_empty());
            let f = flows[idx % flows.len()];
            let text = to_line(&flow_to_value(&f));
            prop_assert_eq!(parse_flow_spec(&text).unwrap(), f);
        }
    }
}
