use super::boundary::{realize_gluing, BoundaryPoint};
use super::flow::{model_flow, Transit};
use super::{boundary_radius, check_point, Chart, ChartPoint};
use crate::error::{Error, Result};
use crate::gluing::{Gluing, ModelFlow};
use crate::scalar::Scalar;

/// Samples of one orbit at multiples of `dt`, plus its exact crossing of `Σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub samples: Vec<(T, ChartPoint<T>)>,
    pub transits: Vec<Transit<T>>,
}

impl<T: Scalar> Trajectory<T> {
    pub fn first(&self) -> &ChartPoint<T> {
        &self.samples[0].1
    }

    pub fn last(&self) -> &ChartPoint<T> {
        &self.samples[self.samples.len() - 1].1
    }

    /// The seed lies on a periodic orbit.
    pub fn is_periodic(&self) -> bool {
        self.first().radius() == T::zero()
    }
}

/// One trajectory per seed over `[0, horizon]`.
///
/// Every sample is computed from the seed directly, so sampling adds no
/// error. Crossing times are exact and not snapped to the grid.
pub fn sample_portrait<T: Scalar>(
    f: &ModelFlow,
    seeds: &[ChartPoint<T>],
    horizon: T,
    dt: T,
) -> Result<Vec<Trajectory<T>>> {
    if !(dt > T::zero() && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "dt = {dt} must be positive"
        )));
    }
    if !(horizon > T::zero() && horizon.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "horizon = {horizon} must be positive"
        )));
    }
    let steps = (horizon / dt + T::of(1e-9))
        .floor()
        .to_usize()
        .ok_or_else(|| Error::InvalidParameter("too many samples".to_string()))?;
    seeds
        .iter()
        .map(|seed| {
            check_point(f.dim(), seed)?;
            let samples = (0..=steps)
                .map(|k| {
                    let t = dt * T::of(k as f64);
                    model_flow(f, seed, t).map(|step| (t, step.point))
                })
                .collect::<Result<Vec<_>>>()?;
            let transits = model_flow(f, seed, horizon)?.transit.into_iter().collect();
            Ok(Trajectory { samples, transits })
        })
        .collect()
}

/// `count` repeller-chart seeds spread over heights and directions.
///
/// Radii are a fixed fraction of the cross-section, from 0.15 to 0.75, so no
/// seed sits on an axis or on the boundary.
pub fn default_seeds<T: Scalar>(f: &ModelFlow, count: usize) -> Vec<ChartPoint<T>> {
    let coords = f.dim() - 1;
    (0..count)
        .map(|k| {
            let frac = T::of(k as f64) / T::of(count.max(1) as f64);
            let h = frac;
            let radius = boundary_radius(h) * (T::of(0.15) + T::of(0.6) * frac);
            let mut y = vec![T::zero(); coords];
            if coords == 1 {
                y[0] = if k % 2 == 0 { radius } else { -radius };
            } else {
                let angle = T::TAU() * (frac + T::of(0.1));
                y[0] = radius * angle.cos();
                y[1] = radius * angle.sin();
            }
            ChartPoint::new(Chart::Repeller, y, h)
        })
        .collect()
}

/// Winding of the image of the meridian `{λ = 0}` under the realized gluing,
/// in (longitude, meridian) coordinates. For a matrix `[[r,p],[s,q]]` this
/// is `(p, q)`.
pub fn meridian_image_winding(f: &ModelFlow, samples: usize) -> Result<(i64, i64)> {
    let Gluing::Matrix(m) = f.gluing() else {
        return Err(Error::InvalidParameter(
            "meridian winding is defined for solid-torus gluings".to_string(),
        ));
    };
    // each step must move less than half a turn in both coordinates
    let n = samples.max(4 * (m.p().unsigned_abs() + m.q().unsigned_abs()) as usize + 4);
    let image = |k: usize| -> Result<(f64, f64)> {
        let mu = (k % n) as f64 / n as f64;
        match realize_gluing(f, &BoundaryPoint::Torus { lambda: 0.0, mu })? {
            BoundaryPoint::Torus { lambda, mu } => Ok((lambda, mu)),
            _ => unreachable!("matrix gluings map tori to tori"),
        }
    };
    let wrapped = |d: f64| d - d.round();
    let (mut wl, mut wm) = (0.0, 0.0);
    let mut prev = image(0)?;
    for k in 1..=n {
        let next = image(k)?;
        wl += wrapped(next.0 - prev.0);
        wm += wrapped(next.1 - prev.1);
        prev = next;
    }
    Ok((wl.round() as i64, wm.round() as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::{GluingMatrix, HandleKind, Sign, SurfaceGluing};

    #[test]
    fn axis_seeds_are_constant() {
        let f = ModelFlow::surface(SurfaceGluing::annulus(false, [Sign::Plus, Sign::Plus]));
        let seed = ChartPoint::on_axis(Chart::Repeller, 2, 0.0);
        let traj = &sample_portrait(&f, std::slice::from_ref(&seed), 3.0, 0.5).unwrap()[0];
        assert_eq!(traj.samples.len(), 7);
        assert!(traj.is_periodic());
        assert!(traj.samples.iter().all(|(_, p)| p.y == seed.y));
        assert!(traj.transits.is_empty());
    }

    #[test]
    fn off_axis_seeds_end_closer_to_the_attractor() {
        let f = ModelFlow::with_sign(4, HandleKind::NonOrientable, Sign::Minus).unwrap();
        for traj in sample_portrait(&f, &default_seeds::<f64>(&f, 6), 20.0, 0.25).unwrap() {
            assert_eq!(traj.last().chart, Chart::Attractor);
            assert!(traj.last().radius() < traj.first().radius());
            assert_eq!(traj.transits.len(), 1);
            let times: Vec<f64> = traj.samples.iter().map(|(t, _)| *t).collect();
            assert!(times.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn transit_time_is_exact() {
        let f = ModelFlow::surface(SurfaceGluing::mobius(Sign::Minus));
        let seed = ChartPoint::new(Chart::Repeller, vec![0.3], 0.1);
        let traj = &sample_portrait(&f, &[seed], 10.0, 1.0).unwrap()[0];
        let expected = -(0.3f64).log2() - 0.1;
        assert!((traj.transits[0].time - expected).abs() < 1e-15);
    }

    #[test]
    fn bad_parameters() {
        let f = ModelFlow::surface(SurfaceGluing::mobius(Sign::Plus));
        let seeds = default_seeds::<f64>(&f, 2);
        assert!(sample_portrait(&f, &seeds, 1.0, 0.0).is_err());
        assert!(sample_portrait(&f, &seeds, -1.0, 0.1).is_err());
        let bad = vec![ChartPoint::new(Chart::Repeller, vec![2.0], 0.0)];
        assert!(sample_portrait(&f, &bad, 1.0, 0.1).is_err());
    }

    #[test]
    fn meridian_winding_examples() {
        for (r, p, s, q) in [
            (1, 5, 0, 1),
            (0, 1, 1, 0),
            (2, 3, 1, 2),
            (-1, 2, 1, -1),
            (1, 0, 0, 1),
        ] {
            let f = ModelFlow::lens(GluingMatrix::new(r, p, s, q).unwrap());
            assert_eq!(meridian_image_winding(&f, 16).unwrap(), (p, q));
        }
        let f = ModelFlow::surface(SurfaceGluing::mobius(Sign::Plus));
        assert!(meridian_image_winding(&f, 16).is_err());
    }

    #[test]
    fn meridian_tracked_through_transit() {
        // seeds on a circle around the repeller axis all cross Σ at the same
        // height, along a meridian; their images wind like the meridian column
        let f = ModelFlow::lens(GluingMatrix::new(2, 3, 1, 2).unwrap());
        let n = 200;
        let seeds: Vec<ChartPoint<f64>> = (0..n)
            .map(|k| {
                let a = std::f64::consts::TAU * k as f64 / n as f64;
                ChartPoint::new(Chart::Repeller, vec![0.25 * a.cos(), 0.25 * a.sin()], 0.0)
            })
            .collect();
        let trajs = sample_portrait(&f, &seeds, 5.0, 1.0).unwrap();
        let after: Vec<(f64, f64)> = trajs
            .iter()
            .map(|t| match &t.transits[0].after {
                BoundaryPoint::Torus { lambda, mu } => (*lambda, *mu),
                other => panic!("{other:?}"),
            })
            .collect();
        let wrapped = |d: f64| d - d.round();
        let (mut wl, mut wm) = (0.0, 0.0);
        for k in 0..n {
            let (a, b) = (after[k], after[(k + 1) % n]);
            wl += wrapped(b.0 - a.0);
            wm += wrapped(b.1 - a.1);
        }
        assert_eq!((wl.round() as i64, wm.round() as i64), (3, 2));
    }
}
