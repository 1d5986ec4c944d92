use super::boundary::{realize_gluing, realize_gluing_inverse, BoundaryPoint};
use super::{check_point, reduce, suspension_flow, transit_time, Chart, ChartPoint};
use crate::error::{Error, Result};
use crate::gluing::ModelFlow;
use crate::scalar::Scalar;

/// A crossing of `Σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Transit<T> {
    /// Time of the crossing, relative to the start of the step.
    pub time: T,
    /// Chart the orbit leaves.
    pub from: Chart,
    pub before: BoundaryPoint<T>,
    pub after: BoundaryPoint<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowStep<T> {
    pub point: ChartPoint<T>,
    pub transit: Option<Transit<T>>,
}

/// `f^t_j(p)` for a reduced chart point `p` and any real `t`.
///
/// Forward time leaves the repeller chart and backward time leaves the
/// attractor chart; each orbit crosses `Σ` at most once.
pub fn model_flow<T: Scalar>(f: &ModelFlow, p: &ChartPoint<T>, t: T) -> Result<FlowStep<T>> {
    check_point(f.dim(), p)?;
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("time {t} is not finite")));
    }
    let handle = f.handle();
    let dh = p.chart.height_rate::<T>() * t;
    if dh > T::zero() {
        if let Some(exit) = transit_time(&p.y, p.h) {
            if dh >= exit {
                let (yb, lambda) = reduce(handle, &p.y, p.h + exit);
                let before = BoundaryPoint::from_chart(f, &yb, lambda);
                let after = match p.chart {
                    Chart::Repeller => realize_gluing(f, &before)?,
                    Chart::Attractor => realize_gluing_inverse(f, &before)?,
                };
                let (ya, ha) = after.to_chart();
                // inward in the other chart for the remaining time
                let (y, h) = reduce(handle, &ya, ha - (dh - exit));
                let time = if t > T::zero() { exit } else { -exit };
                return Ok(FlowStep {
                    point: ChartPoint::new(p.chart.other(), y, h),
                    transit: Some(Transit {
                        time,
                        from: p.chart,
                        before,
                        after,
                    }),
                });
            }
        }
    }
    let (y, h) = suspension_flow(handle, &p.y, p.h, dh);
    Ok(FlowStep {
        point: ChartPoint::new(p.chart, y, h),
        transit: None,
    })
}

/// Transports `eps·e₁` once around each periodic orbit and reports whether
/// the first coordinate changed sign: `(repeller twisted, attractor twisted)`.
pub fn detect_twist<T: Scalar>(f: &ModelFlow, eps: T) -> Result<(bool, bool)> {
    if !(eps > T::zero() && eps < T::of(0.5)) {
        return Err(Error::InvalidParameter(format!(
            "eps = {eps} must lie in (0, 0.5)"
        )));
    }
    let flips = |chart: Chart| -> Result<bool> {
        let mut y = vec![T::zero(); f.dim() - 1];
        y[0] = eps;
        let step = model_flow(f, &ChartPoint::new(chart, y, T::zero()), T::one())?;
        debug_assert!(step.transit.is_none());
        Ok(step.point.y[0] < T::zero())
    };
    Ok((flips(Chart::Repeller)?, flips(Chart::Attractor)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::orbit_twisted;
    use crate::gluing::{GluingMatrix, HandleKind, Sign, SurfaceGluing};
    use crate::oracle::enumerate_gluings;
    use proptest::prelude::*;

    fn torus_flow() -> ModelFlow {
        ModelFlow::surface(SurfaceGluing::annulus(false, [Sign::Plus, Sign::Plus]))
    }

    #[test]
    fn axis_is_periodic() {
        let f = torus_flow();
        let p = ChartPoint::on_axis(Chart::Attractor, 2, 0.25);
        let step = model_flow(&f, &p, 1.0).unwrap();
        assert_eq!(step.point, p);
        let q = ChartPoint::on_axis(Chart::Repeller, 2, 0.25);
        assert_eq!(model_flow(&f, &q, 7.0).unwrap().point, q);
    }

    #[test]
    fn repeller_point_crosses_at_exit_time() {
        let f = torus_flow();
        let p = ChartPoint::new(Chart::Repeller, vec![0.5], 0.0);
        let step = model_flow(&f, &p, 2.0).unwrap();
        let transit = step.transit.unwrap();
        assert_eq!(transit.time, 1.0);
        assert_eq!(transit.from, Chart::Repeller);
        assert_eq!(
            transit.before,
            BoundaryPoint::Circle {
                component: 1,
                lambda: 0.0
            }
        );
        assert_eq!(
            transit.after,
            BoundaryPoint::Circle {
                component: 1,
                lambda: 0.0
            }
        );
        // one more unit of time inside the attractor chart halves |y|
        assert_eq!(
            step.point,
            ChartPoint::new(Chart::Attractor, vec![0.5], 0.0)
        );
        // just before the crossing nothing happens
        assert!(model_flow(&f, &p, 0.999).unwrap().transit.is_none());
    }

    #[test]
    fn attractor_halves_radius() {
        let f = torus_flow();
        let p = ChartPoint::new(Chart::Attractor, vec![0.4], 0.0);
        let step = model_flow(&f, &p, 1.0).unwrap();
        assert!(step.transit.is_none());
        assert_eq!(
            step.point,
            ChartPoint::new(Chart::Attractor, vec![0.2], 0.0)
        );
    }

    #[test]
    fn backward_time_returns_to_repeller() {
        let f = ModelFlow::lens(GluingMatrix::new(2, 3, 1, 2).unwrap());
        let p = ChartPoint::new(Chart::Repeller, vec![0.3, -0.1], 0.2);
        let fwd = model_flow(&f, &p, 3.0).unwrap();
        assert_eq!(fwd.point.chart, Chart::Attractor);
        let back = model_flow(&f, &fwd.point, -3.0).unwrap();
        assert_eq!(back.transit.as_ref().unwrap().from, Chart::Attractor);
        assert!(back.point.quotient_distance(&p, f.handle()) < 1e-12);
    }

    #[test]
    fn rejects_unreduced_points() {
        let f = torus_flow();
        assert!(model_flow(&f, &ChartPoint::new(Chart::Repeller, vec![0.9], 0.5), 1.0).is_err());
        assert!(model_flow(&f, &ChartPoint::new(Chart::Repeller, vec![0.1], 1.5), 1.0).is_err());
        assert!(model_flow(
            &f,
            &ChartPoint::new(Chart::Repeller, vec![0.1, 0.1], 0.5),
            1.0
        )
        .is_err());
    }

    #[test]
    fn twist_detection_examples() {
        assert_eq!(detect_twist(&torus_flow(), 1e-3).unwrap(), (false, false));
        let k = ModelFlow::surface(SurfaceGluing::mobius(Sign::Minus));
        assert_eq!(detect_twist(&k, 1e-3).unwrap(), (true, true));
        assert!(detect_twist(&k, 0.5).is_err());
    }

    #[test]
    fn twist_detection_agrees_with_classifier() {
        for dim in 2..=5 {
            for handle in [HandleKind::Orientable, HandleKind::NonOrientable] {
                for f in enumerate_gluings(dim, handle, 2) {
                    assert_eq!(detect_twist(&f, 1e-3).unwrap(), orbit_twisted(&f), "{f}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn group_law_across_transit(
            a in -0.9f64..0.9, b in -0.9f64..0.9, h in 0.0f64..1.0,
            t in 0.0f64..5.0, s in 0.0f64..5.0, idx in 0usize..232,
        ) {
            let flows = enumerate_gluings(3, HandleKind::Orientable, 3);
            let f = flows[idx % flows.len()];
            let scale = 2f64.powf(-h);
            let p = ChartPoint::new(Chart::Repeller, vec![a * scale * 0.7, b * scale * 0.7], h);
            let direct = model_flow(&f, &p, t + s).unwrap().point;
            let mid = model_flow(&f, &p, t).unwrap().point;
            let composed = model_flow(&f, &mid, s).unwrap().point;
            prop_assert!(direct.quotient_distance(&composed, f.handle()) < 1e-9);
        }
    }
}
