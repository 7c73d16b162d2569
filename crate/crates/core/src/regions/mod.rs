//! Capacity region construction.
//!
//! The primary builder intersects supporting half-planes of the region
//! (the dual description). The primal builders assemble the region from
//! rectangle corners, either over the optimizing input laws of each case
//! ([`proposition_regions`]) or over a lattice of all input laws
//! ([`primed_regions`]); they serve as cross-checks.

pub mod geometry;
pub mod support;

use rayon::prelude::*;

use crate::channel::{canonicalize, ChannelSpec, ComponentLaws};
use crate::error::{Error, Result};
use crate::pmf::Pmf;
use crate::scalar::Real;
use crate::simplexopt::{for_each_lattice_point, OptConfig};

pub use geometry::{convex_hull, halfplane_intersection, support_of, HalfPlane, RatePair, HULL_TOLERANCE};
pub use support::{
    segment_points, support_inner, sweep_directions, sweep_lambdas, unit_interval_samples,
    InnerSupport, SupportCase, SupportCurve, SupportPoint, SupportSample, Thresholds,
};

/// A convex polygon in the rate plane, vertices counter-clockwise.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPolygon<T> {
    vertices: Vec<RatePair<T>>,
    label: String,
}

impl<T: Real> RegionPolygon<T> {
    /// Convex hull of `points` together with the origin. Tiny negative
    /// coordinates from round-off are clamped to zero.
    pub fn from_points(label: impl Into<String>, points: &[RatePair<T>]) -> Self {
        let tol = T::lit(HULL_TOLERANCE);
        let mut pts: Vec<RatePair<T>> = points
            .iter()
            .map(|p| {
                let clamp = |v: T| if v < T::zero() && v > -tol { T::zero() } else { v };
                RatePair::new(clamp(p.r1), clamp(p.r2))
            })
            .collect();
        pts.push(RatePair::origin());
        Self {
            vertices: convex_hull(&pts, tol),
            label: label.into(),
        }
    }

    /// Builds a polygon from vertices already in convex counter-clockwise order.
    pub fn from_vertices(label: impl Into<String>, vertices: Vec<RatePair<T>>) -> Self {
        Self {
            vertices,
            label: label.into(),
        }
    }

    pub fn hull_of<'a>(label: impl Into<String>, parts: impl IntoIterator<Item = &'a RegionPolygon<T>>) -> Self {
        let pts: Vec<RatePair<T>> = parts
            .into_iter()
            .flat_map(|p| p.vertices.iter().copied())
            .collect();
        Self::from_points(label, &pts)
    }

    pub fn vertices(&self) -> &[RatePair<T>] {
        &self.vertices
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `max w1 R1 + w2 R2` over the polygon.
    pub fn support(&self, w1: T, w2: T) -> T {
        support_of(&self.vertices, w1, w2)
    }

    pub fn max_sum_rate(&self) -> T {
        self.support(T::one(), T::one())
    }

    pub fn transpose(&self) -> Self {
        let pts: Vec<RatePair<T>> = self.vertices.iter().map(|v| v.transpose()).collect();
        Self {
            vertices: convex_hull(&pts, T::lit(HULL_TOLERANCE)),
            label: self.label.clone(),
        }
    }

    pub fn scaled(&self, k: T) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| v.scale(k)).collect(),
            label: self.label.clone(),
        }
    }

    /// Every consecutive turn is counter-clockwise within `tol`.
    pub fn is_convex(&self, tol: T) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return true;
        }
        (0..n).all(|i| {
            let (o, a, b) = (self.vertices[i], self.vertices[(i + 1) % n], self.vertices[(i + 2) % n]);
            let c = (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
            c >= -tol
        })
    }

    /// Euclidean distance from `p` to the polygon (zero inside).
    pub fn distance_to(&self, p: RatePair<T>) -> T {
        let v = &self.vertices;
        match v.len() {
            0 => T::infinity(),
            1 => v[0].distance(p),
            n => {
                let mut inside = n >= 3;
                let mut best = T::infinity();
                for i in 0..n {
                    let (a, b) = (v[i], v[(i + 1) % n]);
                    let (ex, ey) = (b.r1 - a.r1, b.r2 - a.r2);
                    let (px, py) = (p.r1 - a.r1, p.r2 - a.r2);
                    if ex * py - ey * px < T::zero() {
                        inside = false;
                    }
                    let len2 = ex * ex + ey * ey;
                    let t = if len2 > T::zero() {
                        ((px * ex + py * ey) / len2).max(T::zero()).min(T::one())
                    } else {
                        T::zero()
                    };
                    let d = (px - t * ex).hypot(py - t * ey);
                    best = best.min(d);
                }
                if inside {
                    T::zero()
                } else {
                    best
                }
            }
        }
    }

    pub fn contains(&self, p: RatePair<T>, tol: T) -> bool {
        self.distance_to(p) <= tol
    }

    /// Largest distance from a vertex of either polygon to the nearest
    /// vertex of the other.
    pub fn vertex_distance(&self, other: &Self) -> T {
        let one_way = |a: &[RatePair<T>], b: &[RatePair<T>]| {
            a.iter()
                .map(|p| b.iter().map(|q| p.distance(*q)).fold(T::infinity(), T::min))
                .fold(T::zero(), T::max)
        };
        one_way(&self.vertices, &other.vertices).max(one_way(&other.vertices, &self.vertices))
    }
}

/// Capacity region as the intersection of supporting half-planes.
///
/// `n_lambda` directions are sampled on each side of every case threshold,
/// for both `R1 + lambda R2` and `mu R1 + R2` with `lambda, mu` in `[0, 1]`.
/// Any spec is accepted; if the receivers had to be swapped into canonical
/// orientation, the result is transposed back.
pub fn capacity_polygon<T: Real>(
    spec: &ChannelSpec<T>,
    n_lambda: usize,
    cfg: &OptConfig<T>,
) -> Result<RegionPolygon<T>> {
    Ok(capacity_region(spec, n_lambda, cfg)?.polygon)
}

/// A capacity polygon together with the supporting lines it was cut from.
#[derive(Debug, Clone)]
pub struct CapacityRegion<T> {
    pub polygon: RegionPolygon<T>,
    /// `(w1, w2, support)` in canonical orientation.
    pub facets: Vec<(T, T, SupportPoint<T>)>,
    pub swapped: bool,
}

pub fn capacity_region<T: Real>(
    spec: &ChannelSpec<T>,
    n_lambda: usize,
    cfg: &OptConfig<T>,
) -> Result<CapacityRegion<T>> {
    if n_lambda < 3 {
        return Err(Error::LambdaCount {
            min: 3,
            got: n_lambda,
        });
    }
    let (canon, swapped) = canonicalize(spec);
    let inner = InnerSupport::new(&canon, cfg)?;
    // Populate the cached capacities before fanning out.
    inner.c1()?;
    inner.c2()?;
    let facets = sweep_directions(inner.thresholds(), n_lambda)
        .into_par_iter()
        .map(|(w1, w2)| inner.weighted(w1, w2).map(|s| (w1, w2, s)))
        .collect::<Result<Vec<_>>>()?;
    let mut planes = vec![
        HalfPlane::new(-T::one(), T::zero(), T::zero()),
        HalfPlane::new(T::zero(), -T::one(), T::zero()),
    ];
    planes.extend(facets.iter().map(|(w1, w2, s)| HalfPlane::new(*w1, *w2, s.value)));
    let vertices = halfplane_intersection(&planes, T::lit(HULL_TOLERANCE));
    let mut polygon = RegionPolygon::from_points("capacity", &vertices);
    if swapped {
        polygon = polygon.transpose();
    }
    Ok(CapacityRegion {
        polygon,
        facets,
        swapped,
    })
}

/// The four component regions of the explicit characterization, with the
/// optimizing input laws collected along the way.
#[derive(Debug, Clone)]
pub struct PropositionRegions<T> {
    /// `R1`, `R2`, `R3`, `R4` in that order.
    pub regions: [RegionPolygon<T>; 4],
    /// Maximizers of the `R3` objective over the sampled slopes.
    pub p1_set: Vec<Pmf<T>>,
    /// Maximizers of the `R4` objective over the sampled slopes.
    pub p2_set: Vec<Pmf<T>>,
}

impl<T: Real> PropositionRegions<T> {
    pub fn hull(&self) -> RegionPolygon<T> {
        RegionPolygon::hull_of("proposition-hull", self.regions.iter())
    }
}

fn rectangle<T: Real>(corner: RatePair<T>) -> [RatePair<T>; 3] {
    [
        RatePair::new(corner.r1, T::zero()),
        RatePair::new(T::zero(), corner.r2),
        corner,
    ]
}

/// `n` points of `(start, end]`, or just `end` if the interval is empty.
fn open_left<T: Real>(start: T, end: T, n: usize) -> Vec<T> {
    if end > start {
        segment_points(start, end, n + 1).into_iter().skip(1).collect()
    } else {
        vec![end]
    }
}

/// Builds `R1..R4` by sweeping the slope over each Marton case.
pub fn proposition_regions<T: Real>(
    spec: &ChannelSpec<T>,
    n_lambda: usize,
    cfg: &OptConfig<T>,
) -> Result<PropositionRegions<T>> {
    if n_lambda < 1 {
        return Err(Error::LambdaCount { min: 1, got: 0 });
    }
    let inner = InnerSupport::new(spec, cfg)?;
    let c1 = inner.c1()?.value;
    let c2 = inner.c2()?.value;
    let t = inner.thresholds();
    let laws = inner.laws();
    let (p1, p2) = (spec.p1(), spec.p2());
    let (p1b, p2b) = (spec.p1_bar(), spec.p2_bar());

    // The lower endpoint of each sweep is excluded: there the case objective
    // ties with a point-to-point one and its argmax set is larger.
    let r3_slopes = open_left(t.low.min(T::one()), T::one(), n_lambda);
    let p1_set = r3_slopes
        .par_iter()
        .map(|&l| inner.maximize_case(SupportCase::R3, T::one(), l).map(|r| r.argmax))
        .collect::<Result<Vec<_>>>()?;
    // The R4 sweep runs over mu = 1 / lambda in [p2/p1, 1] so that p2 = 0 stays finite.
    let mu_low = if t.high.is_finite() { T::one() / t.high } else { T::zero() };
    let r4_slopes = open_left(mu_low, T::one(), n_lambda);
    let p2_set = r4_slopes
        .par_iter()
        .map(|&mu| inner.maximize_case(SupportCase::R4, mu, T::one()).map(|r| r.argmax))
        .collect::<Result<Vec<_>>>()?;

    let mut r3_pts = Vec::new();
    for px in &p1_set {
        let r = laws.report(px.weights());
        r3_pts.extend(rectangle(RatePair::new(
            p1 * r.h_f1 + p1b * r.mi_f1_f2,
            p2b * r.h_f2_given_f1,
        )));
    }
    let mut r4_pts = Vec::new();
    for px in &p2_set {
        let r = laws.report(px.weights());
        r4_pts.extend(rectangle(RatePair::new(
            p1 * r.h_f1_given_f2,
            p2 * r.mi_f1_f2 + p2b * r.h_f2,
        )));
    }
    Ok(PropositionRegions {
        regions: [
            RegionPolygon::from_points("R1", &[RatePair::new(c1, T::zero())]),
            RegionPolygon::from_points("R2", &[RatePair::new(T::zero(), c2)]),
            RegionPolygon::from_points("R3", &r3_pts),
            RegionPolygon::from_points("R4", &r4_pts),
        ],
        p1_set,
        p2_set,
    })
}

/// Builds `R'1..R'4` over the input lattice with denominator `px_grid`.
pub fn primed_regions<T: Real>(spec: &ChannelSpec<T>, px_grid: usize) -> Result<[RegionPolygon<T>; 4]> {
    primed_regions_with(spec, px_grid, &[])
}

/// As [`primed_regions`], also evaluating the corners at `extra` input laws.
pub fn primed_regions_with<T: Real>(
    spec: &ChannelSpec<T>,
    px_grid: usize,
    extra: &[Pmf<T>],
) -> Result<[RegionPolygon<T>; 4]> {
    spec.require_canonical()?;
    if px_grid == 0 {
        return Err(Error::Config("px_grid must be positive".into()));
    }
    for px in extra {
        spec.check_input(px)?;
    }
    let laws = ComponentLaws::new(spec);
    let (p1, p2) = (spec.p1(), spec.p2());
    let (p1b, p2b) = (spec.p1_bar(), spec.p2_bar());
    let mut best1 = T::zero();
    let mut best2 = T::zero();
    let mut r3 = Vec::new();
    let mut r4 = Vec::new();
    let mut visit = |px: &[T]| {
        let r = laws.report(px);
        // I(f1; Y1 | S) and I(f2; Y2 | S)
        let i1 = p1 * r.h_f1 + p1b * r.mi_f1_f2;
        let i2 = p2 * r.mi_f1_f2 + p2b * r.h_f2;
        best1 = best1.max(p1 * r.h_f1 + p1b * r.h_f2);
        best2 = best2.max(p2 * r.h_f1 + p2b * r.h_f2);
        r3.push(RatePair::new(i1, (i2 - r.mi_f1_f2).max(T::zero())));
        r4.push(RatePair::new((i1 - r.mi_f1_f2).max(T::zero()), i2));
    };
    for_each_lattice_point(spec.input_size(), px_grid, &mut visit)?;
    for px in extra {
        visit(px.weights());
    }
    let with_axes = |pts: &[RatePair<T>]| -> Vec<RatePair<T>> {
        let hull = convex_hull(pts, T::lit(HULL_TOLERANCE));
        hull.iter().flat_map(|&c| rectangle(c)).collect()
    };
    Ok([
        RegionPolygon::from_points("R'1", &[RatePair::new(best1, T::zero())]),
        RegionPolygon::from_points("R'2", &[RatePair::new(T::zero(), best2)]),
        RegionPolygon::from_points("R'3", &with_axes(&r3)),
        RegionPolygon::from_points("R'4", &with_axes(&r4)),
    ])
}
