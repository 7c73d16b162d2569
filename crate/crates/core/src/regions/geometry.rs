//! Planar convex geometry in the `(R1, R2)` rate plane.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::Real;

/// Tolerance for convexity filtering and half-plane feasibility, in bits.
pub const HULL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair<T> {
    pub r1: T,
    pub r2: T,
}

impl<T: Real> RatePair<T> {
    pub fn new(r1: T, r2: T) -> Self {
        Self { r1, r2 }
    }

    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn transpose(self) -> Self {
        Self::new(self.r2, self.r1)
    }

    pub fn scale(self, k: T) -> Self {
        Self::new(self.r1 * k, self.r2 * k)
    }

    /// Weighted sum `w1 R1 + w2 R2`.
    pub fn dot(self, w1: T, w2: T) -> T {
        w1 * self.r1 + w2 * self.r2
    }

    pub fn distance(self, other: Self) -> T {
        (self.r1 - other.r1).hypot(self.r2 - other.r2)
    }
}

impl<T: fmt::Display> fmt::Display for RatePair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r1, self.r2)
    }
}

fn cross<T: Real>(o: RatePair<T>, a: RatePair<T>, b: RatePair<T>) -> T {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

/// Convex hull, counter-clockwise from the lowest-leftmost point.
///
/// Points within `tol` of each other are merged, and a vertex lying within
/// `tol` of the chord between its neighbours is dropped.
pub fn convex_hull<T: Real>(points: &[RatePair<T>], tol: T) -> Vec<RatePair<T>> {
    let mut pts: Vec<RatePair<T>> = points
        .iter()
        .copied()
        .filter(|p| p.r1.is_finite() && p.r2.is_finite())
        .collect();
    pts.sort_by(|a, b| {
        a.r1.partial_cmp(&b.r1)
            .unwrap_or(Ordering::Equal)
            .then(a.r2.partial_cmp(&b.r2).unwrap_or(Ordering::Equal))
    });
    let mut merged: Vec<RatePair<T>> = Vec::with_capacity(pts.len());
    for p in pts {
        let near = merged
            .iter()
            .rev()
            .take_while(|q| q.r1 >= p.r1 - tol)
            .any(|q| q.distance(p) <= tol);
        if !near {
            merged.push(p);
        }
    }
    if merged.len() < 3 {
        return merged;
    }
    let mut hull: Vec<RatePair<T>> = Vec::with_capacity(2 * merged.len());
    for &p in &merged {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in merged.iter().rev().skip(1) {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= T::zero() {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    drop_flat_vertices(&mut hull, tol);
    if hull.len() == 2 && hull[0].distance(hull[1]) <= tol {
        hull.truncate(1);
    }
    hull
}

fn drop_flat_vertices<T: Real>(hull: &mut Vec<RatePair<T>>, tol: T) {
    let mut i = 0;
    while hull.len() >= 3 && i < hull.len() {
        let n = hull.len();
        let (o, a, b) = (hull[(i + n - 1) % n], hull[i], hull[(i + 1) % n]);
        let len = o.distance(b);
        let flat = if len <= tol {
            true
        } else {
            let along = ((a.r1 - o.r1) * (b.r1 - o.r1) + (a.r2 - o.r2) * (b.r2 - o.r2)) / (len * len);
            cross(o, a, b) / len <= tol && along >= T::zero() && along <= T::one()
        };
        if flat {
            hull.remove(i);
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
}

/// The closed half-plane `a R1 + b R2 <= c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Real> HalfPlane<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        Self { a, b, c }
    }

    pub fn slack(&self, p: RatePair<T>) -> T {
        self.c - self.a * p.r1 - self.b * p.r2
    }

    fn intersect(&self, other: &Self) -> Option<RatePair<T>> {
        let det = self.a * other.b - other.a * self.b;
        if det.abs() <= T::lit(1e-15) {
            return None;
        }
        let r1 = (self.c * other.b - other.c * self.b) / det;
        let r2 = (self.a * other.c - other.a * self.c) / det;
        Some(RatePair::new(r1, r2))
    }
}

/// Vertices of a bounded intersection of half-planes.
///
/// Every pairwise boundary intersection is computed; those satisfying all
/// constraints within `tol` are kept and reduced to their convex hull.
pub fn halfplane_intersection<T: Real>(planes: &[HalfPlane<T>], tol: T) -> Vec<RatePair<T>> {
    let mut feasible = Vec::new();
    for (i, h) in planes.iter().enumerate() {
        for g in &planes[i + 1..] {
            let Some(p) = h.intersect(g) else { continue };
            let ok = planes.iter().all(|q| {
                let scale = T::one().max(q.c.abs());
                q.slack(p) >= -tol * scale
            });
            if ok {
                feasible.push(p);
            }
        }
    }
    convex_hull(&feasible, tol)
}

/// `max_v w1 v.r1 + w2 v.r2` over a finite vertex set.
pub fn support_of<T: Real>(vertices: &[RatePair<T>], w1: T, w2: T) -> T {
    vertices
        .iter()
        .map(|v| v.dot(w1, w2))
        .fold(T::neg_infinity(), T::max)
}
