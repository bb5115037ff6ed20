//! Exact integer 3D geometry: the drawing model, bounding boxes, and the
//! crossing-freeness verifier.
//!
//! All predicates are exact. Arithmetic runs on i128 while every input
//! coordinate fits in [`FAST_LIMIT`]; beyond that it promotes to BigInt, so
//! results are correct for the full i64 coordinate range. No floats.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::dag::Dag;
use crate::error::{Error, Result};
use crate::report::{PointOwner, VerifyReport, Violation};

/// A point of the integer grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl GridPoint {
    pub fn new(x: i64, y: i64, z: i64) -> Self {
        GridPoint { x, y, z }
    }

    fn coords(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<(i64, i64, i64)> for GridPoint {
    fn from((x, y, z): (i64, i64, i64)) -> Self {
        GridPoint { x, y, z }
    }
}

/// Per-vertex grid points plus optional per-arc bend chains (in tail-to-head
/// order). `points[v]` is the point of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing3D {
    pub points: Vec<GridPoint>,
    pub bends: BTreeMap<(usize, usize), Vec<GridPoint>>,
}

impl Drawing3D {
    pub fn straight(points: Vec<GridPoint>) -> Self {
        Drawing3D {
            points,
            bends: BTreeMap::new(),
        }
    }

    /// The full polyline of an arc: tail point, bends, head point.
    pub fn polyline(&self, arc: (usize, usize)) -> Vec<GridPoint> {
        let mut pts = vec![self.points[arc.0]];
        if let Some(bends) = self.bends.get(&arc) {
            pts.extend_from_slice(bends);
        }
        pts.push(self.points[arc.1]);
        pts
    }

    /// Every point of the drawing together with its owner, vertices first.
    pub fn owned_points(&self) -> Vec<(PointOwner, GridPoint)> {
        let mut out: Vec<(PointOwner, GridPoint)> = self
            .points
            .iter()
            .enumerate()
            .map(|(v, &p)| (PointOwner::Vertex(v), p))
            .collect();
        for (&arc, bends) in &self.bends {
            for (index, &p) in bends.iter().enumerate() {
                out.push((PointOwner::Bend { arc, index }, p));
            }
        }
        out
    }

    pub fn translate(&self, dx: i64, dy: i64, dz: i64) -> Drawing3D {
        let shift = |p: &GridPoint| GridPoint::new(p.x + dx, p.y + dy, p.z + dz);
        Drawing3D {
            points: self.points.iter().map(shift).collect(),
            bends: self
                .bends
                .iter()
                .map(|(&arc, pts)| (arc, pts.iter().map(shift).collect()))
                .collect(),
        }
    }
}

/// Side lengths of the minimum axis-aligned box, measured in gridpoints
/// (max - min + 1 per axis).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundingBox {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl BoundingBox {
    /// Number of gridpoints in the box.
    pub fn volume(&self) -> u128 {
        (self.x as u128) * (self.y as u128) * (self.z as u128)
    }
}

pub fn bounding_box(d: &Drawing3D) -> Result<BoundingBox> {
    let mut it = d
        .points
        .iter()
        .chain(d.bends.values().flatten())
        .map(GridPoint::coords);
    let first = it.next().ok_or(Error::EmptyDrawing)?;
    let (mut lo, mut hi) = (first, first);
    for p in it {
        for a in 0..3 {
            lo[a] = lo[a].min(p[a]);
            hi[a] = hi[a].max(p[a]);
        }
    }
    let side = |a: usize| (hi[a] as i128 - lo[a] as i128 + 1) as u64;
    Ok(BoundingBox {
        x: side(0),
        y: side(1),
        z: side(2),
    })
}

/// Largest coordinate magnitude for which the i128 fast path is exact.
///
/// The deepest product chain is denom = (da x db) . (da x db): cross
/// components are at most 2*(2M)^2 and the dot adds three of their squares,
/// so |denom| <= 3*(2^61)^2 < 2^124 for M = 2^29. Everything else is smaller.
pub const FAST_LIMIT: i64 = 1 << 29;

fn within_fast_limit(points: &[GridPoint]) -> bool {
    points.iter().all(|p| {
        p.x.abs() <= FAST_LIMIT && p.y.abs() <= FAST_LIMIT && p.z.abs() <= FAST_LIMIT
    })
}

fn sub3<T: Signed + Clone>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[0].clone() - b[0].clone(),
        a[1].clone() - b[1].clone(),
        a[2].clone() - b[2].clone(),
    ]
}

fn cross3<T: Signed + Clone>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn dot3<T: Signed + Clone>(a: &[T; 3], b: &[T; 3]) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

fn is_zero3<T: Zero>(a: &[T; 3]) -> bool {
    a[0].is_zero() && a[1].is_zero() && a[2].is_zero()
}

trait FromCoord: Sized {
    fn from_coord(c: i64) -> Self;
}

impl FromCoord for i128 {
    fn from_coord(c: i64) -> Self {
        c as i128
    }
}

impl FromCoord for BigInt {
    fn from_coord(c: i64) -> Self {
        BigInt::from(c)
    }
}

fn lift<T: FromCoord>(p: &GridPoint) -> [T; 3] {
    [
        T::from_coord(p.x),
        T::from_coord(p.y),
        T::from_coord(p.z),
    ]
}

/// Core predicate, parametric formulation. `allowed` lists points at which
/// the closed segments may touch; every allowed point must be an endpoint of
/// at least one of the two segments, which lets endpoint identification work
/// on parameter values alone (no products against the allowed points).
fn improper_parametric<T>(
    a0: &GridPoint,
    a1: &GridPoint,
    b0: &GridPoint,
    b1: &GridPoint,
    allowed: &[GridPoint],
) -> bool
where
    T: Signed + Ord + Clone + FromCoord,
{
    let (pa0, pa1, pb0, pb1) = (lift::<T>(a0), lift::<T>(a1), lift::<T>(b0), lift::<T>(b1));
    let da = sub3(&pa1, &pa0);
    let db = sub3(&pb1, &pb0);
    let r = sub3(&pb0, &pa0);
    let n = cross3(&da, &db);
    let permitted = |p: &GridPoint| allowed.contains(p);
    if !is_zero3(&n) {
        if !dot3(&r, &n).is_zero() {
            return false; // skew lines
        }
        // Coplanar, one line intersection: solve a0 + s*da = b0 + t*db with
        // s = s_num/denom, t = t_num/denom, denom = n.n > 0.
        let denom = dot3(&n, &n);
        let s_num = dot3(&cross3(&r, &db), &n);
        let t_num = dot3(&cross3(&r, &da), &n);
        if s_num < T::zero() || s_num > denom || t_num < T::zero() || t_num > denom {
            return false;
        }
        // The meeting point is an endpoint exactly when its parameter is
        // extremal; only then can it match an allowed point.
        let witness = if s_num.is_zero() {
            Some(a0)
        } else if s_num == denom {
            Some(a1)
        } else if t_num.is_zero() {
            Some(b0)
        } else if t_num == denom {
            Some(b1)
        } else {
            None
        };
        match witness {
            Some(p) => !permitted(p),
            None => true, // interior-interior crossing
        }
    } else {
        // Parallel lines; distinct unless r is also parallel to da.
        if !is_zero3(&cross3(&r, &da)) {
            return false;
        }
        // Collinear: compare intervals of the projection u(P) = (P - a0).da.
        let len = dot3(&da, &da);
        let ub0 = dot3(&r, &da);
        let ub1 = dot3(&sub3(&pb1, &pa0), &da);
        let (bmin_u, bmin_p, bmax_u, bmax_p) = if ub0 <= ub1 {
            (ub0, b0, ub1, b1)
        } else {
            (ub1, b1, ub0, b0)
        };
        let lo = if bmin_u > T::zero() {
            bmin_u.clone()
        } else {
            T::zero()
        };
        let hi = if bmax_u < len { bmax_u.clone() } else { len.clone() };
        if lo > hi {
            return false;
        }
        if lo < hi {
            return true; // positive-length overlap is never permitted
        }
        // Single touch point; it is an endpoint of one of the segments.
        let p = if lo.is_zero() {
            a0
        } else if lo == len {
            a1
        } else if lo == bmin_u {
            bmin_p
        } else {
            bmax_p
        };
        !permitted(p)
    }
}

/// Dispatches the parametric predicate to i128 or BigInt by coordinate size.
pub(crate) fn improper_with_allowed(
    a0: GridPoint,
    a1: GridPoint,
    b0: GridPoint,
    b1: GridPoint,
    allowed: &[GridPoint],
) -> bool {
    if within_fast_limit(&[a0, a1, b0, b1]) {
        improper_parametric::<i128>(&a0, &a1, &b0, &b1, allowed)
    } else {
        improper_parametric::<BigInt>(&a0, &a1, &b0, &b1, allowed)
    }
}

/// True iff the closed segments share a point other than a common endpoint.
/// Collinear overlap and endpoint-through-interior touches count.
pub fn segments_intersect_improperly(
    a: (GridPoint, GridPoint),
    b: (GridPoint, GridPoint),
) -> Result<bool> {
    if a.0 == a.1 || b.0 == b.1 {
        return Err(Error::DegenerateSegment);
    }
    let mut allowed = Vec::new();
    for pa in [a.0, a.1] {
        if (pa == b.0 || pa == b.1) && !allowed.contains(&pa) {
            allowed.push(pa);
        }
    }
    Ok(improper_with_allowed(a.0, a.1, b.0, b.1, &allowed))
}

/// Independent formulation of [`segments_intersect_improperly`] built from
/// coplanarity and orientation tests; exists purely to cross-check the
/// parametric predicate.
pub fn segments_intersect_improperly_alt(
    a: (GridPoint, GridPoint),
    b: (GridPoint, GridPoint),
) -> Result<bool> {
    if a.0 == a.1 || b.0 == b.1 {
        return Err(Error::DegenerateSegment);
    }
    let ok = if within_fast_limit(&[a.0, a.1, b.0, b.1]) {
        improper_orientation::<i128>(&a.0, &a.1, &b.0, &b.1)
    } else {
        improper_orientation::<BigInt>(&a.0, &a.1, &b.0, &b.1)
    };
    Ok(ok)
}

fn signum<T: Signed + Ord>(v: T) -> i8 {
    if v.is_zero() {
        0
    } else if v > T::zero() {
        1
    } else {
        -1
    }
}

fn improper_orientation<T>(a0: &GridPoint, a1: &GridPoint, b0: &GridPoint, b1: &GridPoint) -> bool
where
    T: Signed + Ord + Clone + FromCoord,
{
    let shares_endpoint =
        a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1;
    let (pa0, pa1, pb0, pb1) = (lift::<T>(a0), lift::<T>(a1), lift::<T>(b0), lift::<T>(b1));
    let da = sub3(&pa1, &pa0);
    let db = sub3(&pb1, &pb0);
    let r = sub3(&pb0, &pa0);
    // Coplanarity: triple product of (da, b0-a0, b1-a0).
    let triple = dot3(&cross3(&da, &r), &sub3(&pb1, &pa0));
    if !triple.is_zero() {
        return false;
    }
    let n = cross3(&da, &db);
    if !is_zero3(&n) {
        // Coplanar, non-parallel: project out the dominant normal axis and
        // run the four 2D orientation tests.
        let axis = dominant_axis(&n);
        let o1 = orient2d::<T>(a0, a1, b0, axis);
        let o2 = orient2d::<T>(a0, a1, b1, axis);
        let o3 = orient2d::<T>(b0, b1, a0, axis);
        let o4 = orient2d::<T>(b0, b1, a1, axis);
        let touching = o1 * o2 <= 0 && o3 * o4 <= 0;
        if !touching {
            return false;
        }
        // Exactly one meeting point exists; with a shared endpoint it must
        // be that endpoint, which is a permitted touch.
        !shares_endpoint
    } else {
        if !is_zero3(&cross3(&r, &da)) {
            return false; // parallel, distinct lines
        }
        // Collinear: 1D interval logic along the dominant axis of da.
        let axis = dominant_axis(&da);
        let (a_lo, a_hi) = minmax(a0.coords()[axis], a1.coords()[axis]);
        let (b_lo, b_hi) = minmax(b0.coords()[axis], b1.coords()[axis]);
        let lo = a_lo.max(b_lo);
        let hi = a_hi.min(b_hi);
        if lo > hi {
            return false;
        }
        if lo < hi {
            return true;
        }
        // Single touch: locate the actual touch point and accept it only as
        // a shared endpoint of both segments.
        let touch = [a0, a1, b0, b1]
            .into_iter()
            .find(|p| p.coords()[axis] == lo)
            .expect("touch parameter comes from an endpoint");
        let on_a = touch == a0 || touch == a1;
        let on_b = touch == b0 || touch == b1;
        !(on_a && on_b)
    }
}

fn minmax(a: i64, b: i64) -> (i64, i64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn dominant_axis<T: Signed + Ord>(v: &[T; 3]) -> usize {
    let a0 = v[0].abs();
    let a1 = v[1].abs();
    let a2 = v[2].abs();
    if a0 >= a1 && a0 >= a2 {
        0
    } else if a1 >= a2 {
        1
    } else {
        2
    }
}

/// Sign of the 2D orientation of (p, q, r) with `drop` projected out.
fn orient2d<T>(p: &GridPoint, q: &GridPoint, r: &GridPoint, drop: usize) -> i8
where
    T: Signed + Ord + Clone + FromCoord,
{
    let (u, v) = match drop {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let c = |pt: &GridPoint, a: usize| T::from_coord(pt.coords()[a]);
    let det = (c(q, u) - c(p, u)) * (c(r, v) - c(p, v))
        - (c(q, v) - c(p, v)) * (c(r, u) - c(p, u));
    signum(det)
}

/// True iff `p` lies strictly inside the closed segment (s0, s1), endpoints
/// excluded. Degenerate segments never contain anything.
pub(crate) fn point_strictly_inside(p: GridPoint, s0: GridPoint, s1: GridPoint) -> bool {
    if s0 == s1 || p == s0 || p == s1 {
        return false;
    }
    if within_fast_limit(&[p, s0, s1]) {
        point_inside_generic::<i128>(&p, &s0, &s1)
    } else {
        point_inside_generic::<BigInt>(&p, &s0, &s1)
    }
}

fn point_inside_generic<T>(p: &GridPoint, s0: &GridPoint, s1: &GridPoint) -> bool
where
    T: Signed + Ord + Clone + FromCoord,
{
    let (pp, p0, p1) = (lift::<T>(p), lift::<T>(s0), lift::<T>(s1));
    let d = sub3(&p1, &p0);
    let w = sub3(&pp, &p0);
    if !is_zero3(&cross3(&w, &d)) {
        return false;
    }
    let t = dot3(&w, &d);
    t > T::zero() && t < dot3(&d, &d)
}

#[derive(Clone, Copy)]
struct SegmentBox {
    lo: [i64; 3],
    hi: [i64; 3],
}

impl SegmentBox {
    fn of(a: GridPoint, b: GridPoint) -> Self {
        let (pa, pb) = (a.coords(), b.coords());
        let mut lo = [0i64; 3];
        let mut hi = [0i64; 3];
        for i in 0..3 {
            lo[i] = pa[i].min(pb[i]);
            hi[i] = pa[i].max(pb[i]);
        }
        SegmentBox { lo, hi }
    }

    fn join(&self, other: &SegmentBox) -> SegmentBox {
        let mut lo = [0i64; 3];
        let mut hi = [0i64; 3];
        for i in 0..3 {
            lo[i] = self.lo[i].min(other.lo[i]);
            hi[i] = self.hi[i].max(other.hi[i]);
        }
        SegmentBox { lo, hi }
    }

    fn disjoint(&self, other: &SegmentBox) -> bool {
        (0..3).any(|i| self.hi[i] < other.lo[i] || other.hi[i] < self.lo[i])
    }
}

struct ArcGeometry {
    arc: (usize, usize),
    segments: Vec<(GridPoint, GridPoint)>,
    boxes: Vec<SegmentBox>,
    bbox: SegmentBox,
}

/// Checks a drawing exactly: pairwise distinct points, no improper segment
/// intersections, no vertex on a non-incident arc, and (optionally) strictly
/// increasing z along every arc. Reports one crossing per offending arc pair.
pub fn verify_drawing(g: &Dag, d: &Drawing3D, require_upward: bool) -> Result<VerifyReport> {
    if d.points.len() != g.n() {
        return Err(Error::MissingVertexPoint {
            expected: g.n(),
            got: d.points.len(),
        });
    }
    for arc in d.bends.keys() {
        if !g.has_arc(arc.0, arc.1) {
            return Err(Error::InvalidDrawing(format!(
                "bends attached to non-arc ({}, {})",
                arc.0, arc.1
            )));
        }
    }
    let mut violations = Vec::new();

    // Coincident points, including vertex/bend and bend/bend collisions.
    let mut owned = d.owned_points();
    owned.sort_unstable_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    for w in owned.windows(2) {
        if w[0].1 == w[1].1 {
            violations.push(Violation::CoincidentPoints {
                a: w[0].0,
                b: w[1].0,
            });
        }
    }

    if require_upward {
        for &arc in g.arcs() {
            let pts = d.polyline(arc);
            if pts.windows(2).any(|w| w[0].z >= w[1].z) {
                violations.push(Violation::NonUpward { arc });
            }
        }
    }

    // Degenerate (zero-length) segments are dropped here; the coincident
    // check above has already reported their collapsed points.
    let arcs_geo: Vec<ArcGeometry> = g
        .arcs()
        .iter()
        .map(|&arc| {
            let pts = d.polyline(arc);
            let segments: Vec<(GridPoint, GridPoint)> = pts
                .windows(2)
                .filter(|w| w[0] != w[1])
                .map(|w| (w[0], w[1]))
                .collect();
            let boxes: Vec<SegmentBox> =
                segments.iter().map(|&(a, b)| SegmentBox::of(a, b)).collect();
            let bbox = boxes
                .iter()
                .skip(1)
                .fold(boxes.first().copied().unwrap_or(SegmentBox::of(
                    d.points[arc.0],
                    d.points[arc.0],
                )), |acc, b| acc.join(b));
            ArcGeometry {
                arc,
                segments,
                boxes,
                bbox,
            }
        })
        .collect();

    // Vertices against segments of non-incident arcs.
    for v in 0..g.n() {
        let p = d.points[v];
        for geo in &arcs_geo {
            if geo.arc.0 == v || geo.arc.1 == v {
                continue;
            }
            if geo
                .segments
                .iter()
                .any(|&(s0, s1)| point_strictly_inside(p, s0, s1))
            {
                violations.push(Violation::VertexOnEdge {
                    vertex: v,
                    arc: geo.arc,
                });
            }
        }
    }

    // Self-intersections within one polyline. Consecutive segments may touch
    // only at their shared bend; others may not touch at all.
    for geo in &arcs_geo {
        'arc: for i in 0..geo.segments.len() {
            for j in i + 1..geo.segments.len() {
                if geo.boxes[i].disjoint(&geo.boxes[j]) {
                    continue;
                }
                let (a0, a1) = geo.segments[i];
                let (b0, b1) = geo.segments[j];
                let shared = [a1].iter().copied().filter(|&p| p == b0).collect::<Vec<_>>();
                let allowed: &[GridPoint] = if j == i + 1 { &shared } else { &[] };
                if improper_with_allowed(a0, a1, b0, b1, allowed) {
                    violations.push(Violation::Crossing {
                        arc_a: geo.arc,
                        arc_b: geo.arc,
                    });
                    break 'arc;
                }
            }
        }
    }

    // Pairwise arc checks, parallel over the first arc, merged in index
    // order so the report is deterministic.
    let points = &d.points;
    let crossing_batches: Vec<Vec<Violation>> = (0..arcs_geo.len())
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            let gi = &arcs_geo[i];
            for gj in arcs_geo.iter().skip(i + 1) {
                if gi.bbox.disjoint(&gj.bbox) {
                    continue;
                }
                let mut allowed: Vec<GridPoint> = Vec::new();
                for va in [gi.arc.0, gi.arc.1] {
                    if (va == gj.arc.0 || va == gj.arc.1) && !allowed.contains(&points[va]) {
                        allowed.push(points[va]);
                    }
                }
                'pair: for (si, bi) in gi.segments.iter().zip(&gi.boxes) {
                    for (sj, bj) in gj.segments.iter().zip(&gj.boxes) {
                        if bi.disjoint(bj) {
                            continue;
                        }
                        if improper_with_allowed(si.0, si.1, sj.0, sj.1, &allowed) {
                            found.push(Violation::Crossing {
                                arc_a: gi.arc,
                                arc_b: gj.arc,
                            });
                            break 'pair;
                        }
                    }
                }
            }
            found
        })
        .collect();
    violations.extend(crossing_batches.into_iter().flatten());

    Ok(VerifyReport { violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::{generate, Family};

    fn p(x: i64, y: i64, z: i64) -> GridPoint {
        GridPoint::new(x, y, z)
    }

    #[test]
    fn predicate_examples() {
        // Shared endpoint only.
        assert!(!segments_intersect_improperly(
            (p(0, 0, 0), p(1, 1, 1)),
            (p(0, 0, 0), p(1, 0, 0))
        )
        .unwrap());
        // Proper crossing at (1,1,0).
        assert!(segments_intersect_improperly(
            (p(0, 0, 0), p(2, 2, 0)),
            (p(0, 2, 0), p(2, 0, 0))
        )
        .unwrap());
        // Collinear overlap.
        assert!(segments_intersect_improperly(
            (p(0, 0, 0), p(2, 0, 0)),
            (p(1, 0, 0), p(3, 0, 0))
        )
        .unwrap());
    }

    #[test]
    fn predicate_rejects_degenerate_segments() {
        assert!(matches!(
            segments_intersect_improperly((p(0, 0, 0), p(0, 0, 0)), (p(1, 0, 0), p(2, 0, 0))),
            Err(Error::DegenerateSegment)
        ));
    }

    #[test]
    fn predicate_touch_cases() {
        // Endpoint of b in the interior of a.
        assert!(segments_intersect_improperly(
            (p(0, 0, 0), p(2, 0, 0)),
            (p(1, 0, 0), p(1, 5, 0))
        )
        .unwrap());
        // Collinear, meeting exactly at a shared endpoint.
        assert!(!segments_intersect_improperly(
            (p(0, 0, 0), p(1, 0, 0)),
            (p(1, 0, 0), p(2, 0, 0))
        )
        .unwrap());
        // Collinear, disjoint.
        assert!(!segments_intersect_improperly(
            (p(0, 0, 0), p(1, 0, 0)),
            (p(2, 0, 0), p(3, 0, 0))
        )
        .unwrap());
        // Skew lines that pass close but never meet.
        assert!(!segments_intersect_improperly(
            (p(0, 0, 0), p(1, 0, 0)),
            (p(0, 1, 1), p(1, -1, 1))
        )
        .unwrap());
        // Shared endpoint but overlap continues beyond it.
        assert!(segments_intersect_improperly(
            (p(0, 0, 0), p(2, 0, 0)),
            (p(0, 0, 0), p(1, 0, 0))
        )
        .unwrap());
        // Identical segments.
        assert!(segments_intersect_improperly(
            (p(0, 0, 0), p(2, 0, 0)),
            (p(0, 0, 0), p(2, 0, 0))
        )
        .unwrap());
    }

    #[test]
    fn predicates_agree_beyond_the_fast_limit() {
        let big = 1i64 << 60;
        let cases = [
            ((p(0, 0, 0), p(big, big, 0)), (p(0, big, 0), p(big, 0, 0)), true),
            ((p(0, 0, 0), p(big, 0, 0)), (p(1, 1, 0), p(big, 1, 0)), false),
            ((p(0, 0, 0), p(big, 0, 0)), (p(big / 2, 0, 0), p(big, 1, 0)), true),
            ((p(-big, -big, -big), p(big, big, big)), (p(-big, big, 0), p(big, -big, 0)), true),
        ];
        for (a, b, want) in cases {
            assert_eq!(segments_intersect_improperly(a, b).unwrap(), want);
            assert_eq!(segments_intersect_improperly_alt(a, b).unwrap(), want);
        }
    }

    #[test]
    fn predicate_is_symmetric() {
        let pairs = [
            ((p(0, 0, 0), p(2, 2, 0)), (p(0, 2, 0), p(2, 0, 0))),
            ((p(0, 0, 0), p(1, 0, 0)), (p(1, 0, 0), p(2, 0, 0))),
            ((p(0, 0, 0), p(2, 0, 0)), (p(1, 0, 0), p(3, 0, 0))),
            ((p(0, 0, 0), p(1, 1, 1)), (p(5, 5, 5), p(6, 6, 6))),
        ];
        for (a, b) in pairs {
            assert_eq!(
                segments_intersect_improperly(a, b).unwrap(),
                segments_intersect_improperly(b, a).unwrap()
            );
        }
    }

    #[test]
    fn verify_accepts_simple_path() {
        let g = generate(&Family::Path { n: 2 }).unwrap();
        let d = Drawing3D::straight(vec![p(0, 0, 0), p(0, 0, 1)]);
        let rep = verify_drawing(&g, &d, true).unwrap();
        assert!(rep.ok(), "{rep}");
    }

    #[test]
    fn verify_reports_crossing_pair() {
        // Arcs 0->3 and 1->2 crossing at (1,1,1).
        let g = Dag::new(4, vec![(0, 3), (1, 2)]).unwrap();
        let d = Drawing3D::straight(vec![p(0, 0, 0), p(0, 2, 0), p(2, 0, 2), p(2, 2, 2)]);
        let rep = verify_drawing(&g, &d, false).unwrap();
        assert_eq!(
            rep.violations,
            vec![Violation::Crossing {
                arc_a: (0, 3),
                arc_b: (1, 2)
            }]
        );
    }

    #[test]
    fn verify_reports_vertex_on_edge() {
        let g = Dag::new(3, vec![(0, 1)]).unwrap();
        let d = Drawing3D::straight(vec![p(0, 0, 0), p(2, 2, 2), p(1, 1, 1)]);
        let rep = verify_drawing(&g, &d, false).unwrap();
        assert_eq!(
            rep.violations,
            vec![Violation::VertexOnEdge {
                vertex: 2,
                arc: (0, 1)
            }]
        );
    }

    #[test]
    fn verify_reports_coincident_and_non_upward() {
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        let d = Drawing3D::straight(vec![p(0, 0, 0), p(0, 0, 0)]);
        let rep = verify_drawing(&g, &d, true).unwrap();
        assert!(rep
            .violations
            .iter()
            .any(|v| v.kind() == "coincident_points"));
        assert!(rep.violations.iter().any(|v| v.kind() == "non_upward"));
    }

    #[test]
    fn verify_handles_bends() {
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        // A polyline that doubles back over itself beyond the shared bend.
        let mut d = Drawing3D::straight(vec![p(0, 0, 0), p(0, 0, 4)]);
        d.bends.insert((0, 1), vec![p(0, 0, 6)]);
        let rep = verify_drawing(&g, &d, false).unwrap();
        assert_eq!(
            rep.violations,
            vec![Violation::Crossing {
                arc_a: (0, 1),
                arc_b: (0, 1)
            }]
        );
        // A harmless bend: straight segments meeting only at the bend.
        let mut d2 = Drawing3D::straight(vec![p(0, 0, 0), p(0, 0, 2)]);
        d2.bends.insert((0, 1), vec![p(1, 0, 1)]);
        assert!(verify_drawing(&g, &d2, true).unwrap().ok());
    }

    #[test]
    fn verify_exempts_shared_vertex_touch_only() {
        // Two arcs out of vertex 0; they touch at the shared vertex point.
        let g = Dag::new(3, vec![(0, 1), (0, 2)]).unwrap();
        let d = Drawing3D::straight(vec![p(0, 0, 0), p(1, 0, 1), p(0, 1, 1)]);
        assert!(verify_drawing(&g, &d, true).unwrap().ok());
        // Same arcs, but now one runs through the other's interior.
        let d2 = Drawing3D::straight(vec![p(0, 0, 0), p(2, 0, 2), p(1, 0, 1)]);
        let rep = verify_drawing(&g, &d2, false).unwrap();
        assert!(!rep.ok());
    }

    #[test]
    fn bounding_box_examples() {
        let one = Drawing3D::straight(vec![p(5, 5, 5)]);
        let bb = bounding_box(&one).unwrap();
        assert_eq!((bb.x, bb.y, bb.z, bb.volume()), (1, 1, 1, 1));

        let two = Drawing3D::straight(vec![p(0, 0, 0), p(1, 1, 1)]);
        let bb = bounding_box(&two).unwrap();
        assert_eq!((bb.x, bb.y, bb.z, bb.volume()), (2, 2, 2, 8));

        assert!(matches!(
            bounding_box(&Drawing3D::straight(vec![])),
            Err(Error::EmptyDrawing)
        ));
    }

    #[test]
    fn translation_does_not_change_outcomes() {
        let g = Dag::new(4, vec![(0, 3), (1, 2)]).unwrap();
        let d = Drawing3D::straight(vec![p(0, 0, 0), p(0, 2, 0), p(2, 0, 2), p(2, 2, 2)]);
        let t = d.translate(1_000_000_007, -42, 1 << 40);
        let (ra, rb) = (
            verify_drawing(&g, &d, false).unwrap(),
            verify_drawing(&g, &t, false).unwrap(),
        );
        assert_eq!(ra.violations.len(), rb.violations.len());
        let (ba, bb) = (bounding_box(&d).unwrap(), bounding_box(&t).unwrap());
        assert_eq!((ba.x, ba.y, ba.z), (bb.x, bb.y, bb.z));
    }
}
