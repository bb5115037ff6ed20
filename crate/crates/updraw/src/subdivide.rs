//! Arc subdivisions and the layouts they buy: bandwidth-driven two-queue
//! and four-track subdivisions, the upward-planar level subdivision, the
//! rainbow-greedy queue assignment, and polyline drawings with two bends.

use std::collections::BTreeMap;

use crate::dag::{Dag, VertexOrder};
use crate::error::{Error, Result};
use crate::geometry::{point_strictly_inside, segments_intersect_improperly, Drawing3D, GridPoint};
use crate::layout::{verify_queue_layout, wrap, QueueLayout, TrackLayout};

/// A topological order together with its exact maximum arc stretch.
#[derive(Debug, Clone)]
pub struct BandwidthCertificate {
    pub order: VertexOrder,
    pub b: usize,
}

/// Where a subdivision vertex came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexOrigin {
    Original(usize),
    /// The `position`-th interior vertex (1-based) on the path replacing
    /// `arc`.
    Division { arc: (usize, usize), position: usize },
}

/// A dag in which every original arc has been replaced by a directed path,
/// with enough bookkeeping to reverse the operation.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub graph: Dag,
    pub origin: Vec<VertexOrigin>,
    pub per_arc_counts: BTreeMap<(usize, usize), usize>,
}

impl Subdivision {
    pub fn original_n(&self) -> usize {
        self.origin
            .iter()
            .filter(|o| matches!(o, VertexOrigin::Original(_)))
            .count()
    }

    /// Contracts every division path back down and returns the recovered
    /// dag, checking on the way that the paths are intact and that the
    /// graph contains nothing else.
    pub fn contracted(&self) -> Result<Dag> {
        let n0 = self.original_n();
        let mut at: BTreeMap<((usize, usize), usize), usize> = BTreeMap::new();
        for (x, o) in self.origin.iter().enumerate() {
            match *o {
                VertexOrigin::Original(v) => {
                    if v != x {
                        return Err(Error::InvalidParams(format!(
                            "original vertex {v} stored under id {x}"
                        )));
                    }
                }
                VertexOrigin::Division { arc, position } => {
                    at.insert((arc, position), x);
                }
            }
        }
        let mut walked = 0usize;
        for (&(v, w), &k) in &self.per_arc_counts {
            let mut prev = v;
            for pos in 1..=k {
                let x = *at.get(&((v, w), pos)).ok_or_else(|| {
                    Error::InvalidParams(format!("missing division {pos} of arc ({v},{w})"))
                })?;
                if !self.graph.has_arc(prev, x) {
                    return Err(Error::InvalidParams(format!(
                        "broken path for arc ({v},{w}) at position {pos}"
                    )));
                }
                prev = x;
            }
            if !self.graph.has_arc(prev, w) {
                return Err(Error::InvalidParams(format!(
                    "path for arc ({v},{w}) never reaches its head"
                )));
            }
            walked += k + 1;
        }
        if walked != self.graph.m() || at.len() + n0 != self.graph.n() {
            return Err(Error::InvalidParams(
                "subdivision contains arcs or vertices outside the paths".into(),
            ));
        }
        Dag::new(n0, self.per_arc_counts.keys().copied().collect())
    }
}

/// A straight-line drawing in the plane, one point per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing2D {
    pub points: Vec<(i64, i64)>,
}

/// Measures the maximum arc stretch of a topological order.
pub fn bandwidth_of(g: &Dag, order: &VertexOrder) -> Result<BandwidthCertificate> {
    if order.n() != g.n() || !order.respects(g) {
        return Err(Error::NotTopological);
    }
    let b = g
        .arcs()
        .iter()
        .map(|&(v, w)| order.position(w) - order.position(v))
        .max()
        .unwrap_or(0);
    Ok(BandwidthCertificate {
        order: order.clone(),
        b,
    })
}

/// One division vertex per row, identified by its original arc and the
/// 1-based level (order position) it sits on. Ids are handed out after the
/// originals in (tail level, head level, level) lexicographic order.
struct PathBuilder {
    n0: usize,
    rows: Vec<(usize, usize, usize, (usize, usize))>,
}

impl PathBuilder {
    fn new(n0: usize) -> Self {
        PathBuilder {
            n0,
            rows: Vec::new(),
        }
    }

    fn division(&mut self, i: usize, j: usize, level: usize, arc: (usize, usize)) {
        self.rows.push((i, j, level, arc));
    }

    /// Returns the finished subdivision plus each arc's division ids in
    /// path order with the level each one occupies.
    fn build(mut self, g: &Dag) -> (Subdivision, BTreeMap<(usize, usize), Vec<(usize, usize)>>) {
        self.rows.sort_unstable();
        let mut origin: Vec<VertexOrigin> = (0..self.n0).map(VertexOrigin::Original).collect();
        let mut paths: BTreeMap<(usize, usize), Vec<(usize, usize)>> =
            g.arcs().iter().map(|&a| (a, Vec::new())).collect();
        for (id0, &(_, _, level, arc)) in self.rows.iter().enumerate() {
            let id = self.n0 + id0;
            let path = paths.get_mut(&arc).expect("division of a known arc");
            origin.push(VertexOrigin::Division {
                arc,
                position: path.len() + 1,
            });
            path.push((level, id));
        }
        let mut arcs = Vec::new();
        let mut per_arc_counts = BTreeMap::new();
        for (&(v, w), path) in &paths {
            per_arc_counts.insert((v, w), path.len());
            let mut prev = v;
            for &(_, x) in path {
                arcs.push((prev, x));
                prev = x;
            }
            arcs.push((prev, w));
        }
        let graph = Dag::new(self.n0 + self.rows.len(), arcs).expect("subdivision paths");
        (
            Subdivision {
                graph,
                origin,
                per_arc_counts,
            },
            paths,
        )
    }
}

fn assert_certificate(g: &Dag, cert: &BandwidthCertificate) {
    assert!(
        cert.order.n() == g.n() && cert.order.respects(g),
        "bandwidth certificate does not fit the graph"
    );
}

/// Subdivides long arcs at every second level and lays the result out in
/// two queues.
///
/// An arc spanning levels i..j keeps its parity anchored at j: divisions
/// sit at j-2, j-4, ... down to i+1 or i+2, so every segment has span 2
/// except a kept short arc or an odd gap's first step. Queue 0 takes the
/// segments that end on an original vertex or start one level below; queue
/// 1 takes the span-2 segments that end on a division vertex. Within a
/// level the divisions follow their lower neighbour's rank, which keeps
/// queue 1 nesting-free; queue 0 never nests because its heads sit
/// leftmost in their level.
pub fn two_queue_subdivision(g: &Dag, cert: &BandwidthCertificate) -> (Subdivision, QueueLayout) {
    assert_certificate(g, cert);
    let n = g.n();
    let level = |v: usize| cert.order.position(v) + 1;
    let mut builder = PathBuilder::new(n);
    for &(v, w) in g.arcs() {
        let (i, j) = (level(v), level(w));
        let gap = j - i;
        if gap <= 2 {
            continue;
        }
        let first = if gap % 2 == 1 { i + 1 } else { i + 2 };
        for l in (first..=j - 2).step_by(2) {
            builder.division(i, j, l, (v, w));
        }
    }
    let (sub, paths) = builder.build(g);

    // Divisions grouped by the level they occupy, remembering the arc and
    // the predecessor on the path (the original tail for the first one).
    let mut at_level: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n + 1];
    for (&(v, w), path) in &paths {
        let mut prev = v;
        for &(l, x) in path {
            at_level[l].push((x, prev, w));
            prev = x;
        }
    }
    let mut sigma = Vec::with_capacity(sub.graph.n());
    let mut rank_in_level = vec![0usize; sub.graph.n()];
    for l in 1..=n {
        let v = cert.order.vertex_at(l - 1);
        rank_in_level[v] = 0;
        sigma.push(v);
        let mut members = at_level[l].clone();
        members.sort_unstable_by_key(|&(_, prev, w)| (rank_in_level[prev], level(w), prev));
        for (r, &(x, _, _)) in members.iter().enumerate() {
            rank_in_level[x] = r + 1;
            sigma.push(x);
        }
    }

    let is_original = |x: usize| x < n;
    let mut queue = BTreeMap::new();
    for &(a, b) in sub.graph.arcs() {
        let q = match (is_original(a), is_original(b)) {
            (_, true) => 0,
            (true, false) => {
                // First segment of a subdivided arc: span 1 joins queue 0,
                // span 2 queue 1.
                let (arc, _) = match sub.origin[b] {
                    VertexOrigin::Division { arc, position } => (arc, position),
                    VertexOrigin::Original(_) => unreachable!(),
                };
                let i = level(arc.0);
                let l = paths[&arc][0].0;
                if l == i + 1 {
                    0
                } else {
                    1
                }
            }
            (false, false) => 1,
        };
        queue.insert((a, b), q);
    }
    let order = VertexOrder::topological_for(&sub.graph, sigma).expect("level-major order");
    (
        sub,
        QueueLayout {
            order,
            queue,
            upward: true,
        },
    )
}

/// Subdivides every arc at each intermediate level plus once more before
/// its head, then wraps the levels into three tracks and parks the extra
/// division vertices on a fourth.
pub fn four_track_subdivision(g: &Dag, cert: &BandwidthCertificate) -> (Subdivision, TrackLayout) {
    assert_certificate(g, cert);
    let n = g.n();
    let level = |v: usize| cert.order.position(v) + 1;
    let mut builder = PathBuilder::new(n);
    for &(v, w) in g.arcs() {
        let (i, j) = (level(v), level(w));
        if j - i < 2 {
            continue;
        }
        for l in i + 1..=j - 1 {
            builder.division(i, j, l, (v, w));
        }
        // The step onto the head gets its own division vertex, listed
        // after the others and kept off the level tracks.
        builder.division(i, j, j, (v, w));
    }
    let (sub, paths) = builder.build(g);

    let mut at_level: Vec<Vec<(i64, i64, usize)>> = vec![Vec::new(); n + 1];
    let mut y_row: Vec<((usize, i64), usize)> = Vec::new();
    for (&(v, w), path) in &paths {
        if path.is_empty() {
            continue;
        }
        let (i, j) = (level(v), level(w));
        for &(l, x) in &path[..path.len() - 1] {
            at_level[l].push((-(i as i64), j as i64, x));
        }
        let y = path[path.len() - 1].1;
        y_row.push(((j, -(i as i64)), y));
    }

    let mut track = vec![0i64; sub.graph.n()];
    let mut rank = vec![0usize; sub.graph.n()];
    let mut counters = [0usize; 3];
    for l in 1..=n {
        let c = (l - 1) % 3;
        let slot = &mut counters[c];
        let v = cert.order.vertex_at(l - 1);
        track[v] = c as i64;
        rank[v] = *slot;
        *slot += 1;
        let mut members = at_level[l].clone();
        members.sort_unstable();
        for (_, _, x) in members {
            track[x] = c as i64;
            rank[x] = *slot;
            *slot += 1;
        }
    }
    y_row.sort_unstable();
    for (r, &(_, y)) in y_row.iter().enumerate() {
        track[y] = 3;
        rank[y] = r;
    }
    (sub, TrackLayout::new(track, rank, true))
}

/// Exact rational x-coordinate where an arc's segment crosses a horizontal
/// level line, kept as a fraction with positive denominator.
#[derive(Clone, Copy)]
struct LevelCrossing {
    num: i128,
    den: i128,
}

impl LevelCrossing {
    fn at_vertex(x: i64) -> Self {
        LevelCrossing {
            num: x as i128,
            den: 1,
        }
    }

    fn of_segment(a: (i64, i64), b: (i64, i64), y: i64) -> Self {
        let dy = (b.1 - a.1) as i128;
        LevelCrossing {
            num: a.0 as i128 * dy + (b.0 - a.0) as i128 * (y - a.1) as i128,
            den: dy,
        }
    }

    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

const PLANAR_COORD_LIMIT: i64 = 1 << 31;

/// Cuts every arc of an upward planar drawing at each horizontal line
/// through a vertex, producing a span-1 track layout over the subdivision
/// and, through wrapping, a 1-queue layout on 3 tracks.
pub fn upward_planar_subdivision(
    g: &Dag,
    upd: &Drawing2D,
) -> Result<(Subdivision, TrackLayout, QueueLayout, TrackLayout)> {
    let n = g.n();
    if upd.points.len() != n {
        return Err(Error::InvalidParams(format!(
            "expected {n} points, got {}",
            upd.points.len()
        )));
    }
    if upd
        .points
        .iter()
        .any(|&(x, y)| x.abs() > PLANAR_COORD_LIMIT || y.abs() > PLANAR_COORD_LIMIT)
    {
        return Err(Error::InvalidParams(
            "planar coordinates exceed the supported magnitude".into(),
        ));
    }
    let pt = |v: usize| GridPoint::new(upd.points[v].0, upd.points[v].1, 0);
    for &(v, w) in g.arcs() {
        if upd.points[w].1 <= upd.points[v].1 {
            return Err(Error::NotUpwardPlanar(format!(
                "arc ({v},{w}) does not increase in y"
            )));
        }
    }
    let mut sorted_pts: Vec<((i64, i64), usize)> =
        upd.points.iter().copied().zip(0..).collect();
    sorted_pts.sort_unstable();
    for pair in sorted_pts.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::NotUpwardPlanar(format!(
                "vertices {} and {} share a point",
                pair[0].1, pair[1].1
            )));
        }
    }
    let arcs = g.arcs();
    for v in 0..n {
        for &(a, b) in arcs {
            if a != v && b != v && point_strictly_inside(pt(v), pt(a), pt(b)) {
                return Err(Error::NotUpwardPlanar(format!(
                    "vertex {v} lies on arc ({a},{b})"
                )));
            }
        }
    }
    for (idx, &(a, b)) in arcs.iter().enumerate() {
        for &(c, d) in &arcs[idx + 1..] {
            if segments_intersect_improperly((pt(a), pt(b)), (pt(c), pt(d)))? {
                return Err(Error::NotUpwardPlanar(format!(
                    "arcs ({a},{b}) and ({c},{d}) cross"
                )));
            }
        }
    }

    let mut levels: Vec<i64> = upd.points.iter().map(|&(_, y)| y).collect();
    levels.sort_unstable();
    levels.dedup();
    let level_of = |y: i64| levels.binary_search(&y).expect("vertex level") ;

    let mut builder = PathBuilder::new(n);
    for &(v, w) in arcs {
        let (lv, lw) = (level_of(upd.points[v].1), level_of(upd.points[w].1));
        for l in lv + 1..lw {
            builder.division(v, w, l, (v, w));
        }
    }
    let (sub, paths) = builder.build(g);

    let mut members: Vec<Vec<(LevelCrossing, usize)>> = vec![Vec::new(); levels.len()];
    for v in 0..n {
        members[level_of(upd.points[v].1)].push((LevelCrossing::at_vertex(upd.points[v].0), v));
    }
    for (&(v, w), path) in &paths {
        for &(l, x) in path {
            members[l].push((
                LevelCrossing::of_segment(upd.points[v], upd.points[w], levels[l]),
                x,
            ));
        }
    }
    let mut track = vec![0i64; sub.graph.n()];
    let mut rank = vec![0usize; sub.graph.n()];
    for (l, list) in members.iter_mut().enumerate() {
        list.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
        for (r, &(_, x)) in list.iter().enumerate() {
            track[x] = l as i64;
            rank[x] = r;
        }
    }
    let span1 = TrackLayout::new(track, rank, true);
    let (ql, tl3) = wrap(&sub.graph, &span1, 1)?;
    Ok((sub, span1, ql, tl3))
}

/// Assigns each arc to the queue matching its nesting depth: processing
/// arcs by left endpoint, an arc lands in the first queue none of whose
/// earlier arcs strictly contains it. The queue count therefore equals the
/// largest set of pairwise nested arcs.
pub fn rainbow_queue_layout(g: &Dag, order: &VertexOrder) -> Result<QueueLayout> {
    if order.n() != g.n() || !order.respects(g) {
        return Err(Error::NotTopological);
    }
    let mut spans: Vec<(usize, std::cmp::Reverse<usize>, (usize, usize))> = g
        .arcs()
        .iter()
        .map(|&(v, w)| (order.position(v), std::cmp::Reverse(order.position(w)), (v, w)))
        .collect();
    spans.sort_unstable();
    let mut queue = BTreeMap::new();
    let mut max_r: Vec<usize> = Vec::new();
    let mut idx = 0;
    while idx < spans.len() {
        let l = spans[idx].0;
        let mut group_end = idx;
        while group_end < spans.len() && spans[group_end].0 == l {
            group_end += 1;
        }
        // Frontiers only reflect arcs with strictly smaller left endpoint,
        // so same-start arcs never block each other.
        let mut placed: Vec<(usize, usize)> = Vec::new();
        for &(_, std::cmp::Reverse(r), arc) in &spans[idx..group_end] {
            let q = (0..max_r.len())
                .find(|&q| max_r[q] <= r)
                .unwrap_or(max_r.len());
            if q == max_r.len() {
                max_r.push(0);
            }
            queue.insert(arc, q);
            placed.push((q, r));
        }
        for (q, r) in placed {
            max_r[q] = max_r[q].max(r);
        }
        idx = group_end;
    }
    Ok(QueueLayout {
        order: order.clone(),
        queue,
        upward: true,
    })
}

/// Draws a queue layout with vertices on a single column and at most two
/// bends per arc: queue l's long arcs detour through the x = 2l and
/// x = 2l+1 columns at heights between their endpoints.
pub fn two_bend_drawing(g: &Dag, ql: &QueueLayout) -> Result<Drawing3D> {
    if !ql.upward {
        return Err(Error::InvalidLayout("queue layout does not claim upward".into()));
    }
    let report =
        verify_queue_layout(g, ql).map_err(|e| Error::InvalidLayout(e.to_string()))?;
    if !report.ok() {
        return Err(Error::InvalidLayout(format!("invalid queue layout: {report}")));
    }
    let n = g.n();
    let pos1 = |v: usize| ql.order.position(v) as i64 + 1;
    let points = (0..n).map(|v| GridPoint::new(0, 0, 2 * pos1(v))).collect();
    let mut bends = BTreeMap::new();
    for &(v, w) in g.arcs() {
        let (i, j) = (pos1(v), pos1(w));
        if j > i + 1 {
            let l = ql.queue[&(v, w)] as i64;
            bends.insert(
                (v, w),
                vec![
                    GridPoint::new(2 * l, 1, i + j),
                    GridPoint::new(2 * l + 1, 1, i + j + 1),
                ],
            );
        }
    }
    Ok(Drawing3D { points, bends })
}
