//! Track and queue layouts, their exact checkers, span accounting, the
//! wrapping construction, and the conversions between layouts and drawings.

use std::collections::{BTreeMap, BTreeSet};

use crate::dag::{topological_order, Dag, VertexOrder};
use crate::error::{Error, Result};
use crate::geometry::Drawing3D;
use crate::report::{VerifyReport, Violation};

/// Assignment of every vertex to a signed track id and a position (rank)
/// within that track. `upward` claims that G plus the track successor arcs
/// stays acyclic; the checker tests the claim rather than trusting it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackLayout {
    pub track: Vec<i64>,
    pub rank: Vec<usize>,
    pub upward: bool,
}

impl TrackLayout {
    pub fn new(track: Vec<i64>, rank: Vec<usize>, upward: bool) -> Self {
        TrackLayout {
            track,
            rank,
            upward,
        }
    }

    /// Distinct track ids, ascending.
    pub fn track_ids(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self.track.iter().copied().collect();
        set.into_iter().collect()
    }

    pub fn track_count(&self) -> usize {
        self.track.iter().copied().collect::<BTreeSet<_>>().len()
    }

    /// Vertices of each track in rank order.
    pub fn vertices_by_track(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut map: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for v in 0..self.track.len() {
            map.entry(self.track[v]).or_default().push((self.rank[v], v));
        }
        map.into_iter()
            .map(|(t, mut members)| {
                members.sort_unstable();
                (t, members.into_iter().map(|(_, v)| v).collect())
            })
            .collect()
    }

    /// G plus an arc from each vertex to its successor within its track,
    /// duplicates removed.
    pub fn gplus_arcs(&self, g: &Dag) -> Vec<(usize, usize)> {
        let mut arcs: BTreeSet<(usize, usize)> = g.arcs().iter().copied().collect();
        for members in self.vertices_by_track().values() {
            for w in members.windows(2) {
                arcs.insert((w[0], w[1]));
            }
        }
        arcs.into_iter().collect()
    }
}

/// Vertex order plus an arc partition into queues. `upward` claims the
/// order is topological.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueueLayout {
    pub order: VertexOrder,
    pub queue: BTreeMap<(usize, usize), usize>,
    pub upward: bool,
}

impl QueueLayout {
    pub fn queue_count(&self) -> usize {
        self.queue.values().copied().collect::<BTreeSet<_>>().len()
    }
}

/// A track layout whose arcs additionally carry colours; validity only
/// forbids X-crossings between arcs of the same colour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColouredTrackLayout {
    pub layout: TrackLayout,
    pub arc_colour: BTreeMap<(usize, usize), usize>,
}

impl EdgeColouredTrackLayout {
    pub fn colour_count(&self) -> usize {
        self.arc_colour
            .values()
            .copied()
            .collect::<BTreeSet<_>>()
            .len()
    }
}

/// |track(head) - track(tail)| of an arc.
pub fn span(tl: &TrackLayout, arc: (usize, usize)) -> i64 {
    (tl.track[arc.1] - tl.track[arc.0]).abs()
}

/// One arc of a track-pair group: ranks at the smaller and larger track id,
/// plus the arc itself.
struct PairEntry {
    rank_lo: usize,
    rank_hi: usize,
    arc: (usize, usize),
}

/// Groups arcs by unordered track pair; intra-track arcs are excluded.
fn track_pair_groups(g: &Dag, tl: &TrackLayout) -> BTreeMap<(i64, i64), Vec<PairEntry>> {
    let mut groups: BTreeMap<(i64, i64), Vec<PairEntry>> = BTreeMap::new();
    for &(v, w) in g.arcs() {
        let (tv, tw) = (tl.track[v], tl.track[w]);
        if tv == tw {
            continue;
        }
        let entry = if tv < tw {
            PairEntry {
                rank_lo: tl.rank[v],
                rank_hi: tl.rank[w],
                arc: (v, w),
            }
        } else {
            PairEntry {
                rank_lo: tl.rank[w],
                rank_hi: tl.rank[v],
                arc: (v, w),
            }
        };
        groups
            .entry((tv.min(tw), tv.max(tw)))
            .or_default()
            .push(entry);
    }
    groups
}

fn crosses(a: &PairEntry, b: &PairEntry) -> bool {
    (a.rank_lo < b.rank_lo && b.rank_hi < a.rank_hi)
        || (b.rank_lo < a.rank_lo && a.rank_hi < b.rank_hi)
}

/// Checks rank contiguity, properness, X-crossing-freeness, and (when the
/// layout claims upward) acyclicity of G⁺. Reports every offending arc pair.
pub fn verify_track_layout(g: &Dag, tl: &TrackLayout) -> Result<VerifyReport> {
    if tl.track.len() != g.n() || tl.rank.len() != g.n() {
        return Err(Error::MissingAssignment(format!(
            "layout assigns {} tracks and {} ranks for {} vertices",
            tl.track.len(),
            tl.rank.len(),
            g.n()
        )));
    }
    let mut violations = Vec::new();

    for (t, members) in tl.vertices_by_track() {
        let bad_ranks = members
            .iter()
            .enumerate()
            .any(|(i, &v)| tl.rank[v] != i);
        if bad_ranks {
            violations.push(Violation::BadTrackRanks { track: t });
        }
    }

    for &(v, w) in g.arcs() {
        if tl.track[v] == tl.track[w] {
            violations.push(Violation::IntraTrackArc { arc: (v, w) });
        }
    }

    for group in track_pair_groups(g, tl).values() {
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                if crosses(&group[i], &group[j]) {
                    violations.push(Violation::XCrossing {
                        arc_a: group[i].arc,
                        arc_b: group[j].arc,
                    });
                }
            }
        }
    }

    if tl.upward {
        if let Some(cycle) = find_cycle(g.n(), &tl.gplus_arcs(g)) {
            violations.push(Violation::GPlusCycle { vertices: cycle });
        }
    }

    Ok(VerifyReport { violations })
}

/// Kahn elimination; on failure walks predecessors inside the residual set
/// to produce one concrete cycle in forward arc order.
fn find_cycle(n: usize, arcs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut inn: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(v, w) in arcs {
        indeg[w] += 1;
        out[v].push(w);
        inn[w].push(v);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut alive = vec![true; n];
    let mut removed = 0;
    while let Some(v) = stack.pop() {
        alive[v] = false;
        removed += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    if removed == n {
        return None;
    }
    // Every residual vertex keeps a residual predecessor, so following
    // predecessors must eventually revisit a vertex.
    let start = (0..n).find(|&v| alive[v]).unwrap();
    let mut seen_at: BTreeMap<usize, usize> = BTreeMap::new();
    let mut path = vec![start];
    let mut cur = start;
    loop {
        seen_at.insert(cur, path.len() - 1);
        let prev = *inn[cur]
            .iter()
            .find(|&&p| alive[p])
            .expect("residual vertex has a residual predecessor");
        if let Some(&at) = seen_at.get(&prev) {
            let mut cycle: Vec<usize> = path[at..].to_vec();
            cycle.push(prev);
            cycle.reverse();
            cycle.pop();
            return Some(cycle);
        }
        path.push(prev);
        cur = prev;
    }
}

/// Folds a layout whose arcs all climb 1..s tracks into an s-queue layout
/// and a (2s+1)-track layout, both upward. The queue order concatenates the
/// tracks in ascending id order; queues are indexed by span, densely. New
/// track ids are the old ones mod 2s+1 (non-negative remainder), re-ranked
/// by (old track, old rank).
pub fn wrap(g: &Dag, tl: &TrackLayout, s: i64) -> Result<(QueueLayout, TrackLayout)> {
    let n = g.n();
    if tl.track.len() != n || tl.rank.len() != n {
        return Err(Error::MissingAssignment(format!(
            "layout assigns {} tracks and {} ranks for {} vertices",
            tl.track.len(),
            tl.rank.len(),
            n
        )));
    }
    if s <= 0 {
        return Err(Error::InvalidParams("wrap needs s >= 1".into()));
    }
    let mut spans_present = BTreeSet::new();
    for &(v, w) in g.arcs() {
        let d = tl.track[w] - tl.track[v];
        if d <= 0 || d > s {
            return Err(Error::SpanViolation {
                arc: (v, w),
                span: d,
                limit: s,
            });
        }
        spans_present.insert(d);
    }
    let span_index: BTreeMap<i64, usize> = spans_present
        .iter()
        .enumerate()
        .map(|(i, &d)| (d, i))
        .collect();

    let mut by_old: Vec<usize> = (0..n).collect();
    by_old.sort_unstable_by_key(|&v| (tl.track[v], tl.rank[v]));
    let order = VertexOrder::topological_for(g, by_old.clone())?;

    let queue = g
        .arcs()
        .iter()
        .map(|&(v, w)| ((v, w), span_index[&(tl.track[w] - tl.track[v])]))
        .collect();
    let ql = QueueLayout {
        order,
        queue,
        upward: true,
    };

    let modulus = 2 * s + 1;
    let mut new_rank = vec![0usize; n];
    let mut counters: BTreeMap<i64, usize> = BTreeMap::new();
    for &v in &by_old {
        let t = tl.track[v].rem_euclid(modulus);
        let c = counters.entry(t).or_insert(0);
        new_rank[v] = *c;
        *c += 1;
    }
    let new_track: Vec<i64> = (0..n).map(|v| tl.track[v].rem_euclid(modulus)).collect();
    let wrapped = TrackLayout::new(new_track, new_rank, true);
    Ok((ql, wrapped))
}

/// Checks a queue layout exactly: every same-queue nested arc pair is
/// reported, and when the layout claims upward every arc against the order.
pub fn verify_queue_layout(g: &Dag, ql: &QueueLayout) -> Result<VerifyReport> {
    if ql.order.n() != g.n() {
        return Err(Error::MissingAssignment(format!(
            "order covers {} vertices, graph has {}",
            ql.order.n(),
            g.n()
        )));
    }
    for &arc in g.arcs() {
        if !ql.queue.contains_key(&arc) {
            return Err(Error::MissingAssignment(format!(
                "arc ({}, {}) has no queue",
                arc.0, arc.1
            )));
        }
    }
    let mut violations = Vec::new();
    if ql.upward {
        for &(v, w) in g.arcs() {
            if ql.order.position(v) > ql.order.position(w) {
                violations.push(Violation::NonTopologicalArc { arc: (v, w) });
            }
        }
    }
    let mut per_queue: BTreeMap<usize, Vec<(usize, usize, (usize, usize))>> = BTreeMap::new();
    for &(v, w) in g.arcs() {
        let (pv, pw) = (ql.order.position(v), ql.order.position(w));
        let (l, r) = (pv.min(pw), pv.max(pw));
        per_queue
            .entry(ql.queue[&(v, w)])
            .or_default()
            .push((l, r, (v, w)));
    }
    for (&q, arcs) in &per_queue {
        for i in 0..arcs.len() {
            for j in i + 1..arcs.len() {
                let (a, b) = (&arcs[i], &arcs[j]);
                let nested =
                    (a.0 < b.0 && b.1 < a.1) || (b.0 < a.0 && a.1 < b.1);
                if nested {
                    violations.push(Violation::NestedArcs {
                        arc_a: a.2,
                        arc_b: b.2,
                        queue: q,
                    });
                }
            }
        }
    }
    Ok(VerifyReport { violations })
}

/// Converts an upward track layout with no monochromatic X-crossing into a
/// queue layout: the order is the min-id topological order of G⁺, and each
/// (colour, track pair) class becomes one queue.
pub fn track_to_queue(g: &Dag, etl: &EdgeColouredTrackLayout) -> Result<QueueLayout> {
    let tl = &etl.layout;
    if tl.track.len() != g.n() || tl.rank.len() != g.n() {
        return Err(Error::InvalidLayout(
            "track or rank assignment is incomplete".into(),
        ));
    }
    for &arc in g.arcs() {
        if !etl.arc_colour.contains_key(&arc) {
            return Err(Error::InvalidLayout(format!(
                "arc ({}, {}) has no colour",
                arc.0, arc.1
            )));
        }
    }
    for (t, members) in tl.vertices_by_track() {
        if members.iter().enumerate().any(|(i, &v)| tl.rank[v] != i) {
            return Err(Error::InvalidLayout(format!("ranks of track {t} have gaps")));
        }
    }
    for &(v, w) in g.arcs() {
        if tl.track[v] == tl.track[w] {
            return Err(Error::InvalidLayout(format!(
                "arc ({v}, {w}) joins two vertices of track {}",
                tl.track[v]
            )));
        }
    }
    if !tl.upward {
        return Err(Error::InvalidLayout("layout does not claim upward".into()));
    }
    for group in track_pair_groups(g, tl).values() {
        for i in 0..group.len() {
            for j in i + 1..group.len() {
                if etl.arc_colour[&group[i].arc] == etl.arc_colour[&group[j].arc]
                    && crosses(&group[i], &group[j])
                {
                    return Err(Error::InvalidLayout(format!(
                        "monochromatic X-crossing between ({}, {}) and ({}, {})",
                        group[i].arc.0, group[i].arc.1, group[j].arc.0, group[j].arc.1
                    )));
                }
            }
        }
    }
    let gplus = Dag::from_arcs_dedup(g.n(), tl.gplus_arcs(g))
        .map_err(|_| Error::InvalidLayout("G⁺ has a cycle".into()))?;
    let order = topological_order(&gplus);

    let keys: BTreeSet<(usize, i64, i64)> = g
        .arcs()
        .iter()
        .map(|&(v, w)| {
            let (tv, tw) = (tl.track[v], tl.track[w]);
            (etl.arc_colour[&(v, w)], tv.min(tw), tv.max(tw))
        })
        .collect();
    let key_index: BTreeMap<(usize, i64, i64), usize> =
        keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let queue = g
        .arcs()
        .iter()
        .map(|&(v, w)| {
            let (tv, tw) = (tl.track[v], tl.track[w]);
            let key = (etl.arc_colour[&(v, w)], tv.min(tw), tv.max(tw));
            ((v, w), key_index[&key])
        })
        .collect();
    Ok(QueueLayout {
        order: VertexOrder::topological_for(g, order.sequence().to_vec())?,
        queue,
        upward: true,
    })
}

/// Cuts the vertex order of a valid upward 1-queue layout into consecutive
/// blocks, one track per block. Each block ends just before the furthest
/// head reached from the previous block, so that head opens the block after
/// the next; every arc then climbs one or two tracks, and any arc climbing
/// two lands on the first vertex of its target track.
pub fn one_queue_to_span2_tracks(g: &Dag, ql: &QueueLayout) -> Result<TrackLayout> {
    if !ql.upward || ql.queue_count() > 1 {
        return Err(Error::NotOneQueue);
    }
    let report = verify_queue_layout(g, ql)?;
    if !report.ok() {
        return Err(Error::NotOneQueue);
    }
    let n = g.n();
    // furthest_from[p] = max order position of a head whose tail sits at p.
    let mut furthest_from = vec![usize::MIN; n];
    for &(v, w) in g.arcs() {
        let (pv, pw) = (ql.order.position(v), ql.order.position(w));
        furthest_from[pv] = furthest_from[pv].max(pw);
    }
    let mut track = vec![0i64; n];
    let mut rank = vec![0usize; n];
    let mut block_start = 0usize;
    let mut block_id = 0i64;
    let mut furthest_prev = 0usize;
    while block_start < n {
        let block_end = block_start.max(furthest_prev.saturating_sub(1));
        let mut reach = 0usize;
        for (r, p) in (block_start..=block_end).enumerate() {
            let v = ql.order.vertex_at(p);
            track[v] = block_id;
            rank[v] = r;
            reach = reach.max(furthest_from[p]);
        }
        furthest_prev = reach;
        block_id += 1;
        block_start = block_end + 1;
    }
    Ok(TrackLayout::new(track, rank, true))
}

/// Track layout of a verified straight-line drawing: vertices sharing an
/// (x, y) column are ordered by z, and each column is split in two by
/// alternating the colour along runs of arc-joined consecutive vertices, so
/// no arc stays inside one track.
pub fn drawing_to_track_layout(g: &Dag, d: &Drawing3D, upward: bool) -> Result<TrackLayout> {
    let n = g.n();
    if d.points.len() != n {
        return Err(Error::InvalidDrawing(format!(
            "{} vertex points for {} vertices",
            d.points.len(),
            n
        )));
    }
    if !d.bends.is_empty() {
        return Err(Error::InvalidDrawing(
            "column layout needs a straight-line drawing".into(),
        ));
    }
    let mut columns: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        columns.entry((d.points[v].x, d.points[v].y)).or_default().push(v);
    }
    let mut track = vec![0i64; n];
    let mut rank = vec![0usize; n];
    let mut next_track = 0i64;
    for members in columns.values_mut() {
        members.sort_unstable_by_key(|&v| d.points[v].z);
        for w in members.windows(2) {
            if d.points[w[0]].z == d.points[w[1]].z {
                return Err(Error::InvalidDrawing(format!(
                    "vertices {} and {} share a point",
                    w[0], w[1]
                )));
            }
        }
        // Any intra-column arc between non-consecutive vertices would pass
        // through the points between them, which a verified drawing forbids.
        for i in 0..members.len() {
            for j in i + 2..members.len() {
                if g.has_arc(members[i], members[j]) || g.has_arc(members[j], members[i]) {
                    return Err(Error::InvalidDrawing(format!(
                        "vertex between {} and {} lies on their arc",
                        members[i], members[j]
                    )));
                }
            }
        }
        let mut colour = vec![0u8; members.len()];
        for k in 1..members.len() {
            let joined = g.has_arc(members[k - 1], members[k])
                || g.has_arc(members[k], members[k - 1]);
            colour[k] = if joined { 1 - colour[k - 1] } else { 0 };
        }
        for sub in [0u8, 1] {
            let chosen: Vec<usize> = members
                .iter()
                .enumerate()
                .filter(|&(k, _)| colour[k] == sub)
                .map(|(_, &v)| v)
                .collect();
            if chosen.is_empty() {
                continue;
            }
            for (r, &v) in chosen.iter().enumerate() {
                track[v] = next_track;
                rank[v] = r;
            }
            next_track += 1;
        }
    }
    Ok(TrackLayout::new(track, rank, upward))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::generate;
    use crate::dag::Family;
    use crate::geometry::GridPoint;

    fn layout(track: Vec<i64>, rank: Vec<usize>, upward: bool) -> TrackLayout {
        TrackLayout::new(track, rank, upward)
    }

    #[test]
    fn verify_accepts_two_track_arc() {
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        let tl = layout(vec![0, 1], vec![0, 0], true);
        assert!(verify_track_layout(&g, &tl).unwrap().ok());
        assert_eq!(span(&tl, (0, 1)), 1);
    }

    #[test]
    fn verify_reports_definitional_x_crossing() {
        // Arcs 0->2, 1->3; tails share a track in order 0,1 while heads
        // appear in order 3,2.
        let g = Dag::new(4, vec![(0, 2), (1, 3)]).unwrap();
        let tl = layout(vec![0, 0, 1, 1], vec![0, 1, 1, 0], false);
        let rep = verify_track_layout(&g, &tl).unwrap();
        assert_eq!(
            rep.violations,
            vec![Violation::XCrossing {
                arc_a: (0, 2),
                arc_b: (1, 3)
            }]
        );
    }

    #[test]
    fn verify_catches_opposite_direction_x_crossing() {
        // Same picture, one arc reversed: still an X between the tracks.
        let g = Dag::new(4, vec![(0, 2), (3, 1)]).unwrap();
        let tl = layout(vec![0, 0, 1, 1], vec![0, 1, 1, 0], false);
        let rep = verify_track_layout(&g, &tl).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert!(matches!(rep.violations[0], Violation::XCrossing { .. }));
    }

    #[test]
    fn verify_reports_intra_track_and_bad_ranks() {
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        let tl = layout(vec![0, 0], vec![0, 3], false);
        let rep = verify_track_layout(&g, &tl).unwrap();
        assert!(rep.violations.iter().any(|v| v.kind() == "bad_track_ranks"));
        assert!(rep.violations.iter().any(|v| v.kind() == "intra_track_arc"));
    }

    #[test]
    fn verify_reports_gplus_cycle() {
        // Track order forces 1 before 0 while the arc forces 0 before 1.
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        let tl = layout(vec![0, 0], vec![1, 0], true);
        let rep = verify_track_layout(&g, &tl).unwrap();
        let cycle = rep
            .violations
            .iter()
            .find_map(|v| match v {
                Violation::GPlusCycle { vertices } => Some(vertices.clone()),
                _ => None,
            })
            .expect("cycle reported");
        assert_eq!(cycle.len(), 2);
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        let tl = layout(vec![0], vec![0], false);
        assert!(matches!(
            verify_track_layout(&g, &tl),
            Err(Error::MissingAssignment(_))
        ));
    }

    #[test]
    fn wrap_folds_tracks_and_partitions_by_span() {
        // Path on tracks -1, 0, 1 with unit climbs, s = 1.
        let g = generate(&Family::Path { n: 3 }).unwrap();
        let tl = layout(vec![-1, 0, 1], vec![0, 0, 0], true);
        let (ql, wrapped) = wrap(&g, &tl, 1).unwrap();
        assert_eq!(ql.order.sequence(), &[0, 1, 2]);
        assert_eq!(ql.queue_count(), 1);
        assert!(ql.upward);
        // -1 mod 3 = 2 under the non-negative remainder convention.
        assert_eq!(wrapped.track, vec![2, 0, 1]);
        assert!(verify_queue_layout(&g, &ql).unwrap().ok());
        assert!(verify_track_layout(&g, &wrapped).unwrap().ok());
    }

    #[test]
    fn wrap_example_minus_one_mod_five() {
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        let tl = layout(vec![-1, 1], vec![0, 0], true);
        let (ql, wrapped) = wrap(&g, &tl, 2).unwrap();
        assert_eq!(wrapped.track, vec![4, 1]);
        assert_eq!(ql.queue_count(), 1);
    }

    #[test]
    fn wrap_rejects_bad_spans() {
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        let down = layout(vec![1, 0], vec![0, 0], true);
        assert!(matches!(
            wrap(&g, &down, 2),
            Err(Error::SpanViolation { span: -1, .. })
        ));
        let far = layout(vec![0, 5], vec![0, 0], true);
        assert!(matches!(
            wrap(&g, &far, 2),
            Err(Error::SpanViolation { span: 5, .. })
        ));
    }

    #[test]
    fn queue_checker_examples() {
        // (0,3) strictly around (1,2) in the identity order.
        let g = Dag::new(4, vec![(0, 3), (1, 2)]).unwrap();
        let order = VertexOrder::from_sequence(vec![0, 1, 2, 3]).unwrap();
        let queue: BTreeMap<_, _> = vec![((0, 3), 0), ((1, 2), 0)].into_iter().collect();
        let ql = QueueLayout {
            order: order.clone(),
            queue,
            upward: false,
        };
        let rep = verify_queue_layout(&g, &ql).unwrap();
        assert_eq!(
            rep.violations,
            vec![Violation::NestedArcs {
                arc_a: (0, 3),
                arc_b: (1, 2),
                queue: 0
            }]
        );

        // Crossing arcs are fine in one queue.
        let g2 = Dag::new(4, vec![(0, 2), (1, 3)]).unwrap();
        let queue2: BTreeMap<_, _> = vec![((0, 2), 0), ((1, 3), 0)].into_iter().collect();
        let ql2 = QueueLayout {
            order,
            queue: queue2,
            upward: true,
        };
        assert!(verify_queue_layout(&g2, &ql2).unwrap().ok());
    }

    #[test]
    fn queue_checker_reports_non_topological_arcs() {
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        let ql = QueueLayout {
            order: VertexOrder::from_sequence(vec![1, 0]).unwrap(),
            queue: vec![((0, 1), 0)].into_iter().collect(),
            upward: true,
        };
        let rep = verify_queue_layout(&g, &ql).unwrap();
        assert_eq!(
            rep.violations,
            vec![Violation::NonTopologicalArc { arc: (0, 1) }]
        );
    }

    #[test]
    fn track_to_queue_single_arc() {
        let g = Dag::new(2, vec![(0, 1)]).unwrap();
        let etl = EdgeColouredTrackLayout {
            layout: layout(vec![0, 1], vec![0, 0], true),
            arc_colour: vec![((0, 1), 0)].into_iter().collect(),
        };
        let ql = track_to_queue(&g, &etl).unwrap();
        assert_eq!(ql.queue_count(), 1);
        assert!(verify_queue_layout(&g, &ql).unwrap().ok());
    }

    #[test]
    fn track_to_queue_two_colours_one_pair() {
        let g = Dag::new(4, vec![(0, 2), (1, 3)]).unwrap();
        // The two arcs X-cross, so they need distinct colours.
        let etl = EdgeColouredTrackLayout {
            layout: layout(vec![0, 0, 1, 1], vec![0, 1, 1, 0], true),
            arc_colour: vec![((0, 2), 0), ((1, 3), 1)].into_iter().collect(),
        };
        let ql = track_to_queue(&g, &etl).unwrap();
        assert!(ql.queue_count() <= 2);
        assert!(verify_queue_layout(&g, &ql).unwrap().ok());

        // Same layout, one colour: the crossing is monochromatic, invalid.
        let mono = EdgeColouredTrackLayout {
            layout: layout(vec![0, 0, 1, 1], vec![0, 1, 1, 0], true),
            arc_colour: vec![((0, 2), 0), ((1, 3), 0)].into_iter().collect(),
        };
        assert!(matches!(
            track_to_queue(&g, &mono),
            Err(Error::InvalidLayout(_))
        ));
    }

    #[test]
    fn one_queue_blocks_directed_path_and_single_arc() {
        let g = generate(&Family::Path { n: 3 }).unwrap();
        let ql = QueueLayout {
            order: topological_order(&g),
            queue: g.arcs().iter().map(|&a| (a, 0)).collect(),
            upward: true,
        };
        let tl = one_queue_to_span2_tracks(&g, &ql).unwrap();
        assert_eq!(tl.track, vec![0, 1, 2]);
        assert!(verify_track_layout(&g, &tl).unwrap().ok());

        let g2 = Dag::new(2, vec![(0, 1)]).unwrap();
        let ql2 = QueueLayout {
            order: topological_order(&g2),
            queue: vec![((0, 1), 0)].into_iter().collect(),
            upward: true,
        };
        let tl2 = one_queue_to_span2_tracks(&g2, &ql2).unwrap();
        assert_eq!(tl2.track_count(), 2);
    }

    #[test]
    fn one_queue_block_conditions_hold() {
        // A fan plus a long arc exercises the span-2 case: 0->1, 0->2, 0->3
        // under order 0,1,2,3 is one queue (shared tails never nest).
        let g = Dag::new(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let ql = QueueLayout {
            order: topological_order(&g),
            queue: g.arcs().iter().map(|&a| (a, 0)).collect(),
            upward: true,
        };
        let tl = one_queue_to_span2_tracks(&g, &ql).unwrap();
        assert!(verify_track_layout(&g, &tl).unwrap().ok());
        for &arc in g.arcs() {
            let d = tl.track[arc.1] - tl.track[arc.0];
            assert!(d == 1 || d == 2, "arc {arc:?} climbs {d}");
            if d == 2 {
                assert_eq!(tl.rank[arc.1], 0, "span-2 head must open its track");
            }
        }
        // Round trip: the block ordering fed back is again 1-queue upward.
        let (ql2, _) = wrap(&g, &tl, 2).unwrap();
        assert!(verify_queue_layout(&g, &ql2).unwrap().ok());
        assert!(ql2.queue_count() <= 2);
    }

    #[test]
    fn one_queue_rejects_wider_layouts() {
        let g = Dag::new(4, vec![(0, 3), (1, 2)]).unwrap();
        let ql = QueueLayout {
            order: topological_order(&g),
            queue: vec![((0, 3), 0), ((1, 2), 1)].into_iter().collect(),
            upward: true,
        };
        assert!(matches!(
            one_queue_to_span2_tracks(&g, &ql),
            Err(Error::NotOneQueue)
        ));
    }

    #[test]
    fn columns_become_tracks() {
        let p = |x, y, z| GridPoint::new(x, y, z);
        // Distinct columns: singleton tracks.
        let g = Dag::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let d = Drawing3D::straight(vec![p(0, 0, 0), p(1, 0, 1), p(2, 0, 2)]);
        let tl = drawing_to_track_layout(&g, &d, true).unwrap();
        assert_eq!(tl.track_count(), 3);
        assert!(verify_track_layout(&g, &tl).unwrap().ok());

        // One column of three with consecutive arcs: alternation splits it.
        let g2 = Dag::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let d2 = Drawing3D::straight(vec![p(0, 0, 0), p(0, 0, 1), p(0, 0, 2)]);
        let tl2 = drawing_to_track_layout(&g2, &d2, true).unwrap();
        assert_eq!(tl2.track_count(), 2);
        assert!(verify_track_layout(&g2, &tl2).unwrap().ok());
        assert_eq!(tl2.track[0], tl2.track[2]);
    }

    #[test]
    fn column_layout_rejects_hidden_vertex_on_arc() {
        let p = |x, y, z| GridPoint::new(x, y, z);
        let g = Dag::new(3, vec![(0, 2)]).unwrap();
        let d = Drawing3D::straight(vec![p(0, 0, 0), p(0, 0, 1), p(0, 0, 2)]);
        assert!(matches!(
            drawing_to_track_layout(&g, &d, true),
            Err(Error::InvalidDrawing(_))
        ));
    }

    #[test]
    fn gplus_restricted_to_a_track_matches_rank_order() {
        let g = Dag::new(4, vec![(0, 1), (2, 3), (0, 3)]).unwrap();
        let tl = layout(vec![0, 1, 0, 1], vec![0, 0, 1, 1], true);
        assert!(verify_track_layout(&g, &tl).unwrap().ok());
        let gplus = Dag::from_arcs_dedup(g.n(), tl.gplus_arcs(&g)).unwrap();
        let order = topological_order(&gplus);
        for members in tl.vertices_by_track().values() {
            for w in members.windows(2) {
                assert!(order.position(w[0]) < order.position(w[1]));
            }
        }
    }
}
