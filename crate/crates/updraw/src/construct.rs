//! Coordinate constructions: the moment-curve drawing, colour-driven
//! placements, track-to-drawing conversions, the tree and caterpillar track
//! layouts, and the track layout of the subdivided complete graph.

use std::collections::BTreeMap;

use crate::colouring::{is_proper_colouring, longest_path_colouring, Colouring};
use crate::dag::{depth_labels, generate, topological_order, Dag, Family};
use crate::error::{Error, Result};
use crate::geometry::{Drawing3D, GridPoint};
use crate::layout::{verify_track_layout, TrackLayout};

/// A prime together with the half-open interval (low, high] it was the
/// smallest member of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeChoice {
    pub p: i64,
    pub low: i64,
    pub high: i64,
}

fn is_prime(x: i64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeChoice {
    /// Smallest prime in (low, high], if any.
    pub fn first_in(low: i64, high: i64) -> Option<PrimeChoice> {
        (low + 1..=high)
            .find(|&x| is_prime(x))
            .map(|p| PrimeChoice { p, low, high })
    }

    /// Smallest prime >= x.
    pub fn at_least(x: i64) -> PrimeChoice {
        let mut p = x.max(2);
        while !is_prime(p) {
            p += 1;
        }
        PrimeChoice {
            p,
            low: x - 1,
            high: p,
        }
    }
}

fn pow_mod(base: i64, exp: u32, p: i64) -> i64 {
    let mut acc: u128 = 1;
    let b = (base.rem_euclid(p)) as u128;
    for _ in 0..exp {
        acc = acc * b % (p as u128);
    }
    acc as i64
}

/// Vertices on the moment curve mod p: the i-th vertex of a topological
/// order sits at (i^3 mod p, i^2 mod p, i), with p the smallest prime in
/// (n, 2n]. Any four distinct heights are affinely independent mod p, which
/// rules out coplanar segment pairs and hence crossings.
pub fn moment_curve_drawing(g: &Dag) -> Drawing3D {
    let n = g.n();
    if n == 0 {
        return Drawing3D::straight(Vec::new());
    }
    let p = PrimeChoice::first_in(n as i64, 2 * n as i64)
        .expect("a prime always lies in (n, 2n]")
        .p;
    let order = topological_order(g);
    let mut points = vec![GridPoint::new(0, 0, 0); n];
    for v in 0..n {
        let i = order.position(v) as i64 + 1;
        points[v] = GridPoint::new(pow_mod(i, 3, p), pow_mod(i, 2, p), i);
    }
    Drawing3D::straight(points)
}

/// Straight-line placement from a proper colouring: class i occupies the
/// line (i, t, i*t), with the t values distinct mod p across classes (p the
/// smallest prime >= 2c-1) so no two of the lines' chords can cross.
pub fn pach_placement(g: &Dag, col: &Colouring) -> Drawing3D {
    debug_assert!(is_proper_colouring(g, col));
    let n = g.n();
    if n == 0 {
        return Drawing3D::straight(Vec::new());
    }
    let p = PrimeChoice::at_least(2 * col.c as i64 - 1).p;
    let mut points = vec![GridPoint::new(0, 0, 0); n];
    for (i, class) in col.classes().iter().enumerate() {
        let i = i as i64;
        let base = pow_mod(i, 2, p);
        for (k, &v) in class.iter().enumerate() {
            let t = base + (k as i64) * p;
            points[v] = GridPoint::new(i, t, i * t);
        }
    }
    Drawing3D::straight(points)
}

/// Upward drawing from a proper colouring: walk a topological order handing
/// out strictly increasing z values, each vertex taking the next height
/// congruent to i^2 mod p for its colour i; x stacks the classes and
/// y = i*z keeps chords between class lines disjoint.
pub fn coloured_upward_drawing(g: &Dag, col: &Colouring) -> Drawing3D {
    debug_assert!(is_proper_colouring(g, col));
    let n = g.n();
    if n == 0 {
        return Drawing3D::straight(Vec::new());
    }
    let c = col.c as i64;
    let p = PrimeChoice::first_in(2 * c - 2, 4 * c - 1)
        .expect("a prime always lies in [2c-1, 4c)")
        .p;
    let order = topological_order(g);
    let mut points = vec![GridPoint::new(0, 0, 0); n];
    let mut z_prev: Option<i64> = None;
    for j in 0..n {
        let v = order.vertex_at(j);
        let i = col.colour[v] as i64;
        let target = pow_mod(i, 2, p);
        let z = match z_prev {
            None => target,
            Some(prev) => prev + 1 + (target - (prev + 1)).rem_euclid(p),
        };
        points[v] = GridPoint::new(i, i * z, z);
        z_prev = Some(z);
    }
    Drawing3D::straight(points)
}

/// Pach placement over the longest-path colouring with the x and z axes
/// swapped, so z equals the depth label and every arc climbs.
pub fn long_path_drawing(g: &Dag) -> Drawing3D {
    let col = longest_path_colouring(g);
    let flat = pach_placement(g, &col);
    Drawing3D::straight(
        flat.points
            .iter()
            .map(|q| GridPoint::new(q.z, q.y, q.x))
            .collect(),
    )
}

fn checked_upward_layout(g: &Dag, tl: &TrackLayout, max_tracks: usize) -> Result<()> {
    if !tl.upward {
        return Err(Error::InvalidLayout("layout does not claim upward".into()));
    }
    if tl.track_count() > max_tracks {
        return Err(Error::InvalidLayout(format!(
            "{} tracks exceed the limit {max_tracks}",
            tl.track_count()
        )));
    }
    let report = verify_track_layout(g, tl)?;
    if !report.ok() {
        return Err(Error::InvalidLayout(format!("invalid layout: {report}")));
    }
    Ok(())
}

/// 1-based position of every vertex in the minimum-id topological order of
/// G plus the track successor arcs.
fn gplus_topo_index(g: &Dag, tl: &TrackLayout) -> Result<Vec<usize>> {
    let gplus = Dag::from_arcs_dedup(g.n(), tl.gplus_arcs(g))
        .map_err(|_| Error::InvalidLayout("G\u{207a} has a cycle".into()))?;
    let order = topological_order(&gplus);
    Ok((0..g.n()).map(|v| order.position(v) + 1).collect())
}

/// Slot number 1..t of each vertex's track, tracks taken in ascending id
/// order.
fn track_slots(tl: &TrackLayout) -> Vec<usize> {
    let ids = tl.track_ids();
    let index: BTreeMap<i64, usize> = ids.iter().enumerate().map(|(i, &t)| (t, i + 1)).collect();
    tl.track.iter().map(|t| index[t]).collect()
}

/// Drawing of an arbitrary upward track layout: track i becomes the column
/// x = i, heights stride by p per G⁺ depth level with the i^3 mod p offset
/// breaking ties between tracks.
pub fn track_drawing_general(g: &Dag, tl: &TrackLayout) -> Result<Drawing3D> {
    checked_upward_layout(g, tl, usize::MAX)?;
    let slots = track_slots(tl);
    let t = tl.track_count() as i64;
    let p = PrimeChoice::at_least(t + 1).p;
    let gplus = Dag::from_arcs_dedup(g.n(), tl.gplus_arcs(g))
        .map_err(|_| Error::InvalidLayout("G\u{207a} has a cycle".into()))?;
    let depth = depth_labels(&gplus);
    let points = (0..g.n())
        .map(|v| {
            let i = slots[v] as i64;
            GridPoint::new(
                i,
                pow_mod(i, 2, p),
                p * depth.depth(v) as i64 + pow_mod(i, 3, p),
            )
        })
        .collect();
    Ok(Drawing3D::straight(points))
}

/// 2 x 2 x n drawing of an upward layout on at most three tracks.
pub fn track_drawing_3(g: &Dag, tl: &TrackLayout) -> Result<Drawing3D> {
    checked_upward_layout(g, tl, 3)?;
    let slots = track_slots(tl);
    let index = gplus_topo_index(g, tl)?;
    let xy = [(0, 0), (1, 0), (0, 1)];
    let points = (0..g.n())
        .map(|v| {
            let (x, y) = xy[slots[v] - 1];
            GridPoint::new(x, y, index[v] as i64)
        })
        .collect();
    Ok(Drawing3D::straight(points))
}

/// 2 x 2 x 2n drawing of an upward layout on at most four tracks. The
/// fourth track takes odd heights so its chords towards (0,0) can never
/// meet the even-height chords between (1,0) and (0,1).
pub fn track_drawing_4(g: &Dag, tl: &TrackLayout) -> Result<Drawing3D> {
    checked_upward_layout(g, tl, 4)?;
    let slots = track_slots(tl);
    let index = gplus_topo_index(g, tl)?;
    let points = (0..g.n())
        .map(|v| {
            let i = index[v] as i64;
            match slots[v] {
                1 => GridPoint::new(0, 0, 2 * i),
                2 => GridPoint::new(1, 0, 2 * i),
                3 => GridPoint::new(0, 1, 2 * i),
                _ => GridPoint::new(1, 1, 2 * i - 1),
            }
        })
        .collect();
    Ok(Drawing3D::straight(points))
}

/// 4 x 4 x ceil(7n/5) drawing of an upward layout on at most five tracks.
///
/// The two smallest classes take the parity-constrained stations (2,4) and
/// (4,2); the z walk bumps the counter an extra step whenever the next
/// vertex needs the other parity, so the height stays within n plus the two
/// small class sizes.
pub fn track_drawing_5(g: &Dag, tl: &TrackLayout) -> Result<Drawing3D> {
    checked_upward_layout(g, tl, 5)?;
    let n = g.n();
    let ids = tl.track_ids();
    let mut sizes: BTreeMap<i64, usize> = ids.iter().map(|&t| (t, 0)).collect();
    for &t in &tl.track {
        *sizes.get_mut(&t).unwrap() += 1;
    }
    // Pad to five classes; the phantoms are smallest and soak up the two
    // parity stations whenever fewer than five real tracks exist.
    let phantom_base = ids.iter().max().copied().unwrap_or(0) + 1;
    let mut ranked: Vec<(usize, i64)> = ids.iter().map(|&t| (sizes[&t], t)).collect();
    for k in 0..(5 - ids.len()) {
        ranked.push((0, phantom_base + k as i64));
    }
    ranked.sort_unstable();
    // Stations V1..V5 in paper numbering; ranked[0] -> V3, ranked[1] -> V5,
    // the rest fill V1, V2, V4 in ascending track id.
    let mut station: BTreeMap<i64, usize> = BTreeMap::new();
    station.insert(ranked[0].1, 3);
    station.insert(ranked[1].1, 5);
    let mut rest: Vec<i64> = ranked[2..].iter().map(|&(_, t)| t).collect();
    rest.sort_unstable();
    for (slot, &t) in [1usize, 2, 4].iter().zip(&rest) {
        station.insert(t, *slot);
    }

    let gplus = Dag::from_arcs_dedup(n, tl.gplus_arcs(g))
        .map_err(|_| Error::InvalidLayout("G\u{207a} has a cycle".into()))?;
    let order = topological_order(&gplus);
    let mut points = vec![GridPoint::new(0, 0, 0); n];
    let mut z = 0i64;
    for j in 0..n {
        let v = order.vertex_at(j);
        let s = station[&tl.track[v]];
        z += 1;
        if (s == 3 && z % 2 == 0) || (s == 5 && z % 2 == 1) {
            z += 1;
        }
        let (x, y) = match s {
            1 => (1, 1),
            2 => (2, 3),
            3 => (2, 4),
            4 => (3, 2),
            _ => (4, 2),
        };
        points[v] = GridPoint::new(x, y, z);
    }
    Ok(Drawing3D::straight(points))
}

/// Checks connectivity and the tree edge count; fills per-vertex parent,
/// the toward/away arc counts along root paths, and vertices grouped by
/// distance from vertex 0.
struct TreeShape {
    parent: Vec<usize>,
    toward: Vec<usize>,
    away: Vec<usize>,
    by_level: Vec<Vec<usize>>,
}

fn tree_shape(g: &Dag) -> Option<TreeShape> {
    let n = g.n();
    if n == 0 || g.m() != n - 1 {
        return None;
    }
    let adj = g.undirected_adj();
    let mut parent = vec![usize::MAX; n];
    let mut level = vec![usize::MAX; n];
    let mut toward = vec![0usize; n];
    let mut away = vec![0usize; n];
    let mut by_level = vec![vec![0usize]];
    level[0] = 0;
    let mut frontier: Vec<usize> = vec![0];
    let mut seen = 1;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in &adj[v] {
                if level[w] == usize::MAX {
                    level[w] = level[v] + 1;
                    parent[w] = v;
                    // The tree arc between w and its parent points toward
                    // the root iff it is directed w -> parent.
                    if g.has_arc(w, v) {
                        toward[w] = toward[v] + 1;
                        away[w] = away[v];
                    } else {
                        toward[w] = toward[v];
                        away[w] = away[v] + 1;
                    }
                    next.push(w);
                    seen += 1;
                }
            }
        }
        if !next.is_empty() {
            by_level.push(next.clone());
        }
        frontier = next;
    }
    if seen != n {
        return None;
    }
    Some(TreeShape {
        parent,
        toward,
        away,
        by_level,
    })
}

/// Track layout of a tree dag rooted at vertex 0: vertex v goes to track
/// 2b(v) - a(v), where a and b count the root-path arcs directed toward and
/// away from the root. Arcs toward the root climb one track, arcs away
/// climb two, so wrap(s = 2) applies.
pub fn tree_span2_layout(g: &Dag) -> Result<TrackLayout> {
    let shape = tree_shape(g).ok_or(Error::NotATree)?;
    let n = g.n();
    let track: Vec<i64> = (0..n)
        .map(|v| 2 * shape.away[v] as i64 - shape.toward[v] as i64)
        .collect();
    let mut rank = vec![0usize; n];
    let mut counters: BTreeMap<i64, usize> = BTreeMap::new();
    for lvl in &shape.by_level {
        let mut members = lvl.clone();
        members.sort_unstable_by_key(|&v| {
            if shape.parent[v] == usize::MAX {
                (i64::MIN, 0, v)
            } else {
                let pv = shape.parent[v];
                (track[pv], rank[pv], v)
            }
        });
        for v in members {
            let c = counters.entry(track[v]).or_insert(0);
            rank[v] = *c;
            *c += 1;
        }
    }
    Ok(TrackLayout::new(track, rank, true))
}

/// Track layout of a caterpillar dag in which every arc climbs exactly one
/// track: the spine walks up or down with each spine arc's direction, and
/// each leaf hangs one track above or below its attachment.
pub fn caterpillar_span1_layout(g: &Dag) -> Result<TrackLayout> {
    let n = g.n();
    if tree_shape(g).is_none() {
        return Err(Error::NotACaterpillar);
    }
    let adj = g.undirected_adj();
    let spine: Vec<usize> = if n <= 2 {
        (0..n).collect()
    } else {
        let inner: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 2).collect();
        let inner_set: Vec<bool> = {
            let mut s = vec![false; n];
            for &v in &inner {
                s[v] = true;
            }
            s
        };
        let inner_deg = |v: usize| adj[v].iter().filter(|&&w| inner_set[w]).count();
        if inner.iter().any(|&v| inner_deg(v) > 2) {
            return Err(Error::NotACaterpillar);
        }
        // The stripped tree is a path; walk it from its smaller endpoint.
        let start = inner
            .iter()
            .copied()
            .filter(|&v| inner_deg(v) <= 1)
            .min()
            .ok_or(Error::NotACaterpillar)?;
        let mut walk = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur]
            .iter()
            .find(|&&w| inner_set[w] && w != prev)
        {
            walk.push(next);
            prev = cur;
            cur = next;
        }
        if walk.len() != inner.len() {
            return Err(Error::NotACaterpillar);
        }
        // Both ends of the stripped path keep at least one leaf, so the
        // spine extends one step each way; a directed path is then its own
        // spine, walked from track 0 upward.
        let is_leaf = |v: usize| adj[v].len() == 1;
        let front = adj[walk[0]]
            .iter()
            .copied()
            .filter(|&w| is_leaf(w))
            .min()
            .ok_or(Error::NotACaterpillar)?;
        let back = adj[*walk.last().unwrap()]
            .iter()
            .copied()
            .filter(|&w| is_leaf(w) && w != front)
            .min()
            .ok_or(Error::NotACaterpillar)?;
        let mut spine = vec![front];
        spine.extend(walk);
        spine.push(back);
        spine
    };

    let mut spine_index = vec![usize::MAX; n];
    for (j, &v) in spine.iter().enumerate() {
        spine_index[v] = j;
    }
    let mut track = vec![i64::MAX; n];
    track[spine[0]] = 0;
    for j in 1..spine.len() {
        let (a, b) = (spine[j - 1], spine[j]);
        track[b] = if g.has_arc(a, b) {
            track[a] + 1
        } else {
            track[a] - 1
        };
    }
    // key = spine position of the vertex itself or of its attachment.
    let mut key = vec![0usize; n];
    for v in 0..n {
        if spine_index[v] != usize::MAX {
            key[v] = spine_index[v];
            continue;
        }
        let s = *adj[v]
            .iter()
            .find(|&&w| spine_index[w] != usize::MAX)
            .ok_or(Error::NotACaterpillar)?;
        key[v] = spine_index[s];
        track[v] = if g.has_arc(s, v) {
            track[s] + 1
        } else {
            track[s] - 1
        };
    }
    let mut by_track: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        by_track.entry(track[v]).or_default().push(v);
    }
    let mut rank = vec![0usize; n];
    for members in by_track.values_mut() {
        members.sort_unstable_by_key(|&v| (key[v], v));
        for (r, &v) in members.iter().enumerate() {
            rank[v] = r;
        }
    }
    Ok(TrackLayout::new(track, rank, true))
}

/// Track layout of the subdivided complete graph on n original vertices:
/// originals split into p^2 tracks of p (p = ceil of the cube root), one
/// track for divisions joining equal positions, and a pair of tracks per
/// position pair (k, l) split by which side has the larger set index.
pub fn knprime_track_layout(n: usize) -> (Dag, TrackLayout) {
    let g = generate(&Family::KnPrime { n }).expect("subdivided complete graph");
    let p = (1..).find(|&p| p * p * p >= n).unwrap_or(1);
    let set_of = |v: usize| v / p;
    let pos_of = |v: usize| v % p;

    // Group 0: original vertex tracks, one per set, ordered by id.
    // Group 1: the equal-position division track, ordered by (k, i, j).
    // Group 2: per (k, l) the A track (i <= j, sorted by descending (i, j))
    // and the B track (j < i, sorted by ascending (j, i)).
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Key {
        Original(usize, usize),
        Same(usize, usize, usize),
        Split {
            k: usize,
            l: usize,
            b_side: bool,
            key: (i64, i64),
            tie: usize,
        },
    }
    let mut entries: Vec<(usize, Key)> = Vec::new();
    for v in 0..n {
        entries.push((v, Key::Original(set_of(v), v)));
    }
    for u in 0..n {
        for v in u + 1..n {
            let d = crate::dag::knprime_division_vertex(n, u, v);
            let (iu, ku) = (set_of(u), pos_of(u));
            let (iv, kv) = (set_of(v), pos_of(v));
            let key = if ku == kv {
                Key::Same(ku, iu.min(iv), iu.max(iv))
            } else {
                // i is the set holding the smaller position k, j the other.
                let (k, l, i, j) = if ku < kv {
                    (ku, kv, iu, iv)
                } else {
                    (kv, ku, iv, iu)
                };
                if i <= j {
                    Key::Split {
                        k,
                        l,
                        b_side: false,
                        key: (-(i as i64), -(j as i64)),
                        tie: d,
                    }
                } else {
                    Key::Split {
                        k,
                        l,
                        b_side: true,
                        key: (j as i64, i as i64),
                        tie: d,
                    }
                }
            };
            entries.push((d, key));
        }
    }

    // Track identity: which group bucket an entry belongs to.
    fn bucket(key: &Key) -> (usize, usize, usize, usize) {
        match key {
            Key::Original(set, _) => (0, *set, 0, 0),
            Key::Same(..) => (1, 0, 0, 0),
            Key::Split { k, l, b_side, .. } => (2, *k, *l, *b_side as usize),
        }
    }
    entries.sort_by(|a, b| bucket(&a.1).cmp(&bucket(&b.1)).then(a.1.cmp(&b.1)));

    let total = g.n();
    let mut track = vec![0i64; total];
    let mut rank = vec![0usize; total];
    let mut cur_bucket = None;
    let mut track_id = -1i64;
    let mut next_rank = 0usize;
    for (v, key) in &entries {
        let b = bucket(key);
        if cur_bucket != Some(b) {
            cur_bucket = Some(b);
            track_id += 1;
            next_rank = 0;
        }
        track[*v] = track_id;
        rank[*v] = next_rank;
        next_rank += 1;
    }
    (g, TrackLayout::new(track, rank, false))
}
