//! Brute-force baselines: exact upward queue number, exact upward track
//! number, and exact directed bandwidth, each behind an explicit search
//! budget so a runaway instance fails loudly instead of hanging.

use std::collections::BTreeMap;

use crate::dag::{topological_order, Dag, VertexOrder};
use crate::error::{Error, Result};
use crate::layout::{verify_track_layout, TrackLayout};
use crate::subdivide::BandwidthCertificate;

/// Caps for the exhaustive searches. `max_states` counts search-tree nodes
/// and candidate layouts, whichever the search in question visits.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_states: u64,
}

impl OracleBudget {
    pub fn for_queue_number() -> Self {
        OracleBudget {
            max_n: 10,
            max_states: 20_000_000,
        }
    }

    pub fn for_track_number() -> Self {
        OracleBudget {
            max_n: 8,
            max_states: 50_000_000,
        }
    }

    pub fn for_bandwidth() -> Self {
        OracleBudget {
            max_n: 12,
            max_states: 20_000_000,
        }
    }

    fn admit(&self, g: &Dag, what: &str) -> Result<()> {
        if g.n() > self.max_n {
            return Err(Error::BudgetExceeded(format!(
                "{what}: n = {} exceeds the budget's {}",
                g.n(),
                self.max_n
            )));
        }
        Ok(())
    }
}

struct StateCounter {
    used: u64,
    cap: u64,
    what: &'static str,
}

impl StateCounter {
    fn new(cap: u64, what: &'static str) -> Self {
        StateCounter { used: 0, cap, what }
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.cap {
            return Err(Error::BudgetExceeded(format!(
                "{}: more than {} search states",
                self.what, self.cap
            )));
        }
        Ok(())
    }
}

fn rainbow_from_positions(arcs: &[(usize, usize)], pos: &[usize]) -> usize {
    // A rainbow is a chain with strictly increasing left and strictly
    // decreasing right endpoints. Sorting by (l asc, r asc) turns it into
    // a longest strictly decreasing subsequence of r, found by patience on
    // the negated values.
    let mut spans: Vec<(usize, usize)> = arcs.iter().map(|&(v, w)| (pos[v], pos[w])).collect();
    spans.sort_unstable();
    let mut tails: Vec<i64> = Vec::new();
    for &(_, r) in &spans {
        let x = -(r as i64);
        let idx = tails.partition_point(|&t| t < x);
        if idx == tails.len() {
            tails.push(x);
        } else {
            tails[idx] = x;
        }
    }
    tails.len()
}

/// Size of the largest set of pairwise nested arcs under `order`; equals
/// the smallest number of queues any layout with this vertex order needs.
pub fn max_rainbow_size(g: &Dag, order: &VertexOrder) -> Result<usize> {
    if order.n() != g.n() || !order.respects(g) {
        return Err(Error::NotTopological);
    }
    let pos: Vec<usize> = (0..g.n()).map(|v| order.position(v)).collect();
    Ok(rainbow_from_positions(g.arcs(), &pos))
}

struct QueueSearch<'a> {
    g: &'a Dag,
    counter: StateCounter,
    indeg: Vec<usize>,
    prefix: Vec<usize>,
    pos: Vec<usize>,
    best: usize,
    floor: usize,
}

impl QueueSearch<'_> {
    fn run(&mut self) -> Result<()> {
        self.counter.tick()?;
        if self.best == self.floor {
            return Ok(());
        }
        let n = self.g.n();
        if self.prefix.len() == n {
            let r = rainbow_from_positions(self.g.arcs(), &self.pos);
            self.best = self.best.min(r);
            return Ok(());
        }
        for v in 0..n {
            if self.indeg[v] != usize::MAX && self.indeg[v] == 0 {
                self.pos[v] = self.prefix.len();
                self.prefix.push(v);
                self.indeg[v] = usize::MAX;
                for &w in self.g.out_neighbours(v) {
                    self.indeg[w] -= 1;
                }
                self.run()?;
                for &w in self.g.out_neighbours(v) {
                    self.indeg[w] += 1;
                }
                self.indeg[v] = 0;
                self.prefix.pop();
            }
        }
        Ok(())
    }
}

/// Minimum number of queues over every topological order, by enumerating
/// the orders outright.
pub fn exact_upward_queue_number(g: &Dag, budget: &OracleBudget) -> Result<usize> {
    budget.admit(g, "exact_upward_queue_number")?;
    if g.m() == 0 {
        return Ok(0);
    }
    let det = topological_order(g);
    let mut search = QueueSearch {
        g,
        counter: StateCounter::new(budget.max_states, "exact_upward_queue_number"),
        indeg: (0..g.n()).map(|v| g.in_neighbours(v).len()).collect(),
        prefix: Vec::with_capacity(g.n()),
        pos: vec![0; g.n()],
        best: max_rainbow_size(g, &det)?,
        floor: 1,
    };
    search.run()?;
    Ok(search.best)
}

struct OrderSearch<'a, 'b> {
    g: &'a Dag,
    track: &'a [i64],
    tracks: Vec<Vec<usize>>,
    rank: Vec<usize>,
    counter: &'b mut StateCounter,
}

impl OrderSearch<'_, '_> {
    fn at(&mut self, ti: usize) -> Result<bool> {
        if ti == self.tracks.len() {
            self.counter.tick()?;
            let tl = TrackLayout::new(self.track.to_vec(), self.rank.clone(), true);
            return Ok(verify_track_layout(self.g, &tl)
                .map(|r| r.ok())
                .unwrap_or(false));
        }
        let members = self.tracks[ti].clone();
        self.permute(&members, &mut vec![false; members.len()], 0, ti)
    }

    // On success the recursion unwinds without touching rank again, so the
    // witness can be read straight out of the struct.

    fn permute(
        &mut self,
        members: &[usize],
        taken: &mut Vec<bool>,
        depth: usize,
        ti: usize,
    ) -> Result<bool> {
        if depth == members.len() {
            return self.at(ti + 1);
        }
        for (i, &v) in members.iter().enumerate() {
            if taken[i] {
                continue;
            }
            taken[i] = true;
            self.rank[v] = depth;
            let hit = self.permute(members, taken, depth + 1, ti);
            taken[i] = false;
            if hit? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Tries every per-track vertex order for a fixed track assignment and
/// returns the first admissible rank vector.
fn orders_admit_layout(
    g: &Dag,
    track: &[i64],
    counter: &mut StateCounter,
) -> Result<Option<Vec<usize>>> {
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for v in 0..g.n() {
        groups.entry(track[v]).or_default().push(v);
    }
    let mut search = OrderSearch {
        g,
        track,
        tracks: groups.into_values().collect(),
        rank: vec![0; g.n()],
        counter,
    };
    Ok(search.at(0)?.then_some(search.rank))
}

struct TrackSearch<'a> {
    g: &'a Dag,
    adj: Vec<Vec<usize>>,
    t: usize,
    counter: StateCounter,
    track: Vec<i64>,
    found: Option<TrackLayout>,
}

impl TrackSearch<'_> {
    fn assign(&mut self, v: usize, used: usize) -> Result<bool> {
        self.counter.tick()?;
        let n = self.g.n();
        if used + (n - v) < self.t {
            return Ok(false);
        }
        if v == n {
            if used < self.t {
                return Ok(false);
            }
            return match orders_admit_layout(self.g, &self.track, &mut self.counter)? {
                Some(rank) => {
                    self.found = Some(TrackLayout::new(self.track.clone(), rank, true));
                    Ok(true)
                }
                None => Ok(false),
            };
        }
        // Restricted growth keeps one representative per track relabelling:
        // a vertex may only open the next unused track.
        let cap = (used + 1).min(self.t);
        for tr in 0..cap {
            if self.adj[v]
                .iter()
                .any(|&u| u < v && self.track[u] == tr as i64)
            {
                continue;
            }
            self.track[v] = tr as i64;
            if self.assign(v + 1, used.max(tr + 1))? {
                return Ok(true);
            }
        }
        self.track[v] = -1;
        Ok(false)
    }
}

/// Smallest t <= max_t for which the graph has a valid upward t-track
/// layout, or None if no such t exists within the cap. Searches track
/// assignments up to relabelling, then every per-track vertex order.
pub fn exact_upward_track_number(
    g: &Dag,
    max_t: usize,
    budget: &OracleBudget,
) -> Result<Option<usize>> {
    Ok(find_upward_track_layout(g, max_t, budget)?.map(|tl| tl.track_count()))
}

/// Like [`exact_upward_track_number`], but hands back a witness layout on
/// the minimal track count instead of just the number.
pub fn find_upward_track_layout(
    g: &Dag,
    max_t: usize,
    budget: &OracleBudget,
) -> Result<Option<TrackLayout>> {
    budget.admit(g, "find_upward_track_layout")?;
    if g.n() == 0 {
        return Ok(Some(TrackLayout::new(Vec::new(), Vec::new(), true)));
    }
    let mut counter = StateCounter::new(budget.max_states, "find_upward_track_layout");
    let adj = g.undirected_adj();
    for t in 1..=max_t.min(g.n()) {
        let mut search = TrackSearch {
            g,
            adj: adj.clone(),
            t,
            counter: StateCounter::new(0, ""),
            track: vec![-1; g.n()],
            found: None,
        };
        std::mem::swap(&mut search.counter, &mut counter);
        let hit = search.assign(0, 0);
        std::mem::swap(&mut search.counter, &mut counter);
        if hit? {
            return Ok(search.found);
        }
    }
    Ok(None)
}

/// Decides whether the dag has an upward track layout in which every arc
/// climbs exactly one track. The arc constraints force each connected
/// component's track function up to a shift, components on disjoint track
/// ranges never interact, so only the per-track orders are searched.
pub fn span1_upward_layout_exists(g: &Dag, budget: &OracleBudget) -> Result<bool> {
    budget.admit(g, "span1_upward_layout_exists")?;
    let mut counter = StateCounter::new(budget.max_states, "span1_upward_layout_exists");
    let n = g.n();
    const UNSET: i64 = i64::MIN;
    let mut rel = vec![UNSET; n];
    let mut comp = vec![usize::MAX; n];
    let mut comp_count = 0;
    for root in 0..n {
        if rel[root] != UNSET {
            continue;
        }
        rel[root] = 0;
        comp[root] = comp_count;
        let mut queue = vec![root];
        while let Some(v) = queue.pop() {
            let step = |w: usize, t: i64, queue: &mut Vec<usize>, rel: &mut Vec<i64>, comp: &mut Vec<usize>| {
                if rel[w] == UNSET {
                    rel[w] = t;
                    comp[w] = comp_count;
                    queue.push(w);
                }
            };
            for &w in g.out_neighbours(v) {
                step(w, rel[v] + 1, &mut queue, &mut rel, &mut comp);
            }
            for &u in g.in_neighbours(v) {
                step(u, rel[v] - 1, &mut queue, &mut rel, &mut comp);
            }
        }
        comp_count += 1;
    }
    if g.arcs().iter().any(|&(v, w)| rel[w] != rel[v] + 1) {
        return Ok(false);
    }
    for c in 0..comp_count {
        let members: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in members.iter().enumerate() {
            local[v] = i;
        }
        let arcs: Vec<(usize, usize)> = g
            .arcs()
            .iter()
            .filter(|&&(v, _)| comp[v] == c)
            .map(|&(v, w)| (local[v], local[w]))
            .collect();
        let sub = Dag::new(members.len(), arcs)?;
        let track: Vec<i64> = members.iter().map(|&v| rel[v]).collect();
        if orders_admit_layout(&sub, &track, &mut counter)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

struct BandwidthSearch<'a> {
    g: &'a Dag,
    counter: StateCounter,
    indeg: Vec<usize>,
    prefix: Vec<usize>,
    pos: Vec<usize>,
    placed: Vec<bool>,
    best: usize,
    incumbent: Vec<usize>,
}

impl BandwidthSearch<'_> {
    fn run(&mut self, cost: usize) -> Result<()> {
        self.counter.tick()?;
        if self.best <= 1 {
            return Ok(());
        }
        let n = self.g.n();
        let len = self.prefix.len();
        if len == n {
            self.best = cost;
            self.incumbent = self.prefix.clone();
            return Ok(());
        }
        // Any placed vertex with an unplaced successor forces a stretch of
        // at least the distance to the frontier.
        let mut bound = cost;
        for &u in &self.prefix {
            if self
                .g
                .out_neighbours(u)
                .iter()
                .any(|&w| !self.placed[w])
            {
                bound = bound.max(len - self.pos[u]);
            }
        }
        if bound >= self.best {
            return Ok(());
        }
        for v in 0..n {
            if self.placed[v] || self.indeg[v] != 0 {
                continue;
            }
            let mut c = cost;
            for &u in self.g.in_neighbours(v) {
                c = c.max(len - self.pos[u]);
            }
            if c >= self.best {
                continue;
            }
            self.pos[v] = len;
            self.placed[v] = true;
            self.prefix.push(v);
            for &w in self.g.out_neighbours(v) {
                self.indeg[w] -= 1;
            }
            self.run(c)?;
            for &w in self.g.out_neighbours(v) {
                self.indeg[w] += 1;
            }
            self.prefix.pop();
            self.placed[v] = false;
        }
        Ok(())
    }
}

/// Topological order minimising the maximum arc stretch, found by
/// branch-and-bound seeded with the deterministic order.
pub fn exact_directed_bandwidth(g: &Dag, budget: &OracleBudget) -> Result<BandwidthCertificate> {
    budget.admit(g, "exact_directed_bandwidth")?;
    let det = topological_order(g);
    let seed = crate::subdivide::bandwidth_of(g, &det)?;
    if seed.b <= 1 {
        return Ok(seed);
    }
    let mut search = BandwidthSearch {
        g,
        counter: StateCounter::new(budget.max_states, "exact_directed_bandwidth"),
        indeg: (0..g.n()).map(|v| g.in_neighbours(v).len()).collect(),
        prefix: Vec::with_capacity(g.n()),
        pos: vec![0; g.n()],
        placed: vec![false; g.n()],
        best: seed.b,
        incumbent: seed.order.sequence().to_vec(),
    };
    search.run(0)?;
    let order = VertexOrder::topological_for(g, search.incumbent)?;
    let b = search.best;
    Ok(BandwidthCertificate { order, b })
}
