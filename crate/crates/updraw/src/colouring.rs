//! Vertex colourings feeding the track constructions: greedy proper,
//! longest-path, harmonious, and strong star, plus the conversion from a
//! strong star colouring to an upward track layout.
//!
//! The checkers at the bottom test the definitions directly and share no
//! code with the producers above them.

use std::collections::{BTreeMap, BTreeSet};

use crate::dag::{degeneracy, depth_labels, topological_order, Dag};
use crate::error::{Error, Result};
use crate::layout::TrackLayout;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColouringKind {
    Proper,
    Harmonious,
    StrongStar,
}

/// Which degree threshold carves out the singleton-colour set in
/// [`strong_star_colouring`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarVariant {
    /// deg(v)^2 * d >= 2m, the sqrt(2m/d) cut.
    SqrtDm,
    /// deg(v)^3 >= m, the m^(1/3) cut.
    MTwoThirds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    pub colour: Vec<usize>,
    pub kind: ColouringKind,
    pub c: usize,
}

impl Colouring {
    /// Vertices of each colour class, ascending by id.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.c];
        for (v, &col) in self.colour.iter().enumerate() {
            classes[col].push(v);
        }
        classes
    }
}

/// Greedy colouring along the reverse minimum-degree elimination order;
/// uses at most degeneracy + 1 colours.
pub fn greedy_colouring(g: &Dag) -> Colouring {
    let n = g.n();
    let adj = g.undirected_adj();
    let (_, elim) = degeneracy(g);
    let mut colour = vec![usize::MAX; n];
    let mut max_used = 0;
    for p in (0..n).rev() {
        let v = elim.vertex_at(p);
        let taken: BTreeSet<usize> = adj[v]
            .iter()
            .filter(|&&u| colour[u] != usize::MAX)
            .map(|&u| colour[u])
            .collect();
        let mut pick = 0;
        while taken.contains(&pick) {
            pick += 1;
        }
        colour[v] = pick;
        max_used = max_used.max(pick);
    }
    Colouring {
        colour,
        kind: ColouringKind::Proper,
        c: if n == 0 { 0 } else { max_used + 1 },
    }
}

/// colour(v) = longest-path depth of v minus one; every arc strictly
/// increases the colour, and the count equals the longest path length.
pub fn longest_path_colouring(g: &Dag) -> Colouring {
    let labels = depth_labels(g);
    Colouring {
        colour: labels.as_slice().iter().map(|&d| d - 1).collect(),
        kind: ColouringKind::Proper,
        c: labels.ell(),
    }
}

/// Greedy harmonious colouring, largest degree first.
///
/// Besides properness and colour-pair freshness, a candidate colour is
/// rejected when any vertex two steps away already holds it. That keeps the
/// invariant that same-coloured vertices never share a neighbour, so no
/// later vertex can be forced to duplicate a colour pair and a fresh colour
/// always remains feasible.
pub fn harmonious_colouring(g: &Dag) -> Colouring {
    let n = g.n();
    let adj = g.undirected_adj();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_unstable_by_key(|&v| (std::cmp::Reverse(adj[v].len()), v));
    let mut colour = vec![usize::MAX; n];
    let mut used_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut max_used = 0;
    for &v in &order {
        let mut pick = 0;
        'candidate: loop {
            for &u in &adj[v] {
                if colour[u] == pick {
                    pick += 1;
                    continue 'candidate;
                }
                for &x in &adj[u] {
                    if x != v && colour[x] == pick {
                        pick += 1;
                        continue 'candidate;
                    }
                }
                if colour[u] != usize::MAX {
                    let pair = (pick.min(colour[u]), pick.max(colour[u]));
                    if used_pairs.contains(&pair) {
                        pick += 1;
                        continue 'candidate;
                    }
                }
            }
            break;
        }
        colour[v] = pick;
        max_used = max_used.max(pick);
        for &u in &adj[v] {
            if colour[u] != usize::MAX {
                used_pairs.insert((pick.min(colour[u]), pick.max(colour[u])));
            }
        }
    }
    Colouring {
        colour,
        kind: ColouringKind::Harmonious,
        c: if n == 0 { 0 } else { max_used + 1 },
    }
}

/// High-degree vertices become singleton colour classes; the rest of the
/// graph is coloured harmoniously with fresh colours. Either way every
/// bichromatic subgraph ends up a star.
pub fn strong_star_colouring(g: &Dag, variant: StarVariant) -> Colouring {
    let n = g.n();
    let adj = g.undirected_adj();
    let m = g.m();
    let (d, _) = degeneracy(g);
    let heavy = |v: usize| {
        let deg = adj[v].len();
        match variant {
            StarVariant::SqrtDm => deg * deg * d >= 2 * m,
            StarVariant::MTwoThirds => deg * deg * deg >= m,
        }
    };
    let a_set: Vec<usize> = (0..n).filter(|&v| heavy(v)).collect();
    let mut colour = vec![usize::MAX; n];
    for (i, &v) in a_set.iter().enumerate() {
        colour[v] = i;
    }

    let rest: Vec<usize> = (0..n).filter(|&v| colour[v] == usize::MAX).collect();
    let back: BTreeMap<usize, usize> = rest.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let sub_arcs: Vec<(usize, usize)> = g
        .arcs()
        .iter()
        .filter(|&&(v, w)| back.contains_key(&v) && back.contains_key(&w))
        .map(|&(v, w)| (back[&v], back[&w]))
        .collect();
    let sub = Dag::new(rest.len(), sub_arcs).expect("induced subgraph of a dag");
    let sub_col = harmonious_colouring(&sub);
    for (i, &v) in rest.iter().enumerate() {
        colour[v] = a_set.len() + sub_col.colour[i];
    }

    let col = Colouring {
        colour,
        kind: ColouringKind::StrongStar,
        c: a_set.len() + sub_col.c,
    };
    debug_assert!(is_strong_star_colouring(g, &col));
    col
}

/// One track per colour class, each class ordered by the minimum-id
/// topological order of G. Valid for strong star colourings, whose
/// bichromatic stars cannot produce an X-crossing under any class order.
pub fn colouring_to_upward_tracks(g: &Dag, col: &Colouring) -> Result<TrackLayout> {
    if col.kind != ColouringKind::StrongStar || !is_strong_star_colouring(g, col) {
        return Err(Error::NotStrongStar);
    }
    let order = topological_order(g);
    let n = g.n();
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        members.entry(col.colour[v]).or_default().push(v);
    }
    let mut rank = vec![0usize; n];
    for list in members.values_mut() {
        list.sort_unstable_by_key(|&v| order.position(v));
        for (r, &v) in list.iter().enumerate() {
            rank[v] = r;
        }
    }
    Ok(TrackLayout::new(
        col.colour.iter().map(|&c| c as i64).collect(),
        rank,
        true,
    ))
}

fn colouring_shape_ok(g: &Dag, col: &Colouring) -> bool {
    col.colour.len() == g.n() && col.colour.iter().all(|&c| c < col.c)
}

/// No monochromatic edge, ignoring arc directions.
pub fn is_proper_colouring(g: &Dag, col: &Colouring) -> bool {
    colouring_shape_ok(g, col)
        && g.arcs()
            .iter()
            .all(|&(v, w)| col.colour[v] != col.colour[w])
}

/// Proper, and each unordered colour pair carries at most one edge.
pub fn is_harmonious_colouring(g: &Dag, col: &Colouring) -> bool {
    if !is_proper_colouring(g, col) {
        return false;
    }
    let mut seen = BTreeSet::new();
    for &(v, w) in g.arcs() {
        let (a, b) = (col.colour[v], col.colour[w]);
        if !seen.insert((a.min(b), a.max(b))) {
            return false;
        }
    }
    true
}

/// Proper, and for each colour pair all edges between the two classes are
/// incident to one common vertex.
pub fn is_strong_star_colouring(g: &Dag, col: &Colouring) -> bool {
    if !is_proper_colouring(g, col) {
        return false;
    }
    let mut groups: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for &(v, w) in g.arcs() {
        let (a, b) = (col.colour[v], col.colour[w]);
        groups.entry((a.min(b), a.max(b))).or_default().push((v, w));
    }
    groups.values().all(|edges| {
        let (p, q) = edges[0];
        [p, q]
            .iter()
            .any(|&centre| edges.iter().all(|&(v, w)| v == centre || w == centre))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::{generate, Family};
    use crate::layout::verify_track_layout;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Smallest c admitting a harmonious colouring, by brute force.
    fn brute_harmonious_number(g: &Dag, cap: usize) -> usize {
        let n = g.n();
        for c in 1..=cap {
            let mut assignment = vec![0usize; n];
            loop {
                let col = Colouring {
                    colour: assignment.clone(),
                    kind: ColouringKind::Harmonious,
                    c,
                };
                if is_harmonious_colouring(g, &col) {
                    return c;
                }
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    assignment[i] += 1;
                    if assignment[i] < c {
                        break;
                    }
                    assignment[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        cap + 1
    }

    fn star(leaves: usize) -> Dag {
        Dag::new(leaves + 1, (1..=leaves).map(|v| (0, v)).collect()).unwrap()
    }

    #[test]
    fn greedy_respects_degeneracy_bound() {
        let tree = generate(&Family::RandomTree { n: 40, seed: 7 }).unwrap();
        let col = greedy_colouring(&tree);
        assert!(col.c <= 2, "forest needs at most 2 colours, got {}", col.c);
        assert!(is_proper_colouring(&tree, &col));

        let k4 = generate(&Family::Complete { n: 4 }).unwrap();
        assert_eq!(greedy_colouring(&k4).c, 4);

        let kp = generate(&Family::KnPrime { n: 5 }).unwrap();
        let col = greedy_colouring(&kp);
        assert!(col.c <= 3, "subdivision is 2-degenerate, got {}", col.c);
        assert!(is_proper_colouring(&kp, &col));
    }

    #[test]
    fn longest_path_colouring_examples() {
        let anti = generate(&Family::Antichain { n: 4 }).unwrap();
        assert_eq!(longest_path_colouring(&anti).c, 1);

        let path = generate(&Family::Path { n: 5 }).unwrap();
        let col = longest_path_colouring(&path);
        assert_eq!(col.c, 5);
        assert_eq!(col.colour, vec![0, 1, 2, 3, 4]);

        let bip = generate(&Family::RandomBipartite { half: 3, seed: 1 }).unwrap();
        // Orientation is some acyclic K_{3,3}; force the all-A-to-B shape.
        let allab = Dag::new(
            6,
            (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect(),
        )
        .unwrap();
        assert_eq!(longest_path_colouring(&allab).c, 2);
        assert!(is_proper_colouring(&bip, &longest_path_colouring(&bip)));
    }

    #[test]
    fn longest_path_colours_increase_along_arcs() {
        for seed in 0..20 {
            let g = generate(&Family::RandomDag {
                n: 30,
                arcs: 70,
                seed,
            })
            .unwrap();
            let col = longest_path_colouring(&g);
            for &(v, w) in g.arcs() {
                assert!(col.colour[v] < col.colour[w]);
            }
        }
    }

    #[test]
    fn harmonious_examples_match_brute_force() {
        let edge = Dag::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(harmonious_colouring(&edge).c, 2);

        let claw = star(3);
        let col = harmonious_colouring(&claw);
        assert!(is_harmonious_colouring(&claw, &col));
        assert_eq!(col.c, 4);
        assert_eq!(brute_harmonious_number(&claw, 4), 4);

        let p4 = generate(&Family::Path { n: 4 }).unwrap();
        let col = harmonious_colouring(&p4);
        assert!(is_harmonious_colouring(&p4, &col));
        assert_eq!(col.c, 3);
        assert_eq!(brute_harmonious_number(&p4, 4), 3);
    }

    #[test]
    fn harmonious_survives_awkward_graphs() {
        for seed in 0..30 {
            let g = generate(&Family::RandomDag {
                n: 25,
                arcs: 60,
                seed: 1000 + seed,
            })
            .unwrap();
            let col = harmonious_colouring(&g);
            assert!(is_harmonious_colouring(&g, &col), "seed {seed}");
        }
    }

    #[test]
    fn strong_star_isolates_heavy_vertices() {
        let k18 = star(8);
        // Centre degree 8, m = 8, d = 1: 64 >= 16 puts it in A.
        let col = strong_star_colouring(&k18, StarVariant::SqrtDm);
        assert!(is_strong_star_colouring(&k18, &col));
        let centre_class = col.colour[0];
        assert!((1..=8).all(|v| col.colour[v] != centre_class));

        let edge = Dag::new(2, vec![(0, 1)]).unwrap();
        let col = strong_star_colouring(&edge, StarVariant::SqrtDm);
        assert_eq!(col.c, 2);
        assert!(is_strong_star_colouring(&edge, &col));
    }

    #[test]
    fn both_variants_certify_on_random_graphs() {
        for seed in 0..20 {
            let g = generate(&Family::RandomDag {
                n: 30,
                arcs: 80,
                seed: 500 + seed,
            })
            .unwrap();
            for variant in [StarVariant::SqrtDm, StarVariant::MTwoThirds] {
                let col = strong_star_colouring(&g, variant);
                assert!(is_strong_star_colouring(&g, &col), "seed {seed}");
            }
        }
    }

    #[test]
    fn checker_rejects_non_star_pairs() {
        // A 4-cycle coloured with 2 colours: both edges pairs duplicated.
        let g = Dag::new(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let col = Colouring {
            colour: vec![0, 1, 0, 1],
            kind: ColouringKind::StrongStar,
            c: 2,
        };
        assert!(is_proper_colouring(&g, &col));
        assert!(!is_harmonious_colouring(&g, &col));
        // Edges (0,1),(1,2),(2,3),(0,3) between the same two classes have
        // no common endpoint.
        assert!(!is_strong_star_colouring(&g, &col));
    }

    #[test]
    fn tracks_from_strong_star_colouring() {
        let edge = Dag::new(2, vec![(0, 1)]).unwrap();
        let col = strong_star_colouring(&edge, StarVariant::SqrtDm);
        let tl = colouring_to_upward_tracks(&edge, &col).unwrap();
        assert_eq!(tl.track_count(), 2);
        assert!(verify_track_layout(&edge, &tl).unwrap().ok());

        let g3 = generate(&Family::Nested { n: 3 }).unwrap();
        let col = strong_star_colouring(&g3, StarVariant::SqrtDm);
        let tl = colouring_to_upward_tracks(&g3, &col).unwrap();
        assert!(verify_track_layout(&g3, &tl).unwrap().ok());

        let tree = generate(&Family::RandomTree { n: 50, seed: 3 }).unwrap();
        let col = strong_star_colouring(&tree, StarVariant::MTwoThirds);
        let tl = colouring_to_upward_tracks(&tree, &col).unwrap();
        assert!(verify_track_layout(&tree, &tl).unwrap().ok());

        let wrong = Colouring {
            colour: vec![0, 1],
            kind: ColouringKind::Proper,
            c: 2,
        };
        assert!(matches!(
            colouring_to_upward_tracks(&edge, &wrong),
            Err(Error::NotStrongStar)
        ));
    }

    #[test]
    fn any_class_order_avoids_x_crossings() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for seed in 0..10 {
            let g = generate(&Family::RandomDag {
                n: 30,
                arcs: 70,
                seed: 900 + seed,
            })
            .unwrap();
            let col = strong_star_colouring(&g, StarVariant::SqrtDm);
            for _ in 0..5 {
                let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for v in 0..g.n() {
                    members.entry(col.colour[v]).or_default().push(v);
                }
                let mut rank = vec![0usize; g.n()];
                for list in members.values_mut() {
                    list.shuffle(&mut rng);
                    for (r, &v) in list.iter().enumerate() {
                        rank[v] = r;
                    }
                }
                let tl = TrackLayout::new(
                    col.colour.iter().map(|&c| c as i64).collect(),
                    rank,
                    false,
                );
                let rep = verify_track_layout(&g, &tl).unwrap();
                assert!(
                    !rep.violations.iter().any(|v| v.kind() == "x_crossing"),
                    "seed {seed}: {rep}"
                );
            }
        }
    }
}
