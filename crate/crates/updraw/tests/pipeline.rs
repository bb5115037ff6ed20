//! End-to-end flows across modules: generator -> colouring/layout ->
//! construction -> verifier, plus oracle cross-checks on small inputs.

use std::collections::BTreeMap;

use updraw::*;

fn det(g: &Dag) -> VertexOrder {
    topological_order(g)
}

fn same_arcs(a: &Dag, b: &Dag) -> bool {
    let mut x = a.arcs().to_vec();
    let mut y = b.arcs().to_vec();
    x.sort_unstable();
    y.sort_unstable();
    a.n() == b.n() && x == y
}

#[test]
fn three_drawing_styles_verify_on_shared_dags() {
    for seed in 0..4 {
        let n = 24 + 3 * seed as usize;
        let g = generate(&Family::RandomDag {
            n,
            arcs: 3 * n,
            seed: 7000 + seed,
        })
        .unwrap();

        let d = moment_curve_drawing(&g);
        let bb = bounding_box(&d).unwrap();
        assert!(bb.x <= 2 * n as u64 && bb.y <= 2 * n as u64 && bb.z <= n as u64);
        assert!(verify_drawing(&g, &d, true).unwrap().ok());

        let col = greedy_colouring(&g);
        let c = col.c;
        let d = coloured_upward_drawing(&g, &col);
        let bb = bounding_box(&d).unwrap();
        let (cn, nn) = (c as u64, n as u64);
        assert!(bb.x <= cn && bb.y <= 4 * cn * cn * nn && bb.z <= 4 * cn * nn);
        assert!(verify_drawing(&g, &d, true).unwrap().ok());

        let lp = longest_path_colouring(&g);
        let ell = lp.c;
        let d = long_path_drawing(&g);
        let bb = bounding_box(&d).unwrap();
        assert_eq!(bb.z, ell as u64, "height is exactly the longest path");
        assert!(verify_drawing(&g, &d, true).unwrap().ok());
    }
}

#[test]
fn tree_pipeline_reaches_a_five_track_drawing() {
    for seed in 0..6 {
        let n = 150 + 37 * seed as usize;
        let g = generate(&Family::RandomTree {
            n,
            seed: 7100 + seed,
        })
        .unwrap();
        let tl = tree_span2_layout(&g).unwrap();
        for &arc in g.arcs() {
            assert!(matches!(span(&tl, arc), 1 | 2));
        }
        let (ql, wrapped) = wrap(&g, &tl, 2).unwrap();
        assert!(ql.queue_count() <= 2);
        assert!(wrapped.track_count() <= 5);
        assert!(verify_queue_layout(&g, &ql).unwrap().ok());
        assert!(verify_track_layout(&g, &wrapped).unwrap().ok());

        let d = track_drawing_5(&g, &wrapped).unwrap();
        let bb = bounding_box(&d).unwrap();
        assert!(bb.x <= 4 && bb.y <= 4 && bb.z as usize <= (7 * n).div_ceil(5));
        assert!(verify_drawing(&g, &d, true).unwrap().ok());
    }
}

#[test]
fn caterpillar_pipeline_reaches_a_two_by_two_drawing() {
    for seed in 0..6 {
        let n = 120 + 31 * seed as usize;
        let g = generate(&Family::RandomCaterpillar {
            n,
            seed: 7200 + seed,
        })
        .unwrap();
        let tl = caterpillar_span1_layout(&g).unwrap();
        let (ql, wrapped) = wrap(&g, &tl, 1).unwrap();
        assert_eq!(ql.queue_count().max(1), 1);
        assert!(wrapped.track_count() <= 3);
        assert!(verify_queue_layout(&g, &ql).unwrap().ok());

        let d = track_drawing_3(&g, &wrapped).unwrap();
        let bb = bounding_box(&d).unwrap();
        assert!(bb.x <= 2 && bb.y <= 2 && bb.z <= n as u64);
        assert!(verify_drawing(&g, &d, true).unwrap().ok());

        // The 1-queue layout also unrolls into blocks of span <= 2.
        let blocks = one_queue_to_span2_tracks(&g, &ql).unwrap();
        for &arc in g.arcs() {
            assert!(matches!(span(&blocks, arc), 1 | 2));
        }
        assert!(verify_track_layout(&g, &blocks).unwrap().ok());
    }
}

#[test]
fn subdivision_pipelines_round_trip_and_draw() {
    for seed in 0..6 {
        let g = generate(&Family::RandomDag {
            n: 60,
            arcs: 140,
            seed: 7300 + seed,
        })
        .unwrap();
        let cert = bandwidth_of(&g, &det(&g)).unwrap();

        let (sub, ql) = two_queue_subdivision(&g, &cert);
        assert!(ql.queue_count() <= 2);
        assert!(verify_queue_layout(&sub.graph, &ql).unwrap().ok());
        assert!(same_arcs(&sub.contracted().unwrap(), &g));

        let (sub, tl) = four_track_subdivision(&g, &cert);
        assert!(tl.track_count() <= 4);
        assert!(verify_track_layout(&sub.graph, &tl).unwrap().ok());
        assert!(same_arcs(&sub.contracted().unwrap(), &g));

        let d = track_drawing_4(&sub.graph, &tl).unwrap();
        let bb = bounding_box(&d).unwrap();
        assert!(bb.x <= 2 && bb.y <= 2 && bb.z <= 2 * sub.graph.n() as u64);
        assert!(verify_drawing(&sub.graph, &d, true).unwrap().ok());
    }
}

#[test]
fn planar_star_splits_per_level_and_wraps() {
    // Star from the origin to (k^2, k): far targets cross every level in
    // between, picking up one division vertex per crossed level.
    let k = 7usize;
    let arcs: Vec<(usize, usize)> = (1..=k).map(|i| (0, i)).collect();
    let g = Dag::new(k + 1, arcs).unwrap();
    let mut points = vec![(0i64, 0i64)];
    points.extend((1..=k as i64).map(|i| (i * i, i)));
    let upd = Drawing2D { points };

    let (sub, span1, ql, tl3) = upward_planar_subdivision(&g, &upd).unwrap();
    for i in 1..=k {
        assert_eq!(sub.per_arc_counts[&(0, i)], i - 1);
    }
    for &arc in sub.graph.arcs() {
        assert_eq!(span(&span1, arc), 1);
    }
    assert_eq!(ql.queue_count(), 1);
    assert!(tl3.track_count() <= 3);
    assert!(verify_track_layout(&sub.graph, &span1).unwrap().ok());
    assert!(verify_queue_layout(&sub.graph, &ql).unwrap().ok());
    assert!(verify_track_layout(&sub.graph, &tl3).unwrap().ok());
    assert!(same_arcs(&sub.contracted().unwrap(), &g));

    // The span-1 subdivision also feeds the three-track drawing.
    let d = track_drawing_3(&sub.graph, &tl3).unwrap();
    assert!(verify_drawing(&sub.graph, &d, true).unwrap().ok());
}

#[test]
fn rainbow_to_two_bend_drawings() {
    for seed in 0..6 {
        let g = generate(&Family::RandomDag {
            n: 40,
            arcs: 120,
            seed: 7400 + seed,
        })
        .unwrap();
        let order = det(&g);
        let ql = rainbow_queue_layout(&g, &order).unwrap();
        let k = ql.queue_count();
        assert_eq!(k, max_rainbow_size(&g, &order).unwrap());
        let d = two_bend_drawing(&g, &ql).unwrap();
        let bb = bounding_box(&d).unwrap();
        assert!(bb.x <= (2 * k.max(1)) as u64 && bb.y <= 2 && bb.z <= 2 * g.n() as u64);
        assert!(verify_drawing(&g, &d, true).unwrap().ok());
    }
}

#[test]
fn span_coloured_tracks_convert_to_queues() {
    for seed in 0..4 {
        let g = generate(&Family::RandomTree {
            n: 60,
            seed: 7500 + seed,
        })
        .unwrap();
        let tl = tree_span2_layout(&g).unwrap();
        let arc_colour: BTreeMap<(usize, usize), usize> = g
            .arcs()
            .iter()
            .map(|&arc| (arc, span(&tl, arc) as usize))
            .collect();
        let etl = EdgeColouredTrackLayout {
            layout: tl,
            arc_colour,
        };
        let ql = track_to_queue(&g, &etl).unwrap();
        assert!(verify_queue_layout(&g, &ql).unwrap().ok());
    }
}

#[test]
fn oracle_floors_hold_for_the_constructions() {
    let q_budget = OracleBudget::for_queue_number();
    let t_budget = OracleBudget::for_track_number();
    for seed in 0..8 {
        let n = 5 + (seed as usize % 4);
        let g = generate(&Family::RandomTree {
            n,
            seed: 7600 + seed,
        })
        .unwrap();
        let tl = tree_span2_layout(&g).unwrap();
        let (ql, wrapped) = wrap(&g, &tl, 2).unwrap();
        let uqn = exact_upward_queue_number(&g, &q_budget).unwrap();
        assert!(uqn <= ql.queue_count().max(1));
        let utn = exact_upward_track_number(&g, 5, &t_budget)
            .unwrap()
            .expect("trees fit in five tracks");
        assert!(utn <= wrapped.track_count());
    }
    for seed in 0..8 {
        let n = 6 + (seed as usize % 3);
        let g = generate(&Family::RandomCaterpillar {
            n,
            seed: 7700 + seed,
        })
        .unwrap();
        let tl = caterpillar_span1_layout(&g).unwrap();
        let (ql, wrapped) = wrap(&g, &tl, 1).unwrap();
        assert!(exact_upward_queue_number(&g, &q_budget).unwrap() <= ql.queue_count().max(1));
        let utn = exact_upward_track_number(&g, 4, &t_budget)
            .unwrap()
            .expect("caterpillars fit in three tracks");
        assert!(utn <= wrapped.track_count().max(1));
        // The span-1 layout the construction emits is exactly the kind the
        // exhaustive search decides about.
        assert!(span1_upward_layout_exists(&g, &t_budget).unwrap());
    }
}

#[test]
fn nested_family_queue_number_is_exact() {
    let budget = OracleBudget::for_queue_number();
    for n in 2..=3 {
        let g = generate(&Family::Nested { n }).unwrap();
        assert_eq!(exact_upward_queue_number(&g, &budget).unwrap(), n);
        let ql = rainbow_queue_layout(&g, &det(&g)).unwrap();
        assert_eq!(ql.queue_count(), n);
    }
}
