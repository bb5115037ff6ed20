//! On-disk formats. Graphs are JSON objects or plain edge lists, drawings
//! and layouts are JSON. Drawing files round-trip bit-exactly through the
//! in-memory model.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use updraw::{bounding_box, Dag, Drawing3D, GridPoint, QueueLayout, TrackLayout, VertexOrder};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub arcs: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GraphFile {
    pub fn from_dag(g: &Dag, name: Option<String>) -> Self {
        GraphFile {
            n: g.n(),
            arcs: g.arcs().to_vec(),
            name,
        }
    }

    pub fn to_dag(&self) -> CliResult<Dag> {
        Dag::new(self.n, self.arcs.clone()).map_err(|e| CliError::Usage(e.to_string()))
    }
}

/// Reads either format: a JSON GraphFile if the first character is '{',
/// otherwise a "tail head" edge list with ids starting at 0.
pub fn read_graph(path: &Path) -> CliResult<(Dag, Option<String>)> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('{') {
        let gf: GraphFile = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Ok((gf.to_dag()?, gf.name))
    } else {
        Ok((parse_edge_list(&text)?, None))
    }
}

fn parse_edge_list(text: &str) -> CliResult<Dag> {
    let mut arcs = Vec::new();
    let mut n = 0usize;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(CliError::Usage(format!(
                    "line {}: expected \"tail head\", got {line:?}",
                    i + 1
                )))
            }
        };
        let parse = |tok: &str| {
            tok.parse::<usize>().map_err(|_| {
                CliError::Usage(format!("line {}: {tok:?} is not a vertex id", i + 1))
            })
        };
        let (t, h) = (parse(a)?, parse(b)?);
        n = n.max(t + 1).max(h + 1);
        arcs.push((t, h));
    }
    Dag::new(n, arcs).map_err(|e| CliError::Usage(format!("edge list: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPoint {
    pub id: usize,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcBends {
    pub arc: (usize, usize),
    pub points: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxInfo {
    #[serde(rename = "X")]
    pub x: u64,
    #[serde(rename = "Y")]
    pub y: u64,
    #[serde(rename = "Z")]
    pub z: u64,
    pub volume: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingFile {
    pub vertices: Vec<VertexPoint>,
    pub bends: Vec<ArcBends>,
    #[serde(rename = "box")]
    pub bounds: BoxInfo,
    pub upward: bool,
}

impl DrawingFile {
    /// The upward flag records whether z strictly climbs along every arc
    /// polyline; crossing-freedom is the verifier's job, not the format's.
    pub fn from_drawing(g: &Dag, d: &Drawing3D) -> CliResult<Self> {
        let bb = bounding_box(d).map_err(crate::precondition)?;
        let upward = g.arcs().iter().all(|&(t, h)| {
            let mut prev = d.points[t].z;
            let interior = d.bends.get(&(t, h)).map(Vec::as_slice).unwrap_or(&[]);
            for p in interior {
                if p.z <= prev {
                    return false;
                }
                prev = p.z;
            }
            d.points[h].z > prev
        });
        Ok(DrawingFile {
            vertices: d
                .points
                .iter()
                .enumerate()
                .map(|(id, p)| VertexPoint {
                    id,
                    x: p.x,
                    y: p.y,
                    z: p.z,
                })
                .collect(),
            bends: d
                .bends
                .iter()
                .map(|(&arc, pts)| ArcBends {
                    arc,
                    points: pts.iter().map(|p| [p.x, p.y, p.z]).collect(),
                })
                .collect(),
            bounds: BoxInfo {
                x: bb.x,
                y: bb.y,
                z: bb.z,
                volume: bb.volume(),
            },
            upward,
        })
    }

    pub fn to_drawing(&self) -> CliResult<Drawing3D> {
        let n = self.vertices.len();
        let mut points = vec![None; n];
        for v in &self.vertices {
            if v.id >= n || points[v.id].is_some() {
                return Err(CliError::Usage(format!(
                    "vertex ids must be 0..{n} without repeats, got {}",
                    v.id
                )));
            }
            points[v.id] = Some(GridPoint::new(v.x, v.y, v.z));
        }
        let mut bends = BTreeMap::new();
        for b in &self.bends {
            let pts = b.points.iter().map(|&[x, y, z]| GridPoint::new(x, y, z));
            if bends.insert(b.arc, pts.collect()).is_some() {
                return Err(CliError::Usage(format!("bends repeat arc {:?}", b.arc)));
            }
        }
        Ok(Drawing3D {
            points: points.into_iter().map(Option::unwrap).collect(),
            bends,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcQueue {
    pub arc: (usize, usize),
    pub queue: usize,
}

/// Track and queue layouts share one file shape, discriminated by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LayoutFile {
    Track {
        upward: bool,
        track: Vec<i64>,
        rank: Vec<usize>,
    },
    Queue {
        upward: bool,
        order: Vec<usize>,
        queues: Vec<ArcQueue>,
    },
}

impl LayoutFile {
    pub fn from_track(tl: &TrackLayout) -> Self {
        LayoutFile::Track {
            upward: tl.upward,
            track: tl.track.clone(),
            rank: tl.rank.clone(),
        }
    }

    pub fn from_queue(ql: &QueueLayout) -> Self {
        LayoutFile::Queue {
            upward: ql.upward,
            order: ql.order.sequence().to_vec(),
            queues: ql
                .queue
                .iter()
                .map(|(&arc, &queue)| ArcQueue { arc, queue })
                .collect(),
        }
    }

    pub fn to_track(&self) -> CliResult<TrackLayout> {
        match self {
            LayoutFile::Track {
                upward,
                track,
                rank,
            } => Ok(TrackLayout::new(track.clone(), rank.clone(), *upward)),
            LayoutFile::Queue { .. } => {
                Err(CliError::Usage("expected a track layout file".into()))
            }
        }
    }

    pub fn to_queue(&self, g: &Dag) -> CliResult<QueueLayout> {
        match self {
            LayoutFile::Queue {
                upward,
                order,
                queues,
            } => {
                let order = if *upward {
                    VertexOrder::topological_for(g, order.clone()).map_err(crate::precondition)?
                } else {
                    VertexOrder::from_sequence(order.clone()).map_err(crate::precondition)?
                };
                Ok(QueueLayout {
                    order,
                    queue: queues.iter().map(|aq| (aq.arc, aq.queue)).collect(),
                    upward: *upward,
                })
            }
            LayoutFile::Track { .. } => {
                Err(CliError::Usage("expected a queue layout file".into()))
            }
        }
    }
}

/// Wavefront OBJ: vertices, then bend points, then one polyline per arc.
pub fn drawing_to_obj(g: &Dag, d: &Drawing3D) -> String {
    let mut out = String::from("# polyline drawing export\n");
    for p in &d.points {
        out.push_str(&format!("v {} {} {}\n", p.x, p.y, p.z));
    }
    let mut next = d.points.len() + 1;
    let mut bend_start = BTreeMap::new();
    for (&arc, pts) in &d.bends {
        bend_start.insert(arc, next);
        for p in pts {
            out.push_str(&format!("v {} {} {}\n", p.x, p.y, p.z));
            next += 1;
        }
    }
    for &(t, h) in g.arcs() {
        let mut indices = vec![t + 1];
        if let Some(pts) = d.bends.get(&(t, h)) {
            let first = bend_start[&(t, h)];
            indices.extend(first..first + pts.len());
        }
        indices.push(h + 1);
        let line: Vec<String> = indices.iter().map(usize::to_string).collect();
        out.push_str(&format!("l {}\n", line.join(" ")));
    }
    out
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn read_layout(path: &Path) -> CliResult<LayoutFile> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn read_drawing(path: &Path) -> CliResult<DrawingFile> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Serializes to pretty JSON; `path` of "-" or None means stdout.
pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Usage(format!("serialize: {e}")))?;
    write_text(path, &(text + "\n"))
}

pub fn write_text(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        _ => {
            print!("{text}");
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use updraw::{generate, rainbow_queue_layout, topological_order, two_bend_drawing, Family};

    #[test]
    fn drawing_files_round_trip_bit_exactly() {
        let g = generate(&Family::Complete { n: 6 }).unwrap();
        let ql = rainbow_queue_layout(&g, &topological_order(&g)).unwrap();
        let d = two_bend_drawing(&g, &ql).unwrap();

        let file = DrawingFile::from_drawing(&g, &d).unwrap();
        assert!(file.upward);
        let parsed = serde_json::to_string(&file)
            .and_then(|s| serde_json::from_str::<DrawingFile>(&s))
            .unwrap();
        assert_eq!(parsed, file);
        assert_eq!(parsed.to_drawing().unwrap(), d);
    }

    #[test]
    fn edge_lists_report_the_offending_line() {
        let good = parse_edge_list("0 1\n# comment\n1 2\n").unwrap();
        assert_eq!((good.n(), good.m()), (3, 2));

        let err = parse_edge_list("0 1\n1 2 3\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_edge_list("0 x\n").unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
        // Cycles surface as input errors, not panics.
        assert!(parse_edge_list("0 1\n1 0\n").is_err());
    }

    #[test]
    fn layout_files_rebuild_their_layouts() {
        let g = generate(&Family::Path { n: 4 }).unwrap();
        let ql = rainbow_queue_layout(&g, &topological_order(&g)).unwrap();
        let qf = LayoutFile::from_queue(&ql);
        let back = qf.to_queue(&g).unwrap();
        assert_eq!(back.order.sequence(), ql.order.sequence());
        assert_eq!(back.queue, ql.queue);
        assert!(qf.to_track().is_err());

        let tl = updraw::tree_span2_layout(&g).unwrap();
        let tf = LayoutFile::from_track(&tl);
        assert_eq!(tf.to_track().unwrap(), tl);
        assert!(tf.to_queue(&g).is_err());
    }
}
