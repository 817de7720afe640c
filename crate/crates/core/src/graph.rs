//! The graph of unimodular rows: adjacency, neighbourhoods, triangles,
//! 4-cliques, bounded materialization, components and clique enumeration.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{map_range, Execution};
use crate::projline::{self, canonical_vertex, complete_row, is_unimodular, Vertex};
use crate::ring::{Elem, HeightBound, Ring};

/// Two vertices are adjacent when the matrix with rows x and y has unit determinant.
pub fn is_edge(r: &Ring, x: &Vertex, y: &Vertex) -> bool {
    let det = r.sub(&r.mul(&x.a, &y.b), &r.mul(&x.b, &y.a));
    r.is_unit(&det)
}

/// A vertex set that may be only part of the true answer for infinite rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounded<T> {
    pub items: Vec<T>,
    pub complete: bool,
}

/// Neighbours of x: the images of [a:1] under a completion of x, over the
/// elements a inside the bound.
pub fn neighbors(r: &Ring, x: &Vertex, bound: HeightBound) -> Result<Bounded<Vertex>> {
    let m = complete_row(r, x)?;
    let mut items = Vec::new();
    for a in r.enumerate_elements(bound) {
        items.push(projline::act(r, &projline::plus(r, &a), &m)?);
    }
    items.sort();
    items.dedup();
    Ok(Bounded {
        items,
        complete: r.is_finite(),
    })
}

/// Third vertices of the triangles on the edge (x, y): the rows x + u·y.
pub fn triangle_apexes(
    r: &Ring,
    x: &Vertex,
    y: &Vertex,
    bound: HeightBound,
) -> Result<Bounded<Vertex>> {
    if !is_edge(r, x, y) {
        return Err(Error::NotAnEdge(x.to_string(), y.to_string()));
    }
    let mut items = Vec::new();
    for u in r.enumerate_units(bound) {
        let a = r.add(&x.a, &r.mul(&u, &y.a));
        let b = r.add(&x.b, &r.mul(&u, &y.b));
        items.push(canonical_vertex(r, &a, &b)?);
    }
    items.sort();
    items.dedup();
    Ok(Bounded {
        items,
        complete: r.units_complete(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourClique {
    /// Units u with 1 - u a unit, inside the bound.
    pub w: Vec<Elem>,
    pub witness: Option<[Vertex; 4]>,
    pub complete: bool,
}

impl FourClique {
    pub fn exists(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn has_4_clique(r: &Ring, bound: HeightBound) -> FourClique {
    let w: Vec<Elem> = r
        .enumerate_units(bound)
        .into_iter()
        .filter(|u| r.is_unit(&r.sub(&r.one(), u)))
        .collect();
    let witness = w.first().map(|u| {
        let inf = projline::infinity(r);
        let zero = projline::zero_vertex(r);
        let pu = projline::plus(r, u);
        let q = projline::plus(r, &r.sub(&r.one(), u));
        if is_edge(r, &pu, &q) {
            [inf, zero, pu, q]
        } else {
            [inf, zero, projline::plus(r, &r.one()), pu]
        }
    });
    FourClique {
        w,
        witness,
        complete: r.units_complete(),
    }
}

/// A finite induced subgraph of the full graph.
#[derive(Clone, Debug)]
pub struct Graph {
    pub ring: Ring,
    pub bound: HeightBound,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    /// True when this is the whole graph (finite rings).
    pub complete: bool,
    adj: Vec<Vec<usize>>,
    index: HashMap<Vertex, usize>,
}

impl PartialEq for Graph {
    fn eq(&self, o: &Self) -> bool {
        self.ring == o.ring
            && self.bound == o.bound
            && self.vertices == o.vertices
            && self.edges == o.edges
            && self.complete == o.complete
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    ring: String,
    bound: HeightBound,
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
    complete: bool,
}

pub fn build_graph(r: &Ring, bound: HeightBound) -> Graph {
    build_graph_with(r, bound, Execution::default())
}

pub fn build_graph_with(r: &Ring, bound: HeightBound, exec: Execution) -> Graph {
    let elems = r.enumerate_elements(bound);
    let rows: Vec<Vec<Vertex>> = map_range(elems.len(), exec, |i| {
        let a = &elems[i];
        elems
            .iter()
            .filter(|b| is_unimodular(r, a, b))
            .map(|b| canonical_vertex(r, a, b).expect("unimodular"))
            .collect()
    });
    let mut vertices: Vec<Vertex> = rows.into_iter().flatten().collect();
    vertices.sort();
    vertices.dedup();
    Graph::induced(r, bound, vertices, r.is_finite(), exec)
}

impl Graph {
    /// The induced subgraph on the given vertices (sorted and deduplicated here).
    pub fn induced(
        r: &Ring,
        bound: HeightBound,
        mut vertices: Vec<Vertex>,
        complete: bool,
        exec: Execution,
    ) -> Graph {
        vertices.sort();
        vertices.dedup();
        let n = vertices.len();
        let rows: Vec<Vec<usize>> = map_range(n, exec, |i| {
            ((i + 1)..n)
                .filter(|&j| is_edge(r, &vertices[i], &vertices[j]))
                .collect()
        });
        let edges = rows
            .iter()
            .enumerate()
            .flat_map(|(i, js)| js.iter().map(move |&j| (i, j)))
            .collect();
        Graph::from_parts(r.clone(), bound, vertices, edges, complete)
    }

    fn from_parts(
        ring: Ring,
        bound: HeightBound,
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        complete: bool,
    ) -> Graph {
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        Graph {
            ring,
            bound,
            vertices,
            edges,
            complete,
            adj,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: &Vertex) -> Result<usize> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| Error::VertexNotFound(v.to_string()))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    pub fn neighbours_of(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    /// Connected components by BFS, each sorted, ordered by least member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        q.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// All k-cliques as increasing index tuples, in lexicographic order.
    pub fn cliques(&self, k: usize) -> Vec<Vec<usize>> {
        self.cliques_with(k, Execution::default())
    }

    pub fn cliques_with(&self, k: usize, exec: Execution) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let per_start = map_range(self.len(), exec, |s| {
            let mut out = Vec::new();
            let cands: Vec<usize> = self.adj[s].iter().copied().filter(|&j| j > s).collect();
            let mut cur = vec![s];
            self.extend_clique(&mut cur, &cands, k, &mut out);
            out
        });
        per_start.into_iter().flatten().collect()
    }

    fn extend_clique(
        &self,
        cur: &mut Vec<usize>,
        cands: &[usize],
        k: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        if cur.len() + cands.len() < k {
            return;
        }
        for (pos, &v) in cands.iter().enumerate() {
            let next: Vec<usize> = cands[pos + 1..]
                .iter()
                .copied()
                .filter(|&w| self.adjacent(v, w))
                .collect();
            cur.push(v);
            self.extend_clique(cur, &next, k, out);
            cur.pop();
        }
    }

    pub fn to_json(&self) -> String {
        let j = GraphJson {
            ring: self.ring.spec(),
            bound: self.bound,
            vertices: self.vertices.iter().map(|v| v.to_string()).collect(),
            edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
            complete: self.complete,
        };
        serde_json::to_string(&j).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let ring = Ring::parse(&j.ring)?;
        let vertices = j
            .vertices
            .iter()
            .map(|v| projline::parse_vertex(&ring, v))
            .collect::<Result<Vec<_>>>()?;
        let n = vertices.len();
        if let Some(e) = j.edges.iter().find(|e| e[0] >= n || e[1] >= n) {
            return Err(Error::Parse(format!("edge {e:?} out of range")));
        }
        let edges = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(Graph::from_parts(ring, j.bound, vertices, edges, j.complete))
    }
}
