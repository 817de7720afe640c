//! The 2-dimensional clique complex of a graph: homology and fundamental group.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::Execution;
use crate::path::PathWord;
use crate::projline::Vertex;
use crate::ring::Ring;
use crate::snf::{smith_normal_form, IntMatrix, Snf};

/// Vertices, edges (i < j) and triangles (i < j < k) by index.
#[derive(Clone, Debug)]
pub struct Complex2 {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
    pub truncated: bool,
    vindex: HashMap<Vertex, usize>,
    eindex: HashMap<(usize, usize), usize>,
}

impl Complex2 {
    pub fn from_graph(g: &Graph) -> Complex2 {
        Complex2::from_graph_with(g, Execution::default())
    }

    pub fn from_graph_with(g: &Graph, exec: Execution) -> Complex2 {
        let triangles = g
            .cliques_with(3, exec)
            .into_iter()
            .map(|c| (c[0], c[1], c[2]))
            .collect();
        Complex2::new(g.vertices.clone(), g.edges.clone(), triangles, !g.complete)
    }

    pub fn new(
        vertices: Vec<Vertex>,
        edges: Vec<(usize, usize)>,
        triangles: Vec<(usize, usize, usize)>,
        truncated: bool,
    ) -> Complex2 {
        let edges: Vec<(usize, usize)> =
            edges.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        let vindex = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let eindex = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        Complex2 { vertices, edges, triangles, truncated, vindex, eindex }
    }

    /// Oriented edge lookup: index and sign relative to the stored orientation.
    fn edge(&self, i: usize, j: usize) -> Option<(usize, i64)> {
        if i < j {
            self.eindex.get(&(i, j)).map(|&k| (k, 1))
        } else {
            self.eindex.get(&(j, i)).map(|&k| (k, -1))
        }
    }

    /// ∂1 as a |V| x |E| matrix.
    pub fn boundary1(&self) -> IntMatrix {
        let mut m = vec![vec![BigInt::zero(); self.edges.len()]; self.vertices.len()];
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            m[j][k] += 1;
            m[i][k] -= 1;
        }
        m
    }

    /// ∂2 as a |E| x |T| matrix; [i,j,k] maps to [j,k] - [i,k] + [i,j].
    pub fn boundary2(&self) -> IntMatrix {
        let mut m = vec![vec![BigInt::zero(); self.triangles.len()]; self.edges.len()];
        for (t, &(i, j, k)) in self.triangles.iter().enumerate() {
            for (a, b, s) in [(j, k, 1), (i, k, -1), (i, j, 1)] {
                let (e, o) = self.edge(a, b).expect("triangle edge present");
                m[e][t] += s * o;
            }
        }
        m
    }

    fn components(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut comp = vec![usize::MAX; n];
        let mut c = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = c;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &adj[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = c;
                        q.push_back(y);
                    }
                }
            }
            c += 1;
        }
        comp
    }

    /// Every edge lies on at least one triangle.
    pub fn every_edge_in_triangle(&self) -> bool {
        let mut hit = vec![false; self.edges.len()];
        for &(i, j, k) in &self.triangles {
            for (a, b) in [(i, j), (i, k), (j, k)] {
                if let Some((e, _)) = self.edge(a, b) {
                    hit[e] = true;
                }
            }
        }
        hit.into_iter().all(|h| h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub h0: usize,
    pub h1_rank: usize,
    pub h1_torsion: Vec<u64>,
    pub truncated: bool,
    pub lemma_h1_hypothesis: bool,
}

impl HomologyResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn h1_trivial(&self) -> bool {
        self.h1_rank == 0 && self.h1_torsion.is_empty()
    }
}

fn small(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|d| d.to_u64().expect("torsion coefficient fits in u64")).collect()
}

pub fn homology(c: &Complex2) -> HomologyResult {
    let comp = c.components();
    let h0 = comp.iter().max().map_or(0, |&m| m + 1);
    let rank1 = c.vertices.len() - h0;
    let d2 = smith_normal_form(&c.boundary2(), false);
    HomologyResult {
        h0,
        h1_rank: c.edges.len() - rank1 - d2.rank(),
        h1_torsion: small(&d2.torsion()),
        truncated: c.truncated,
        lemma_h1_hypothesis: c.every_edge_in_triangle(),
    }
}

/// Generator g with exponent ±1.
pub type Syllable = (usize, i8);

/// A presentation of π1 of the component containing the base vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub base: usize,
    /// Non-tree edges, one generator each.
    pub generators: Vec<(usize, usize)>,
    pub relators: Vec<Vec<Syllable>>,
}

impl Presentation {
    /// Rank and torsion of the abelianization.
    pub fn abelianize(&self) -> (usize, Vec<u64>) {
        let n = self.generators.len();
        let m: IntMatrix = self
            .relators
            .iter()
            .map(|rel| {
                let mut row = vec![BigInt::zero(); n];
                for &(g, e) in rel {
                    row[g] += e as i64;
                }
                row
            })
            .collect();
        let snf = smith_normal_form(&m, false);
        (n - snf.rank(), small(&snf.torsion()))
    }
}

fn free_reduce(w: Vec<Syllable>) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::with_capacity(w.len());
    for s in w {
        match out.last() {
            Some(&(g, e)) if g == s.0 && e == -s.1 => {
                out.pop();
            }
            _ => out.push(s),
        }
    }
    out
}

/// Spanning-tree presentation: one generator per non-tree edge, one relator per triangle.
pub fn pi1_presentation(c: &Complex2, base: usize) -> Result<Presentation> {
    if base >= c.vertices.len() {
        return Err(Error::VertexNotFound(base.to_string()));
    }
    let comp = c.components();
    let mut adj = vec![Vec::new(); c.vertices.len()];
    for &(i, j) in &c.edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut in_tree = vec![false; c.edges.len()];
    let mut seen = vec![false; c.vertices.len()];
    seen[base] = true;
    let mut q = VecDeque::from([base]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                in_tree[c.edge(x, y).expect("edge").0] = true;
                q.push_back(y);
            }
        }
    }
    let mut gen_of = vec![usize::MAX; c.edges.len()];
    let mut generators = Vec::new();
    for (k, &(i, _)) in c.edges.iter().enumerate() {
        if comp[i] == comp[base] && !in_tree[k] {
            gen_of[k] = generators.len();
            generators.push(c.edges[k]);
        }
    }
    let letter = |a: usize, b: usize| -> Option<Syllable> {
        let (k, o) = c.edge(a, b).expect("edge");
        (gen_of[k] != usize::MAX).then_some((gen_of[k], o as i8))
    };
    let relators = c
        .triangles
        .iter()
        .filter(|t| comp[t.0] == comp[base])
        .map(|&(i, j, k)| {
            free_reduce([letter(i, j), letter(j, k), letter(k, i)].into_iter().flatten().collect())
        })
        .filter(|r| !r.is_empty())
        .collect();
    Ok(Presentation { base, generators, relators })
}

/// SNF of ∂2 with its left transform, reused for many loop classes.
pub struct CycleBasis {
    snf: Snf,
}

/// Coordinates of a 1-cycle in C1 / im ∂2: residues mod each invariant factor > 1,
/// then the free coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopClass {
    pub torsion: Vec<String>,
    pub free: Vec<String>,
}

impl LoopClass {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(self.free.iter()).all(|s| s == "0")
    }
}

impl CycleBasis {
    pub fn new(c: &Complex2) -> CycleBasis {
        CycleBasis { snf: smith_normal_form(&c.boundary2(), true) }
    }

    pub fn class_of_chain(&self, z: &[BigInt]) -> LoopClass {
        let p = self.snf.left.as_ref().expect("left transform tracked");
        let y: Vec<BigInt> = p
            .iter()
            .map(|row| row.iter().zip(z).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect();
        let r = self.snf.rank();
        let torsion = (0..r)
            .filter(|&i| self.snf.diag[i] > BigInt::from(1))
            .map(|i| y[i].mod_floor(&self.snf.diag[i]).to_string())
            .collect();
        let free = y[r..].iter().map(|v| v.to_string()).collect();
        LoopClass { torsion, free }
    }
}

/// The edge chain of a closed vertex sequence.
pub fn loop_chain(c: &Complex2, vs: &[Vertex]) -> Result<Vec<BigInt>> {
    let mut z = vec![BigInt::zero(); c.edges.len()];
    let idx: Vec<usize> = vs
        .iter()
        .map(|v| c.vindex.get(v).copied().ok_or_else(|| Error::LoopNotInComplex(v.to_string())))
        .collect::<Result<_>>()?;
    for w in idx.windows(2) {
        if w[0] == w[1] {
            continue;
        }
        let (e, o) = c.edge(w[0], w[1]).ok_or_else(|| {
            Error::LoopNotInComplex(format!("{} -- {}", c.vertices[w[0]], c.vertices[w[1]]))
        })?;
        z[e] += o;
    }
    Ok(z)
}

pub fn loop_class(r: &Ring, c: &Complex2, p: &PathWord) -> Result<LoopClass> {
    if !p.is_loop(r) {
        return Err(Error::NotALoop);
    }
    let z = loop_chain(c, &p.vertices(r))?;
    Ok(CycleBasis::new(c).class_of_chain(&z))
}
