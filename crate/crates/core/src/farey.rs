//! The planar model of Γ(ℤ): Farey sequences, the point (p/q, q) for p/q and
//! the origin for ∞, structural checks, and SVG output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::graph::Graph;
use crate::homology::{homology, Complex2};
use crate::par::Execution;
use crate::projline::{canonical_vertex, infinity, Vertex};
use crate::ring::{Elem, HeightBound, Ring};

pub type Q = Ratio<i64>;

/// Number of unit strips [k, k+1] used when no window is given.
pub const DEFAULT_WINDOW: u32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyLevel {
    pub n: u32,
    pub fractions: Vec<Q>,
}

/// F_n by the next-term recurrence, starting from 0/1, 1/n.
pub fn farey(n: u32) -> FareyLevel {
    let n = n.max(1) as i64;
    let (mut a, mut b, mut c, mut d) = (0i64, 1i64, 1i64, n);
    let mut fractions = vec![Q::new(a, b)];
    while c <= n {
        fractions.push(Q::new(c, d));
        let k = (n + b) / d;
        let (na, nb) = (c, d);
        c = k * c - a;
        d = k * d - b;
        a = na;
        b = nb;
    }
    FareyLevel { n: n as u32, fractions }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FPoint {
    Infinity,
    Finite(Q),
}

impl FPoint {
    /// Plane coordinates (x, y): ∞ sits at the origin, p/q at (p/q, q).
    pub fn coords(&self) -> (Q, i64) {
        match self {
            FPoint::Infinity => (Q::from_integer(0), 0),
            FPoint::Finite(x) => (*x, *x.denom()),
        }
    }

    fn vertex(&self, r: &Ring) -> Vertex {
        match self {
            FPoint::Infinity => infinity(r),
            FPoint::Finite(x) => canonical_vertex(r, &r.from_i64(*x.numer()), &r.from_i64(*x.denom()))
                .expect("reduced fraction is unimodular"),
        }
    }

    fn from_vertex(v: &Vertex) -> FPoint {
        let (Elem::Int(a), Elem::Int(b)) = (&v.a, &v.b) else {
            panic!("integer vertex expected")
        };
        if b == &BigInt::from(0) {
            FPoint::Infinity
        } else {
            let a: i64 = a.try_into().expect("small numerator");
            let b: i64 = b.try_into().expect("small denominator");
            FPoint::Finite(Q::new(a, b))
        }
    }
}

/// The truncation Γ(ℤ,n) restricted to the strips [0, window].
pub fn gamma_z(n: u32, window: u32) -> Graph {
    gamma_z_with(n, window, Execution::default())
}

pub fn gamma_z_with(n: u32, window: u32, exec: Execution) -> Graph {
    let r = Ring::integers();
    let mut pts = vec![FPoint::Infinity];
    let base = farey(n).fractions;
    for k in 0..window as i64 {
        for x in &base {
            if k > 0 && *x.numer() == 0 {
                continue;
            }
            pts.push(FPoint::Finite(x + Q::from_integer(k)));
        }
    }
    let vs = pts.iter().map(|p| p.vertex(&r)).collect();
    Graph::induced(&r, HeightBound::new(n as u64, 1), vs, false, exec)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    pub n: u32,
    pub window: u32,
    pub points: Vec<FPoint>,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
}

impl PlanarEmbedding {
    pub fn empty() -> PlanarEmbedding {
        PlanarEmbedding { n: 0, window: 0, points: vec![], edges: vec![], triangles: vec![] }
    }
}

pub fn embed(n: u32, window: u32) -> PlanarEmbedding {
    let g = gamma_z(n, window);
    let c = Complex2::from_graph(&g);
    PlanarEmbedding {
        n,
        window,
        points: g.vertices.iter().map(FPoint::from_vertex).collect(),
        edges: c.edges,
        triangles: c.triangles,
    }
}

#[derive(Clone, Debug)]
pub struct SvgStyle {
    /// Digits after the decimal point.
    pub precision: usize,
    pub fill: bool,
    /// Width in pixels; height follows the aspect ratio.
    pub size: u32,
}

impl Default for SvgStyle {
    fn default() -> Self {
        SvgStyle { precision: 12, fill: true, size: 800 }
    }
}

/// Exact decimal rendering of num/den, rounded half away from zero, trailing zeros trimmed.
pub fn decimal(num: i64, den: i64, precision: usize) -> String {
    let (num, den) = if den < 0 { (-num as i128, -den as i128) } else { (num as i128, den as i128) };
    let neg = num < 0;
    let scale = 10i128.pow(precision as u32);
    let scaled = num.abs() * scale;
    let (q, rem) = scaled.div_rem(&den);
    let q = if 2 * rem >= den { q + 1 } else { q };
    let int = q / scale;
    let mut frac = format!("{:0width$}", q % scale, width = precision);
    while frac.ends_with('0') {
        frac.pop();
    }
    let mut s = if neg && q != 0 { "-".to_string() } else { String::new() };
    s.push_str(&int.to_string());
    if !frac.is_empty() {
        s.push('.');
        s.push_str(&frac);
    }
    s
}

fn q_dec(x: Q, p: usize) -> String {
    decimal(*x.numer(), *x.denom(), p)
}

/// Plain SVG 1.1 with y pointing up (points are drawn at (x, -y)).
pub fn render_svg(e: &PlanarEmbedding, style: &SvgStyle) -> String {
    let p = style.precision;
    let w = e.window.max(1) as i64;
    let h = e.n.max(1) as i64;
    let height_px = (style.size as i64 * (h + 1) / (w + 1)).max(1);
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"-0.5 {} {} {}\">",
        style.size,
        height_px,
        decimal(-(2 * h + 1), 2, p),
        w + 1,
        h + 1
    );
    let _ = writeln!(
        s,
        "<metadata>Farey plane level {} over x in [0,{}]; infinity drawn at the origin; vertices and edges outside the window are omitted.</metadata>",
        e.n, e.window
    );
    let pt = |i: usize| {
        let (x, y) = e.points[i].coords();
        (q_dec(x, p), decimal(-y, 1, p))
    };
    if style.fill && !e.triangles.is_empty() {
        s.push_str("<g fill=\"#dde8f4\" stroke=\"none\">\n");
        for &(a, b, c) in &e.triangles {
            let (ax, ay) = pt(a);
            let (bx, by) = pt(b);
            let (cx, cy) = pt(c);
            let _ = writeln!(s, "<polygon points=\"{ax},{ay} {bx},{by} {cx},{cy}\"/>");
        }
        s.push_str("</g>\n");
    }
    if !e.edges.is_empty() {
        s.push_str("<g stroke=\"#203040\" stroke-width=\"0.01\">\n");
        for &(a, b) in &e.edges {
            let (ax, ay) = pt(a);
            let (bx, by) = pt(b);
            let _ = writeln!(s, "<line x1=\"{ax}\" y1=\"{ay}\" x2=\"{bx}\" y2=\"{by}\"/>");
        }
        s.push_str("</g>\n");
    }
    if !e.points.is_empty() {
        s.push_str("<g fill=\"#a02020\">\n");
        for i in 0..e.points.len() {
            let (x, y) = pt(i);
            let _ = writeln!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"0.03\"/>");
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    s
}

fn det(x: Q, y: Q) -> i64 {
    x.numer() * y.denom() - x.denom() * y.numer()
}

fn mediant(x: Q, y: Q) -> Q {
    Q::new(x.numer() + y.numer(), x.denom() + y.denom())
}

/// Results of the structural checks on Γ(ℤ,n) over the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FareyReport {
    pub n: u32,
    pub window: u32,
    /// Finite edges are exactly the pairs with |ps - qr| = 1.
    pub neighbour_law: bool,
    /// |F_m \ F_(m-1)| = φ(m) for m ≤ n.
    pub new_point_counts: bool,
    /// Each new point is the mediant of a unique neighbour pair, strictly between them.
    pub mediant_law: bool,
    pub no_strip_crossing: bool,
    /// Each finite edge lies on exactly two triangles of Γ(ℤ): the mediant above both
    /// endpoints and one apex below the higher endpoint.
    pub two_triangle_law: bool,
    pub h1_trivial: bool,
}

impl FareyReport {
    pub fn all(&self) -> bool {
        self.neighbour_law
            && self.new_point_counts
            && self.mediant_law
            && self.no_strip_crossing
            && self.two_triangle_law
            && self.h1_trivial
    }
}

fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

fn apexes_in_full_graph(x: Q, y: Q) -> BTreeSet<FPoint> {
    let mut out = BTreeSet::new();
    // ∞ is adjacent exactly to the integers
    if x.is_integer() && y.is_integer() {
        out.insert(FPoint::Infinity);
    }
    let qmax = x.denom() + y.denom();
    let lo = x.min(y).floor().to_integer() - 1;
    let hi = x.max(y).ceil().to_integer() + 1;
    for q in 1..=qmax {
        for p in lo * q..=hi * q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let z = Q::new(p, q);
            if det(x, z).abs() == 1 && det(y, z).abs() == 1 {
                out.insert(FPoint::Finite(z));
            }
        }
    }
    out
}

pub fn check(n: u32, window: u32) -> FareyReport {
    let e = embed(n, window);
    let finite: Vec<(usize, Q)> = e
        .points
        .iter()
        .enumerate()
        .filter_map(|(i, p)| match p {
            FPoint::Finite(x) => Some((i, *x)),
            FPoint::Infinity => None,
        })
        .collect();
    let edge_set: BTreeSet<(usize, usize)> = e.edges.iter().copied().collect();

    let mut neighbour_law = true;
    for (a, &(i, x)) in finite.iter().enumerate() {
        for &(j, y) in &finite[a + 1..] {
            let want = det(x, y).abs() == 1;
            if want != edge_set.contains(&(i.min(j), i.max(j))) {
                neighbour_law = false;
            }
        }
    }

    let new_point_counts = (1..=n).all(|m| {
        let prev = if m == 1 { 0 } else { farey(m - 1).fractions.len() };
        let want = if m == 1 { 2 } else { totient(m) };
        farey(m).fractions.len() - prev == want
    });

    let mut mediant_law = true;
    for m in 1..n {
        let fm = farey(m).fractions;
        let next: BTreeSet<Q> = farey(m + 1).fractions.into_iter().collect();
        let old: BTreeSet<Q> = fm.iter().copied().collect();
        let mut made: BTreeMap<Q, usize> = BTreeMap::new();
        for w in fm.windows(2) {
            let (x, y) = (w[0], w[1]);
            if x.denom() + y.denom() == m as i64 + 1 {
                let z = mediant(x, y);
                if !(x < z && z < y) {
                    mediant_law = false;
                }
                *made.entry(z).or_default() += 1;
            }
        }
        let fresh: BTreeSet<Q> = next.difference(&old).copied().collect();
        if made.keys().copied().collect::<BTreeSet<_>>() != fresh || made.values().any(|&c| c != 1) {
            mediant_law = false;
        }
    }

    let no_strip_crossing = e.edges.iter().all(|&(i, j)| match (e.points[i], e.points[j]) {
        (FPoint::Finite(x), FPoint::Finite(y)) => {
            let (lo, hi) = (x.min(y), x.max(y));
            hi - lo.floor() <= Q::from_integer(1)
        }
        _ => true,
    });

    let two_triangle_law = e.edges.iter().all(|&(i, j)| match (e.points[i], e.points[j]) {
        (FPoint::Finite(x), FPoint::Finite(y)) => {
            let ap = apexes_in_full_graph(x, y);
            let top = FPoint::Finite(mediant(x, y));
            let higher = *x.denom().max(y.denom());
            let below = ap.iter().filter(|z| match z {
                FPoint::Infinity => true,
                FPoint::Finite(z) => *z.denom() < higher,
            });
            ap.len() == 2 && ap.contains(&top) && below.count() == 1
        }
        _ => true,
    });

    let h = homology(&Complex2::from_graph(&gamma_z(n, window)));
    FareyReport {
        n,
        window,
        neighbour_law,
        new_point_counts,
        mediant_law,
        no_strip_crossing,
        two_triangle_law,
        h1_trivial: h.h0 == 1 && h.h1_trivial(),
    }
}
