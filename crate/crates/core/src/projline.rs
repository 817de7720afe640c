//! Unimodular rows up to units: the vertices of the graph, their canonical
//! representatives, SL2 completions and the right action of matrices.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::ring::{Elem, HeightBound, Ring, RingDesc};

/// A unimodular row `[a:b]` stored in canonical form. Construct through
/// [`canonical_vertex`] so that equality is equality of orbits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub a: Elem,
    pub b: Elem,
}

impl Vertex {
    pub fn row(&self) -> (&Elem, &Elem) {
        (&self.a, &self.b)
    }
}

/// Ordered by (b, a), which puts infinity first for every supported ring.
impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.b.cmp(&other.b).then_with(|| self.a.cmp(&other.a))
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.a, self.b)
    }
}

/// A point of P^1 over the fraction field (or over Z/p).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Infinity,
    Rational(BigRational),
    /// x + y t with rational coordinates.
    Quadratic(BigRational, BigRational),
    Residue(BigInt),
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Infinity => write!(f, "inf"),
            ProjPoint::Rational(q) => write!(f, "{q}"),
            ProjPoint::Residue(v) => write!(f, "{v}"),
            ProjPoint::Quadratic(x, y) => {
                if y.is_zero() {
                    write!(f, "{x}")
                } else if x.is_zero() {
                    write!(f, "({y})*t")
                } else {
                    write!(f, "{x}+({y})*t")
                }
            }
        }
    }
}

// ---- Bezout data -----------------------------------------------------------

/// Row-reduce integer 2-vectors, tracking the unimodular transform. Returns the
/// reduced rows (first two carry the echelon form) and the transform rows.
fn hnf2(rows: Vec<[BigInt; 2]>) -> (Vec<[BigInt; 2]>, Vec<Vec<BigInt>>) {
    let k = rows.len();
    let mut rows = rows;
    let mut t: Vec<Vec<BigInt>> = (0..k)
        .map(|i| (0..k).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    let mut top = 0;
    for col in 0..2 {
        loop {
            let piv = (top..k)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()));
            let Some(p) = piv else { break };
            rows.swap(top, p);
            t.swap(top, p);
            let mut done = true;
            for i in (top + 1)..k {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                for c in 0..2 {
                    let v = &rows[top][c] * &q;
                    rows[i][c] -= v;
                }
                for c in 0..k {
                    let v = &t[top][c] * &q;
                    t[i][c] -= v;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                top += 1;
                break;
            }
        }
    }
    (rows, t)
}

fn quad_vec(r: &Ring, e: &Elem) -> [BigInt; 2] {
    let (x, y) = r.quad_coords(e).expect("quadratic element");
    [x, y]
}

/// Echelon data of the ideal (a, b) of a quadratic order as a Z-lattice.
struct QuadIdeal {
    g1: BigInt,
    h: BigInt,
    g2: BigInt,
    t: Vec<Vec<BigInt>>,
}

impl QuadIdeal {
    fn new(r: &Ring, a: &Elem, b: &Elem) -> QuadIdeal {
        let gens = vec![
            quad_vec(r, a),
            quad_vec(r, &r.times_theta(a)),
            quad_vec(r, b),
            quad_vec(r, &r.times_theta(b)),
        ];
        let (rows, t) = hnf2(gens);
        QuadIdeal {
            g1: rows[0][0].clone(),
            h: rows[0][1].clone(),
            g2: rows[1][1].clone(),
            t,
        }
    }

    fn index(&self) -> BigInt {
        (&self.g1 * &self.g2).abs()
    }

    fn contains(&self, v: &[BigInt; 2]) -> bool {
        if self.g1.is_zero() || self.g2.is_zero() {
            return false;
        }
        if !v[0].is_multiple_of(&self.g1) {
            return false;
        }
        let s = &v[0] / &self.g1;
        (&v[1] - s * &self.h).is_multiple_of(&self.g2)
    }
}

fn smooth_part_is_unit(r: &Ring, g: &BigInt) -> bool {
    let mut v = g.abs();
    if v.is_zero() {
        return false;
    }
    for p in r.primes() {
        while v.is_multiple_of(p) {
            v /= p;
        }
    }
    v.is_one()
}

/// Clear denominators of a pair in Z[1/m]: integers (A, B) and the common
/// denominator L with (a, b) = (A, B) / L.
fn clear_denominators(a: &Elem, b: &Elem) -> (BigInt, BigInt, BigInt) {
    match (a, b) {
        (Elem::Frac(x, s), Elem::Frac(y, t)) => {
            let l = s.lcm(t);
            (x * (&l / s), y * (&l / t), l)
        }
        _ => panic!("expected fractions"),
    }
}

/// Whether (a, b) generates the unit ideal.
pub fn is_unimodular(r: &Ring, a: &Elem, b: &Elem) -> bool {
    match r.desc() {
        RingDesc::Integers => match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => x.gcd(y).is_one(),
            _ => false,
        },
        RingDesc::ModN(n) => match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => x.gcd(y).gcd(n).is_one(),
            _ => false,
        },
        RingDesc::LocalizedIntegers(_) => {
            let (x, y, _) = clear_denominators(a, b);
            smooth_part_is_unit(r, &x.gcd(&y))
        }
        RingDesc::QuadraticOrder { .. } => QuadIdeal::new(r, a, b).index().is_one(),
    }
}

/// Coefficients (s, t) with s·a + t·b = 1.
pub fn bezout_coeffs(r: &Ring, a: &Elem, b: &Elem) -> Result<(Elem, Elem)> {
    let fail = || Error::NotUnimodular(format!("{a},{b}"));
    if !is_unimodular(r, a, b) {
        return Err(fail());
    }
    let out = match r.desc() {
        RingDesc::Integers => {
            let (Elem::Int(x), Elem::Int(y)) = (a, b) else { unreachable!() };
            let g = x.extended_gcd(y);
            let sign = if g.gcd.is_negative() { -1 } else { 1 };
            (Elem::Int(g.x * sign), Elem::Int(g.y * sign))
        }
        RingDesc::ModN(n) => {
            let (Elem::Int(x), Elem::Int(y)) = (a, b) else { unreachable!() };
            let g = x.extended_gcd(y);
            let z = g.gcd.extended_gcd(n).x;
            (r.from_int(g.x * &z), r.from_int(g.y * &z))
        }
        RingDesc::LocalizedIntegers(_) => {
            let (x, y, l) = clear_denominators(a, b);
            let g = x.extended_gcd(&y);
            let gi = r.inv(&r.from_int(g.gcd.clone()))?;
            let l = r.from_int(l);
            (
                r.mul(&r.mul(&r.from_int(g.x), &l), &gi),
                r.mul(&r.mul(&r.from_int(g.y), &l), &gi),
            )
        }
        RingDesc::QuadraticOrder { .. } => {
            let id = QuadIdeal::new(r, a, b);
            let s0 = id.g1.clone();
            let s1 = -(&id.g1 * &id.h * &id.g2);
            let c: Vec<BigInt> = (0..4).map(|j| &s0 * &id.t[0][j] + &s1 * &id.t[1][j]).collect();
            (
                Elem::Quad(c[0].clone(), c[1].clone()),
                Elem::Quad(c[2].clone(), c[3].clone()),
            )
        }
    };
    debug_assert!(r.is_one(&r.add(&r.mul(&out.0, a), &r.mul(&out.1, b))));
    Ok(out)
}

fn int_sign_rule(a: BigInt, b: BigInt) -> (BigInt, BigInt) {
    if b.is_negative() || (b.is_zero() && a.is_negative()) {
        (-a, -b)
    } else {
        (a, b)
    }
}

/// Canonical representative of the unit orbit of a unimodular row.
pub fn canonical_vertex(r: &Ring, a: &Elem, b: &Elem) -> Result<Vertex> {
    if !r.contains(a) || !r.contains(b) {
        return Err(Error::RingMismatch);
    }
    if !is_unimodular(r, a, b) {
        return Err(Error::NotUnimodular(format!("{a},{b}")));
    }
    Ok(match r.desc() {
        RingDesc::Integers => {
            let (Elem::Int(x), Elem::Int(y)) = (a, b) else { unreachable!() };
            let (x, y) = int_sign_rule(x.clone(), y.clone());
            Vertex { a: Elem::Int(x), b: Elem::Int(y) }
        }
        RingDesc::ModN(_) => {
            let mut best: Option<(Elem, Elem)> = None;
            for u in r.enumerate_units(HeightBound::new(0, 0)) {
                let cand = (r.mul(&u, a), r.mul(&u, b));
                if best.as_ref().is_none_or(|bst| cand < *bst) {
                    best = Some(cand);
                }
            }
            let (a, b) = best.unwrap();
            Vertex { a, b }
        }
        RingDesc::LocalizedIntegers(_) => {
            let (x, y, _) = clear_denominators(a, b);
            let g = x.gcd(&y);
            let (x, y) = int_sign_rule(x / &g, y / &g);
            Vertex { a: r.from_int(x), b: r.from_int(y) }
        }
        RingDesc::QuadraticOrder { .. } => {
            let mut best: Option<(Elem, Elem)> = None;
            for u in r.enumerate_units(HeightBound::new(0, 0)) {
                // compare (b, a)
                let cand = (r.mul(&u, b), r.mul(&u, a));
                if best.as_ref().is_none_or(|bst| cand > *bst) {
                    best = Some(cand);
                }
            }
            let (b, a) = best.unwrap();
            Vertex { a, b }
        }
    })
}

pub fn infinity(r: &Ring) -> Vertex {
    Vertex { a: r.one(), b: r.zero() }
}

pub fn zero_vertex(r: &Ring) -> Vertex {
    Vertex { a: r.zero(), b: r.one() }
}

/// The vertex [a:1].
pub fn plus(r: &Ring, a: &Elem) -> Vertex {
    canonical_vertex(r, a, &r.one()).expect("[a:1] is unimodular")
}

/// The vertex [1:a].
pub fn minus(r: &Ring, a: &Elem) -> Vertex {
    canonical_vertex(r, &r.one(), a).expect("[1:a] is unimodular")
}

/// Right action of a matrix on a vertex.
pub fn act(r: &Ring, v: &Vertex, x: &Mat2) -> Result<Vertex> {
    let det = x.det(r);
    if !r.is_unit(&det) {
        return Err(Error::NonUnitDeterminant(det.to_string()));
    }
    let (a, b) = x.apply_row(v.row(), r);
    canonical_vertex(r, &a, &b)
}

/// An SL2 matrix whose first row is the canonical representative of `v`, so
/// that infinity · complete_row(v) = v.
pub fn complete_row(r: &Ring, v: &Vertex) -> Result<Mat2> {
    let (a, b) = (&v.a, &v.b);
    let (c, d) = match r.desc() {
        RingDesc::Integers | RingDesc::LocalizedIntegers(_) => {
            let (x, y) = match (a, b) {
                (Elem::Int(x), Elem::Int(y)) => (x.clone(), y.clone()),
                (Elem::Frac(x, _), Elem::Frac(y, _)) => (x.clone(), y.clone()),
                _ => return Err(Error::RingMismatch),
            };
            let (c, d) = int_completion(&x, &y)?;
            (r.from_int(c), r.from_int(d))
        }
        RingDesc::ModN(n) => {
            let (s, t) = bezout_coeffs(r, a, b)?;
            let (c0, d0) = (r.neg(&t), s);
            let mut best: Option<(Elem, Elem)> = None;
            let mut k = BigInt::zero();
            while &k < n {
                let kk = r.from_int(k.clone());
                let cand = (r.add(&c0, &r.mul(&kk, a)), r.add(&d0, &r.mul(&kk, b)));
                if best.as_ref().is_none_or(|bst| cand < *bst) {
                    best = Some(cand);
                }
                k += 1;
            }
            best.unwrap()
        }
        RingDesc::QuadraticOrder { .. } => {
            let (s, t) = bezout_coeffs(r, a, b)?;
            (r.neg(&t), s)
        }
    };
    let m = Mat2::new(a.clone(), b.clone(), c, d);
    debug_assert!(r.is_one(&m.det(r)));
    Ok(m)
}

/// Second row (c, d) with x d - y c = 1, c reduced into [0, |x|).
fn int_completion(x: &BigInt, y: &BigInt) -> Result<(BigInt, BigInt)> {
    let g = x.extended_gcd(y);
    if !g.gcd.abs().is_one() {
        return Err(Error::NotUnimodular(format!("{x},{y}")));
    }
    let sign = g.gcd.signum();
    // x (s) + y (t) = 1  =>  d = s, c = -t
    let (mut c, mut d) = (-(g.y * &sign), g.x * &sign);
    if x.is_zero() {
        // y = ±1: c = -1/y, d free; take d = 0
        c = -y.clone();
        d = BigInt::zero();
    } else {
        let ax = x.abs();
        let k = c.div_floor(&ax);
        // shift by k·(x, y)·sign(x) keeps the determinant
        let step = if x.is_negative() { -k.clone() } else { k.clone() };
        c -= &step * x;
        d -= &step * y;
    }
    Ok((c, d))
}

/// The point a/b of the fraction field, for domains.
pub fn bezout_point(r: &Ring, v: &Vertex) -> Result<ProjPoint> {
    if !r.is_domain() {
        return Err(Error::NotADomain(r.spec()));
    }
    if r.is_zero(&v.b) {
        return Ok(ProjPoint::Infinity);
    }
    Ok(match (&v.a, &v.b) {
        (Elem::Int(x), Elem::Int(y)) => match r.desc() {
            RingDesc::ModN(_) => {
                let yi = r.inv(&v.b)?;
                let Elem::Int(q) = r.mul(&v.a, &yi) else { unreachable!() };
                let _ = (x, y);
                ProjPoint::Residue(q)
            }
            _ => ProjPoint::Rational(BigRational::new(x.clone(), y.clone())),
        },
        (Elem::Frac(x, s), Elem::Frac(y, t)) => {
            ProjPoint::Rational(BigRational::new(x * t, y * s))
        }
        (Elem::Quad(..), Elem::Quad(..)) => {
            let n = r.norm(&v.b).unwrap();
            let Elem::Quad(px, py) = r.mul(&v.a, &r.conj(&v.b)) else { unreachable!() };
            ProjPoint::Quadratic(
                BigRational::new(px, n.clone()),
                BigRational::new(py, n),
            )
        }
        _ => return Err(Error::RingMismatch),
    })
}

/// Inverse of [`bezout_point`]: the vertex whose Bezout point is `p`.
pub fn from_bezout_point(r: &Ring, p: &ProjPoint) -> Result<Vertex> {
    let bad = || Error::NotABezoutPoint(p.to_string());
    match (p, r.desc()) {
        (ProjPoint::Infinity, _) => Ok(infinity(r)),
        (ProjPoint::Residue(q), RingDesc::ModN(_)) => Ok(plus(r, &r.from_int(q.clone()))),
        (ProjPoint::Rational(q), RingDesc::Integers) => {
            canonical_vertex(r, &Elem::Int(q.numer().clone()), &Elem::Int(q.denom().clone()))
        }
        (ProjPoint::Rational(q), RingDesc::LocalizedIntegers(_)) => canonical_vertex(
            r,
            &r.from_int(q.numer().clone()),
            &r.from_int(q.denom().clone()),
        ),
        (ProjPoint::Rational(q), RingDesc::QuadraticOrder { .. }) => {
            let zero = BigRational::zero();
            from_bezout_point(r, &ProjPoint::Quadratic(q.clone(), zero))
        }
        (ProjPoint::Quadratic(x, y), RingDesc::QuadraticOrder { .. }) => {
            let den = x.denom().lcm(y.denom());
            let a = Elem::Quad(
                x.numer() * (&den / x.denom()),
                y.numer() * (&den / y.denom()),
            );
            let b = r.from_int(den);
            let id = QuadIdeal::new(r, &a, &b);
            let idx = id.index();
            let gen = r
                .elements_of_norm(&idx)
                .into_iter()
                .find(|c| id.contains(&quad_vec(r, c)))
                .ok_or_else(bad)?;
            let a2 = exact_quad_div(r, &a, &gen).ok_or_else(bad)?;
            let b2 = exact_quad_div(r, &b, &gen).ok_or_else(bad)?;
            canonical_vertex(r, &a2, &b2)
        }
        _ => Err(Error::RingMismatch),
    }
}

fn exact_quad_div(r: &Ring, a: &Elem, c: &Elem) -> Option<Elem> {
    let n = r.norm(c)?;
    let Elem::Quad(x, y) = r.mul(a, &r.conj(c)) else { return None };
    if x.is_multiple_of(&n) && y.is_multiple_of(&n) {
        Some(Elem::Quad(x / &n, y / &n))
    } else {
        None
    }
}

/// Parse `[a:b]`, `inf`, a fraction `p/q` (over Z) or an element `a` meaning [a:1].
pub fn parse_vertex(r: &Ring, s: &str) -> Result<Vertex> {
    let s = s.trim();
    if s == "inf" || s == "∞" {
        return Ok(infinity(r));
    }
    if let Some(body) = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
        let (a, b) = body
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad vertex `{s}`")))?;
        return canonical_vertex(r, &r.parse_elem(a)?, &r.parse_elem(b)?);
    }
    if matches!(r.desc(), RingDesc::Integers) {
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(s.into()))?;
            if q.is_zero() {
                return Ok(infinity(r));
            }
            return from_bezout_point(r, &ProjPoint::Rational(BigRational::new(p, q)));
        }
    }
    Ok(plus(r, &r.parse_elem(s)?))
}

/// Human label: the Bezout point when the ring is a domain, otherwise `[a:b]`.
pub fn vertex_label(r: &Ring, v: &Vertex) -> String {
    match bezout_point(r, v) {
        Ok(p) if !matches!(r.desc(), RingDesc::ModN(_)) => p.to_string(),
        _ => {
            if r.is_zero(&v.b) {
                "inf".into()
            } else {
                v.to_string()
            }
        }
    }
}
