//! Generator words, the B-action, weak Euclidean algorithms, continued
//! fractions and E2-factorization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::projline::{self, bezout_point, from_bezout_point, is_unimodular, ProjPoint};
use crate::ring::{Elem, Ring, RingDesc};

pub const DEFAULT_MAX_STEPS: usize = 64;

/// One generator letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    E(Elem),
    S(Elem),
    D(Elem),
    E12(Elem),
    E21(Elem),
    W,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(a) => write!(f, "E({a})"),
            Gen::S(a) => write!(f, "S({a})"),
            Gen::D(a) => write!(f, "D({a})"),
            Gen::E12(a) => write!(f, "E12({a})"),
            Gen::E21(a) => write!(f, "E21({a})"),
            Gen::W => write!(f, "W"),
        }
    }
}

pub fn gen_matrix(r: &Ring, g: &Gen) -> Result<Mat2> {
    Ok(match g {
        Gen::E(a) => Mat2::e(r, a),
        Gen::S(a) => Mat2::s(r, a),
        Gen::D(u) => Mat2::d(r, u)?,
        Gen::E12(a) => Mat2::e12(r, a),
        Gen::E21(a) => Mat2::e21(r, a),
        Gen::W => Mat2::w(r),
    })
}

/// Product of the letters, left to right.
pub fn eval_gen(r: &Ring, word: &[Gen]) -> Result<Mat2> {
    let mut acc = Mat2::identity(r);
    for g in word {
        acc = acc.mul(&gen_matrix(r, g)?, r);
    }
    Ok(acc)
}

/// Product E(a_1)···E(a_k) of the given parameters, left to right.
pub fn eval_e(r: &Ring, letters: &[Elem]) -> Mat2 {
    let mut acc = Mat2::identity(r);
    for a in letters {
        acc = acc.mul(&Mat2::e(r, a), r);
    }
    acc
}

/// a·Z for Z = [[u, 0], [b, u^-1]] in B: the element a u^2 + b u.
pub fn act_b(r: &Ring, a: &Elem, z: &Mat2) -> Result<Elem> {
    if !z.in_b(r) {
        return Err(Error::NotInB(z.to_string()));
    }
    let u = &z.m[0];
    let b = &z.m[2];
    Ok(r.add(&r.mul(&r.mul(a, u), u), &r.mul(b, u)))
}

/// r_{-2} = a, r_{-1} = b, r_{k-2} = q_k r_{k-1} + r_k, ending in r_n = 0 with
/// r_{n-1} a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidTrace {
    pub a: Elem,
    pub b: Elem,
    pub quotients: Vec<Elem>,
    /// r_{-2}, r_{-1}, r_0, ..., r_n.
    pub remainders: Vec<Elem>,
    pub terminal_unit: Elem,
}

impl EuclidTrace {
    /// (a, b)·S(q_0)^-1···S(q_n)^-1, which should be (u, 0).
    pub fn reconstruct(&self, r: &Ring) -> (Elem, Elem) {
        let (mut x, mut y) = (self.a.clone(), self.b.clone());
        for q in &self.quotients {
            let nx = y.clone();
            let ny = r.sub(&x, &r.mul(q, &y));
            x = nx;
            y = ny;
        }
        (x, y)
    }
}

/// Nearest-integer quotient; ties keep the remainder floor division gives.
fn sym_divmod(x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    let (q, r) = x.div_mod_floor(y);
    if r.abs() * 2 > y.abs() {
        (q + 1, r - y)
    } else {
        (q, r)
    }
}

fn int_euclid(x: BigInt, y: BigInt, max_steps: usize) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let mut qs = Vec::new();
    let mut rs = vec![x, y];
    while !rs.last().unwrap().is_zero() {
        if qs.len() >= max_steps {
            return Err(Error::NoAlgorithmFound(format!("more than {max_steps} steps")));
        }
        let n = rs.len();
        let (q, rem) = sym_divmod(&rs[n - 2], &rs[n - 1]);
        qs.push(q);
        rs.push(rem);
    }
    Ok((qs, rs))
}

pub fn weak_euclid(r: &Ring, a: &Elem, b: &Elem, max_steps: usize) -> Result<EuclidTrace> {
    if !r.contains(a) || !r.contains(b) {
        return Err(Error::RingMismatch);
    }
    if !is_unimodular(r, a, b) {
        return Err(Error::NotUnimodular(format!("{a},{b}")));
    }
    let (quotients, remainders) = match r.desc() {
        RingDesc::Integers | RingDesc::ModN(_) => {
            let (Elem::Int(x), Elem::Int(y)) = (a, b) else { unreachable!() };
            let (qs, rs) = int_euclid(x.clone(), y.clone(), max_steps)?;
            let conv = |v: Vec<BigInt>| v.into_iter().map(|x| r.from_int(x)).collect::<Vec<_>>();
            (conv(qs), conv(rs))
        }
        RingDesc::LocalizedIntegers(_) => {
            let (Elem::Frac(x, s), Elem::Frac(y, t)) = (a, b) else { unreachable!() };
            let l = s.lcm(t);
            let (qs, rs) = int_euclid(x * (&l / s), y * (&l / t), max_steps)?;
            let li = r.inv(&r.from_int(l))?;
            (
                qs.into_iter().map(|q| r.from_int(q)).collect(),
                rs.into_iter().map(|x| r.mul(&r.from_int(x), &li)).collect(),
            )
        }
        RingDesc::QuadraticOrder { .. } => quad_euclid(r, a, b, max_steps)?,
    };
    let n = remainders.len();
    let terminal_unit = remainders[n - 2].clone();
    if !r.is_unit(&terminal_unit) {
        return Err(Error::NoAlgorithmFound(format!(
            "terminal remainder {terminal_unit} is not a unit"
        )));
    }
    Ok(EuclidTrace {
        a: a.clone(),
        b: b.clone(),
        quotients,
        remainders,
        terminal_unit,
    })
}

fn floor_ceil(q: &BigRational) -> [BigInt; 2] {
    [q.floor().to_integer(), q.ceil().to_integer()]
}

/// Greedy norm-decreasing division in an imaginary quadratic order.
fn quad_euclid(
    r: &Ring,
    a: &Elem,
    b: &Elem,
    max_steps: usize,
) -> Result<(Vec<Elem>, Vec<Elem>)> {
    let mut qs = Vec::new();
    let mut rs = vec![a.clone(), b.clone()];
    loop {
        let n = rs.len();
        let (x, y) = (&rs[n - 2], &rs[n - 1]);
        if r.is_zero(y) {
            return Ok((qs, rs));
        }
        if qs.len() >= max_steps {
            return Err(Error::NoAlgorithmFound(format!("more than {max_steps} steps")));
        }
        let ny = r.norm(y).unwrap();
        let Elem::Quad(px, py) = r.mul(x, &r.conj(y)) else { unreachable!() };
        let cx = floor_ceil(&BigRational::new(px, ny.clone()));
        let cy = floor_ceil(&BigRational::new(py, ny.clone()));
        let mut best: Option<(BigInt, Elem, Elem)> = None;
        for qx in &cx {
            for qy in &cy {
                let q = Elem::Quad(qx.clone(), qy.clone());
                let rem = r.sub(x, &r.mul(&q, y));
                let nr = r.norm(&rem).unwrap();
                let better = match &best {
                    None => true,
                    Some((bn, bq, _)) => nr < *bn || (nr == *bn && q < *bq),
                };
                if better {
                    best = Some((nr, q, rem));
                }
            }
        }
        let (nr, q, rem) = best.unwrap();
        if nr >= ny {
            return Err(Error::NoAlgorithmFound(format!(
                "no quotient reduces the norm of {x} modulo {y}"
            )));
        }
        qs.push(q);
        rs.push(rem);
    }
}

/// Digits (a_0, ..., a_n) with x = inf·S(a_n)···S(a_0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub digits: Vec<Elem>,
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.digits.split_first() {
            None => write!(f, "[]"),
            Some((a0, rest)) if rest.is_empty() => write!(f, "[{a0}]"),
            Some((a0, rest)) => {
                let tail: Vec<String> = rest.iter().map(|d| d.to_string()).collect();
                write!(f, "[{a0}; {}]", tail.join(", "))
            }
        }
    }
}

pub fn continued_fraction(r: &Ring, x: &ProjPoint, max_steps: usize) -> Result<ContinuedFraction> {
    let v = from_bezout_point(r, x)?;
    let t = weak_euclid(r, &v.a, &v.b, max_steps)?;
    Ok(ContinuedFraction {
        digits: t.quotients,
    })
}

/// The point inf·S(a_n)···S(a_0).
pub fn eval_continued_fraction(r: &Ring, digits: &[Elem]) -> Result<ProjPoint> {
    let mut m = Mat2::identity(r);
    for d in digits.iter().rev() {
        m = m.mul(&Mat2::s(r, d), r);
    }
    let (a, b) = m.apply_row((&r.one(), &r.zero()), r);
    bezout_point(r, &projline::canonical_vertex(r, &a, &b)?)
}

/// Letters a_1, ..., a_n of E-words with inf·E(a_n)···E(a_1) equal to
/// inf·S(b_n)···S(b_1), where b_i = (-1)^(i-1) a_i. Input and output are
/// indexed from the right, as a_1 first.
pub fn sign_bridge(r: &Ring, b: &[Elem]) -> Vec<Elem> {
    b.iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 0 { x.clone() } else { r.neg(x) })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// E-letters in left-to-right product order.
    pub word: Vec<Elem>,
    /// eval(word)·M^-1, an element of B.
    pub residual: Mat2,
}

/// Write M in SL2 as an E-word times an element of B.
pub fn ge2_factor(r: &Ring, m: &Mat2, max_steps: usize) -> Result<Factorization> {
    let det = m.det(r);
    if !r.is_one(&det) {
        return Err(Error::NonUnitDeterminant(det.to_string()));
    }
    let t = weak_euclid(r, &m.m[0], &m.m[1], max_steps)?;
    let mut word = sign_bridge(r, &t.quotients);
    word.reverse();
    let residual = eval_e(r, &word).mul(&m.inverse(r)?, r);
    if !residual.in_b(r) {
        return Err(Error::NotInB(residual.to_string()));
    }
    Ok(Factorization { word, residual })
}
