//! Commutative base rings and their elements.
//!
//! A [`Ring`] is a context object: elements ([`Elem`]) are plain payloads and
//! every operation goes through the ring that owns them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which ring, in the text grammar `Z`, `Z/<n>`, `Z[1/<m>]`, `quad(<d>)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingDesc {
    Integers,
    ModN(BigInt),
    LocalizedIntegers(BigInt),
    /// Ring of integers of Q(sqrt d), d < 0 squarefree. With `half_basis` the
    /// generator is (1 + sqrt d)/2.
    QuadraticOrder { d: BigInt, half_basis: bool },
}

impl fmt::Display for RingDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDesc::Integers => write!(f, "Z"),
            RingDesc::ModN(n) => write!(f, "Z/{n}"),
            RingDesc::LocalizedIntegers(m) => write!(f, "Z[1/{m}]"),
            RingDesc::QuadraticOrder { d, .. } => write!(f, "quad({d})"),
        }
    }
}

/// Ring element payload. Integers and residues use `Int`; `Frac(num, den)` is a
/// reduced fraction with positive smooth denominator; `Quad(x, y)` is x + y·t.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Frac(BigInt, BigInt),
    Quad(BigInt, BigInt),
}

impl Elem {
    fn rank(&self) -> u8 {
        match self {
            Elem::Int(_) => 0,
            Elem::Frac(..) => 1,
            Elem::Quad(..) => 2,
        }
    }

    pub fn int(v: impl Into<BigInt>) -> Elem {
        Elem::Int(v.into())
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Elem::Int(a), Elem::Int(b)) => a.cmp(b),
            (Elem::Frac(a, s), Elem::Frac(b, t)) => s.cmp(t).then_with(|| a.cmp(b)),
            (Elem::Quad(x1, y1), Elem::Quad(x2, y2)) => y1.cmp(y2).then_with(|| x1.cmp(x2)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(v) => write!(f, "{v}"),
            Elem::Frac(a, s) if s.is_one() => write!(f, "{a}"),
            Elem::Frac(a, s) => write!(f, "{a}/{s}"),
            Elem::Quad(x, y) => {
                if y.is_zero() {
                    return write!(f, "{x}");
                }
                let coeff = |y: &BigInt| -> String {
                    if y.abs().is_one() {
                        "t".to_string()
                    } else {
                        format!("{}*t", y.abs())
                    }
                };
                if x.is_zero() {
                    let sign = if y.is_negative() { "-" } else { "" };
                    write!(f, "{sign}{}", coeff(y))
                } else {
                    let sign = if y.is_negative() { "-" } else { "+" };
                    write!(f, "{x}{sign}{}", coeff(y))
                }
            }
        }
    }
}

/// Enumeration window for infinite rings. `elem_height` bounds numerators or
/// coordinates; `unit_exponent` bounds prime exponents of denominators and units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HeightBound {
    pub elem_height: u64,
    pub unit_exponent: u32,
}

impl HeightBound {
    pub fn new(elem_height: u64, unit_exponent: u32) -> Self {
        HeightBound {
            elem_height,
            unit_exponent,
        }
    }
}

impl Default for HeightBound {
    fn default() -> Self {
        HeightBound::new(3, 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    desc: RingDesc,
    /// Distinct primes of m for `Z[1/m]`.
    primes: Vec<BigInt>,
    /// t^2 = t + k in the half basis.
    k: BigInt,
}

fn parse_int(s: &str) -> Result<BigInt> {
    if s.is_empty() {
        return Err(Error::Parse("empty integer".into()));
    }
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer `{s}`")))
}

fn prime_factors(m: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut m = m.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if m.is_multiple_of(&p) {
            out.push(p.clone());
            while m.is_multiple_of(&p) {
                m /= &p;
            }
        }
        p += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}

fn is_squarefree(d: &BigInt) -> bool {
    let m = d.abs();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        if m.is_multiple_of(&(&p * &p)) {
            return false;
        }
        p += 1;
    }
    true
}

impl Ring {
    pub fn new(desc: RingDesc) -> Result<Ring> {
        let mut primes = Vec::new();
        let mut k = BigInt::zero();
        match &desc {
            RingDesc::Integers => {}
            RingDesc::ModN(n) => {
                if n < &BigInt::from(2) {
                    return Err(Error::UnsupportedRing(format!("Z/{n} needs n >= 2")));
                }
            }
            RingDesc::LocalizedIntegers(m) => {
                if m < &BigInt::from(2) {
                    return Err(Error::UnsupportedRing(format!("Z[1/{m}] needs m >= 2")));
                }
                primes = prime_factors(m);
            }
            RingDesc::QuadraticOrder { d, half_basis } => {
                if d.is_zero() || d.is_one() || !is_squarefree(d) {
                    return Err(Error::UnsupportedRing(format!(
                        "quad({d}) needs squarefree d other than 0, 1"
                    )));
                }
                if d.is_positive() {
                    return Err(Error::UnsupportedRing(format!(
                        "quad({d}): real quadratic orders are not supported"
                    )));
                }
                let expect_half = d.mod_floor(&BigInt::from(4)) == BigInt::one();
                if *half_basis != expect_half {
                    return Err(Error::UnsupportedRing(format!(
                        "quad({d}) requires half_basis = {expect_half}"
                    )));
                }
                if *half_basis {
                    k = (d - 1) / 4;
                }
            }
        }
        Ok(Ring { desc, primes, k })
    }

    pub fn integers() -> Ring {
        Ring::new(RingDesc::Integers).unwrap()
    }

    pub fn mod_n(n: u64) -> Result<Ring> {
        Ring::new(RingDesc::ModN(n.into()))
    }

    pub fn localized(m: u64) -> Result<Ring> {
        Ring::new(RingDesc::LocalizedIntegers(m.into()))
    }

    pub fn quadratic(d: i64) -> Result<Ring> {
        let d = BigInt::from(d);
        let half_basis = d.mod_floor(&BigInt::from(4)) == BigInt::one();
        Ring::new(RingDesc::QuadraticOrder { d, half_basis })
    }

    /// Parse the ring grammar. Syntax problems are `Parse`, bad parameters are
    /// `UnsupportedRing`.
    pub fn parse(spec: &str) -> Result<Ring> {
        if spec == "Z" {
            return Ok(Ring::integers());
        }
        if let Some(rest) = spec.strip_prefix("Z/") {
            return Ring::new(RingDesc::ModN(parse_int(rest)?));
        }
        if let Some(rest) = spec.strip_prefix("Z[1/").and_then(|r| r.strip_suffix(']')) {
            return Ring::new(RingDesc::LocalizedIntegers(parse_int(rest)?));
        }
        if let Some(rest) = spec.strip_prefix("quad(").and_then(|r| r.strip_suffix(')')) {
            let d = parse_int(rest)?;
            let half_basis = d.mod_floor(&BigInt::from(4)) == BigInt::one();
            return Ring::new(RingDesc::QuadraticOrder { d, half_basis });
        }
        Err(Error::Parse(format!("unknown ring `{spec}`")))
    }

    pub fn desc(&self) -> &RingDesc {
        &self.desc
    }

    pub fn spec(&self) -> String {
        self.desc.to_string()
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        match &self.desc {
            RingDesc::ModN(n) => Some(n),
            _ => None,
        }
    }

    pub fn primes(&self) -> &[BigInt] {
        &self.primes
    }

    /// `(d, half_basis)` for quadratic orders.
    pub fn quad_params(&self) -> Option<(&BigInt, bool)> {
        match &self.desc {
            RingDesc::QuadraticOrder { d, half_basis } => Some((d, *half_basis)),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.desc, RingDesc::ModN(_))
    }

    pub fn is_domain(&self) -> bool {
        match &self.desc {
            RingDesc::ModN(n) => {
                let ps = prime_factors(n);
                ps.len() == 1 && &ps[0] == n
            }
            _ => true,
        }
    }

    /// Whether the whole unit group is listed by `enumerate_units`.
    pub fn units_complete(&self) -> bool {
        !matches!(self.desc, RingDesc::LocalizedIntegers(_))
    }

    // ---- construction -------------------------------------------------

    pub fn zero(&self) -> Elem {
        self.from_int(BigInt::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_int(BigInt::one())
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_int(BigInt::from(v))
    }

    pub fn from_int(&self, v: BigInt) -> Elem {
        match &self.desc {
            RingDesc::Integers => Elem::Int(v),
            RingDesc::ModN(n) => Elem::Int(v.mod_floor(n)),
            RingDesc::LocalizedIntegers(_) => Elem::Frac(v, BigInt::one()),
            RingDesc::QuadraticOrder { .. } => Elem::Quad(v, BigInt::zero()),
        }
    }

    /// The generator t of a quadratic order.
    pub fn theta(&self) -> Option<Elem> {
        self.quad_params()
            .map(|_| Elem::Quad(BigInt::zero(), BigInt::one()))
    }

    /// Build `num/den` in `Z[1/m]`; fails if the reduced denominator is not smooth.
    pub fn fraction(&self, num: BigInt, den: BigInt) -> Result<Elem> {
        if !matches!(self.desc, RingDesc::LocalizedIntegers(_)) {
            return Err(Error::RingMismatch);
        }
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        let e = normalize_frac(num, den);
        if let Elem::Frac(_, s) = &e {
            if !self.is_smooth(s) {
                return Err(Error::Parse(format!("{e} is not in {}", self.spec())));
            }
        }
        Ok(e)
    }

    fn is_smooth(&self, v: &BigInt) -> bool {
        self.strip_primes(v).is_one()
    }

    /// |v| with every prime of m divided out.
    fn strip_primes(&self, v: &BigInt) -> BigInt {
        let mut v = v.abs();
        if v.is_zero() {
            return v;
        }
        for p in &self.primes {
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        v
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (&self.desc, e) {
            (RingDesc::Integers, Elem::Int(_)) => true,
            (RingDesc::ModN(n), Elem::Int(v)) => !v.is_negative() && v < n,
            (RingDesc::LocalizedIntegers(_), Elem::Frac(a, s)) => {
                s.is_positive() && a.gcd(s).is_one() && self.is_smooth(s)
            }
            (RingDesc::QuadraticOrder { .. }, Elem::Quad(..)) => true,
            _ => false,
        }
    }

    // ---- arithmetic -----------------------------------------------------

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => self.from_int(x + y),
            (Elem::Frac(x, s), Elem::Frac(y, t)) => normalize_frac(x * t + y * s, s * t),
            (Elem::Quad(x1, y1), Elem::Quad(x2, y2)) => Elem::Quad(x1 + x2, y1 + y2),
            _ => panic!("ring mismatch in add"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Int(x) => self.from_int(-x),
            Elem::Frac(x, s) => Elem::Frac(-x, s.clone()),
            Elem::Quad(x, y) => Elem::Quad(-x, -y),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Int(x), Elem::Int(y)) => self.from_int(x * y),
            (Elem::Frac(x, s), Elem::Frac(y, t)) => normalize_frac(x * y, s * t),
            (Elem::Quad(x1, y1), Elem::Quad(x2, y2)) => {
                let (d, half) = self.quad_params().expect("quadratic ring");
                let yy = y1 * y2;
                let cross = x1 * y2 + x2 * y1;
                if half {
                    Elem::Quad(x1 * x2 + &self.k * &yy, cross + yy)
                } else {
                    Elem::Quad(x1 * x2 + d * &yy, cross)
                }
            }
            _ => panic!("ring mismatch in mul"),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) | Elem::Frac(x, _) => x.is_zero(),
            Elem::Quad(x, y) => x.is_zero() && y.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    /// Norm x^2 - d y^2 (or x^2 + xy - k y^2 in the half basis).
    pub fn norm(&self, a: &Elem) -> Option<BigInt> {
        match a {
            Elem::Quad(x, y) => {
                let (d, half) = self.quad_params()?;
                Some(if half {
                    x * x + x * y - &self.k * y * y
                } else {
                    x * x - d * y * y
                })
            }
            _ => None,
        }
    }

    pub fn conj(&self, a: &Elem) -> Elem {
        match a {
            Elem::Quad(x, y) => {
                let (_, half) = self.quad_params().expect("quadratic ring");
                if half {
                    Elem::Quad(x + y, -y)
                } else {
                    Elem::Quad(x.clone(), -y)
                }
            }
            other => other.clone(),
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match (&self.desc, a) {
            (RingDesc::Integers, Elem::Int(x)) => x.abs().is_one(),
            (RingDesc::ModN(n), Elem::Int(x)) => x.gcd(n).is_one(),
            (RingDesc::LocalizedIntegers(_), Elem::Frac(x, _)) => {
                !x.is_zero() && self.strip_primes(x).is_one()
            }
            (RingDesc::QuadraticOrder { .. }, Elem::Quad(..)) => {
                self.norm(a).map(|n| n.abs().is_one()).unwrap_or(false)
            }
            _ => false,
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit(a.to_string()));
        }
        Ok(match a {
            Elem::Int(x) => match &self.desc {
                RingDesc::ModN(n) => {
                    let g = x.extended_gcd(n);
                    self.from_int(g.x)
                }
                _ => Elem::Int(x.clone()),
            },
            Elem::Frac(x, s) => {
                let sign = if x.is_negative() { -BigInt::one() } else { BigInt::one() };
                Elem::Frac(sign * s, x.abs())
            }
            Elem::Quad(..) => {
                let n = self.norm(a).unwrap();
                let c = self.conj(a);
                if n.is_one() {
                    c
                } else {
                    self.neg(&c)
                }
            }
        })
    }

    /// u^k for a unit u and any integer k.
    pub fn pow(&self, u: &Elem, k: i64) -> Result<Elem> {
        let base = if k < 0 { self.inv(u)? } else { u.clone() };
        let mut acc = self.one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// Exact division a / b when b is a unit.
    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checked binary operation with membership validation.
    pub fn arith(&self, op: ArithOp, a: &Elem, b: &Elem) -> Result<Elem> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::RingMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    // ---- text ---------------------------------------------------------

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match &self.desc {
            RingDesc::Integers | RingDesc::ModN(_) => Ok(self.from_int(parse_int(&s)?)),
            RingDesc::LocalizedIntegers(_) => match s.split_once('/') {
                Some((a, b)) => self.fraction(parse_int(a)?, parse_int(b)?),
                None => Ok(self.from_int(parse_int(&s)?)),
            },
            RingDesc::QuadraticOrder { .. } => parse_quad(&s),
        }
    }

    // ---- enumeration ----------------------------------------------------

    /// All elements inside the bound, in element order.
    pub fn enumerate_elements(&self, bound: HeightBound) -> Vec<Elem> {
        let h = BigInt::from(bound.elem_height);
        let range = || num_iter(-h.clone(), h.clone());
        let mut out: Vec<Elem> = match &self.desc {
            RingDesc::Integers => range().map(Elem::Int).collect(),
            RingDesc::ModN(n) => num_iter(BigInt::zero(), n - 1).map(Elem::Int).collect(),
            RingDesc::LocalizedIntegers(m) => {
                let mut dens = vec![BigInt::one()];
                for p in &self.primes {
                    let mut v = 0u32;
                    let mut mm = m.clone();
                    while mm.is_multiple_of(p) {
                        mm /= p;
                        v += 1;
                    }
                    let mut next = Vec::new();
                    for d in &dens {
                        let mut q = d.clone();
                        for _ in 0..=(v * bound.unit_exponent) {
                            next.push(q.clone());
                            q *= p;
                        }
                    }
                    dens = next;
                }
                let mut out = Vec::new();
                for s in &dens {
                    for a in range() {
                        if a.gcd(s).is_one() && !(a.is_zero() && !s.is_one()) {
                            out.push(Elem::Frac(a, s.clone()));
                        }
                    }
                }
                out
            }
            RingDesc::QuadraticOrder { .. } => {
                let mut out = Vec::new();
                for y in range() {
                    for x in range() {
                        out.push(Elem::Quad(x, y.clone()));
                    }
                }
                out
            }
        };
        out.sort();
        out.dedup();
        out
    }

    /// Units inside the bound (the full unit group when it is finite), in
    /// element order.
    pub fn enumerate_units(&self, bound: HeightBound) -> Vec<Elem> {
        let mut out: Vec<Elem> = match &self.desc {
            RingDesc::Integers => vec![self.from_i64(-1), self.one()],
            RingDesc::ModN(_) => self
                .enumerate_elements(bound)
                .into_iter()
                .filter(|a| self.is_unit(a))
                .collect(),
            RingDesc::LocalizedIntegers(_) => {
                let e = bound.unit_exponent as i64;
                let mut acc = vec![self.one()];
                for p in &self.primes {
                    let pe = self.from_int(p.clone());
                    let mut next = Vec::new();
                    for a in &acc {
                        for k in -e..=e {
                            next.push(self.mul(a, &self.pow(&pe, k).unwrap()));
                        }
                    }
                    acc = next;
                }
                let negs: Vec<Elem> = acc.iter().map(|a| self.neg(a)).collect();
                acc.extend(negs);
                acc
            }
            RingDesc::QuadraticOrder { .. } => self.elements_of_norm(&BigInt::one()),
        };
        out.sort();
        out.dedup();
        out
    }

    /// All elements of a quadratic order with the given positive norm.
    pub fn elements_of_norm(&self, n: &BigInt) -> Vec<Elem> {
        let Some((d, half)) = self.quad_params() else {
            return Vec::new();
        };
        let dd = d.abs();
        let mut out = Vec::new();
        if n.is_negative() {
            return out;
        }
        // half: 4n = (2x + y)^2 + |d| y^2, otherwise n = x^2 + |d| y^2
        let target = if half { n * 4 } else { n.clone() };
        let ymax = (&target / &dd).sqrt();
        for y in num_iter(-ymax.clone(), ymax) {
            let rest = &target - &dd * &y * &y;
            if rest.is_negative() {
                continue;
            }
            let s = rest.sqrt();
            if &s * &s != rest {
                continue;
            }
            for sv in [s.clone(), -s.clone()] {
                if half {
                    let twice = &sv - &y;
                    if twice.is_even() {
                        out.push(Elem::Quad(twice / 2, y.clone()));
                    }
                } else {
                    out.push(Elem::Quad(sv, y.clone()));
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Integer coordinates of a quadratic element in the basis {1, t}.
    pub fn quad_coords(&self, a: &Elem) -> Option<(BigInt, BigInt)> {
        match a {
            Elem::Quad(x, y) => Some((x.clone(), y.clone())),
            _ => None,
        }
    }

    /// Coordinates of a * t.
    pub(crate) fn times_theta(&self, a: &Elem) -> Elem {
        self.mul(a, &self.theta().expect("quadratic ring"))
    }
}

fn num_iter(lo: BigInt, hi: BigInt) -> impl Iterator<Item = BigInt> {
    let mut cur = lo;
    std::iter::from_fn(move || {
        if cur > hi {
            None
        } else {
            let v = cur.clone();
            cur += 1;
            Some(v)
        }
    })
}

fn normalize_frac(num: BigInt, den: BigInt) -> Elem {
    if num.is_zero() {
        return Elem::Frac(BigInt::zero(), BigInt::one());
    }
    let g = num.gcd(&den);
    let (mut a, mut s) = (num / &g, den / &g);
    if s.is_negative() {
        a = -a;
        s = -s;
    }
    Elem::Frac(a, s)
}

fn parse_quad(s: &str) -> Result<Elem> {
    if s.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut x = BigInt::zero();
    let mut y = BigInt::zero();
    let bytes: Vec<char> = s.chars().collect();
    let mut start = 0;
    let mut terms = Vec::new();
    for i in 1..=bytes.len() {
        if i == bytes.len() || ((bytes[i] == '+' || bytes[i] == '-') && bytes[i - 1] != '*') {
            terms.push(bytes[start..i].iter().collect::<String>());
            start = i;
        }
    }
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b.to_string()),
            None => (1, t.strip_prefix('+').unwrap_or(&t).to_string()),
        };
        if let Some(c) = body.strip_suffix('t') {
            let c = c.strip_suffix('*').unwrap_or(c);
            let v = if c.is_empty() { BigInt::one() } else { parse_int(c)? };
            y += v * sign;
        } else {
            x += parse_int(&body)? * sign;
        }
    }
    Ok(Elem::Quad(x, y))
}

/// Convenience: small integer view of an element, if it is one.
pub fn as_i64(e: &Elem) -> Option<i64> {
    match e {
        Elem::Int(v) => v.to_i64(),
        Elem::Frac(v, s) if s.is_one() => v.to_i64(),
        Elem::Quad(x, y) if y.is_zero() => x.to_i64(),
        _ => None,
    }
}
