//! 2x2 matrices over a [`Ring`] and the named generators E, S, D, W, E12, E21.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// Row-major `[[a, b], [c, d]]`. Rows act on the right of row vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub m: [Elem; 4],
}

impl Mat2 {
    pub fn new(a: Elem, b: Elem, c: Elem, d: Elem) -> Mat2 {
        Mat2 { m: [a, b, c, d] }
    }

    pub fn from_i64(r: &Ring, v: [i64; 4]) -> Mat2 {
        Mat2::new(r.from_i64(v[0]), r.from_i64(v[1]), r.from_i64(v[2]), r.from_i64(v[3]))
    }

    pub fn identity(r: &Ring) -> Mat2 {
        Mat2::from_i64(r, [1, 0, 0, 1])
    }

    /// E(a) = [[a, 1], [-1, 0]].
    pub fn e(r: &Ring, a: &Elem) -> Mat2 {
        Mat2::new(a.clone(), r.one(), r.from_i64(-1), r.zero())
    }

    /// S(a) = [[a, 1], [1, 0]] (determinant -1).
    pub fn s(r: &Ring, a: &Elem) -> Mat2 {
        Mat2::new(a.clone(), r.one(), r.one(), r.zero())
    }

    /// D(u) = diag(u, u^-1).
    pub fn d(r: &Ring, u: &Elem) -> Result<Mat2> {
        Ok(Mat2::new(u.clone(), r.zero(), r.zero(), r.inv(u)?))
    }

    pub fn e12(r: &Ring, a: &Elem) -> Mat2 {
        Mat2::new(r.one(), a.clone(), r.zero(), r.one())
    }

    pub fn e21(r: &Ring, a: &Elem) -> Mat2 {
        Mat2::new(r.one(), r.zero(), a.clone(), r.one())
    }

    /// W = E(0).
    pub fn w(r: &Ring) -> Mat2 {
        Mat2::e(r, &r.zero())
    }

    /// Lower-triangular element [[u, 0], [b, u^-1]] of B.
    pub fn lower(r: &Ring, u: &Elem, b: &Elem) -> Result<Mat2> {
        Ok(Mat2::new(u.clone(), r.zero(), b.clone(), r.inv(u)?))
    }

    pub fn det(&self, r: &Ring) -> Elem {
        let [a, b, c, d] = &self.m;
        r.sub(&r.mul(a, d), &r.mul(b, c))
    }

    pub fn mul(&self, o: &Mat2, r: &Ring) -> Mat2 {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &o.m;
        Mat2::new(
            r.add(&r.mul(a, e), &r.mul(b, g)),
            r.add(&r.mul(a, f), &r.mul(b, h)),
            r.add(&r.mul(c, e), &r.mul(d, g)),
            r.add(&r.mul(c, f), &r.mul(d, h)),
        )
    }

    pub fn neg(&self, r: &Ring) -> Mat2 {
        let [a, b, c, d] = &self.m;
        Mat2::new(r.neg(a), r.neg(b), r.neg(c), r.neg(d))
    }

    pub fn inverse(&self, r: &Ring) -> Result<Mat2> {
        let det = self.det(r);
        let di = r
            .inv(&det)
            .map_err(|_| Error::NonUnitDeterminant(det.to_string()))?;
        let [a, b, c, d] = &self.m;
        Ok(Mat2::new(
            r.mul(d, &di),
            r.neg(&r.mul(b, &di)),
            r.neg(&r.mul(c, &di)),
            r.mul(a, &di),
        ))
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, row: (&Elem, &Elem), r: &Ring) -> (Elem, Elem) {
        let [a, b, c, d] = &self.m;
        (
            r.add(&r.mul(row.0, a), &r.mul(row.1, c)),
            r.add(&r.mul(row.0, b), &r.mul(row.1, d)),
        )
    }

    pub fn is_identity(&self, r: &Ring) -> bool {
        *self == Mat2::identity(r)
    }

    /// Membership in B: lower triangular with determinant 1.
    pub fn in_b(&self, r: &Ring) -> bool {
        r.is_zero(&self.m[1]) && r.is_one(&self.det(r))
    }

    pub fn parse(r: &Ring, s: &str) -> Result<Mat2> {
        let body = s.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(body);
        let parts: Vec<&str> = body.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!("matrix needs 4 entries: `{s}`")));
        }
        let mut v = Vec::new();
        for p in parts {
            v.push(r.parse_elem(p)?);
        }
        let mut it = v.into_iter();
        Ok(Mat2::new(
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
            it.next().unwrap(),
        ))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[{a},{b},{c},{d}]")
    }
}
