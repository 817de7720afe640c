//! Path words ⟨X, (a_1, ..., a_n)⟩: edge paths from inf·X described by E-letters,
//! their re-basing and concatenation, and the elementary homotopy moves.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::act_b;
use crate::graph::is_edge;
use crate::matrix::Mat2;
use crate::projline::{self, infinity, Vertex};
use crate::ring::{Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    pub base: Mat2,
    pub letters: Vec<Elem>,
}

impl PathWord {
    pub fn new(base: Mat2, letters: Vec<Elem>) -> PathWord {
        PathWord { base, letters }
    }

    pub fn trivial(r: &Ring) -> PathWord {
        PathWord::new(Mat2::identity(r), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// T_0 = X, T_i = E(a_i)·T_{i-1}.
    pub fn transforms(&self, r: &Ring) -> Vec<Mat2> {
        let mut out = vec![self.base.clone()];
        for a in &self.letters {
            let next = Mat2::e(r, a).mul(out.last().unwrap(), r);
            out.push(next);
        }
        out
    }

    pub fn terminal(&self, r: &Ring) -> Mat2 {
        self.transforms(r).pop().unwrap()
    }

    /// x_i = inf·T_i.
    pub fn vertices(&self, r: &Ring) -> Vec<Vertex> {
        let inf = infinity(r);
        self.transforms(r)
            .iter()
            .map(|t| projline::act(r, &inf, t).expect("SL2 image of a unimodular row"))
            .collect()
    }

    /// Loop at infinity: both the base and the terminal matrix lie in B.
    pub fn is_loop(&self, r: &Ring) -> bool {
        self.base.in_b(r) && self.terminal(r).in_b(r)
    }

    pub fn parse(r: &Ring, s: &str) -> Result<PathWord> {
        let (base, rest) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("path word needs `;`: `{s}`")))?;
        let base = match base.trim() {
            "I" | "1" => Mat2::identity(r),
            b => Mat2::parse(r, b)?,
        };
        let body = rest
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("letters need parentheses: `{rest}`")))?;
        let letters = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',').map(|a| r.parse_elem(a)).collect::<Result<_>>()?
        };
        Ok(PathWord::new(base, letters))
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.letters.iter().map(|a| a.to_string()).collect();
        write!(f, "{} ; ({})", self.base, l.join(","))
    }
}

/// The unique path word with base X through the given vertices.
pub fn word_from_path(r: &Ring, vs: &[Vertex], x: &Mat2) -> Result<PathWord> {
    let first = vs.first().ok_or(Error::BaseMismatch)?;
    if projline::act(r, &infinity(r), x)? != *first {
        return Err(Error::BaseMismatch);
    }
    let mut t = x.clone();
    let mut letters = Vec::new();
    for w in vs.windows(2) {
        if !is_edge(r, &w[0], &w[1]) {
            return Err(Error::NotAnEdge(w[0].to_string(), w[1].to_string()));
        }
        let (p, q) = t.inverse(r)?.apply_row(w[1].row(), r);
        let a = r
            .div(&p, &q)
            .map_err(|_| Error::NotAnEdge(w[0].to_string(), w[1].to_string()))?;
        t = Mat2::e(r, &a).mul(&t, r);
        letters.push(a);
    }
    Ok(PathWord::new(x.clone(), letters))
}

/// Re-express p with base Y, where X·Y^-1 must lie in B.
pub fn change_rep(r: &Ring, p: &PathWord, y: &Mat2) -> Result<PathWord> {
    let z = p.base.mul(&y.inverse(r)?, r);
    if !z.in_b(r) {
        return Err(Error::NotInB(z.to_string()));
    }
    let u = z.m[0].clone();
    let u2 = r.mul(&u, &u);
    let ui2 = r.inv(&u2)?;
    let mut letters = Vec::with_capacity(p.len());
    for (i, a) in p.letters.iter().enumerate() {
        letters.push(match i {
            0 => act_b(r, a, &z)?,
            i if i % 2 == 1 => r.mul(a, &ui2),
            _ => r.mul(a, &u2),
        });
    }
    Ok(PathWord::new(y.clone(), letters))
}

/// p followed by q, with q re-based onto the terminal matrix of p.
pub fn concat(r: &Ring, p: &PathWord, q: &PathWord) -> Result<PathWord> {
    let t = p.terminal(r);
    let z = q.base.mul(&t.inverse(r)?, r);
    if !z.in_b(r) {
        return Err(Error::NotComposable(format!(
            "{} does not start where {} ends",
            q, p
        )));
    }
    let q2 = change_rep(r, q, &t)?;
    let mut letters = p.letters.clone();
    letters.extend(q2.letters);
    Ok(PathWord::new(p.base.clone(), letters))
}

/// Elementary moves. `index` is the 0-based position of the pivot letter for
/// contractions and of the letter being expanded for expansions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// (.., a, 0, b, ..) -> (.., a + b, ..); trailing (.., a, 0) -> (..).
    Contract1 { index: usize },
    /// Pivot u a unit: (.., a, u, b, c, d, ..) -> (.., a - u^-1, u^2 b - u, u^-2 c, u^2 d, ..);
    /// trailing (.., a, u) -> (.., a - u^-1).
    Contract2 { index: usize },
    /// Inverse of Contract1: (.., c, ..) -> (.., a, 0, c - a, ..), or append (a, 0)
    /// when index = n.
    Expand1 { index: usize, param: Elem },
    /// Inverse of Contract2 with pivot u.
    Expand2 { index: usize, param: Elem },
}

impl Move {
    pub fn kind(&self) -> &'static str {
        match self {
            Move::Contract1 { .. } => "contract1",
            Move::Contract2 { .. } => "contract2",
            Move::Expand1 { .. } => "expand1",
            Move::Expand2 { .. } => "expand2",
        }
    }

    pub fn index(&self) -> usize {
        match self {
            Move::Contract1 { index }
            | Move::Contract2 { index }
            | Move::Expand1 { index, .. }
            | Move::Expand2 { index, .. } => *index,
        }
    }

    pub fn param(&self) -> Option<&Elem> {
        match self {
            Move::Expand1 { param, .. } | Move::Expand2 { param, .. } => Some(param),
            _ => None,
        }
    }
}

fn not_applicable(m: &Move, why: &str) -> Error {
    Error::MoveNotApplicable(format!("{} at {}: {why}", m.kind(), m.index()))
}

/// u^-2, u^2, u^-2, ... applied to the tail.
fn scale_alternating(r: &Ring, tail: &[Elem], u: &Elem) -> Result<Vec<Elem>> {
    let u2 = r.mul(u, u);
    let ui2 = r.inv(&u2)?;
    Ok(tail
        .iter()
        .enumerate()
        .map(|(i, a)| r.mul(a, if i % 2 == 0 { &ui2 } else { &u2 }))
        .collect())
}

pub fn apply_move(r: &Ring, p: &PathWord, m: &Move) -> Result<PathWord> {
    let l = &p.letters;
    let n = l.len();
    let mut out: Vec<Elem> = Vec::with_capacity(n + 3);
    match m {
        Move::Contract1 { index: j } => {
            let j = *j;
            if j == 0 || j >= n || !r.is_zero(&l[j]) {
                return Err(not_applicable(m, "needs a zero letter after position 0"));
            }
            out.extend_from_slice(&l[..j - 1]);
            if j + 1 < n {
                out.push(r.add(&l[j - 1], &l[j + 1]));
                out.extend_from_slice(&l[j + 2..]);
            }
        }
        Move::Contract2 { index: j } => {
            let j = *j;
            if j == 0 || j >= n || !r.is_unit(&l[j]) {
                return Err(not_applicable(m, "needs a unit letter after position 0"));
            }
            let u = &l[j];
            let ui = r.inv(u)?;
            out.extend_from_slice(&l[..j - 1]);
            out.push(r.sub(&l[j - 1], &ui));
            if j + 1 < n {
                out.push(r.sub(&r.mul(&r.mul(u, u), &l[j + 1]), u));
                out.extend(scale_alternating(r, &l[j + 2..], u)?);
            }
        }
        Move::Expand1 { index: j, param: a } => {
            let j = *j;
            if j > n {
                return Err(not_applicable(m, "index past the end"));
            }
            out.extend_from_slice(&l[..j]);
            out.push(a.clone());
            out.push(r.zero());
            if j < n {
                out.push(r.sub(&l[j], a));
                out.extend_from_slice(&l[j + 1..]);
            }
        }
        Move::Expand2 { index: j, param: u } => {
            let j = *j;
            if j >= n {
                return Err(not_applicable(m, "index past the end"));
            }
            if !r.is_unit(u) {
                return Err(not_applicable(m, "parameter is not a unit"));
            }
            let ui = r.inv(u)?;
            let ui2 = r.mul(&ui, &ui);
            out.extend_from_slice(&l[..j]);
            out.push(r.add(&l[j], &ui));
            out.push(u.clone());
            if j + 1 < n {
                out.push(r.add(&r.mul(&ui2, &l[j + 1]), &ui));
                // undo the alternating scaling by u^-2, u^2, ...
                let u2 = r.mul(u, u);
                for (i, a) in l[j + 2..].iter().enumerate() {
                    out.push(r.mul(a, if i % 2 == 0 { &u2 } else { &ui2 }));
                }
            }
        }
    }
    Ok(PathWord::new(p.base.clone(), out))
}

/// A starting word and a sequence of moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveTrace {
    pub start: PathWord,
    pub moves: Vec<Move>,
}

#[derive(Serialize, Deserialize)]
struct MoveJson {
    kind: String,
    index: usize,
    param: Option<String>,
}

impl MoveTrace {
    pub fn new(start: PathWord) -> MoveTrace {
        MoveTrace {
            start,
            moves: Vec::new(),
        }
    }

    /// Every intermediate word, starting word first.
    pub fn replay(&self, r: &Ring) -> Result<Vec<PathWord>> {
        let mut out = vec![self.start.clone()];
        for m in &self.moves {
            let next = apply_move(r, out.last().unwrap(), m)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn end(&self, r: &Ring) -> Result<PathWord> {
        Ok(self.replay(r)?.pop().unwrap())
    }

    pub fn moves_json(&self) -> String {
        let v: Vec<MoveJson> = self
            .moves
            .iter()
            .map(|m| MoveJson {
                kind: m.kind().to_string(),
                index: m.index(),
                param: m.param().map(|p| p.to_string()),
            })
            .collect();
        serde_json::to_string(&v).expect("moves serialize")
    }

    pub fn moves_from_json(r: &Ring, s: &str) -> Result<Vec<Move>> {
        let v: Vec<MoveJson> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        v.into_iter()
            .map(|j| {
                let param = || -> Result<Elem> {
                    r.parse_elem(j.param.as_deref().ok_or_else(|| {
                        Error::Parse(format!("{} needs a parameter", j.kind))
                    })?)
                };
                Ok(match j.kind.as_str() {
                    "contract1" => Move::Contract1 { index: j.index },
                    "contract2" => Move::Contract2 { index: j.index },
                    "expand1" => Move::Expand1 { index: j.index, param: param()? },
                    "expand2" => Move::Expand2 { index: j.index, param: param()? },
                    k => return Err(Error::Parse(format!("unknown move `{k}`"))),
                })
            })
            .collect()
    }
}

fn first_contraction(r: &Ring, l: &[Elem]) -> Option<Move> {
    if let Some(j) = (1..l.len()).find(|&j| r.is_zero(&l[j])) {
        return Some(Move::Contract1 { index: j });
    }
    (1..l.len())
        .find(|&j| r.is_unit(&l[j]))
        .map(|j| Move::Contract2 { index: j })
}

/// Apply contractions until none applies: leftmost first, type 1 before type 2.
pub fn reduce(r: &Ring, p: &PathWord) -> (PathWord, MoveTrace) {
    let mut trace = MoveTrace::new(p.clone());
    let mut cur = p.clone();
    while let Some(m) = first_contraction(r, &cur.letters) {
        cur = apply_move(r, &cur, &m).expect("applicable by construction");
        trace.moves.push(m);
    }
    (cur, trace)
}

/// Collapse in the order used for the relator loops: type-1 moves on `0,0,x`
/// runs, then type-2 moves on `w, w^-1, w` triples from the right, then
/// [`reduce`].
pub fn collapse(r: &Ring, p: &PathWord) -> (PathWord, MoveTrace) {
    let mut trace = MoveTrace::new(p.clone());
    let mut cur = p.clone();
    let step = |cur: &mut PathWord, trace: &mut MoveTrace, m: Move| {
        *cur = apply_move(r, cur, &m).expect("applicable by construction");
        trace.moves.push(m);
    };
    loop {
        let l = &cur.letters;
        let hit = (1..l.len().saturating_sub(1))
            .find(|&j| r.is_zero(&l[j - 1]) && r.is_zero(&l[j]));
        match hit {
            Some(j) => step(&mut cur, &mut trace, Move::Contract1 { index: j }),
            None => break,
        }
    }
    loop {
        let l = &cur.letters;
        let hit = (1..l.len().saturating_sub(1)).rev().find(|&j| {
            r.is_unit(&l[j])
                && r.inv(&l[j]).map(|wi| wi == l[j - 1] && wi == l[j + 1]).unwrap_or(false)
        });
        match hit {
            Some(j) => step(&mut cur, &mut trace, Move::Contract2 { index: j }),
            None => break,
        }
    }
    let (end, rest) = reduce(r, &cur);
    trace.moves.extend(rest.moves);
    (end, trace)
}

/// The Dennis–Stein loop for (a, b) with u = 1 - ab a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DennisStein {
    pub u: Elem,
    /// The nine-letter word (u^-1, u, u^-1, 0, -a u^-1, b, a, -b u^-1, 0).
    pub nine: PathWord,
    /// Moves from the nine-letter word to the four-letter loop.
    pub trace: MoveTrace,
    /// (0, -ua, u^-2 b, u^2 a).
    pub short: PathWord,
}

pub fn dennis_stein_loop(r: &Ring, a: &Elem, b: &Elem) -> Result<DennisStein> {
    let u = r.sub(&r.one(), &r.mul(a, b));
    let ui = r.inv(&u)?;
    let neg = |x: &Elem| r.neg(x);
    let letters = vec![
        ui.clone(),
        u.clone(),
        ui.clone(),
        r.zero(),
        neg(&r.mul(a, &ui)),
        b.clone(),
        a.clone(),
        neg(&r.mul(b, &ui)),
        r.zero(),
    ];
    let nine = PathWord::new(Mat2::identity(r), letters);
    if !nine.is_loop(r) {
        return Err(Error::NotALoop);
    }
    let mut trace = MoveTrace::new(nine.clone());
    trace.moves = vec![
        Move::Contract2 { index: 1 },
        Move::Contract1 { index: 1 },
        Move::Contract1 { index: 5 },
    ];
    let short = trace.end(r)?;
    Ok(DennisStein {
        u,
        nine,
        trace,
        short,
    })
}
