//! Words in the generators ε(a) of the group C(A) and in the Steinberg
//! generators x12(t), x21(t), with their matrix images ψ and φ, the loop maps
//! Λ (loops to kernel words) and Θ (kernel words to loops), the relator words
//! and the maps between the two presentations.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use crate::path::PathWord;
use crate::ring::{Elem, Ring};

/// ε(a) or ε(a)^-1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CLetter {
    pub a: Elem,
    pub inv: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CWord(pub Vec<CLetter>);

impl CWord {
    pub fn empty() -> CWord {
        CWord(Vec::new())
    }

    pub fn eps(a: &Elem) -> CWord {
        CWord(vec![CLetter { a: a.clone(), inv: false }])
    }

    pub fn eps_inv(a: &Elem) -> CWord {
        CWord(vec![CLetter { a: a.clone(), inv: true }])
    }

    pub fn then(mut self, o: &CWord) -> CWord {
        self.0.extend(o.0.iter().cloned());
        self
    }

    pub fn inverse(&self) -> CWord {
        CWord(
            self.0
                .iter()
                .rev()
                .map(|l| CLetter { a: l.a.clone(), inv: !l.inv })
                .collect(),
        )
    }

    /// Replace every ε(a)^-1 by ε(0)ε(-a)ε(0), which has the same image.
    pub fn positive(&self, r: &Ring) -> CWord {
        let mut out = Vec::new();
        for l in &self.0 {
            if l.inv {
                let z = CLetter { a: r.zero(), inv: false };
                out.push(z.clone());
                out.push(CLetter { a: r.neg(&l.a), inv: false });
                out.push(z);
            } else {
                out.push(l.clone());
            }
        }
        CWord(out)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                if l.inv {
                    format!("e^-1({})", l.a)
                } else {
                    format!("e({})", l.a)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// ψ: ε(a) ↦ E(a).
pub fn psi(r: &Ring, w: &CWord) -> Mat2 {
    let mut acc = Mat2::identity(r);
    for l in &w.0 {
        let e = Mat2::e(r, &l.a);
        let m = if l.inv { e.inverse(r).expect("E(a) is invertible") } else { e };
        acc = acc.mul(&m, r);
    }
    acc
}

// ---- derived words in C(A) ---------------------------------------------------

/// h(u) = ε(-u)ε(-u^-1)ε(-u), image diag(u, u^-1).
pub fn h(r: &Ring, u: &Elem) -> Result<CWord> {
    let ui = r.inv(u)?;
    let (a, b) = (r.neg(u), r.neg(&ui));
    Ok(CWord::eps(&a).then(&CWord::eps(&b)).then(&CWord::eps(&a)))
}

fn eps0_cubed(r: &Ring) -> CWord {
    let z = CWord::eps(&r.zero());
    z.clone().then(&z).then(&z)
}

/// y(a) = ε(0)^3 ε(a), image E21(a).
pub fn y(r: &Ring, a: &Elem) -> CWord {
    eps0_cubed(r).then(&CWord::eps(a))
}

/// ȳ(a) = ε(-a) ε(0)^3, image E12(a).
pub fn ybar(r: &Ring, a: &Elem) -> CWord {
    CWord::eps(&r.neg(a)).then(&eps0_cubed(r))
}

/// β(u, a) = h(u) y(ua), image [[u, 0], [a, u^-1]].
pub fn beta(r: &Ring, u: &Elem, a: &Elem) -> Result<CWord> {
    Ok(h(r, u)?.then(&y(r, &r.mul(u, a))))
}

/// w(u) = ȳ(u) y(-u^-1) ȳ(u).
pub fn w(r: &Ring, u: &Elem) -> Result<CWord> {
    let ui = r.inv(u)?;
    Ok(ybar(r, u).then(&y(r, &r.neg(&ui))).then(&ybar(r, u)))
}

/// w̄(u) = y(u) ȳ(-u^-1) y(u).
pub fn wbar(r: &Ring, u: &Elem) -> Result<CWord> {
    let ui = r.inv(u)?;
    Ok(y(r, u).then(&ybar(r, &r.neg(&ui))).then(&y(r, u)))
}

/// Word for Z = [[u, 0], [b, u^-1]] in B: β(u, b), dropping the factors h(1)
/// and y(0), which are trivial in C(A).
pub fn st(r: &Ring, z: &Mat2) -> Result<CWord> {
    if !z.in_b(r) {
        return Err(Error::NotInB(z.to_string()));
    }
    let (u, b) = (&z.m[0], &z.m[2]);
    let mut out = CWord::empty();
    if !r.is_one(u) {
        out = out.then(&h(r, u)?);
    }
    let ub = r.mul(u, b);
    if !r.is_zero(&ub) {
        out = out.then(&y(r, &ub));
    }
    Ok(out)
}

/// Element β(u, a) of B in coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BElem {
    pub u: Elem,
    pub a: Elem,
}

impl BElem {
    pub fn matrix(&self, r: &Ring) -> Result<Mat2> {
        Mat2::lower(r, &self.u, &self.a)
    }

    pub fn word(&self, r: &Ring) -> Result<CWord> {
        beta(r, &self.u, &self.a)
    }
}

/// β(u, a) β(v, b) = β(uv, av + u^-1 b).
pub fn mult_b(r: &Ring, x: &BElem, y: &BElem) -> Result<BElem> {
    let ui = r.inv(&x.u)?;
    Ok(BElem {
        u: r.mul(&x.u, &y.u),
        a: r.add(&r.mul(&x.a, &y.u), &r.mul(&ui, &y.a)),
    })
}

/// β(u, a)^-1 = β(u^-1, -a).
pub fn inv_b(r: &Ring, x: &BElem) -> Result<BElem> {
    Ok(BElem {
        u: r.inv(&x.u)?,
        a: r.neg(&x.a),
    })
}

// ---- loops and kernel words ----------------------------------------------------

/// Λ(p) = st(T)^-1 ε(a_n)···ε(a_1) st(X) for a loop p at infinity. The factor
/// st(T)^-1 is realized as st(T^-1).
pub fn lambda(r: &Ring, p: &PathWord) -> Result<CWord> {
    if !p.is_loop(r) {
        return Err(Error::NotALoop);
    }
    let t = p.terminal(r);
    let mut out = st(r, &t.inverse(r)?)?;
    for a in p.letters.iter().rev() {
        out = out.then(&CWord::eps(a));
    }
    Ok(out.then(&st(r, &p.base)?))
}

/// Θ(w) = ⟨1, (s(b_n), ..., s(b_1))⟩ with s(ε(b)) = b and s(ε(b)^-1) = 0, -b, 0.
pub fn theta(r: &Ring, w: &CWord) -> Result<PathWord> {
    if !psi(r, w).is_identity(r) {
        return Err(Error::NotInKernel);
    }
    let mut letters = Vec::new();
    for l in w.0.iter().rev() {
        if l.inv {
            letters.push(r.zero());
            letters.push(r.neg(&l.a));
            letters.push(r.zero());
        } else {
            letters.push(l.a.clone());
        }
    }
    Ok(PathWord::new(Mat2::identity(r), letters))
}

/// The three relator families of C(A).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relator {
    /// h(u) h(v) h(uv)^-1.
    Alpha(Elem, Elem),
    /// ε(a) ε(0) ε(b) ε(a+b)^-1 h(-1)^-1.
    Gamma(Elem, Elem),
    /// h(u) ε(a) h(u) ε(u^2 a)^-1.
    Delta(Elem, Elem),
}

pub fn relator(r: &Ring, rel: &Relator) -> Result<CWord> {
    Ok(match rel {
        Relator::Alpha(u, v) => h(r, u)?
            .then(&h(r, v)?)
            .then(&h(r, &r.mul(u, v))?.inverse()),
        Relator::Gamma(a, b) => CWord::eps(a)
            .then(&CWord::eps(&r.zero()))
            .then(&CWord::eps(b))
            .then(&CWord::eps_inv(&r.add(a, b)))
            .then(&h(r, &r.from_i64(-1))?.inverse()),
        Relator::Delta(u, a) => {
            let hu = h(r, u)?;
            hu.clone()
                .then(&CWord::eps(a))
                .then(&hu)
                .then(&CWord::eps_inv(&r.mul(&r.mul(u, u), a)))
        }
    })
}

// ---- Steinberg words -----------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Root {
    X12,
    X21,
}

impl Root {
    pub fn other(self) -> Root {
        match self {
            Root::X12 => Root::X21,
            Root::X21 => Root::X12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StLetter {
    pub root: Root,
    pub t: Elem,
    pub inv: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct StWord(pub Vec<StLetter>);

impl StWord {
    pub fn empty() -> StWord {
        StWord(Vec::new())
    }

    pub fn x(root: Root, t: &Elem) -> StWord {
        StWord(vec![StLetter { root, t: t.clone(), inv: false }])
    }

    pub fn then(mut self, o: &StWord) -> StWord {
        self.0.extend(o.0.iter().cloned());
        self
    }

    pub fn inverse(&self) -> StWord {
        StWord(
            self.0
                .iter()
                .rev()
                .map(|l| StLetter { root: l.root, t: l.t.clone(), inv: !l.inv })
                .collect(),
        )
    }
}

impl fmt::Display for StWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let name = match l.root {
                    Root::X12 => "x12",
                    Root::X21 => "x21",
                };
                let inv = if l.inv { "^-1" } else { "" };
                format!("{name}{inv}({})", l.t)
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// φ: x12(t) ↦ E12(t), x21(t) ↦ E21(t).
pub fn phi(r: &Ring, w: &StWord) -> Mat2 {
    let mut acc = Mat2::identity(r);
    for l in &w.0 {
        let t = if l.inv { r.neg(&l.t) } else { l.t.clone() };
        let m = match l.root {
            Root::X12 => Mat2::e12(r, &t),
            Root::X21 => Mat2::e21(r, &t),
        };
        acc = acc.mul(&m, r);
    }
    acc
}

/// w_ij(u) = x_ij(u) x_ji(-u^-1) x_ij(u).
pub fn st_w(r: &Ring, root: Root, u: &Elem) -> Result<StWord> {
    let ui = r.inv(u)?;
    Ok(StWord::x(root, u)
        .then(&StWord::x(root.other(), &r.neg(&ui)))
        .then(&StWord::x(root, u)))
}

/// h_ij(u) = w_ij(u) w_ij(-1).
pub fn st_h(r: &Ring, root: Root, u: &Elem) -> Result<StWord> {
    Ok(st_w(r, root, u)?.then(&st_w(r, root, &r.from_i64(-1))?))
}

/// c(u, v) = h12(u) h12(v) h12(uv)^-1.
pub fn symbol_c(r: &Ring, u: &Elem, v: &Elem) -> Result<StWord> {
    Ok(st_h(r, Root::X12, u)?
        .then(&st_h(r, Root::X12, v)?)
        .then(&st_h(r, Root::X12, &r.mul(u, v))?.inverse()))
}

/// Dennis–Stein symbol: x21(-b u^-1) x12(-a) x21(b) x12(a u^-1) h12(u)^-1 with
/// u = 1 - ab.
pub fn symbol_ds(r: &Ring, a: &Elem, b: &Elem) -> Result<StWord> {
    let u = r.sub(&r.one(), &r.mul(a, b));
    let ui = r.inv(&u)?;
    Ok(StWord::x(Root::X21, &r.neg(&r.mul(b, &ui)))
        .then(&StWord::x(Root::X12, &r.neg(a)))
        .then(&StWord::x(Root::X21, b))
        .then(&StWord::x(Root::X12, &r.mul(a, &ui)))
        .then(&st_h(r, Root::X12, &u)?.inverse()))
}

/// α: x21(a) ↦ y(a), x12(a) ↦ ȳ(a).
pub fn alpha_map(r: &Ring, w: &StWord) -> CWord {
    let mut out = CWord::empty();
    for l in &w.0 {
        let img = match l.root {
            Root::X21 => y(r, &l.t),
            Root::X12 => ybar(r, &l.t),
        };
        out = out.then(&if l.inv { img.inverse() } else { img });
    }
    out
}

/// γ: ε(a) ↦ w21(-1) x21(a).
pub fn gamma_map(r: &Ring, w: &CWord) -> StWord {
    let w21 = st_w(r, Root::X21, &r.from_i64(-1)).expect("-1 is a unit");
    let mut out = StWord::empty();
    for l in &w.0 {
        let img = w21.clone().then(&StWord::x(Root::X21, &l.a));
        out = out.then(&if l.inv { img.inverse() } else { img });
    }
    out
}

// ---- text grammar -------------------------------------------------------------

/// A parsed word in either presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    C(CWord),
    St(StWord),
}

fn split_top(s: &str, sep: char) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c == sep && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out
}

/// Parse `e(a)`, `e^-1(a)`, `x12(t)`, `x21(t)`, `x12^-1(t)`, `h(u)`, `y(a)`,
/// `ybar(a)`, `beta(u,a)`, `w(u)`, `wbar(u)`, `w12(u)`, `w21(u)`, `h12(u)`,
/// `h21(u)`, `c(u,v)`, `DS(a,b)` joined by `*`; `1` is the empty word.
pub fn parse_word(r: &Ring, s: &str) -> Result<Word> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut c = CWord::empty();
    let mut st = StWord::empty();
    let (mut saw_c, mut saw_st) = (false, false);
    if s == "1" || s.is_empty() {
        return Ok(Word::C(c));
    }
    for tok in split_top(&s, '*') {
        let (name, args) = tok
            .strip_suffix(')')
            .and_then(|t| t.split_once('('))
            .ok_or_else(|| Error::Parse(format!("bad letter `{tok}`")))?;
        let args: Vec<Elem> = split_top(args, ',')
            .iter()
            .map(|a| r.parse_elem(a))
            .collect::<Result<_>>()?;
        let want = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!("`{name}` takes {k} argument(s)")))
            }
        };
        let (cw, sw): (Option<CWord>, Option<StWord>) = match name {
            "e" => (want(1).map(|_| CWord::eps(&args[0])).ok(), None),
            "e^-1" => (want(1).map(|_| CWord::eps_inv(&args[0])).ok(), None),
            "h" => {
                want(1)?;
                (Some(h(r, &args[0])?), None)
            }
            "y" => {
                want(1)?;
                (Some(y(r, &args[0])), None)
            }
            "ybar" => {
                want(1)?;
                (Some(ybar(r, &args[0])), None)
            }
            "beta" => {
                want(2)?;
                (Some(beta(r, &args[0], &args[1])?), None)
            }
            "w" => {
                want(1)?;
                (Some(w(r, &args[0])?), None)
            }
            "wbar" => {
                want(1)?;
                (Some(wbar(r, &args[0])?), None)
            }
            "x12" | "x21" | "x12^-1" | "x21^-1" => {
                want(1)?;
                let root = if name.starts_with("x12") { Root::X12 } else { Root::X21 };
                let l = StWord::x(root, &args[0]);
                (None, Some(if name.ends_with("^-1") { l.inverse() } else { l }))
            }
            "w12" | "w21" | "h12" | "h21" => {
                want(1)?;
                let root = if name.ends_with("12") { Root::X12 } else { Root::X21 };
                let sw = if name.starts_with('w') {
                    st_w(r, root, &args[0])?
                } else {
                    st_h(r, root, &args[0])?
                };
                (None, Some(sw))
            }
            "c" => {
                want(2)?;
                (None, Some(symbol_c(r, &args[0], &args[1])?))
            }
            "DS" => {
                want(2)?;
                (None, Some(symbol_ds(r, &args[0], &args[1])?))
            }
            other => return Err(Error::Parse(format!("unknown letter `{other}`"))),
        };
        if let Some(cw) = cw {
            saw_c = true;
            c = c.then(&cw);
        } else if let Some(sw) = sw {
            saw_st = true;
            st = st.then(&sw);
        } else {
            return Err(Error::Parse(format!("`{name}` takes 1 argument")));
        }
    }
    match (saw_c, saw_st) {
        (true, true) => Err(Error::Parse(
            "word mixes C(A) and Steinberg letters".into(),
        )),
        (_, true) => Ok(Word::St(st)),
        _ => Ok(Word::C(c)),
    }
}
