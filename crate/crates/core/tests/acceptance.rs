//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use unirow::euclid::{continued_fraction, eval_continued_fraction, weak_euclid, DEFAULT_MAX_STEPS};
use unirow::farey::{self, farey, gamma_z, render_svg, SvgStyle, DEFAULT_WINDOW};
use unirow::graph::{build_graph, has_4_clique, is_edge};
use unirow::homology::{homology, loop_chain, pi1_presentation, CycleBasis, Complex2};
use unirow::matrix::Mat2;
use unirow::path::{collapse, dennis_stein_loop, reduce, MoveTrace, PathWord};
use unirow::projline::{canonical_vertex, infinity, plus, vertex_label, zero_vertex, ProjPoint};
use unirow::words::{
    alpha_map, beta, gamma_map, h, lambda, mult_b, phi, psi, relator, st_h, st_w, symbol_c,
    symbol_ds, theta, BElem, CWord, Relator, Root, StWord,
};
use unirow::{Elem, HeightBound, Ring};

type Check = std::result::Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zn(n: u64) -> Ring {
    Ring::mod_n(n).unwrap()
}

fn all(r: &Ring) -> Vec<Elem> {
    r.enumerate_elements(HeightBound::default())
}

fn units(r: &Ring) -> Vec<Elem> {
    r.enumerate_units(HeightBound::default())
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

// ---- 1 -------------------------------------------------------------------------

fn complete_graph_fields() -> Check {
    for q in [2u64, 3, 5, 7, 11] {
        let r = zn(q);
        let g = build_graph(&r, HeightBound::default());
        let v = g.vertices.len();
        ensure(v as u64 == q + 1, || format!("Z/{q}: {v} vertices"))?;
        ensure(g.edges.len() == v * (v - 1) / 2, || format!("Z/{q}: not complete"))?;
        for i in 0..v {
            for j in (i + 1)..v {
                ensure(is_edge(&r, &g.vertices[i], &g.vertices[j]), || {
                    format!("Z/{q}: {} -- {} missing", g.vertices[i], g.vertices[j])
                })?;
            }
        }
        let hres = homology(&Complex2::from_graph(&g));
        ensure(hres.h0 == 1 && hres.h1_trivial(), || format!("Z/{q}: {hres:?}"))?;
    }
    Ok(())
}

// ---- 2 -------------------------------------------------------------------------

fn totient_by_factoring(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn farey_structure() -> Check {
    let r = Ring::integers();
    for n in 1..=8u32 {
        // independent enumeration of F_n
        let mut f: Vec<Ratio<i64>> = (1..=n as i64)
            .flat_map(|q| (0..=q).map(move |p| Ratio::new(p, q)))
            .collect();
        f.sort();
        f.dedup();
        ensure(farey(n).fractions == f, || format!("F_{n} mismatch"))?;
        if n > 1 {
            let fresh = f.len() - farey(n - 1).fractions.len();
            ensure(fresh as u64 == totient_by_factoring(n as u64), || {
                format!("|F_{n} \\ F_{}| = {fresh}", n - 1)
            })?;
            // each new point is the mediant of its neighbours in F_n
            for w in f.windows(3) {
                if *w[1].denom() == n as i64 {
                    let med = Ratio::new(w[0].numer() + w[2].numer(), w[0].denom() + w[2].denom());
                    ensure(med == w[1] && w[0] < w[1] && w[1] < w[2], || {
                        format!("{} is not the mediant of {} and {}", w[1], w[0], w[2])
                    })?;
                }
            }
        }
        let g = gamma_z(n, DEFAULT_WINDOW);
        for &(i, j) in &g.edges {
            let (x, y) = (&g.vertices[i], &g.vertices[j]);
            if r.is_zero(&x.b) || r.is_zero(&y.b) {
                continue;
            }
            let (Elem::Int(p), Elem::Int(q)) = (&x.a, &x.b) else { unreachable!() };
            let (Elem::Int(s), Elem::Int(t)) = (&y.a, &y.b) else { unreachable!() };
            let d = (p * t - q * s).abs();
            ensure(d.is_one(), || format!("edge {x} -- {y} has |det| {d}"))?;
            let (lo, hi) = {
                let a = BigRational::new(p.clone(), q.clone());
                let b = BigRational::new(s.clone(), t.clone());
                (a.clone().min(b.clone()), a.max(b))
            };
            ensure(hi - lo.floor() <= BigRational::one(), || format!("edge {x} -- {y} crosses a strip"))?;
        }
        let report = farey::check(n, DEFAULT_WINDOW);
        ensure(report.all(), || format!("{report:?}"))?;
        let hres = homology(&Complex2::from_graph(&g));
        ensure(hres.h0 == 1 && hres.h1_trivial(), || format!("Γ(Z,{n}): {hres:?}"))?;
    }
    // neighbour law against is_edge, exhaustive for denominators up to 8
    let mut pts = Vec::new();
    for q in 1..=8i64 {
        for p in -2 * q..=2 * q {
            if p.gcd(&q) == 1 {
                pts.push((p, q));
            }
        }
    }
    for &(p, q) in &pts {
        for &(s, t) in &pts {
            let x = canonical_vertex(&r, &r.from_i64(p), &r.from_i64(q)).unwrap();
            let y = canonical_vertex(&r, &r.from_i64(s), &r.from_i64(t)).unwrap();
            ensure(is_edge(&r, &x, &y) == ((p * t - q * s).abs() == 1), || {
                format!("is_edge({p}/{q}, {s}/{t})")
            })?;
        }
    }
    Ok(())
}

// ---- 3 -------------------------------------------------------------------------

/// q_0 + 1/(q_1 + 1/(... + 1/q_n)), as a point of P^1(Q).
fn fold(digits: &[Elem]) -> Option<BigRational> {
    let mut acc: Option<BigRational> = None; // None is infinity
    for d in digits.iter().rev() {
        let Elem::Int(d) = d else { return None };
        let d = BigRational::from_integer(d.clone());
        acc = Some(match acc {
            None => d,
            Some(x) if x.is_zero() => return None,
            Some(x) => d + x.recip(),
        });
    }
    acc
}

fn weak_euclid_integers() -> Check {
    let r = Ring::integers();
    for a in -40i64..=40 {
        for b in -40i64..=40 {
            if a.gcd(&b) != 1 {
                continue;
            }
            let (ea, eb) = (r.from_i64(a), r.from_i64(b));
            let t = weak_euclid(&r, &ea, &eb, DEFAULT_MAX_STEPS).map_err(|e| format!("({a},{b}): {e}"))?;
            let rs = &t.remainders;
            ensure(rs[0] == ea && rs[1] == eb, || format!("({a},{b}): bad seed"))?;
            ensure(rs.len() == t.quotients.len() + 2, || format!("({a},{b}): length"))?;
            for (k, q) in t.quotients.iter().enumerate() {
                let lhs = &rs[k];
                let rhs = r.add(&r.mul(q, &rs[k + 1]), &rs[k + 2]);
                ensure(*lhs == rhs, || format!("({a},{b}): recursion fails at step {k}"))?;
            }
            let n = rs.len();
            ensure(r.is_zero(&rs[n - 1]), || format!("({a},{b}): r_n != 0"))?;
            ensure(r.is_unit(&rs[n - 2]) && rs[n - 2] == t.terminal_unit, || {
                format!("({a},{b}): terminal {}", rs[n - 2])
            })?;
            let (u, z) = t.reconstruct(&r);
            ensure(u == t.terminal_unit && r.is_zero(&z), || format!("({a},{b}): reconstruct ({u},{z})"))?;

            let pt = if b == 0 {
                ProjPoint::Infinity
            } else {
                ProjPoint::Rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
            };
            let cf = continued_fraction(&r, &pt, DEFAULT_MAX_STEPS).map_err(|e| format!("cf {a}/{b}: {e}"))?;
            let back = eval_continued_fraction(&r, &cf.digits).map_err(|e| format!("eval {a}/{b}: {e}"))?;
            ensure(back == pt, || format!("cf {a}/{b} = {cf} evaluates to {back}"))?;
            let folded = fold(&cf.digits);
            let want = (b != 0).then(|| BigRational::new(BigInt::from(a), BigInt::from(b)));
            ensure(folded == want, || format!("cf {a}/{b} = {cf} folds to {folded:?}"))?;
        }
    }
    Ok(())
}

// ---- 4 -------------------------------------------------------------------------

fn four_clique_dichotomy() -> Check {
    let z = Ring::integers();
    let bound = HeightBound::new(8, 1);
    let fc = has_4_clique(&z, bound);
    ensure(fc.w.is_empty() && !fc.exists(), || format!("Z: {fc:?}"))?;
    let g = build_graph(&z, bound);
    let k4 = g.cliques(4);
    ensure(k4.is_empty(), || format!("Z: {} 4-cliques at h=8", k4.len()))?;
    ensure(!g.cliques(3).is_empty(), || "Z: no triangles at h=8".into())?;

    let r = zn(5);
    let fc = has_4_clique(&r, HeightBound::default());
    ensure(fc.w == common::els(&r, &[2, 3, 4]), || format!("Z/5: w = {:?}", fc.w))?;
    let want: BTreeSet<_> = [
        infinity(&r),
        zero_vertex(&r),
        plus(&r, &r.from_i64(2)),
        plus(&r, &r.from_i64(4)),
    ]
    .into_iter()
    .collect();
    let got: BTreeSet<_> = fc.witness.clone().ok_or("Z/5: no witness")?.into_iter().collect();
    ensure(got == want, || format!("Z/5 witness {got:?}"))?;
    let wv: Vec<_> = got.into_iter().collect();
    for i in 0..4 {
        for j in (i + 1)..4 {
            ensure(is_edge(&r, &wv[i], &wv[j]), || format!("{} -- {}", wv[i], wv[j]))?;
        }
    }
    Ok(())
}

// ---- 5 -------------------------------------------------------------------------

fn e_prod(r: &Ring, letters_right_to_left: &[Elem]) -> Mat2 {
    // E(a_i)···E(a_1) for letters given as a_1, ..., a_i
    let mut m = Mat2::identity(r);
    for a in letters_right_to_left.iter().rev() {
        m = m.mul(&Mat2::e(r, a), r);
    }
    m
}

fn b_calculus() -> Check {
    for n in 4..=9u64 {
        let r = zn(n);
        let els = all(&r);
        let us = units(&r);
        let bs: Vec<BElem> = us
            .iter()
            .flat_map(|u| els.iter().map(move |a| BElem { u: u.clone(), a: a.clone() }))
            .collect();
        for x in &bs {
            let mx = Mat2::lower(&r, &x.u, &x.a).unwrap();
            ensure(psi(&r, &beta(&r, &x.u, &x.a).unwrap()) == mx, || format!("Z/{n}: psi(beta{x:?})"))?;
            for y in &bs {
                let prod = mult_b(&r, x, y).unwrap();
                let lhs = psi(&r, &x.word(&r).unwrap().then(&y.word(&r).unwrap()));
                let mm = mx.mul(&Mat2::lower(&r, &y.u, &y.a).unwrap(), &r);
                ensure(lhs == mm && prod.matrix(&r).unwrap() == mm, || format!("Z/{n}: beta law {x:?} {y:?}"))?;
            }
        }
        for u in &us {
            for v in &us {
                let lhs = psi(&r, &h(&r, u).unwrap().then(&h(&r, v).unwrap()));
                ensure(lhs == psi(&r, &h(&r, &r.mul(u, v)).unwrap()), || format!("Z/{n}: h({u})h({v})"))?;
                ensure(lhs == Mat2::d(&r, &r.mul(u, v)).unwrap(), || format!("Z/{n}: h image"))?;
            }
        }
        // ε(a·β) = h(u(β)) ε(a) β
        for a in &els {
            for x in &bs {
                let act = r.add(&r.mul(&r.mul(a, &x.u), &x.u), &r.mul(&x.a, &x.u));
                let lhs = psi(&r, &CWord::eps(&act));
                let rhs = psi(
                    &r,
                    &h(&r, &x.u).unwrap().then(&CWord::eps(a)).then(&x.word(&r).unwrap()),
                );
                ensure(lhs == rhs, || format!("Z/{n}: key identity a={a} {x:?}"))?;
            }
        }
        // prefix identities with b_1 = a_1·Z, b_i = u^(±2) a_i
        for a1 in &els {
            for a2 in &els {
                for a3 in &els {
                    let a = [a1.clone(), a2.clone(), a3.clone()];
                    for x in &bs {
                        let z = x.matrix(&r).unwrap();
                        let u = &x.u;
                        let u2 = r.mul(u, u);
                        let ui2 = r.inv(&u2).unwrap();
                        let bvec = [
                            r.add(&r.mul(&r.mul(a1, u), u), &r.mul(&x.a, u)),
                            r.mul(&ui2, a2),
                            r.mul(&u2, a3),
                        ];
                        let ui = r.inv(u).unwrap();
                        for i in 1..=3 {
                            let lhs = e_prod(&r, &bvec[..i]);
                            let du = Mat2::d(&r, if i % 2 == 1 { u } else { &ui }).unwrap();
                            let rhs = du.mul(&e_prod(&r, &a[..i]), &r).mul(&z, &r);
                            ensure(lhs == rhs, || format!("Z/{n}: prefix {i} a={a:?} {x:?}"))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

// ---- 6 -------------------------------------------------------------------------

fn relator_collapses(r: &Ring, rel: &Relator) -> Check {
    let w = relator(r, rel).map_err(|e| format!("{rel:?}: {e}"))?;
    let p = theta(r, &w).map_err(|e| format!("{rel:?}: {e}"))?;
    let (end, trace) = collapse(r, &p);
    ensure(end.letters.is_empty(), || format!("{rel:?} over {}: stuck at {end}", r.spec()))?;
    let replayed = trace.end(r).map_err(|e| format!("{rel:?}: replay {e}"))?;
    ensure(replayed == end, || format!("{rel:?}: replay differs"))?;
    // the first moves are the type-1 collapses of 0,0,x runs
    let states = trace.replay(r).unwrap();
    let mut seen_type2 = false;
    for (m, before) in trace.moves.iter().zip(&states) {
        match m.kind() {
            "contract1" if !seen_type2 => {
                let j = m.index();
                ensure(r.is_zero(&before.letters[j - 1]) && r.is_zero(&before.letters[j]), || {
                    format!("{rel:?}: leading type-1 move not on 0,0,x")
                })?;
            }
            "contract2" if !seen_type2 => {
                seen_type2 = true;
                let j = m.index();
                let l = &before.letters;
                let wi = r.inv(&l[j]).unwrap();
                ensure(j + 1 < l.len() && l[j - 1] == wi && l[j + 1] == wi, || {
                    format!("{rel:?}: first type-2 move not on w, w^-1, w")
                })?;
            }
            _ => {}
        }
    }
    Ok(())
}

fn relators_for(r: &Ring, us: &[Elem], xs: &[Elem]) -> Vec<Relator> {
    let mut out = Vec::new();
    for u in us {
        for v in us {
            out.push(Relator::Alpha(u.clone(), v.clone()));
        }
        for a in xs {
            out.push(Relator::Delta(u.clone(), a.clone()));
        }
    }
    for a in xs {
        for b in xs {
            out.push(Relator::Gamma(a.clone(), b.clone()));
        }
    }
    let _ = r;
    out
}

fn relator_collapse() -> Check {
    for n in [5u64, 7] {
        let r = zn(n);
        for rel in relators_for(&r, &units(&r), &all(&r)) {
            relator_collapses(&r, &rel)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let z = Ring::integers();
    let zu = units(&z);
    for _ in 0..50 {
        let (a, b) = (z.from_i64(rng.random_range(-50..=50)), z.from_i64(rng.random_range(-50..=50)));
        let (u, v) = (zu[rng.random_range(0..2)].clone(), zu[rng.random_range(0..2)].clone());
        for rel in [Relator::Alpha(u.clone(), v), Relator::Gamma(a.clone(), b), Relator::Delta(u, a)] {
            relator_collapses(&z, &rel)?;
        }
    }
    let r6 = Ring::localized(6).unwrap();
    let unit = |rng: &mut ChaCha8Rng| {
        let s = if rng.random_bool(0.5) { 1 } else { -1 };
        let x = r6.mul(&r6.pow(&r6.from_i64(2), rng.random_range(-3..=3)).unwrap(), &r6.pow(&r6.from_i64(3), rng.random_range(-3..=3)).unwrap());
        r6.mul(&r6.from_i64(s), &x)
    };
    let elem = |rng: &mut ChaCha8Rng| {
        let num = BigInt::from(rng.random_range(-60..=60));
        let den = BigInt::from(6i64.pow(rng.random_range(0..=2)));
        r6.fraction(num, den).unwrap()
    };
    for _ in 0..50 {
        let (u, v, a, b) = (unit(&mut rng), unit(&mut rng), elem(&mut rng), elem(&mut rng));
        for rel in [Relator::Alpha(u.clone(), v), Relator::Gamma(a.clone(), b), Relator::Delta(u, a)] {
            relator_collapses(&r6, &rel)?;
        }
    }
    Ok(())
}

// ---- 7 -------------------------------------------------------------------------

fn lambda_theta() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (zr, zbox) = common::farey_box(6, 4);
    let zbasis = CycleBasis::new(&zbox);
    let z5 = zn(5);
    let c5 = Complex2::from_graph(&build_graph(&z5, HeightBound::default()));
    let b5 = CycleBasis::new(&c5);
    let mut z_compared = 0;
    for r in [z5.clone(), zr.clone()] {
        for i in 0..1000 {
            let p = common::random_loop(&r, &mut rng, 1 + i % 6);
            let w = lambda(&r, &p).map_err(|e| format!("lambda {p}: {e}"))?;
            ensure(psi(&r, &w).is_identity(&r), || format!("psi(lambda({p})) over {}", r.spec()))?;
            let t = theta(&r, &w).map_err(|e| format!("theta: {e}"))?;
            let (basis, cx) = if r == z5 { (&b5, &c5) } else { (&zbasis, &zbox) };
            if r == z5 || (common::fits_box(&r, &p, 6, 4) && common::fits_box(&r, &t, 6, 4)) {
                let cp = basis.class_of_chain(&loop_chain(cx, &p.vertices(&r)).unwrap());
                let ct = basis.class_of_chain(&loop_chain(cx, &t.vertices(&r)).unwrap());
                ensure(cp == ct, || format!("loop_class differs for {p}"))?;
                if r != z5 {
                    z_compared += 1;
                }
            }
        }
    }
    ensure(z_compared >= 100, || format!("only {z_compared} integer loops fit the Farey box"))?;

    // theta(lambda(p)) is p followed by a null-homotopic tail
    let els = all(&z5);
    let mut words: Vec<Vec<Elem>> = vec![vec![]];
    let mut frontier = words.clone();
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &frontier {
            for a in &els {
                let mut x = w.clone();
                x.push(a.clone());
                next.push(x);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let mut loops = 0;
    for letters in words {
        let p = PathWord::new(Mat2::identity(&z5), letters);
        if !p.is_loop(&z5) {
            continue;
        }
        loops += 1;
        let t = theta(&z5, &lambda(&z5, &p).unwrap()).unwrap();
        ensure(t.letters.starts_with(&p.letters), || format!("theta(lambda({p})) = {t}"))?;
        let tail = PathWord::new(p.terminal(&z5), t.letters[p.len()..].to_vec());
        ensure(tail.is_loop(&z5), || format!("tail of {t} is not a loop"))?;
        let (end, _) = reduce(&z5, &tail);
        ensure(end.letters.is_empty(), || format!("tail {tail} reduces to {end}"))?;
        let cp = b5.class_of_chain(&loop_chain(&c5, &p.vertices(&z5)).unwrap());
        let ct = b5.class_of_chain(&loop_chain(&c5, &t.vertices(&z5)).unwrap());
        ensure(cp == ct, || format!("loop_class differs for {p}"))?;
    }
    ensure(loops > 1, || "no loops enumerated".into())?;
    Ok(())
}

// ---- 8 -------------------------------------------------------------------------

fn dennis_stein() -> Check {
    let r = Ring::localized(5).unwrap();
    let ds = dennis_stein_loop(&r, &r.from_i64(2), &r.from_i64(3)).map_err(|e| e.to_string())?;
    let labels: Vec<String> = ds.short.vertices(&r).iter().map(|v| vertex_label(&r, v)).collect();
    ensure(labels == ["inf", "0", "-1/10", "-3/5", "inf"], || format!("labels {labels:?}"))?;

    for p in [5i64, 7, 11, 13] {
        let r = Ring::localized(p as u64).unwrap();
        let (k, eps) = if p % 6 == 1 { (p / 6, 1) } else { ((p + 1) / 6, -1) };
        let l = k.trailing_zeros();
        let m = k >> l;
        let a = -eps * (1i64 << (l + 1));
        let b = 3 * m;
        let ds = dennis_stein_loop(&r, &r.from_i64(a), &r.from_i64(b)).map_err(|e| format!("p={p}: {e}"))?;
        ensure(ds.u == r.from_i64(eps * p), || format!("p={p}: u = {}", ds.u))?;
        let vs = ds.short.vertices(&r);
        ensure(vs.len() == 5 && vs[0] == vs[4] && vs[0] == infinity(&r), || format!("p={p}: not a loop"))?;
        for w in vs.windows(2) {
            let d = r.sub(&r.mul(&w[0].a, &w[1].b), &r.mul(&w[0].b, &w[1].a));
            ensure(r.is_unit(&d), || format!("p={p}: det({}, {}) = {d}", w[0], w[1]))?;
        }
        // (inf, 0, 1/(ua), b/u, inf)
        let want = [
            "inf".to_string(),
            "0".to_string(),
            format!("{}", Ratio::new(1, eps * p * a)),
            format!("{}", Ratio::new(b, eps * p)),
            "inf".to_string(),
        ];
        let got: Vec<String> = vs.iter().map(|v| vertex_label(&r, v)).collect();
        ensure(got == want, || format!("p={p}: {got:?} vs {want:?}"))?;
        let w = lambda(&r, &ds.short).map_err(|e| e.to_string())?;
        ensure(psi(&r, &w).is_identity(&r), || format!("p={p}: psi(lambda) != 1"))?;
        let w9 = lambda(&r, &ds.nine).map_err(|e| e.to_string())?;
        ensure(psi(&r, &w9).is_identity(&r), || format!("p={p}: psi(lambda(nine)) != 1"))?;
        // replay through the JSON form
        let moves = MoveTrace::moves_from_json(&r, &ds.trace.moves_json()).map_err(|e| e.to_string())?;
        let replay = MoveTrace { start: ds.nine.clone(), moves };
        ensure(replay.end(&r).map_err(|e| e.to_string())? == ds.short, || format!("p={p}: replay"))?;
        let ul = r.mul(&ds.u, &r.from_i64(a));
        let want_letters = vec![
            r.zero(),
            r.neg(&ul),
            r.mul(&r.pow(&ds.u, -2).unwrap(), &r.from_i64(b)),
            r.mul(&r.pow(&ds.u, 2).unwrap(), &r.from_i64(a)),
        ];
        ensure(ds.short.letters == want_letters, || format!("p={p}: short word {}", ds.short))?;
    }
    Ok(())
}

// ---- 9 -------------------------------------------------------------------------

fn homology_oracles() -> Check {
    let mut cases: Vec<(String, Complex2)> = (2..=8u64)
        .map(|n| (format!("Y(Z/{n})"), Complex2::from_graph(&build_graph(&zn(n), HeightBound::default()))))
        .collect();
    for n in 1..=6u32 {
        cases.push((format!("Γ(Z,{n})"), Complex2::from_graph(&gamma_z(n, DEFAULT_WINDOW))));
    }
    for (name, c) in cases {
        let hres = homology(&c);
        let p = pi1_presentation(&c, 0).map_err(|e| e.to_string())?;
        let (rank, torsion) = p.abelianize();
        ensure(hres.h0 == 1, || format!("{name}: h0 = {}", hres.h0))?;
        ensure(rank == hres.h1_rank && torsion == hres.h1_torsion, || {
            format!("{name}: pi1^ab = ({rank}, {torsion:?}), H1 = ({}, {:?})", hres.h1_rank, hres.h1_torsion)
        })?;
    }
    Ok(())
}

// ---- 10 ------------------------------------------------------------------------

fn conj(w: &StWord, g: &StWord) -> StWord {
    // w^g = g^-1 w g
    g.inverse().then(w).then(g)
}

fn random_st_word(r: &Ring, rng: &mut ChaCha8Rng, els: &[Elem]) -> StWord {
    let mut w = StWord::empty();
    for _ in 0..rng.random_range(0..8) {
        let root = if rng.random_bool(0.5) { Root::X12 } else { Root::X21 };
        let l = StWord::x(root, &els[rng.random_range(0..els.len())]);
        w = w.then(&if rng.random_bool(0.3) { l.inverse() } else { l });
    }
    let _ = r;
    w
}

fn steinberg() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in [5u64, 7, 8] {
        let r = zn(n);
        let els = all(&r);
        let us = units(&r);
        let eq = |a: &StWord, b: &StWord| phi(&r, a) == phi(&r, b);
        for root in [Root::X12, Root::X21] {
            let other = root.other();
            for s in &els {
                for t in &els {
                    let lhs = StWord::x(root, s).then(&StWord::x(root, t));
                    ensure(eq(&lhs, &StWord::x(root, &r.add(s, t))), || format!("Z/{n}: relation (1)"))?;
                }
            }
            for u in &us {
                let ui = r.inv(u).unwrap();
                let ui2 = r.mul(&ui, &ui);
                let wu = st_w(&r, root, u).unwrap();
                let wmu = st_w(&r, root, &r.neg(u)).unwrap();
                for t in &els {
                    let lhs = wu.clone().then(&StWord::x(root, t)).then(&wmu);
                    let rhs = StWord::x(other, &r.neg(&r.mul(&ui2, t)));
                    ensure(eq(&lhs, &rhs), || format!("Z/{n}: relation (2) u={u} t={t}"))?;
                    // conjugation by w(u)^±1
                    let x = StWord::x(root, t);
                    ensure(eq(&conj(&x, &wu.inverse()), &rhs) && eq(&conj(&x, &wu), &rhs), || {
                        format!("Z/{n}: conjw u={u} t={t}")
                    })?;
                    let y = StWord::x(other, t);
                    let want = StWord::x(root, &r.neg(&r.mul(&r.mul(u, u), t)));
                    ensure(eq(&conj(&y, &wu), &want), || format!("Z/{n}: conjw (2) u={u} t={t}"))?;
                }
                for v in &us {
                    let wv = st_w(&r, root, v).unwrap();
                    let vi = r.inv(v).unwrap();
                    let want = st_w(&r, other, &r.neg(&r.mul(&r.mul(&vi, &vi), u))).unwrap();
                    ensure(eq(&conj(&wu, &wv), &want), || format!("Z/{n}: wij (1) u={u} v={v}"))?;
                }
                ensure(eq(&wu, &st_w(&r, other, &r.neg(&ui)).unwrap()), || format!("Z/{n}: wij (2) u={u}"))?;
                let hij = st_h(&r, root, u).unwrap();
                let hji = st_h(&r, other, u).unwrap();
                ensure(eq(&hji, &hij.inverse()), || format!("Z/{n}: hij u={u}"))?;
            }
        }
        for u in &us {
            for v in &us {
                ensure(phi(&r, &symbol_c(&r, u, v).unwrap()).is_identity(&r), || format!("Z/{n}: c({u},{v})"))?;
            }
            let g = gamma_map(&r, &h(&r, u).unwrap());
            ensure(phi(&r, &g) == Mat2::d(&r, u).unwrap(), || format!("Z/{n}: gamma(h~({u}))"))?;
        }
        for a in &els {
            for b in &els {
                let u = r.sub(&r.one(), &r.mul(a, b));
                if r.is_unit(&u) {
                    ensure(phi(&r, &symbol_ds(&r, a, b).unwrap()).is_identity(&r), || {
                        format!("Z/{n}: DS({a},{b})")
                    })?;
                }
            }
        }
        for _ in 0..500 {
            let w = random_st_word(&r, &mut rng, &els);
            ensure(psi(&r, &alpha_map(&r, &w)) == phi(&r, &w), || format!("Z/{n}: psi∘alpha on {w}"))?;
        }
    }
    Ok(())
}

// ---- 11 ------------------------------------------------------------------------

fn golden_files() -> Check {
    let dir = fixtures();
    let read = |name: &str| {
        std::fs::read_to_string(dir.join(name)).map_err(|e| format!("fixture {name}: {e}"))
    };
    let mut outputs: Vec<(&str, String)> = Vec::new();
    for (name, n, window) in [("farey1.svg", 1, 3), ("farey4.svg", 4, DEFAULT_WINDOW)] {
        outputs.push((name, render_svg(&farey::embed(n, window), &SvgStyle::default())));
    }
    for (stem, g) in [
        ("z4", build_graph(&zn(4), HeightBound::default())),
        ("z5", build_graph(&zn(5), HeightBound::default())),
        ("gammaz5", gamma_z(5, DEFAULT_WINDOW)),
    ] {
        let hres = homology(&Complex2::from_graph(&g));
        outputs.push((leak(format!("{stem}.graph.json")), g.to_json() + "\n"));
        outputs.push((leak(format!("{stem}.homology.json")), hres.to_json() + "\n"));
    }
    for (name, text) in outputs {
        ensure(read(name)? == text, || format!("{name} differs from the fixture"))?;
    }
    // a second render is byte-identical
    let a = render_svg(&farey::embed(4, DEFAULT_WINDOW), &SvgStyle::default());
    let b = render_svg(&farey::embed(4, DEFAULT_WINDOW), &SvgStyle::default());
    ensure(a == b, || "render is not deterministic".into())?;
    Ok(())
}

fn leak(s: String) -> &'static str {
    Box::leak(s.into_boxed_str())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Check); 11] = [
        (1, "complete graphs over Z/q", complete_graph_fields),
        (2, "Farey structure of Γ(Z,n), n ≤ 8", farey_structure),
        (3, "weak Euclid over Z, |a|,|b| ≤ 40", weak_euclid_integers),
        (4, "4-clique dichotomy", four_clique_dichotomy),
        (5, "B-calculus identities over Z/4..Z/9", b_calculus),
        (6, "relator loops collapse", relator_collapse),
        (7, "Λ and Θ", lambda_theta),
        (8, "Dennis–Stein loops", dennis_stein),
        (9, "π1 abelianization equals H1", homology_oracles),
        (10, "Steinberg identities", steinberg),
        (11, "golden files", golden_files),
    ];
    let only: Option<u32> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (k, name, f) in criteria {
        if only.is_some_and(|o| o != k) {
            continue;
        }
        let t = Instant::now();
        let res = f();
        let ms = t.elapsed().as_millis();
        match res {
            Ok(()) => println!("criterion {k:>2}: PASS  {name} ({ms} ms)"),
            Err(e) => {
                failed += 1;
                println!("criterion {k:>2}: FAIL  {name} ({ms} ms): {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
