#![allow(dead_code)]

use num_rational::Ratio;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use unirow::graph::Graph;
use unirow::homology::Complex2;
use unirow::par::Execution;
use unirow::path::{apply_move, Move, PathWord};
use unirow::projline::{canonical_vertex, infinity};
use unirow::{Elem, HeightBound, Ring, Vertex};

pub fn els(r: &Ring, v: &[i64]) -> Vec<Elem> {
    v.iter().map(|&x| r.from_i64(x)).collect()
}

/// Small sample pools: every element of a finite ring, a range of integers otherwise.
pub fn elem_pool(r: &Ring) -> Vec<Elem> {
    if r.is_finite() {
        r.enumerate_elements(HeightBound::default())
    } else {
        (-3..=3).map(|x| r.from_i64(x)).collect()
    }
}

pub fn unit_pool(r: &Ring) -> Vec<Elem> {
    r.enumerate_units(HeightBound::new(2, 1))
}

pub fn random_expansion(r: &Ring, rng: &mut ChaCha8Rng, p: &PathWord) -> Move {
    let n = p.len();
    if n > 0 && rng.random_bool(0.5) {
        let units = unit_pool(r);
        let u = units[rng.random_range(0..units.len())].clone();
        Move::Expand2 { index: rng.random_range(0..n), param: u }
    } else {
        let pool = elem_pool(r);
        let a = pool[rng.random_range(0..pool.len())].clone();
        Move::Expand1 { index: rng.random_range(0..=n), param: a }
    }
}

/// A loop at infinity built from `steps` random expansions of the trivial loop.
pub fn random_loop(r: &Ring, rng: &mut ChaCha8Rng, steps: usize) -> PathWord {
    let mut p = PathWord::trivial(r);
    for _ in 0..steps {
        let m = random_expansion(r, rng, &p);
        p = apply_move(r, &p, &m).expect("expansions always apply");
    }
    p
}

/// Any applicable move: a random expansion or one of the available contractions.
pub fn random_move(r: &Ring, rng: &mut ChaCha8Rng, p: &PathWord) -> Move {
    let l = &p.letters;
    let mut options = Vec::new();
    for j in 1..l.len() {
        if r.is_zero(&l[j]) {
            options.push(Move::Contract1 { index: j });
        }
        if r.is_unit(&l[j]) {
            options.push(Move::Contract2 { index: j });
        }
    }
    if options.is_empty() || rng.random_bool(0.5) {
        random_expansion(r, rng, p)
    } else {
        options.swap_remove(rng.random_range(0..options.len()))
    }
}

/// Clique complex on ∞ and all p/q with q ≤ den and |p/q| ≤ width.
pub fn farey_box(den: i64, width: i64) -> (Ring, Complex2) {
    let r = Ring::integers();
    let mut vs: Vec<Vertex> = vec![infinity(&r)];
    for q in 1..=den {
        for p in -width * q..=width * q {
            if Ratio::new(p, q).denom() == &q {
                vs.push(canonical_vertex(&r, &r.from_i64(p), &r.from_i64(q)).unwrap());
            }
        }
    }
    let g = Graph::induced(&r, HeightBound::new(den as u64, 1), vs, false, Execution::default());
    let c = Complex2::from_graph(&g);
    (r, c)
}

pub fn fits_box(r: &Ring, p: &PathWord, den: i64, width: i64) -> bool {
    p.vertices(r).iter().all(|v| match (&v.a, &v.b) {
        (Elem::Int(a), Elem::Int(b)) => {
            let (a, b): (i64, i64) = match (a.try_into(), b.try_into()) {
                (Ok(a), Ok(b)) => (a, b),
                _ => return false,
            };
            b == 0 || (b <= den && a.abs() <= width * b)
        }
        _ => false,
    })
}
