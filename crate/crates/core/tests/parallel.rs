use unirow::farey::gamma_z_with;
use unirow::graph::build_graph_with;
use unirow::homology::{homology, Complex2};
use unirow::par::{map_range, map_slice, Execution};
use unirow::{HeightBound, Ring};

const BOTH: [Execution; 2] = [Execution::Sequential, Execution::Parallel];

#[test]
fn helpers_keep_order() {
    for exec in BOTH {
        assert_eq!(map_range(1000, exec, |i| i * i), (0..1000).map(|i| i * i).collect::<Vec<_>>());
        let xs: Vec<u64> = (0..500).rev().collect();
        assert_eq!(map_slice(&xs, exec, |x| x + 1), xs.iter().map(|x| x + 1).collect::<Vec<_>>());
    }
}

#[test]
fn graphs_agree() {
    for (spec, b) in [("Z/12", HeightBound::default()), ("Z", HeightBound::new(4, 1)), ("Z[1/6]", HeightBound::new(2, 1)), ("quad(-3)", HeightBound::new(1, 1))] {
        let r = Ring::parse(spec).unwrap();
        let [s, p] = BOTH.map(|e| build_graph_with(&r, b, e));
        assert_eq!(s, p, "{spec}");
        assert_eq!(s.to_json(), p.to_json());
        for k in 2..=4 {
            assert_eq!(s.cliques_with(k, Execution::Sequential), p.cliques_with(k, Execution::Parallel));
        }
        let [cs, cp] = BOTH.map(|e| Complex2::from_graph_with(&s, e));
        assert_eq!(cs.triangles, cp.triangles);
        assert_eq!(homology(&cs), homology(&cp));
    }
}

#[test]
fn farey_graphs_agree() {
    for n in 1..=6 {
        let [s, p] = BOTH.map(|e| gamma_z_with(n, 3, e));
        assert_eq!(s, p);
    }
}
