use fiberstab_core::basecurve::{
    enumerate_quasimap_types, mmp_step, run_mmp, total_degree, BoundaryPoint, Component, DecoratedDualGraph, Edge,
    MmpEnd, MmpStep,
};
use fiberstab_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A connected graph: a random tree plus occasional extra edges.
fn random_graph(rng: &mut ChaCha8Rng) -> DecoratedDualGraph {
    let n = rng.gen_range(1..=8);
    let components: Vec<Component> = (0..n)
        .map(|id| {
            let boundary = (0..rng.gen_range(0..=2))
                .map(|k| BoundaryPoint {
                    coefficient: Rational::new(rng.gen_range(1..=12), 12),
                    location: format!("p{}", k),
                })
                .collect();
            Component {
                id,
                genus: if rng.gen_bool(0.25) { rng.gen_range(1..=2) } else { 0 },
                moduli_degree: Rational::new(rng.gen_range(0..=18), 12),
                boundary,
                markings: 0,
            }
        })
        .collect();
    let mut edges: Vec<Edge> =
        (1..n).map(|v| Edge { a: rng.gen_range(0..v), b: v, stabilizer: rng.gen_range(1..=4) }).collect();
    if n > 2 && rng.gen_bool(0.3) {
        let a = rng.gen_range(0..n);
        let b = (a + 1 + rng.gen_range(0..n - 1)) % n;
        edges.push(Edge { a, b, stabilizer: 1 });
    }
    DecoratedDualGraph::new(components, edges).unwrap().0
}

#[test]
fn mmp_conserves_total_degree_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let g = random_graph(&mut rng);
        let before = total_degree(&g);
        let mut cur = g.clone();
        let mut steps = 0;
        while let MmpStep::Contracted { graph, tail } = mmp_step(&cur).unwrap() {
            let t = cur.component(tail).unwrap();
            assert_ne!(t.moduli_degree, Rational::one(), "a tail of moduli degree 1 was contracted");
            assert_eq!(total_degree(&graph), before);
            cur = graph;
            steps += 1;
        }
        assert!(steps <= g.components.len());
        let run = run_mmp(&g).unwrap();
        assert_eq!(run.graph, cur);
        assert_eq!(total_degree(&run.graph), before);
        match run.end {
            MmpEnd::Minimal => {
                for c in &run.graph.components {
                    assert!(run.graph.component_degree(c.id).unwrap().signum() >= 0);
                }
            }
            MmpEnd::MoriFibreSpace => assert_eq!(run.graph.components.len(), 1),
        }
    }
}

#[test]
fn unit_tails_survive() {
    let comps = (0..4)
        .map(|id| Component {
            id,
            genus: u32::from(id == 0),
            moduli_degree: if id == 0 { Rational::zero() } else { Rational::one() },
            boundary: vec![],
            markings: 0,
        })
        .collect();
    let edges = (1..4).map(|b| Edge { a: 0, b, stabilizer: 3 }).collect();
    let (g, _) = DecoratedDualGraph::new(comps, edges).unwrap();
    assert_eq!(run_mmp(&g).unwrap().graph, g);
}

#[test]
fn quasimap_types_small_degrees() {
    for d in 1..=6 {
        let types = enumerate_quasimap_types(d).unwrap();
        assert_eq!(types[0].degrees, vec![d]);
        for t in &types {
            assert_eq!(t.degrees.iter().sum::<i64>(), d);
            assert_eq!(t.edges.len() + 1, t.degrees.len());
            assert!(t.contracted() <= 1);
        }
    }
    assert_eq!(enumerate_quasimap_types(1).unwrap().len(), 1);
    assert_eq!(enumerate_quasimap_types(6).unwrap().len(), 6);
}
