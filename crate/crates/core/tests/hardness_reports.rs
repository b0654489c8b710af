use geostream::hardness::segments_from_disjointness;
use geostream::hardness::{
    chain_gap_report, chain_layout, disjointness_gap_report, gen_chain, gen_disjointness, max_coordinate_bits,
};
use geostream::oracle::{intersection_graph, max_independent_set};

#[test]
fn disjointness_reports_pass_on_generated_instances() {
    for &(n, t) in &[(8, 2), (12, 3), (24, 4), (40, 5), (60, 6)] {
        for answer in [false, true] {
            for seed in 0..8 {
                let inst = gen_disjointness(n, t, answer, seed).unwrap();
                let report = disjointness_gap_report(&inst).unwrap();
                assert!(report.passed(), "({n},{t},{answer},{seed}): {:?}", report.failures());
                assert_eq!(report.checks.len(), 10);
            }
        }
    }
}

#[test]
fn witness_of_yes_instance_is_the_shared_group() {
    let inst = gen_disjointness(8, 2, true, 4).unwrap();
    let j = inst.full_column().unwrap();
    let stream = segments_from_disjointness(&inst);
    let sol = max_independent_set(stream.objects()).unwrap();
    let ones = inst.ones();
    assert_eq!(sol.size, 2);
    assert!(sol.witness.iter().all(|&k| ones[k].1 == j));
}

#[test]
fn no_instance_segment_graph_is_complete() {
    let inst = gen_disjointness(24, 4, false, 2).unwrap();
    let g = intersection_graph(segments_from_disjointness(&inst).objects()).unwrap();
    assert!((0..12).all(|u| (0..12).all(|v| (u == v) != g.adjacent(u, v))));
    assert_eq!(g.max_clique().size, 12);
}

#[test]
fn chain_reports_pass_and_serialize() {
    for &(big_n, t) in &[(4, 2), (4, 3), (6, 3), (3, 4), (2, 6)] {
        for z in [false, true] {
            for seed in 0..6 {
                let inst = gen_chain(big_n, t, z, seed).unwrap();
                let report = chain_gap_report(&inst).unwrap();
                assert!(report.passed(), "(N={big_n},t={t},z={z},{seed}): {:?}", report.failures());
            }
        }
    }
    let inst = gen_chain(4, 3, true, 1).unwrap();
    let json = serde_json::to_value(chain_layout(&inst)).unwrap();
    assert_eq!(json["stack_lengths"], serde_json::json!(["72", "16", "2"]));
    let report = serde_json::to_value(chain_gap_report(&inst).unwrap()).unwrap();
    assert_eq!(report["nesting"], serde_json::json!(true));
}

#[test]
fn coordinate_growth_is_polynomial_in_n() {
    // S_1 = Θ(N^{t-1}), so the bit length grows by about log2 N per party.
    for t in 2..=8 {
        let inst = gen_chain(16, t, true, 0).unwrap();
        let bits = max_coordinate_bits(&inst) as f64;
        assert!(bits <= 4.0 * t as f64 * 18f64.log2(), "t={t}: {bits}");
        assert!(bits >= (t as f64 - 1.0) * 4.0);
    }
}
