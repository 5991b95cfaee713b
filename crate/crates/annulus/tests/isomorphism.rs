use annulus::arquiver::{build_components, mesh_check};
use annulus::correspondence::verify_isomorphism;
use annulus::moves::verify_classification;
use annulus::Config;

const CONFIGS: [(i64, i64, i64); 5] = [(2, 1, 1), (3, 2, 1), (3, 2, 2), (4, 3, 1), (5, 1, 1)];

fn configs() -> impl Iterator<Item = Config> {
    CONFIGS.iter().map(|&(g, h, m)| Config::new(g, h, m).unwrap())
}

#[test]
fn isomorphism_holds_for_all_configs() {
    for c in configs() {
        let r = verify_isomorphism(&c);
        assert!(r.passed(), "{c:?}: {:#?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn meshes_hold_for_all_configs() {
    for c in configs() {
        let (r, stats) = mesh_check(&build_components(&c), &c);
        assert!(r.passed(), "{c:?}: {:#?}", r.failures().collect::<Vec<_>>());
        assert_eq!(stats.three_vertex as i64, c.g() + c.h());
    }
}

#[test]
fn classification_agrees_with_reachability() {
    for c in configs() {
        let r = verify_classification(&c);
        assert!(r.passed(), "{c:?}: {:#?}", r.failures().collect::<Vec<_>>());
    }
}
