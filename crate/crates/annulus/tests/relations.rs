use annulus::relations::{
    verify_c1_c2_with, verify_diamonds, verify_e_with, verify_f_sweep, verify_factoring, RelationContext,
};
use annulus::Config;

const CONFIGS: [(i64, i64, i64); 5] = [(2, 1, 1), (3, 2, 1), (3, 2, 2), (4, 3, 1), (5, 1, 1)];

fn contexts() -> impl Iterator<Item = RelationContext> {
    CONFIGS.iter().map(|&(g, h, m)| RelationContext::new(&Config::new(g, h, m).unwrap()))
}

#[test]
fn connecting_identities_collapse() {
    for ctx in contexts() {
        let r = verify_c1_c2_with(&ctx);
        assert!(r.passed(), "{:?}: {:#?}", ctx.cfg, r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn tube_paths_agree_for_every_round_count() {
    for ctx in contexts() {
        let r = verify_f_sweep(&ctx.cfg);
        assert_eq!(r.checks.len() as i64, ctx.cfg.big_n() + 2);
        assert!(r.passed(), "{:?}: {:#?}", ctx.cfg, r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn zero_relations_are_derived() {
    for ctx in contexts() {
        let r = verify_e_with(&ctx);
        assert!(r.passed(), "{:?}: {:#?}", ctx.cfg, r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn diamonds_and_factoring() {
    for ctx in contexts() {
        let r = verify_diamonds(&ctx.quiver, &ctx.cfg);
        assert!(r.passed(), "{:?}: {:#?}", ctx.cfg, r.failures().collect::<Vec<_>>());
        let r = verify_factoring(&ctx.quiver, &ctx.cfg);
        assert!(r.passed(), "{:?}: {:#?}", ctx.cfg, r.failures().collect::<Vec<_>>());
    }
}
