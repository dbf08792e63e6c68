//! Valuation-level correctness of the semantics formulas and the copy/range
//! machinery behind semi-stable and stage.

mod common;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use dlpa_arg::af::{self, Semantics, ALL_SEMANTICS};
use dlpa_arg::encodings::{
    af_of_valuation, ext_of_valuation, primed_ext_of_valuation, valuation_of_af, EncodingContext,
};
use dlpa_arg::eval::Evaluator;
use dlpa_arg::sampling::{arg_names, random_af};
use dlpa_arg::universe::{Universe, Valuation, Var};

/// Semantics formulas hold at a valuation exactly when its acceptance
/// variables spell an extension of its framework — checked on every
/// valuation over a two-argument universe, well-formed or not.
#[test]
fn formula_truth_matches_extension_membership_exhaustively() {
    let universe = Universe::new(["a", "b"]).unwrap();
    let ctx = EncodingContext::new(universe.clone());
    let vars: Vec<Var> = vec![
        Var::aw("a"),
        Var::aw("b"),
        Var::inn("a"),
        Var::inn("b"),
        Var::att("a", "a"),
        Var::att("a", "b"),
        Var::att("b", "a"),
        Var::att("b", "b"),
    ];
    let mut ev = Evaluator::new(&universe);
    for mask in 0u64..(1 << vars.len()) {
        let chosen: Vec<&Var> = vars
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v)
            .collect();
        let v = Valuation::from_vars(&universe, chosen.into_iter()).unwrap();
        let framework = af_of_valuation(&universe, &v);
        let candidate = ext_of_valuation(&universe, &v);
        for sem in ALL_SEMANTICS {
            let by_formula = ev.eval(&v, &ctx.semantics_formula(sem)).unwrap();
            let by_oracle = af::extensions(&framework, sem)
                .unwrap()
                .contains(&candidate);
            assert_eq!(
                by_formula, by_oracle,
                "{sem} at {} (framework {framework}, candidate {candidate})",
                v.display(&universe)
            );
        }
    }
}

/// Extension sets through the logic equal the oracle's on small random
/// frameworks for every semantics (smoke version of the acceptance check).
#[test]
fn encoding_matches_oracle_on_random_frameworks() {
    let names = arg_names(3);
    let universe = Universe::new(names.clone()).unwrap();
    let ctx = EncodingContext::new(universe);
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for _ in 0..25 {
        let framework = random_af(&mut rng, &names);
        for sem in ALL_SEMANTICS {
            let report = ctx.check_encoding(&framework, sem).unwrap();
            assert!(
                report.agrees,
                "{sem} disagreed on {framework}: oracle {:?}, dlpa {:?}",
                report.oracle_set, report.encoding_set
            );
        }
    }
}

/// After copying the acceptance variables and rebuilding any complete
/// extension, the primed projection equals the original extension and the
/// framework part is untouched.
#[test]
fn copy_then_rebuild_preserves_the_snapshot() {
    let names = arg_names(3);
    let universe = Universe::new(names.clone()).unwrap();
    let ctx = EncodingContext::new(universe.clone());
    let program = dlpa_arg::syntax::copy_in(&universe).seq(ctx.make_ext(Semantics::Complete));
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut ev = Evaluator::new(&universe);
    for _ in 0..40 {
        let framework = random_af(&mut rng, &names);
        let mut v = valuation_of_af(&universe, &framework).unwrap();
        // a random acceptance snapshot, not necessarily an extension
        for a in &names {
            if rng.gen_bool(0.5) {
                v.insert(&universe, &Var::inn(a.clone())).unwrap();
            }
        }
        let before_ext = ext_of_valuation(&universe, &v);
        for w in ev.successors(&v, &program).unwrap() {
            assert_eq!(primed_ext_of_valuation(&universe, &w), before_ext);
            assert_eq!(af_of_valuation(&universe, &w), framework);
            // and the rebuilt acceptance set is complete for the framework
            let rebuilt = ext_of_valuation(&universe, &w);
            assert!(af::extensions(&framework, Semantics::Complete)
                .unwrap()
                .contains(&rebuilt));
        }
    }
}

/// On well-formed valuations whose primed set is inside the aware set, the
/// two range-comparison formulas mean exactly the range inclusions.
#[test]
fn range_comparison_formulas_mean_range_inclusion() {
    let names = arg_names(3);
    let universe = Universe::new(names.clone()).unwrap();
    let ctx = EncodingContext::new(universe.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut ev = Evaluator::new(&universe);
    let mut checked = 0;
    while checked < 300 {
        let framework = random_af(&mut rng, &names);
        let mut v = valuation_of_af(&universe, &framework).unwrap();
        for a in &names {
            if framework.contains_arg(a) && rng.gen_bool(0.5) {
                v.insert(&universe, &Var::inn(a.clone())).unwrap();
            }
            if framework.contains_arg(a) && rng.gen_bool(0.5) {
                v.insert(&universe, &Var::in_prime(a.clone())).unwrap();
            }
        }
        // preconditions: Well and primed ⊆ aware hold by construction here
        let ext = ext_of_valuation(&universe, &v);
        let primed = primed_ext_of_valuation(&universe, &v);
        let ext_range = af::range(&framework, &ext).unwrap();
        let primed_range = af::range(&framework, &primed).unwrap();

        assert_eq!(
            ev.eval(&v, &ctx.includes_cp()).unwrap(),
            primed_range.is_subset(&ext_range),
            "includes_cp at {}",
            v.display(&universe)
        );
        assert_eq!(
            ev.eval(&v, &ctx.included_in_cp()).unwrap(),
            ext_range.is_subset(&primed_range),
            "included_in_cp at {}",
            v.display(&universe)
        );
        checked += 1;
    }
}

/// The known extension landscape of the three showcase frameworks, through
/// the logic.
#[test]
fn showcase_frameworks_through_the_logic() {
    let universe = Universe::new(["a", "b", "c", "d", "e"]).unwrap();
    let ctx = EncodingContext::new(universe);

    let a0 = common::a0();
    let stable = ctx.extensions_via_dlpa(&a0, Semantics::Stable).unwrap();
    assert_eq!(stable.len(), 2);

    let a2 = common::a2();
    let preferred = ctx.extensions_via_dlpa(&a2, Semantics::Preferred).unwrap();
    assert!(preferred.contains(&af::Extension::of(["a"])));
    let eager = ctx.extensions_via_dlpa(&a2, Semantics::Eager).unwrap();
    assert_eq!(eager, vec![af::Extension::of(["b", "d"])]);

    let a1 = common::a1();
    let universe4 = Universe::new(["a", "b", "c", "d"]).unwrap();
    let ctx4 = EncodingContext::new(universe4);
    assert!(ctx4
        .extensions_via_dlpa(&a1, Semantics::Stable)
        .unwrap()
        .is_empty());
    assert_eq!(
        ctx4.extensions_via_dlpa(&a1, Semantics::SemiStable).unwrap(),
        vec![af::Extension::of(["a", "c"])]
    );
}

/// The cross-check bound is enforced.
#[test]
fn check_bound_is_enforced() {
    let names = arg_names(7);
    let universe = Universe::new(names.clone()).unwrap();
    let ctx = EncodingContext::new(universe);
    let framework = dlpa_arg::af::ArgFramework::new(names, []);
    assert!(matches!(
        ctx.check_encoding(&framework, Semantics::Stable),
        Err(dlpa_arg::Error::Resource(_))
    ));
}
