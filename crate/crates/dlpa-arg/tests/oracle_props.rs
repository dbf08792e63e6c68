//! Invariants of the definition-level semantics oracle, checked exhaustively
//! on all three-argument frameworks and on randomized larger ones.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::af;
use dlpa_arg::af::{
    extensions, is_admissible, is_conflict_free, range, ArgFramework, Extension, Semantics,
    ALL_SEMANTICS,
};
use dlpa_arg::sampling::{arg_names, random_af};

fn all_three_arg_frameworks() -> Vec<ArgFramework> {
    let names = arg_names(3);
    let pairs: Vec<(String, String)> = names
        .iter()
        .flat_map(|x| names.iter().map(move |y| (x.clone(), y.clone())))
        .collect();
    (0u32..512)
        .map(|mask| {
            ArgFramework::new(
                names.iter().cloned(),
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, p)| p.clone()),
            )
        })
        .collect()
}

fn check_invariants(framework: &ArgFramework) {
    let by_sem: Vec<(Semantics, Vec<Extension>)> = ALL_SEMANTICS
        .iter()
        .map(|s| (*s, extensions(framework, *s).unwrap()))
        .collect();
    let get = |sem: Semantics| &by_sem.iter().find(|(s, _)| *s == sem).unwrap().1;

    // existence and single-status
    for (sem, exts) in &by_sem {
        if *sem != Semantics::Stable {
            assert!(!exts.is_empty(), "{sem} empty on {framework}");
        }
        if sem.is_single_status() {
            assert_eq!(exts.len(), 1, "{sem} not a singleton on {framework}");
        }
    }

    let stable = get(Semantics::Stable);
    let semi_stable = get(Semantics::SemiStable);
    let stage = get(Semantics::Stage);
    if !stable.is_empty() {
        assert_eq!(stable, semi_stable, "stable != semi-stable on {framework}");
        assert_eq!(stable, stage, "stable != stage on {framework}");
    }
    // stable extensions are always stage extensions
    for e in stable {
        assert!(stage.contains(e));
    }

    // admissibility and conflict-freeness principles
    for sem in [
        Semantics::Stable,
        Semantics::Complete,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::SemiStable,
        Semantics::Ideal,
        Semantics::Eager,
    ] {
        for e in get(sem) {
            assert!(is_admissible(framework, e).unwrap(), "{sem}: {e} not admissible");
        }
    }
    for sem in [Semantics::Naive, Semantics::Stage] {
        for e in get(sem) {
            assert!(is_conflict_free(framework, e).unwrap());
        }
    }

    // inclusion chains
    let complete = get(Semantics::Complete);
    let grounded = &get(Semantics::Grounded)[0];
    for e in complete {
        assert!(grounded.is_subset(e), "grounded not below complete");
    }
    let preferred = get(Semantics::Preferred);
    let ideal = &get(Semantics::Ideal)[0];
    for e in preferred {
        assert!(ideal.is_subset(e), "ideal not below preferred");
        assert!(complete.contains(e), "preferred not complete");
    }
    let eager = &get(Semantics::Eager)[0];
    for e in semi_stable {
        assert!(eager.is_subset(e), "eager not below semi-stable");
        assert!(complete.contains(e), "semi-stable not complete");
    }

    // naive sets are maximal conflict-free
    let naive = get(Semantics::Naive);
    for e in naive {
        for extra in framework.args() {
            if !e.contains(extra) {
                let mut bigger = e.clone();
                bigger.members.insert(extra.clone());
                assert!(
                    !is_conflict_free(framework, &bigger).unwrap(),
                    "naive {e} extendable by {extra}"
                );
            }
        }
    }
}

#[test]
fn exhaustive_three_argument_invariants() {
    for framework in all_three_arg_frameworks() {
        check_invariants(&framework);
    }
}

#[test]
fn randomized_invariants_up_to_six_arguments() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for i in 0..500 {
        let n = 2 + i % 5; // 2..=6
        let framework = random_af(&mut rng, &arg_names(n));
        check_invariants(&framework);
    }
}

#[test]
fn ranges_on_the_known_frameworks() {
    let a0 = common::a0();
    let r = range(&a0, &Extension::of(["c", "d"])).unwrap();
    assert_eq!(r.members.len(), 5);

    // stage and semi-stable differ from naive/preferred where ranges matter
    let a1 = common::a1();
    assert_eq!(
        extensions(&a1, Semantics::SemiStable).unwrap(),
        vec![Extension::of(["a", "c"])]
    );
    assert!(extensions(&a1, Semantics::Stable).unwrap().is_empty());
}

#[test]
fn disconnected_framework_semantics_compose() {
    // two independent two-cycles: four stable extensions
    let framework = af(
        ["a", "b", "c", "d"],
        [("a", "b"), ("b", "a"), ("c", "d"), ("d", "c")],
    );
    let stable = extensions(&framework, Semantics::Stable).unwrap();
    assert_eq!(stable.len(), 4);
    let grounded = extensions(&framework, Semantics::Grounded).unwrap();
    assert_eq!(grounded, vec![Extension::default()]);
}
