//! Query engine properties: dual-engine agreement on randomized instances,
//! the monotone mode lattice, and witness re-verification.

mod common;

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use dlpa_arg::af::{self, ArgFramework, Semantics};
use dlpa_arg::encodings::EncodingContext;
use dlpa_arg::error::Error;
use dlpa_arg::query::{
    acceptance_direct, controllability_direct, cross_check, cross_check_control, verify_witness,
    AcceptanceMode, Control, ALL_ACCEPTANCE_MODES, NCA, NSA, PCA, PSA,
};
use dlpa_arg::sampling::{
    arg_names, random_caf, random_cciaf, random_ciaf, random_ciafjm, random_dargiaf, random_iaf,
    random_riaf,
};
use dlpa_arg::uncertainty::{ArgSet, Uncertain};
use dlpa_arg::universe::Universe;

fn queryable_arg(structure: &Uncertain) -> Option<String> {
    match structure {
        Uncertain::Af(af) => af.args().iter().next().cloned(),
        Uncertain::Iaf(s) => s.fixed_args().iter().next().cloned(),
        Uncertain::Riaf(s) => s.iaf().fixed_args().iter().next().cloned(),
        Uncertain::Ciaf(s) => s
            .args()
            .iter()
            .find(|a| structure.check_query_arg(a).is_ok())
            .cloned(),
        Uncertain::CiafJm(s) => s.iaf().fixed_args().iter().next().cloned(),
        Uncertain::DargIaf(s) => s.fixed_args().iter().next().cloned(),
    }
}

fn agreement_round(
    names: &[String],
    structures: Vec<Uncertain>,
    semantics: &[Semantics],
    rng: &mut ChaCha8Rng,
) {
    let universe = Universe::new(names.to_vec()).unwrap();
    let ctx = EncodingContext::new(universe);
    for structure in structures {
        let Some(arg) = queryable_arg(&structure) else {
            continue;
        };
        let sem = semantics[rng.gen_range(0..semantics.len())];
        let mode = ALL_ACCEPTANCE_MODES[rng.gen_range(0..4)];
        let report = cross_check(&ctx, &structure, sem, &arg, mode)
            .unwrap_or_else(|e| panic!("{} {sem}-{mode} for {arg}: {e}", structure.kind_name()));
        assert!(report.agreed());

        // every produced witness re-verifies against the direct machinery
        for result in [&report.direct, &report.dlpa] {
            if let Some(w) = &result.witness {
                let completions_of = |_: Option<&ArgSet>| structure.completions();
                assert!(
                    verify_witness(&completions_of, sem, &arg, mode, w).unwrap(),
                    "stale witness from {:?}",
                    result.engine
                );
            }
        }
    }
}

/// Direct and model-checking engines agree across formalisms, semantics, and
/// modes (the full-size run lives in the acceptance suite).
#[test]
fn engines_agree_on_randomized_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let names4 = arg_names(4);
    let names3 = arg_names(3);
    let cheap = [
        Semantics::Stable,
        Semantics::Complete,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Naive,
        Semantics::SemiStable,
        Semantics::Stage,
    ];
    let nested = [Semantics::Ideal, Semantics::Eager];

    for _ in 0..12 {
        let structures4 = vec![
            Uncertain::Iaf(random_iaf(&mut rng, &names4, 3)),
            Uncertain::Riaf(random_riaf(&mut rng, &names4, 3)),
            Uncertain::DargIaf(random_dargiaf(&mut rng, &names4, 3)),
        ];
        agreement_round(&names4, structures4, &cheap, &mut rng);

        let structures3 = vec![
            Uncertain::Ciaf(random_ciaf(&mut rng, &names3)),
            Uncertain::CiafJm(random_ciafjm(&mut rng, &names3, 2)),
            Uncertain::Iaf(random_iaf(&mut rng, &names3, 2)),
        ];
        agreement_round(&names3, structures3, &nested, &mut rng);
    }
}

/// Controllability engines agree too.
#[test]
fn control_engines_agree_on_randomized_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let names = arg_names(4);
    let universe = Universe::new(names.clone()).unwrap();
    let ctx = EncodingContext::new(universe);
    let semantics = [
        Semantics::Stable,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Naive,
    ];
    for _ in 0..25 {
        let caf = random_caf(&mut rng, &names, 2);
        if let Some(arg) = caf.fixed_args().iter().next().cloned() {
            let control = Control::Caf(caf);
            let sem = semantics[rng.gen_range(0..semantics.len())];
            let mode = ALL_ACCEPTANCE_MODES[rng.gen_range(0..4)];
            let report = cross_check_control(&ctx, &control, sem, &arg, mode).unwrap();
            assert!(report.agreed());
            if let Some(w) = &report.direct.witness {
                let completions_of = |cfg: Option<&ArgSet>| match cfg {
                    Some(cfg) => control.completions_under(cfg),
                    None => Err(Error::domain("controllability witness without cfg")),
                };
                assert!(verify_witness(&completions_of, sem, &arg, mode, w).unwrap());
            }
        }

        let cciaf = random_cciaf(&mut rng, &names);
        let control = Control::CcIaf(cciaf);
        let arg = control
            .control_args()
            .iter()
            .next()
            .cloned()
            .map(|_| ())
            .and_then(|_| match &control {
                Control::CcIaf(c) => c
                    .static_args()
                    .iter()
                    .find(|a| control.check_query_arg(a).is_ok())
                    .cloned(),
                _ => None,
            });
        if let Some(arg) = arg {
            let sem = semantics[rng.gen_range(0..semantics.len())];
            let mode = ALL_ACCEPTANCE_MODES[rng.gen_range(0..4)];
            let report = cross_check_control(&ctx, &control, sem, &arg, mode).unwrap();
            assert!(report.agreed());
        }
    }
}

/// Necessary-sceptical entails necessary-credulous entails possible-credulous
/// (and through the possible-sceptical corner), whenever every completion has
/// at least one extension; only stable semantics can miss that guard.
#[test]
fn mode_lattice_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let names = arg_names(4);
    let semantics = [
        Semantics::Stable,
        Semantics::Complete,
        Semantics::Grounded,
        Semantics::Preferred,
        Semantics::Naive,
    ];
    let mut guarded_runs = 0;
    for _ in 0..150 {
        let structure = match rng.gen_range(0..3) {
            0 => Uncertain::Iaf(random_iaf(&mut rng, &names, 3)),
            1 => Uncertain::Riaf(random_riaf(&mut rng, &names, 3)),
            _ => Uncertain::DargIaf(random_dargiaf(&mut rng, &names, 3)),
        };
        let Some(arg) = queryable_arg(&structure) else {
            continue;
        };
        let sem = semantics[rng.gen_range(0..semantics.len())];
        let completions = structure.completions().unwrap();
        let all_have_extensions = completions
            .iter()
            .all(|c| !af::extensions(c, sem).unwrap().is_empty());
        if !all_have_extensions || completions.is_empty() {
            continue;
        }
        guarded_runs += 1;
        let answer = |mode: AcceptanceMode| {
            acceptance_direct(&structure, sem, &arg, mode).unwrap().answer
        };
        let (nsa, nca, pca, psa) = (answer(NSA), answer(NCA), answer(PCA), answer(PSA));
        if nsa {
            assert!(nca, "NSA without NCA");
            assert!(psa, "NSA without PSA");
        }
        if nca {
            assert!(pca, "NCA without PCA");
        }
        if psa {
            assert!(pca, "PSA without PCA");
        }
    }
    assert!(guarded_runs > 50, "guard filtered out too many instances");
}

/// With no stable extension anywhere, sceptical acceptance is vacuous and
/// credulous acceptance fails.
#[test]
fn stable_vacuity_edge() {
    // a single self-attacker has no stable extension
    let af = common::af(["a"], [("a", "a")]);
    let structure = Uncertain::Af(af);
    assert!(acceptance_direct(&structure, Semantics::Stable, "a", NSA).unwrap().answer);
    assert!(acceptance_direct(&structure, Semantics::Stable, "a", PSA).unwrap().answer);
    assert!(!acceptance_direct(&structure, Semantics::Stable, "a", NCA).unwrap().answer);
    assert!(!acceptance_direct(&structure, Semantics::Stable, "a", PCA).unwrap().answer);
}

/// A control framework with no control arguments reduces to acceptance on
/// the merged structure.
#[test]
fn controllability_without_control_arguments_is_acceptance() {
    let mut rng = ChaCha8Rng::seed_from_u64(127);
    let names = arg_names(4);
    for _ in 0..30 {
        let riaf = random_riaf(&mut rng, &names, 3);
        let caf = dlpa_arg::control::Caf::new(
            riaf.iaf().fixed_args().clone(),
            riaf.iaf().fixed_atts().clone(),
            riaf.iaf().uncertain_args().clone(),
            riaf.iaf().uncertain_atts().clone(),
            riaf.sym_atts().clone(),
            ArgSet::new(),
            BTreeSet::new(),
        )
        .unwrap();
        let Some(arg) = riaf.iaf().fixed_args().iter().next().cloned() else {
            continue;
        };
        for mode in ALL_ACCEPTANCE_MODES {
            let via_control =
                controllability_direct(&Control::Caf(caf.clone()), Semantics::Preferred, &arg, mode)
                    .unwrap()
                    .answer;
            let via_acceptance =
                acceptance_direct(&Uncertain::Riaf(riaf.clone()), Semantics::Preferred, &arg, mode)
                    .unwrap()
                    .answer;
            assert_eq!(via_control, via_acceptance);
        }
    }
}

/// Witnesses carry what the answer pattern admits: satisfying completions
/// for possible answers, refuting ones for failed necessary answers.
#[test]
fn witness_patterns() {
    let iaf = common::iaf0();
    let structure = Uncertain::Iaf(iaf);

    let pca = acceptance_direct(&structure, Semantics::Stable, "b", PCA).unwrap();
    assert!(pca.answer);
    let w = pca.witness.unwrap();
    assert!(w.completion.is_some());
    assert!(w.extension.unwrap().contains("b"));

    let nsa = acceptance_direct(&structure, Semantics::Stable, "b", NSA).unwrap();
    assert!(!nsa.answer);
    let w = nsa.witness.unwrap();
    assert!(w.completion.is_some());
    assert!(!w.extension.unwrap().contains("b"));

    let nca_true = acceptance_direct(&structure, Semantics::Naive, "a", NCA).unwrap();
    assert!(nca_true.witness.is_none() || nca_true.answer);

    // on control structures the witness carries the configuration
    let caf = common::caf0();
    let nscon = controllability_direct(&Control::Caf(caf), Semantics::Stable, "a", NSA).unwrap();
    assert!(nscon.answer);
    assert_eq!(nscon.witness.unwrap().configuration.unwrap(), ArgSet::new());
}

/// The three showcase structures, every semantics, every mode: both engines.
#[test]
fn showcase_structures_full_sweep() {
    let universe = common::universe6();
    let ctx = EncodingContext::new(universe);
    let structures = [
        Uncertain::Iaf(common::iaf0()),
        Uncertain::Riaf(common::riaf0()),
    ];
    for structure in &structures {
        for sem in [
            Semantics::Stable,
            Semantics::Complete,
            Semantics::Grounded,
            Semantics::Preferred,
            Semantics::Naive,
        ] {
            for mode in ALL_ACCEPTANCE_MODES {
                for arg in ["a", "b", "d"] {
                    let report = cross_check(&ctx, structure, sem, arg, mode).unwrap();
                    assert!(report.agreed());
                }
            }
        }
    }

    let universe2 = Universe::new(["a", "b"]).unwrap();
    let ctx2 = EncodingContext::new(universe2);
    let polarized = Uncertain::Ciaf(common::ciaf0());
    for sem in dlpa_arg::af::ALL_SEMANTICS {
        for mode in ALL_ACCEPTANCE_MODES {
            for arg in ["a", "b"] {
                let report = cross_check(&ctx2, &polarized, sem, arg, mode).unwrap();
                assert!(report.agreed());
            }
        }
    }

    // the polarized pair under grounded semantics: possibly but not
    // necessarily accepted
    let pca = acceptance_direct(&polarized, Semantics::Grounded, "a", PCA).unwrap();
    assert!(pca.answer);
    let nsa = acceptance_direct(&polarized, Semantics::Grounded, "a", NSA).unwrap();
    assert!(!nsa.answer);
}

/// Acceptance needs the queried argument in every completion.
#[test]
fn preconditions_name_the_offender() {
    let structure = Uncertain::Iaf(common::iaf0());
    let err = acceptance_direct(&structure, Semantics::Stable, "f", PCA).unwrap_err();
    assert!(matches!(err, Error::Domain(m) if m.contains("`f`")));

    let caf = common::caf0();
    let err = controllability_direct(&Control::Caf(caf), Semantics::Stable, "c", NSA).unwrap_err();
    assert!(matches!(err, Error::Domain(m) if m.contains("`c`")));
}
