//! Completion machinery: direct enumerators versus completion programs,
//! interval bounds, theories, and the expressivity desk checks.

mod common;

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use dlpa_arg::af::ArgFramework;
use dlpa_arg::encodings::af_of_valuation;
use dlpa_arg::eval::Evaluator;
use dlpa_arg::sampling::{
    arg_names, random_boolean, random_ciaf, random_ciafjm, random_dargiaf, random_iaf,
    random_riaf, raw_constraint_atoms,
};
use dlpa_arg::uncertainty::{
    ciaf_from_completion_set, completion_characterization, enumerate_iafs, eval_boolean,
    polarized_pair_ciaf, riaf_matching_completions, Ciaf, CiafJm, Iaf, Riaf, Uncertain,
};
use dlpa_arg::universe::{Universe, Valuation, Var};

use common::{argset, attset};

/// Successor frameworks of the completion program, from the structure's
/// valuation.
fn completions_via_program(
    universe: &Universe,
    structure: &Uncertain,
) -> BTreeSet<ArgFramework> {
    let v0 = structure.valuation(universe).unwrap();
    let program = structure.make_comp(universe).unwrap();
    Evaluator::new(universe)
        .successors(&v0, &program)
        .unwrap()
        .into_iter()
        .map(|w| af_of_valuation(universe, &w))
        .collect()
}

fn assert_both_routes_agree(universe: &Universe, structure: &Uncertain) {
    let direct = structure.completions().unwrap();
    let through_program = completions_via_program(universe, structure);
    assert_eq!(
        direct,
        through_program,
        "{} completion routes disagree",
        structure.kind_name()
    );
}

/// Both completion routes agree on randomized incomplete frameworks, their
/// rich variant, and constrained frameworks.
#[test]
fn completion_program_matches_direct_enumeration() {
    let names = arg_names(4);
    let universe = Universe::new(names.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..110 {
        assert_both_routes_agree(&universe, &Uncertain::Iaf(random_iaf(&mut rng, &names, 3)));
        assert_both_routes_agree(&universe, &Uncertain::Riaf(random_riaf(&mut rng, &names, 3)));
        assert_both_routes_agree(
            &universe,
            &Uncertain::DargIaf(random_dargiaf(&mut rng, &names, 3)),
        );
    }
    // constrained frameworks vary every variable over the argument set, so
    // keep them a size smaller
    let small = arg_names(3);
    let small_universe = Universe::new(small.clone()).unwrap();
    for _ in 0..110 {
        assert_both_routes_agree(&small_universe, &Uncertain::Ciaf(random_ciaf(&mut rng, &small)));
        assert_both_routes_agree(
            &small_universe,
            &Uncertain::CiafJm(random_ciafjm(&mut rng, &small, 2)),
        );
    }
}

/// Every completion of an incomplete framework respects the interval bounds;
/// rich completions also satisfy the direction clause.
#[test]
fn completions_respect_interval_bounds() {
    let names = arg_names(4);
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..120 {
        let riaf = random_riaf(&mut rng, &names, 3);
        let iaf = riaf.iaf();
        for completion in riaf.completions().unwrap() {
            // argument interval
            assert!(iaf.fixed_args().is_subset(completion.args()));
            assert!(completion
                .args()
                .iter()
                .all(|a| iaf.fixed_args().contains(a) || iaf.uncertain_args().contains(a)));
            // attack interval
            for (x, y) in iaf.fixed_atts() {
                if completion.contains_arg(x) && completion.contains_arg(y) {
                    assert!(completion.attacks().contains(&(x.clone(), y.clone())));
                }
            }
            for (x, y) in completion.attacks() {
                assert!(
                    iaf.fixed_atts().contains(&(x.clone(), y.clone()))
                        || iaf.uncertain_atts().contains(&(x.clone(), y.clone()))
                        || riaf.sym_atts().contains(&(x.clone(), y.clone()))
                );
            }
            // direction clause
            for (x, y) in riaf.sym_atts() {
                if completion.contains_arg(x) && completion.contains_arg(y) {
                    assert!(
                        completion.attacks().contains(&(x.clone(), y.clone()))
                            || completion.attacks().contains(&(y.clone(), x.clone())),
                        "missing both directions of ({x},{y})"
                    );
                }
            }
        }
    }
}

/// An incomplete framework seen as a rich one (no symmetric pairs) keeps its
/// completion set; a plain framework keeps itself.
#[test]
fn degenerate_embeddings() {
    let names = arg_names(4);
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..60 {
        let iaf = random_iaf(&mut rng, &names, 3);
        let as_riaf = Riaf::from_iaf(iaf.clone());
        assert_eq!(iaf.completions().unwrap(), as_riaf.completions().unwrap());
    }
    let af = common::a0();
    let as_iaf = Iaf::from_af(&af);
    assert_eq!(
        as_iaf.completions().unwrap().into_iter().collect::<Vec<_>>(),
        vec![af]
    );
}

/// The constrained completion set is exactly the projection of the
/// constraint's models — checked against a plain model enumeration.
#[test]
fn constrained_completions_are_model_projections() {
    let names = arg_names(3);
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..60 {
        let ciaf = random_ciaf(&mut rng, &names);
        // independent route: enumerate all aw/att assignments over the
        // argument set, filter by the constraint, project
        let atoms: Vec<Var> = {
            let mut v: Vec<Var> = names.iter().map(|a| Var::aw(a.clone())).collect();
            for x in &names {
                for y in &names {
                    v.push(Var::att(x.clone(), y.clone()));
                }
            }
            v
        };
        let mut expected = BTreeSet::new();
        for mask in 0u64..(1 << atoms.len()) {
            let lookup = |v: &Var| {
                atoms
                    .iter()
                    .position(|a| a == v)
                    .is_some_and(|i| mask >> i & 1 == 1)
            };
            if eval_boolean(ciaf.constraint(), &lookup).unwrap() {
                let args: Vec<String> = names
                    .iter()
                    .filter(|a| lookup(&Var::aw((*a).clone())))
                    .cloned()
                    .collect();
                let attacks: Vec<(String, String)> = names
                    .iter()
                    .flat_map(|x| names.iter().map(move |y| (x.clone(), y.clone())))
                    .filter(|(x, y)| lookup(&Var::att(x.clone(), y.clone())))
                    .collect();
                expected.insert(ArgFramework::new(args, attacks));
            }
        }
        assert_eq!(ciaf.completions().unwrap(), expected);
    }
}

/// Building a constraint from a completion set reproduces the set, for
/// random graph sets over a two-argument universe.
#[test]
fn constraint_reproduces_arbitrary_graph_sets() {
    let universe = Universe::new(["a", "b"]).unwrap();
    // all 21 graphs over subsets of {a,b}
    let mut graphs: Vec<ArgFramework> = Vec::new();
    for args_mask in 0u8..4 {
        let args: Vec<String> = ["a", "b"]
            .iter()
            .enumerate()
            .filter(|(i, _)| args_mask >> i & 1 == 1)
            .map(|(_, a)| a.to_string())
            .collect();
        let pairs: Vec<(String, String)> = args
            .iter()
            .flat_map(|x| args.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        for mask in 0u16..(1 << pairs.len()) {
            graphs.push(ArgFramework::new(
                args.clone(),
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, p)| p.clone()),
            ));
        }
    }
    graphs.sort();
    graphs.dedup();
    assert_eq!(graphs.len(), 21);

    let mut rng = ChaCha8Rng::seed_from_u64(59);
    let mut targets: Vec<BTreeSet<ArgFramework>> = vec![
        BTreeSet::new(),
        graphs.iter().cloned().collect(),
        polarized_pair_ciaf().completions().unwrap(),
    ];
    for _ in 0..60 {
        targets.push(
            graphs
                .iter()
                .filter(|_| rng.gen_bool(0.3))
                .cloned()
                .collect(),
        );
    }
    for target in targets {
        let rebuilt = ciaf_from_completion_set(&universe, &target).unwrap();
        assert_eq!(rebuilt.completions().unwrap(), target);
    }
}

/// A trivial constraint on top of an incomplete framework changes nothing.
#[test]
fn trivial_constraint_keeps_the_completion_set() {
    let names = arg_names(4);
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..40 {
        let iaf = random_iaf(&mut rng, &names, 3);
        let jm = CiafJm::new(iaf.clone(), dlpa_arg::syntax::Formula::top()).unwrap();
        assert_eq!(jm.completions().unwrap(), iaf.completions().unwrap());
    }
}

/// The fixed-part theory reached backwards through the completion program
/// characterizes the completion set (checked exhaustively at two arguments,
/// and on the running example's known completion valuations).
#[test]
fn theory_route_characterizes_completions() {
    // exhaustive: every incomplete framework over two arguments
    let names = arg_names(2);
    let universe = Universe::new(names.clone()).unwrap();
    let vars: Vec<Var> = {
        let mut v: Vec<Var> = names.iter().map(|a| Var::aw(a.clone())).collect();
        for x in &names {
            for y in &names {
                v.push(Var::att(x.clone(), y.clone()));
            }
        }
        v
    };
    for iaf in enumerate_iafs(&names) {
        let formula = completion_characterization(&universe, &iaf).unwrap();
        let expected = iaf.completions().unwrap();
        let mut ev = Evaluator::new(&universe);
        let mut projected = BTreeSet::new();
        for mask in 0u64..(1 << vars.len()) {
            let chosen: Vec<&Var> = vars
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| v)
                .collect();
            let v = Valuation::from_vars(&universe, chosen.into_iter()).unwrap();
            if ev.eval(&v, &formula).unwrap() {
                projected.insert(af_of_valuation(&universe, &v));
            }
        }
        assert_eq!(projected, expected);
    }

    // the running example: the valuations reached by the completion program
    // all satisfy the formula and project exactly onto the ten completions;
    // valuations of the one-direction graphs (not completions here) refute it
    let iaf0 = common::iaf0();
    let universe6 = common::universe6();
    let formula = completion_characterization(&universe6, &iaf0).unwrap();
    let mut ev = Evaluator::new(&universe6);
    let base = iaf0.valuation(&universe6).unwrap();
    let program = iaf0.make_comp(&universe6).unwrap();
    let mut projected = BTreeSet::new();
    for w in ev.successors(&base, &program).unwrap() {
        assert!(ev.eval(&w, &formula).unwrap());
        projected.insert(af_of_valuation(&universe6, &w));
    }
    assert_eq!(projected, iaf0.completions().unwrap());
    // cells with c and e present but only one attack direction between them
    for dropped in ["c", "e"] {
        let other = if dropped == "c" { "e" } else { "c" };
        let one_direction = common::riaf0()
            .completions()
            .unwrap()
            .into_iter()
            .find(|c| {
                c.contains_arg("c")
                    && c.contains_arg("e")
                    && !c
                        .attacks()
                        .contains(&(dropped.to_string(), other.to_string()))
            })
            .unwrap();
        let v = dlpa_arg::encodings::valuation_of_af(&universe6, &one_direction).unwrap();
        assert!(
            !ev.eval(&v, &formula).unwrap(),
            "cell with only one of the c-e directions"
        );
    }
}

/// No rich incomplete framework over two arguments captures the polarized
/// pair, while plain graphs and any rich completion set are expressible as
/// constraints.
#[test]
fn expressivity_landscape() {
    assert!(dlpa_arg::uncertainty::riaf_inexpressibility_check());

    let args = arg_names(2);
    // sanity: single plain frameworks are expressible as rich structures
    let singleton: BTreeSet<ArgFramework> =
        [common::af(["a"], [])].into_iter().collect();
    assert!(riaf_matching_completions(&args, &singleton).is_some());

    // and also expressible through the incomplete-framework subclass
    let ciaf_target = polarized_pair_ciaf().completions().unwrap();
    assert!(!enumerate_iafs(&args)
        .iter()
        .any(|i| i.completions().map(|c| c == ciaf_target).unwrap_or(false)));

    // every rich completion set over two arguments is a constraint set
    let universe = Universe::new(args.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for _ in 0..30 {
        let riaf = random_riaf(&mut rng, &args, 2);
        let set = riaf.completions().unwrap();
        let rebuilt = ciaf_from_completion_set(&universe, &set).unwrap();
        assert_eq!(rebuilt.completions().unwrap(), set);
    }
}

/// Settling keeps exactly the completions containing the settled argument.
#[test]
fn settle_filters_completions() {
    let names = arg_names(4);
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let mut tested = 0;
    while tested < 60 {
        let iaf = random_iaf(&mut rng, &names, 3);
        let Some(a) = iaf.uncertain_args().iter().next().cloned() else {
            continue;
        };
        let settled = iaf.settle(&a).unwrap();
        let expected: BTreeSet<ArgFramework> = iaf
            .completions()
            .unwrap()
            .into_iter()
            .filter(|c| c.contains_arg(&a))
            .collect();
        assert_eq!(settled.completions().unwrap(), expected);
        assert!(settled.completions().unwrap().len() <= iaf.completions().unwrap().len());
        tested += 1;
    }
}

/// Unsatisfiable constraints yield empty completion sets (allowed for the
/// constrained formalisms), and the awareness precondition is checked
/// against the constraint, not the completion list.
#[test]
fn empty_completion_sets_and_preconditions() {
    let ciaf = Ciaf::new(argset(["a"]), dlpa_arg::syntax::Formula::bot()).unwrap();
    assert!(ciaf.completions().unwrap().is_empty());
    // |= F -> aw(a) holds vacuously
    Uncertain::Ciaf(ciaf).check_query_arg("a").unwrap();

    let unaware = Ciaf::new(
        argset(["a", "b"]),
        dlpa_arg::parser::parse_formula("aw(a) & ~aw(b)").unwrap(),
    )
    .unwrap();
    let s = Uncertain::Ciaf(unaware);
    s.check_query_arg("a").unwrap();
    assert!(s.check_query_arg("b").is_err());
}

/// Random Boolean formulas survive the validity check used by the
/// awareness precondition: it agrees with brute-force enumeration.
#[test]
fn awareness_precondition_matches_brute_force() {
    let names = arg_names(3);
    let atoms = raw_constraint_atoms(&names);
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for _ in 0..60 {
        let constraint = random_boolean(&mut rng, &atoms, 2);
        for a in &names {
            let fast =
                dlpa_arg::uncertainty::constraint_forces_awareness(&constraint, a).unwrap();
            // brute force over the constraint's atoms plus the target
            let mut all_atoms: Vec<Var> = constraint.vars().into_iter().collect();
            let target = Var::aw(a.clone());
            if !all_atoms.contains(&target) {
                all_atoms.push(target.clone());
            }
            let mut expected = true;
            for mask in 0u64..(1 << all_atoms.len()) {
                let lookup = |v: &Var| {
                    all_atoms
                        .iter()
                        .position(|x| x == v)
                        .is_some_and(|i| mask >> i & 1 == 1)
                };
                if eval_boolean(&constraint, &lookup).unwrap() && !lookup(&target) {
                    expected = false;
                    break;
                }
            }
            assert_eq!(fast, expected);
        }
    }
}

/// The running example's completion sets, spelled out.
#[test]
fn running_example_completion_shapes() {
    let iaf0 = common::iaf0();
    let riaf0 = common::riaf0();
    let iafs = iaf0.completions().unwrap();
    let riafs = riaf0.completions().unwrap();
    assert_eq!(iafs.len(), 10);
    assert_eq!(riafs.len(), 16);
    // every completion of the stricter structure appears in the rich one
    assert!(iafs.iter().all(|c| riafs.contains(c)));
    // the six extra rich completions have c and e with exactly one direction
    let extras: Vec<&ArgFramework> = riafs.difference(&iafs).collect();
    assert_eq!(extras.len(), 6);
    for c in extras {
        assert!(c.contains_arg("c") && c.contains_arg("e"));
        let ce = c.attacks().contains(&attset([("c", "e")]).into_iter().next().unwrap());
        let ec = c.attacks().contains(&attset([("e", "c")]).into_iter().next().unwrap());
        assert!(ce != ec);
    }
}
