//! Seeded random generation of frameworks, structures, formulas, and
//! programs. Everything here is deterministic given the RNG, which the
//! property suites and the sampling commands seed explicitly.

use rand::prelude::*;

use crate::af::ArgFramework;
use crate::control::{Caf, CcIaf};
use crate::syntax::{Formula, Program};
use crate::uncertainty::{ArgSet, AttSet, Ciaf, CiafJm, DargIaf, Dependency, Iaf, Riaf};
use crate::universe::Var;

/// A framework over all of `args`, each ordered pair attacking with
/// probability one half.
pub fn random_af(rng: &mut impl Rng, args: &[String]) -> ArgFramework {
    let attacks: AttSet = args
        .iter()
        .flat_map(|x| args.iter().map(move |y| (x.clone(), y.clone())))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    ArgFramework::new(args.iter().cloned(), attacks)
}

fn split_args(
    rng: &mut impl Rng,
    args: &[String],
    max_uncertain: usize,
) -> (ArgSet, ArgSet) {
    let mut fixed = ArgSet::new();
    let mut uncertain = ArgSet::new();
    for a in args {
        if uncertain.len() < max_uncertain && rng.gen_bool(0.4) {
            uncertain.insert(a.clone());
        } else {
            fixed.insert(a.clone());
        }
    }
    if fixed.is_empty() {
        // keep at least one queryable argument
        let a = args[rng.gen_range(0..args.len())].clone();
        uncertain.remove(&a);
        fixed.insert(a);
    }
    (fixed, uncertain)
}

/// A random incomplete framework with bounded uncertain parts (the bound
/// keeps the completion program's branching in check).
pub fn random_iaf(rng: &mut impl Rng, args: &[String], max_uncertain: usize) -> Iaf {
    let (fixed, uncertain) = split_args(rng, args, max_uncertain);
    let mut fixed_atts = AttSet::new();
    let mut uncertain_atts = AttSet::new();
    for x in args {
        for y in args {
            let roll: f64 = rng.gen();
            if roll < 0.25 {
                fixed_atts.insert((x.clone(), y.clone()));
            } else if roll < 0.40 && uncertain_atts.len() < max_uncertain {
                uncertain_atts.insert((x.clone(), y.clone()));
            }
        }
    }
    Iaf::new(fixed, fixed_atts, uncertain, uncertain_atts).expect("generated parts are disjoint")
}

/// A random rich incomplete framework: a random incomplete framework plus a
/// few symmetric-uncertain pairs.
pub fn random_riaf(rng: &mut impl Rng, args: &[String], max_uncertain: usize) -> Riaf {
    let iaf = random_iaf(rng, args, max_uncertain);
    let mut sym = AttSet::new();
    for (i, x) in args.iter().enumerate() {
        for y in &args[i + 1..] {
            if sym.len() >= max_uncertain {
                break;
            }
            let clash = |atts: &AttSet| {
                atts.contains(&(x.clone(), y.clone())) || atts.contains(&(y.clone(), x.clone()))
            };
            if !clash(iaf.fixed_atts()) && !clash(iaf.uncertain_atts()) && rng.gen_bool(0.3) {
                sym.insert((x.clone(), y.clone()));
            }
        }
    }
    Riaf::new(iaf, sym).expect("symmetric pairs avoid the other relations")
}

/// A random Boolean formula over the given atoms.
pub fn random_boolean(rng: &mut impl Rng, atoms: &[Formula], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..10) {
            0 => Formula::top(),
            1 => Formula::bot(),
            _ => atoms[rng.gen_range(0..atoms.len())].clone(),
        };
    }
    match rng.gen_range(0..5) {
        0 => random_boolean(rng, atoms, depth - 1).not(),
        1 => Formula::and(
            (0..rng.gen_range(2..=3))
                .map(|_| random_boolean(rng, atoms, depth - 1))
                .collect(),
        ),
        2 => Formula::or(
            (0..rng.gen_range(2..=3))
                .map(|_| random_boolean(rng, atoms, depth - 1))
                .collect(),
        ),
        3 => random_boolean(rng, atoms, depth - 1).implies(random_boolean(rng, atoms, depth - 1)),
        _ => random_boolean(rng, atoms, depth - 1).iff(random_boolean(rng, atoms, depth - 1)),
    }
}

/// Awareness atoms plus awareness-guarded attack atoms over `args`. A
/// constraint built from these cannot distinguish two valuations with the
/// same framework projection.
pub fn guarded_constraint_atoms(args: &[String]) -> Vec<Formula> {
    let mut atoms = Vec::new();
    for x in args {
        atoms.push(Formula::atom(Var::aw(x.clone())));
        for y in args {
            atoms.push(Formula::and(vec![
                Formula::atom(Var::aw(x.clone())),
                Formula::atom(Var::aw(y.clone())),
                Formula::atom(Var::att(x.clone(), y.clone())),
            ]));
        }
    }
    atoms
}

/// Unrestricted awareness/attack atoms over `args`.
pub fn raw_constraint_atoms(args: &[String]) -> Vec<Formula> {
    let mut atoms = Vec::new();
    for x in args {
        atoms.push(Formula::atom(Var::aw(x.clone())));
        for y in args {
            atoms.push(Formula::atom(Var::att(x.clone(), y.clone())));
        }
    }
    atoms
}

/// A random constrained framework over all of `args`.
pub fn random_ciaf(rng: &mut impl Rng, args: &[String]) -> Ciaf {
    let atoms = raw_constraint_atoms(args);
    let constraint = random_boolean(rng, &atoms, 3);
    Ciaf::new(args.iter().cloned().collect(), constraint).expect("atoms are in scope")
}

/// A random constrained incomplete framework. The constraint uses guarded
/// atoms so that both query engines see the same completion set.
pub fn random_ciafjm(rng: &mut impl Rng, args: &[String], max_uncertain: usize) -> CiafJm {
    let iaf = random_iaf(rng, args, max_uncertain);
    let atoms = guarded_constraint_atoms(args);
    let constraint = random_boolean(rng, &atoms, 2);
    CiafJm::new(iaf, constraint).expect("atoms are in scope")
}

/// A random argument-incomplete framework with one or two dependencies.
pub fn random_dargiaf(rng: &mut impl Rng, args: &[String], max_uncertain: usize) -> DargIaf {
    let (fixed, uncertain) = split_args(rng, args, max_uncertain);
    let attacks: AttSet = args
        .iter()
        .flat_map(|x| args.iter().map(move |y| (x.clone(), y.clone())))
        .filter(|_| rng.gen_bool(0.3))
        .collect();
    let unc: Vec<String> = uncertain.iter().cloned().collect();
    let mut deps = Vec::new();
    if !unc.is_empty() {
        for _ in 0..rng.gen_range(0..=2usize) {
            deps.push(match rng.gen_range(0..4) {
                0 => Dependency::Implies(pick_subset(rng, &unc), pick_subset(rng, &unc)),
                1 => Dependency::Or(pick_subset(rng, &unc)),
                2 => Dependency::Nand(pick_subset(rng, &unc)),
                _ => Dependency::Choice(pick_subset(rng, &unc)),
            });
        }
    }
    DargIaf::new(fixed, uncertain, attacks, deps).expect("deps range over uncertain arguments")
}

fn pick_subset(rng: &mut impl Rng, pool: &[String]) -> ArgSet {
    let k = rng.gen_range(1..=pool.len());
    let mut chosen: Vec<String> = pool.to_vec();
    chosen.shuffle(rng);
    chosen.truncate(k);
    chosen.into_iter().collect()
}

/// A random control framework: a rich core with the last up-to-two
/// arguments turned into control arguments.
pub fn random_caf(rng: &mut impl Rng, args: &[String], max_uncertain: usize) -> Caf {
    let n_control = rng.gen_range(1..=2usize.min(args.len().saturating_sub(1)));
    let (control, rest) = args.split_at(n_control);
    let riaf = random_riaf(rng, rest, max_uncertain);
    let everyone: Vec<String> = args.to_vec();
    let mut control_atts = AttSet::new();
    for c in control {
        for other in &everyone {
            if other != c {
                if rng.gen_bool(0.3) {
                    control_atts.insert((c.clone(), other.clone()));
                }
                if !control.contains(other) && rng.gen_bool(0.2) {
                    control_atts.insert((other.clone(), c.clone()));
                }
            }
        }
    }
    Caf::new(
        riaf.iaf().fixed_args().clone(),
        riaf.iaf().fixed_atts().clone(),
        riaf.iaf().uncertain_args().clone(),
        riaf.iaf().uncertain_atts().clone(),
        riaf.sym_atts().clone(),
        control.iter().cloned().collect(),
        control_atts,
    )
    .expect("generated parts are disjoint")
}

/// A random constrained control framework.
pub fn random_cciaf(rng: &mut impl Rng, args: &[String]) -> CcIaf {
    let n_control = rng.gen_range(1..=2usize.min(args.len().saturating_sub(1)));
    let (control, statics) = args.split_at(n_control);
    let atoms = raw_constraint_atoms(statics);
    let constraint = random_boolean(rng, &atoms, 2);
    let mut control_atts = AttSet::new();
    for c in control {
        for other in args {
            if other != c && rng.gen_bool(0.3) {
                control_atts.insert((c.clone(), other.clone()));
            }
        }
    }
    CcIaf::new(
        control.iter().cloned().collect(),
        control_atts,
        statics.iter().cloned().collect(),
        constraint,
    )
    .expect("generated parts are disjoint")
}

/// A random formula of bounded depth over the full syntax, for evaluator and
/// parser properties.
pub fn random_formula(rng: &mut impl Rng, vars: &[Var], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..8) {
            0 => Formula::top(),
            1 => Formula::bot(),
            _ => Formula::atom(vars[rng.gen_range(0..vars.len())].clone()),
        };
    }
    match rng.gen_range(0..7) {
        0 => random_formula(rng, vars, depth - 1).not(),
        1 => Formula::and(
            (0..rng.gen_range(2..=3))
                .map(|_| random_formula(rng, vars, depth - 1))
                .collect(),
        ),
        2 => Formula::or(
            (0..rng.gen_range(2..=3))
                .map(|_| random_formula(rng, vars, depth - 1))
                .collect(),
        ),
        3 => random_formula(rng, vars, depth - 1).implies(random_formula(rng, vars, depth - 1)),
        4 => random_formula(rng, vars, depth - 1).iff(random_formula(rng, vars, depth - 1)),
        5 => Formula::boxed(
            random_program(rng, vars, depth - 1),
            random_formula(rng, vars, depth - 1),
        ),
        _ => Formula::diamond(
            random_program(rng, vars, depth - 1),
            random_formula(rng, vars, depth - 1),
        ),
    }
}

/// A random program of bounded depth.
pub fn random_program(rng: &mut impl Rng, vars: &[Var], depth: usize) -> Program {
    if depth == 0 || rng.gen_bool(0.3) {
        let var = vars[rng.gen_range(0..vars.len())].clone();
        return if rng.gen_bool(0.5) {
            Program::assign_true(var)
        } else {
            Program::assign_false(var)
        };
    }
    match rng.gen_range(0..4) {
        0 => Program::test(random_formula(rng, vars, depth - 1)),
        1 => random_program(rng, vars, depth - 1).seq(random_program(rng, vars, depth - 1)),
        2 => random_program(rng, vars, depth - 1).choice(random_program(rng, vars, depth - 1)),
        _ => random_program(rng, vars, depth - 1).converse(),
    }
}

/// Fresh argument names `a`, `b`, `c`, ...
pub fn arg_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}
