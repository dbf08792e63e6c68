//! Logical encodings of the nine semantics, and the valuation/framework maps.
//!
//! An [`EncodingContext`] fixes a universe and eagerly builds one formula per
//! semantics plus the nondeterministic extension-construction program
//! `make_ext`: vary the acceptance variables, then test the semantics
//! formula. All big conjunctions and disjunctions expand over the universe in
//! canonical order, and subformulas are shared so the evaluator's memo table
//! sees one node per concept.
//!
//! The formula for complete semantics guards its biconditional with the
//! awareness variable of the argument under consideration, exactly like the
//! stable encoding does: the unguarded variant would force acceptance of
//! unaware, unattacked arguments and contradict the well-formedness
//! conjunct. The guard is what makes the valuation-level correctness
//! property (see `tests/encoding_props.rs`) hold on every valuation.

use std::sync::Arc;

use crate::af::{self, ArgFramework, Extension, Semantics};
use crate::error::Error;
use crate::eval::Evaluator;
use crate::syntax::{
    copy_in, mk_false_one, mk_false_some, mk_true_one, mk_true_some, vary, Formula, Program,
};
use crate::universe::{Universe, Valuation, Var};

/// Maps a framework to the valuation that represents it: awareness variables
/// for its arguments, attack variables for its attacks.
pub fn valuation_of_af(universe: &Universe, framework: &ArgFramework) -> Result<Valuation, Error> {
    let mut v = Valuation::empty(universe);
    for a in framework.args() {
        v.insert(universe, &Var::aw(a.clone()))?;
    }
    for (x, y) in framework.attacks() {
        v.insert(universe, &Var::att(x.clone(), y.clone()))?;
    }
    Ok(v)
}

/// Reads a framework back from a valuation. Attack variables whose endpoints
/// are not both aware are dropped by the restriction, so distinct valuations
/// may map to the same framework.
pub fn af_of_valuation(universe: &Universe, v: &Valuation) -> ArgFramework {
    let mut args = Vec::new();
    let mut attacks = Vec::new();
    for var in v.vars(universe) {
        match var {
            Var::Aw(x) => args.push(x),
            Var::Att(x, y) => attacks.push((x, y)),
            _ => {}
        }
    }
    ArgFramework::new(args, attacks)
}

/// The candidate extension encoded in a valuation's acceptance variables.
pub fn ext_of_valuation(universe: &Universe, v: &Valuation) -> Extension {
    Extension::new(v.vars(universe).into_iter().filter_map(|var| match var {
        Var::In(x) => Some(x),
        _ => None,
    }))
}

/// The extension encoded in the primed shadow copies.
pub fn primed_ext_of_valuation(universe: &Universe, v: &Valuation) -> Extension {
    Extension::new(v.vars(universe).into_iter().filter_map(|var| match var {
        Var::InPrime(x) => Some(x),
        _ => None,
    }))
}

fn sem_index(sem: Semantics) -> usize {
    match sem {
        Semantics::Stable => 0,
        Semantics::Complete => 1,
        Semantics::Grounded => 2,
        Semantics::Preferred => 3,
        Semantics::SemiStable => 4,
        Semantics::Ideal => 5,
        Semantics::Eager => 6,
        Semantics::Naive => 7,
        Semantics::Stage => 8,
    }
}

/// Per-semantics default bound on the universe size for cross-checking the
/// encodings: the nested constructions behind semi-stable, stage, ideal and
/// eager multiply the evaluation cost by an extra exponential factor.
pub fn default_check_bound(sem: Semantics) -> usize {
    match sem {
        Semantics::SemiStable | Semantics::Stage | Semantics::Ideal | Semantics::Eager => 5,
        _ => 6,
    }
}

/// Report of one oracle-versus-encoding comparison.
#[derive(Debug, Clone)]
pub struct EncodingReport {
    pub agrees: bool,
    pub oracle_set: Vec<Extension>,
    pub encoding_set: Vec<Extension>,
}

/// A universe together with the semantics formulas and extension programs.
pub struct EncodingContext {
    universe: Arc<Universe>,
    well: Formula,
    conflict_free: Formula,
    admissible: Formula,
    includes_cp: Formula,
    included_in_cp: Formula,
    ideal_set: Formula,
    eager_set: Formula,
    sem_formula: [Formula; 9],
    make_ext: [Program; 9],
}

impl EncodingContext {
    pub fn new(universe: Arc<Universe>) -> Self {
        let u = &universe;
        let args = u.args();
        let in_vars: Vec<Var> = args.iter().map(|x| Var::inn(x.clone())).collect();

        let atom_in = |x: &String| Formula::atom(Var::inn(x.clone()));
        let atom_aw = |x: &String| Formula::atom(Var::aw(x.clone()));
        let atom_att = |x: &String, y: &String| Formula::atom(Var::att(x.clone(), y.clone()));

        // Well: accepted arguments are entertained.
        let well = Formula::and(
            args.iter()
                .map(|x| atom_in(x).implies(atom_aw(x)))
                .collect(),
        );

        let conflict_free = Formula::and(
            std::iter::once(well.clone())
                .chain(args.iter().flat_map(|x| {
                    args.iter().map(move |y| {
                        Formula::and(vec![atom_in(x), atom_in(y), atom_att(x, y)]).not()
                    })
                }))
                .collect(),
        );

        // x is defended by the accepted set, relative to awareness.
        let defended = |x: &String| {
            Formula::and(
                args.iter()
                    .map(|y| {
                        Formula::and(vec![atom_aw(y), atom_att(y, x)]).implies(Formula::or(
                            args.iter()
                                .map(|z| Formula::and(vec![atom_in(z), atom_att(z, y)]))
                                .collect(),
                        ))
                    })
                    .collect(),
            )
        };

        let admissible = Formula::and(
            std::iter::once(conflict_free.clone())
                .chain(args.iter().map(|x| atom_in(x).implies(defended(x))))
                .collect(),
        );

        let stable = Formula::and(
            std::iter::once(well.clone())
                .chain(args.iter().map(|x| {
                    let attacked = Formula::or(
                        args.iter()
                            .map(|y| Formula::and(vec![atom_in(y), atom_att(y, x)]))
                            .collect(),
                    );
                    atom_aw(x).implies(atom_in(x).iff(attacked.not()))
                }))
                .collect(),
        );

        let complete = Formula::and(
            std::iter::once(conflict_free.clone())
                .chain(
                    args.iter()
                        .map(|x| atom_aw(x).implies(atom_in(x).iff(defended(x)))),
                )
                .collect(),
        );

        let shrink = mk_false_one(&in_vars).seq(mk_false_some(&in_vars));
        let grow = mk_true_one(&in_vars).seq(mk_true_some(&in_vars));

        let grounded = Formula::and(vec![
            complete.clone(),
            Formula::boxed(shrink.clone(), complete.clone().not()),
        ]);
        let preferred = Formula::and(vec![
            admissible.clone(),
            Formula::boxed(grow.clone(), admissible.clone().not()),
        ]);
        let naive = Formula::and(vec![
            conflict_free.clone(),
            Formula::boxed(mk_true_one(&in_vars), conflict_free.clone().not()),
        ]);

        // Range comparisons between the acceptance variables and their primed
        // copies: "x is in the range" is membership or being attacked by an
        // accepted, aware attacker.
        let in_range = |x: &String, primed: bool| {
            let member = if primed {
                Formula::atom(Var::in_prime(x.clone()))
            } else {
                atom_in(x)
            };
            let attacked = Formula::or(
                args.iter()
                    .map(|y| {
                        let acc = if primed {
                            Formula::atom(Var::in_prime(y.clone()))
                        } else {
                            atom_in(y)
                        };
                        Formula::and(vec![acc, atom_att(y, x)])
                    })
                    .collect(),
            );
            Formula::or(vec![member, Formula::and(vec![atom_aw(x), attacked])])
        };

        let included_in_cp = Formula::and(
            args.iter()
                .map(|x| in_range(x, false).implies(in_range(x, true)))
                .collect(),
        );
        let includes_cp = Formula::and(
            args.iter()
                .map(|x| in_range(x, true).implies(in_range(x, false)))
                .collect(),
        );
        let range_cap = includes_cp.clone().implies(included_in_cp.clone());

        let make_ext_of = |phi: &Formula| vary(&in_vars).seq(Program::test(phi.clone()));

        let make_ext_co = make_ext_of(&complete);
        let semi_stable = Formula::and(vec![
            complete.clone(),
            Formula::boxed(copy_in(u).seq(make_ext_co.clone()), range_cap.clone()),
        ]);

        let stage = Formula::and(vec![
            conflict_free.clone(),
            Formula::boxed(
                copy_in(u)
                    .seq(vary(&in_vars))
                    .seq(Program::test(conflict_free.clone())),
                range_cap,
            ),
        ]);

        let make_ext_pr = make_ext_of(&preferred);
        let ideal_set = Formula::and(
            std::iter::once(admissible.clone())
                .chain(args.iter().map(|x| {
                    atom_in(x).implies(Formula::boxed(make_ext_pr.clone(), atom_in(x)))
                }))
                .collect(),
        );
        let ideal = Formula::and(vec![
            ideal_set.clone(),
            Formula::boxed(grow.clone(), ideal_set.clone().not()),
        ]);

        let make_ext_se = make_ext_of(&semi_stable);
        let eager_set = Formula::and(
            std::iter::once(admissible.clone())
                .chain(args.iter().map(|x| {
                    atom_in(x).implies(Formula::boxed(make_ext_se.clone(), atom_in(x)))
                }))
                .collect(),
        );
        let eager = Formula::and(vec![
            eager_set.clone(),
            Formula::boxed(grow, eager_set.clone().not()),
        ]);

        let sem_formula = [
            stable, complete, grounded, preferred, semi_stable, ideal, eager, naive, stage,
        ];
        let make_ext = [
            make_ext_of(&sem_formula[0]),
            make_ext_co,
            make_ext_of(&sem_formula[2]),
            make_ext_pr,
            make_ext_se,
            make_ext_of(&sem_formula[5]),
            make_ext_of(&sem_formula[6]),
            make_ext_of(&sem_formula[7]),
            make_ext_of(&sem_formula[8]),
        ];

        EncodingContext {
            universe,
            well,
            conflict_free,
            admissible,
            includes_cp,
            included_in_cp,
            ideal_set,
            eager_set,
            sem_formula,
            make_ext,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn well(&self) -> Formula {
        self.well.clone()
    }

    pub fn conflict_free(&self) -> Formula {
        self.conflict_free.clone()
    }

    pub fn admissible(&self) -> Formula {
        self.admissible.clone()
    }

    pub fn includes_cp(&self) -> Formula {
        self.includes_cp.clone()
    }

    pub fn included_in_cp(&self) -> Formula {
        self.included_in_cp.clone()
    }

    pub fn ideal_set(&self) -> Formula {
        self.ideal_set.clone()
    }

    pub fn eager_set(&self) -> Formula {
        self.eager_set.clone()
    }

    pub fn stable(&self) -> Formula {
        self.semantics_formula(Semantics::Stable)
    }

    pub fn complete(&self) -> Formula {
        self.semantics_formula(Semantics::Complete)
    }

    pub fn grounded(&self) -> Formula {
        self.semantics_formula(Semantics::Grounded)
    }

    pub fn preferred(&self) -> Formula {
        self.semantics_formula(Semantics::Preferred)
    }

    pub fn semi_stable(&self) -> Formula {
        self.semantics_formula(Semantics::SemiStable)
    }

    pub fn ideal(&self) -> Formula {
        self.semantics_formula(Semantics::Ideal)
    }

    pub fn eager(&self) -> Formula {
        self.semantics_formula(Semantics::Eager)
    }

    pub fn naive(&self) -> Formula {
        self.semantics_formula(Semantics::Naive)
    }

    pub fn stage(&self) -> Formula {
        self.semantics_formula(Semantics::Stage)
    }

    /// The formula that holds exactly when the valuation's acceptance
    /// variables spell an extension of the valuation's framework.
    pub fn semantics_formula(&self, sem: Semantics) -> Formula {
        self.sem_formula[sem_index(sem)].clone()
    }

    /// The program that nondeterministically builds every extension: vary the
    /// acceptance variables, then test the semantics formula.
    pub fn make_ext(&self, sem: Semantics) -> Program {
        self.make_ext[sem_index(sem)].clone()
    }

    /// Extension set of `framework` computed through the logic.
    pub fn extensions_via_dlpa(
        &self,
        framework: &ArgFramework,
        sem: Semantics,
    ) -> Result<Vec<Extension>, Error> {
        let v0 = valuation_of_af(&self.universe, framework)?;
        let mut ev = Evaluator::new(&self.universe);
        let succ = ev.successors(&v0, &self.make_ext(sem))?;
        let mut exts: Vec<Extension> = succ
            .iter()
            .map(|v| ext_of_valuation(&self.universe, v))
            .collect();
        exts.sort();
        exts.dedup();
        Ok(exts)
    }

    /// Compares the oracle's extension set with the logic's, under the
    /// default per-semantics size bound.
    pub fn check_encoding(
        &self,
        framework: &ArgFramework,
        sem: Semantics,
    ) -> Result<EncodingReport, Error> {
        self.check_encoding_bounded(framework, sem, default_check_bound(sem))
    }

    pub fn check_encoding_bounded(
        &self,
        framework: &ArgFramework,
        sem: Semantics,
        max_args: usize,
    ) -> Result<EncodingReport, Error> {
        if framework.args().len() > max_args {
            return Err(Error::resource(format!(
                "framework has {} arguments, above the {} cross-check bound {max_args}",
                framework.args().len(),
                sem,
            )));
        }
        let oracle_set = af::extensions(framework, sem)?;
        let encoding_set = self.extensions_via_dlpa(framework, sem)?;
        Ok(EncodingReport {
            agrees: oracle_set == encoding_set,
            oracle_set,
            encoding_set,
        })
    }
}
