//! Qualitative uncertainty about frameworks: incomplete frameworks, their
//! rich variant, two constrained variants, and argument-incomplete
//! frameworks with dependencies.
//!
//! Each formalism comes with a direct, definition-level completion
//! enumerator and a completion-construction program; the two routes are
//! cross-checked by the property suites. Completion sets are ordered by
//! (argument set, attack set), which keeps golden output stable.

use std::collections::BTreeSet;

use crate::af::ArgFramework;
use crate::error::Error;
use crate::syntax::{dis, mk_true_some, vary, Formula, FormulaKind, Program};
use crate::universe::{Universe, Valuation, Var};

pub type ArgSet = BTreeSet<String>;
pub type AttSet = BTreeSet<(String, String)>;

/// Cap on the number of free binary choices a direct enumeration may take.
const MAX_ENUM_BITS: usize = 24;

/// Cap on the argument count of a constrained framework: its completions
/// range over all awareness and attack variables of the argument set.
const MAX_CIAF_ARGS: usize = 5;

fn fmt_pair(p: &(String, String)) -> String {
    format!("({},{})", p.0, p.1)
}

fn check_enum_bits(bits: usize, what: &str) -> Result<(), Error> {
    if bits > MAX_ENUM_BITS {
        Err(Error::resource(format!(
            "{what} would enumerate 2^{bits} candidates (bound is 2^{MAX_ENUM_BITS})"
        )))
    } else {
        Ok(())
    }
}

fn subsets_of<T: Clone + Ord>(items: &[T]) -> impl Iterator<Item = BTreeSet<T>> + '_ {
    (0u64..(1u64 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, t)| t.clone())
            .collect()
    })
}

fn restrict(atts: &AttSet, args: &ArgSet) -> AttSet {
    atts.iter()
        .filter(|(x, y)| args.contains(x) && args.contains(y))
        .cloned()
        .collect()
}

/// Arguments in canonical (universe) order; errors on names missing there.
fn ordered_args(universe: &Universe, set: &ArgSet) -> Result<Vec<String>, Error> {
    let mut v: Vec<String> = Vec::with_capacity(set.len());
    for a in set {
        if !universe.contains(a) {
            return Err(Error::domain(format!(
                "argument `{a}` is not in the universe"
            )));
        }
        v.push(a.clone());
    }
    v.sort_by_key(|a| universe.arg_index(a).unwrap());
    Ok(v)
}

fn ordered_pairs(universe: &Universe, set: &AttSet) -> Result<Vec<(String, String)>, Error> {
    let mut v: Vec<(String, String)> = Vec::with_capacity(set.len());
    for (x, y) in set {
        if !universe.contains(x) || !universe.contains(y) {
            return Err(Error::domain(format!(
                "attack {} mentions an argument outside the universe",
                fmt_pair(&(x.clone(), y.clone()))
            )));
        }
        v.push((x.clone(), y.clone()));
    }
    v.sort_by_key(|(x, y)| {
        (
            universe.arg_index(x).unwrap(),
            universe.arg_index(y).unwrap(),
        )
    });
    Ok(v)
}

fn aw_vars(args: &[String]) -> Vec<Var> {
    args.iter().map(|a| Var::aw(a.clone())).collect()
}

fn att_vars(pairs: &[(String, String)]) -> Vec<Var> {
    pairs
        .iter()
        .map(|(x, y)| Var::att(x.clone(), y.clone()))
        .collect()
}

/// Evaluates a Boolean (modality-free) formula against a variable lookup.
pub fn eval_boolean(f: &Formula, lookup: &dyn Fn(&Var) -> bool) -> Result<bool, Error> {
    Ok(match f.kind() {
        FormulaKind::Atom(v) => lookup(v),
        FormulaKind::Top => true,
        FormulaKind::Bot => false,
        FormulaKind::Not(g) => !eval_boolean(g, lookup)?,
        FormulaKind::And(gs) => {
            for g in gs {
                if !eval_boolean(g, lookup)? {
                    return Ok(false);
                }
            }
            true
        }
        FormulaKind::Or(gs) => {
            for g in gs {
                if eval_boolean(g, lookup)? {
                    return Ok(true);
                }
            }
            false
        }
        FormulaKind::Implies(a, b) => !eval_boolean(a, lookup)? || eval_boolean(b, lookup)?,
        FormulaKind::Iff(a, b) => eval_boolean(a, lookup)? == eval_boolean(b, lookup)?,
        FormulaKind::Box(..) | FormulaKind::Diamond(..) => {
            return Err(Error::domain(
                "expected a Boolean formula, found a modality",
            ))
        }
    })
}

/// Checks that a constraint is Boolean and mentions only awareness and attack
/// variables of `args`.
fn check_constraint(constraint: &Formula, args: &ArgSet, what: &str) -> Result<(), Error> {
    if !constraint.is_boolean() {
        return Err(Error::invariant(format!(
            "{what} constraint must not contain modalities"
        )));
    }
    for v in constraint.vars() {
        match &v {
            Var::Aw(x) if args.contains(x) => {}
            Var::Att(x, y) if args.contains(x) && args.contains(y) => {}
            _ => {
                return Err(Error::invariant(format!(
                    "{what} constraint mentions forbidden variable {v}"
                )))
            }
        }
    }
    Ok(())
}

/// Decides `|= constraint -> aw(a)` by enumerating assignments of the
/// constraint's own atoms together with `aw(a)`.
pub fn constraint_forces_awareness(constraint: &Formula, a: &str) -> Result<bool, Error> {
    let mut atoms: Vec<Var> = constraint.vars().into_iter().collect();
    let target = Var::aw(a.to_string());
    if !atoms.contains(&target) {
        atoms.push(target.clone());
    }
    check_enum_bits(atoms.len(), "the awareness-precondition check")?;
    for mask in 0u64..(1u64 << atoms.len()) {
        let lookup = |v: &Var| {
            atoms
                .iter()
                .position(|a| a == v)
                .is_some_and(|i| mask >> i & 1 == 1)
        };
        if eval_boolean(constraint, &lookup)? && !lookup(&target) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether some valuation over awareness/attack variables projects onto
/// `af` while satisfying `constraint`. Atoms of the constraint that the
/// projection does not determine (attack variables with an endpoint outside
/// the framework) are existentially quantified.
fn some_model_projects_to(constraint: &Formula, af: &ArgFramework) -> Result<bool, Error> {
    let mut free: Vec<Var> = Vec::new();
    for v in constraint.vars() {
        if let Var::Att(x, y) = &v {
            if !(af.contains_arg(x) && af.contains_arg(y)) {
                free.push(v.clone());
            }
        }
    }
    check_enum_bits(free.len(), "the constraint-membership check")?;
    for mask in 0u64..(1u64 << free.len()) {
        let lookup = |v: &Var| -> bool {
            if let Some(i) = free.iter().position(|f| f == v) {
                return mask >> i & 1 == 1;
            }
            match v {
                Var::Aw(x) => af.contains_arg(x),
                Var::Att(x, y) => af.attacks().contains(&(x.clone(), y.clone())),
                _ => false,
            }
        };
        if eval_boolean(constraint, &lookup)? {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Incomplete frameworks
// ---------------------------------------------------------------------------

/// A framework split into a fixed and an uncertain part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iaf {
    fixed_args: ArgSet,
    fixed_atts: AttSet,
    uncertain_args: ArgSet,
    uncertain_atts: AttSet,
}

impl Iaf {
    pub fn new(
        fixed_args: ArgSet,
        fixed_atts: AttSet,
        uncertain_args: ArgSet,
        uncertain_atts: AttSet,
    ) -> Result<Self, Error> {
        if let Some(a) = fixed_args.intersection(&uncertain_args).next() {
            return Err(Error::invariant(format!(
                "argument `{a}` is both fixed and uncertain"
            )));
        }
        if let Some(p) = fixed_atts.intersection(&uncertain_atts).next() {
            return Err(Error::invariant(format!(
                "attack {} is both fixed and uncertain",
                fmt_pair(p)
            )));
        }
        let all: ArgSet = fixed_args.union(&uncertain_args).cloned().collect();
        for (name, atts) in [("fixed", &fixed_atts), ("uncertain", &uncertain_atts)] {
            for p in atts.iter() {
                if !(all.contains(&p.0) && all.contains(&p.1)) {
                    return Err(Error::invariant(format!(
                        "{name} attack {} mentions an undeclared argument",
                        fmt_pair(p)
                    )));
                }
            }
        }
        Ok(Iaf {
            fixed_args,
            fixed_atts,
            uncertain_args,
            uncertain_atts,
        })
    }

    pub fn from_af(af: &ArgFramework) -> Self {
        Iaf {
            fixed_args: af.args().clone(),
            fixed_atts: af.attacks().clone(),
            uncertain_args: ArgSet::new(),
            uncertain_atts: AttSet::new(),
        }
    }

    pub fn fixed_args(&self) -> &ArgSet {
        &self.fixed_args
    }

    pub fn fixed_atts(&self) -> &AttSet {
        &self.fixed_atts
    }

    pub fn uncertain_args(&self) -> &ArgSet {
        &self.uncertain_args
    }

    pub fn uncertain_atts(&self) -> &AttSet {
        &self.uncertain_atts
    }

    pub fn all_args(&self) -> ArgSet {
        self.fixed_args
            .union(&self.uncertain_args)
            .cloned()
            .collect()
    }

    pub fn completions(&self) -> Result<BTreeSet<ArgFramework>, Error> {
        check_enum_bits(
            self.uncertain_args.len() + self.uncertain_atts.len(),
            "completion enumeration",
        )?;
        let unc_args: Vec<String> = self.uncertain_args.iter().cloned().collect();
        let mut out = BTreeSet::new();
        for extra in subsets_of(&unc_args) {
            let args: ArgSet = self.fixed_args.union(&extra).cloned().collect();
            let optional: Vec<(String, String)> =
                restrict(&self.uncertain_atts, &args).into_iter().collect();
            for chosen in subsets_of(&optional) {
                let mut atts = restrict(&self.fixed_atts, &args);
                atts.extend(chosen);
                out.insert(ArgFramework::new(args.clone(), atts));
            }
        }
        Ok(out)
    }

    /// The valuation of the fixed part. Note that it includes attack
    /// variables for all fixed attacks, even those between uncertain
    /// arguments (the projection drops them until both endpoints appear).
    pub fn valuation(&self, universe: &Universe) -> Result<Valuation, Error> {
        let mut v = Valuation::empty(universe);
        for a in &self.fixed_args {
            v.insert(universe, &Var::aw(a.clone()))?;
        }
        for (x, y) in &self.fixed_atts {
            v.insert(universe, &Var::att(x.clone(), y.clone()))?;
        }
        Ok(v)
    }

    /// `mkTrueSome` over the uncertain awareness variables, then over the
    /// uncertain attack variables.
    pub fn make_comp(&self, universe: &Universe) -> Result<Program, Error> {
        let args = ordered_args(universe, &self.uncertain_args)?;
        let atts = ordered_pairs(universe, &self.uncertain_atts)?;
        Ok(mk_true_some(&aw_vars(&args)).seq(mk_true_some(&att_vars(&atts))))
    }

    /// Moves `a` from the uncertain to the fixed arguments.
    pub fn settle(&self, a: &str) -> Result<Iaf, Error> {
        if !self.uncertain_args.contains(a) {
            return Err(Error::domain(format!(
                "argument `{a}` is not an uncertain argument"
            )));
        }
        let mut fixed_args = self.fixed_args.clone();
        fixed_args.insert(a.to_string());
        let mut uncertain_args = self.uncertain_args.clone();
        uncertain_args.remove(a);
        Iaf::new(
            fixed_args,
            self.fixed_atts.clone(),
            uncertain_args,
            self.uncertain_atts.clone(),
        )
    }
}

/// An incomplete framework with an extra direction-uncertain attack relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Riaf {
    iaf: Iaf,
    sym_atts: AttSet,
}

impl Riaf {
    /// `sym_atts` may be given in one direction only; it is closed under
    /// symmetry here.
    pub fn new(iaf: Iaf, sym_atts: AttSet) -> Result<Self, Error> {
        let mut closed = AttSet::new();
        for (x, y) in &sym_atts {
            if x == y {
                return Err(Error::invariant(format!(
                    "symmetric-uncertain attack {} is reflexive",
                    fmt_pair(&(x.clone(), y.clone()))
                )));
            }
            closed.insert((x.clone(), y.clone()));
            closed.insert((y.clone(), x.clone()));
        }
        let all = iaf.all_args();
        for p in &closed {
            if !(all.contains(&p.0) && all.contains(&p.1)) {
                return Err(Error::invariant(format!(
                    "symmetric-uncertain attack {} mentions an undeclared argument",
                    fmt_pair(p)
                )));
            }
            if iaf.fixed_atts.contains(p) {
                return Err(Error::invariant(format!(
                    "attack {} is both fixed and symmetric-uncertain",
                    fmt_pair(p)
                )));
            }
            if iaf.uncertain_atts.contains(p) {
                return Err(Error::invariant(format!(
                    "attack {} is both uncertain and symmetric-uncertain",
                    fmt_pair(p)
                )));
            }
        }
        Ok(Riaf {
            iaf,
            sym_atts: closed,
        })
    }

    pub fn from_iaf(iaf: Iaf) -> Self {
        Riaf {
            iaf,
            sym_atts: AttSet::new(),
        }
    }

    pub fn iaf(&self) -> &Iaf {
        &self.iaf
    }

    pub fn sym_atts(&self) -> &AttSet {
        &self.sym_atts
    }

    pub fn all_args(&self) -> ArgSet {
        self.iaf.all_args()
    }

    pub fn completions(&self) -> Result<BTreeSet<ArgFramework>, Error> {
        check_enum_bits(
            self.iaf.uncertain_args.len() + self.iaf.uncertain_atts.len() + self.sym_atts.len(),
            "completion enumeration",
        )?;
        let unc_args: Vec<String> = self.iaf.uncertain_args.iter().cloned().collect();
        let mut out = BTreeSet::new();
        for extra in subsets_of(&unc_args) {
            let args: ArgSet = self.iaf.fixed_args.union(&extra).cloned().collect();
            let mut optional: AttSet = restrict(&self.iaf.uncertain_atts, &args);
            let sym_here = restrict(&self.sym_atts, &args);
            optional.extend(sym_here.iter().cloned());
            let optional: Vec<(String, String)> = optional.into_iter().collect();
            'choice: for chosen in subsets_of(&optional) {
                for (x, y) in &sym_here {
                    if !(chosen.contains(&(x.clone(), y.clone()))
                        || chosen.contains(&(y.clone(), x.clone())))
                    {
                        continue 'choice;
                    }
                }
                let mut atts = restrict(&self.iaf.fixed_atts, &args);
                atts.extend(chosen);
                out.insert(ArgFramework::new(args.clone(), atts));
            }
        }
        Ok(out)
    }

    pub fn valuation(&self, universe: &Universe) -> Result<Valuation, Error> {
        self.iaf.valuation(universe)
    }

    /// The incomplete-framework program followed by the direction choice for
    /// every symmetric-uncertain pair.
    pub fn make_comp(&self, universe: &Universe) -> Result<Program, Error> {
        let pairs = ordered_pairs(universe, &self.sym_atts)?;
        Ok(self.iaf.make_comp(universe)?.seq(dis(&pairs)))
    }
}

// ---------------------------------------------------------------------------
// Constrained frameworks
// ---------------------------------------------------------------------------

/// An argument set with a Boolean constraint whose models are the completions.
#[derive(Debug, Clone)]
pub struct Ciaf {
    args: ArgSet,
    constraint: Formula,
}

impl Ciaf {
    pub fn new(args: ArgSet, constraint: Formula) -> Result<Self, Error> {
        check_constraint(&constraint, &args, "constrained-framework")?;
        Ok(Ciaf { args, constraint })
    }

    pub fn args(&self) -> &ArgSet {
        &self.args
    }

    pub fn constraint(&self) -> &Formula {
        &self.constraint
    }

    /// May be empty when the constraint is unsatisfiable.
    pub fn completions(&self) -> Result<BTreeSet<ArgFramework>, Error> {
        if self.args.len() > MAX_CIAF_ARGS {
            return Err(Error::resource(format!(
                "constrained framework has {} arguments, above the completion bound {MAX_CIAF_ARGS}",
                self.args.len()
            )));
        }
        let args: Vec<String> = self.args.iter().cloned().collect();
        let mut out = BTreeSet::new();
        for present in subsets_of(&args) {
            let pairs: Vec<(String, String)> = present
                .iter()
                .flat_map(|x| present.iter().map(move |y| (x.clone(), y.clone())))
                .collect();
            for atts in subsets_of(&pairs) {
                let af = ArgFramework::new(present.clone(), atts);
                if !out.contains(&af) && some_model_projects_to(&self.constraint, &af)? {
                    out.insert(af);
                }
            }
        }
        Ok(out)
    }

    /// The associated valuation is simply empty.
    pub fn valuation(&self, universe: &Universe) -> Result<Valuation, Error> {
        let _ = ordered_args(universe, &self.args)?;
        Ok(Valuation::empty(universe))
    }

    /// Varies every awareness and attack variable over the argument set, then
    /// tests the constraint.
    pub fn make_comp(&self, universe: &Universe) -> Result<Program, Error> {
        let args = ordered_args(universe, &self.args)?;
        let pairs: Vec<(String, String)> = args
            .iter()
            .flat_map(|x| args.iter().map(move |y| (x.clone(), y.clone())))
            .collect();
        Ok(vary(&aw_vars(&args))
            .seq(vary(&att_vars(&pairs)))
            .seq(Program::test(self.constraint.clone())))
    }
}

/// An incomplete framework whose completion set is filtered by a Boolean
/// constraint.
#[derive(Debug, Clone)]
pub struct CiafJm {
    iaf: Iaf,
    constraint: Formula,
}

impl CiafJm {
    pub fn new(iaf: Iaf, constraint: Formula) -> Result<Self, Error> {
        check_constraint(&constraint, &iaf.all_args(), "constrained-framework")?;
        Ok(CiafJm { iaf, constraint })
    }

    pub fn iaf(&self) -> &Iaf {
        &self.iaf
    }

    pub fn constraint(&self) -> &Formula {
        &self.constraint
    }

    /// Completions of the embedded incomplete framework intersected with the
    /// projections of the constraint's models.
    pub fn completions(&self) -> Result<BTreeSet<ArgFramework>, Error> {
        let mut out = BTreeSet::new();
        for af in self.iaf.completions()? {
            if some_model_projects_to(&self.constraint, &af)? {
                out.insert(af);
            }
        }
        Ok(out)
    }

    pub fn valuation(&self, universe: &Universe) -> Result<Valuation, Error> {
        self.iaf.valuation(universe)
    }

    /// The embedded framework's program followed by the constraint test.
    ///
    /// The test runs on completion valuations, which carry attack variables
    /// for every fixed attack even when an endpoint is absent; a constraint
    /// that distinguishes such dangling attack variables can disagree with
    /// the definition-level enumerator. Constraints that guard every attack
    /// atom by the awareness of its endpoints are immune.
    pub fn make_comp(&self, universe: &Universe) -> Result<Program, Error> {
        Ok(self
            .iaf
            .make_comp(universe)?
            .seq(Program::test(self.constraint.clone())))
    }
}

// ---------------------------------------------------------------------------
// Dependencies
// ---------------------------------------------------------------------------

/// A dependency among uncertain arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dependency {
    /// If all of `X` are present then at least one of `Y` is.
    Implies(ArgSet, ArgSet),
    /// At least one of `X` is present.
    Or(ArgSet),
    /// Not all of `X` are present.
    Nand(ArgSet),
    /// Exactly one of `X` is present.
    Choice(ArgSet),
}

impl Dependency {
    fn arg_sets(&self) -> Vec<&ArgSet> {
        match self {
            Dependency::Implies(x, y) => vec![x, y],
            Dependency::Or(x) | Dependency::Nand(x) | Dependency::Choice(x) => vec![x],
        }
    }

    /// Whether the argument set `present` satisfies this dependency.
    pub fn satisfied_by(&self, present: &ArgSet) -> bool {
        match self {
            Dependency::Implies(x, y) => {
                !x.is_subset(present) || y.iter().any(|a| present.contains(a))
            }
            Dependency::Or(x) => x.iter().any(|a| present.contains(a)),
            Dependency::Nand(x) => !x.is_subset(present),
            Dependency::Choice(x) => x.iter().filter(|a| present.contains(*a)).count() == 1,
        }
    }
}

/// Conjunction of the Boolean translations of the dependencies: presence of
/// an argument is its awareness variable.
pub fn translate_dependencies(deps: &[Dependency]) -> Formula {
    let aw_of = |s: &ArgSet| -> Vec<Formula> {
        s.iter()
            .map(|a| Formula::atom(Var::aw(a.clone())))
            .collect()
    };
    Formula::and(
        deps.iter()
            .map(|dep| match dep {
                Dependency::Implies(x, y) => Formula::and(aw_of(x)).implies(Formula::or(aw_of(y))),
                Dependency::Or(x) => Formula::or(aw_of(x)),
                Dependency::Nand(x) => Formula::and(aw_of(x)).not(),
                Dependency::Choice(x) => Formula::or(
                    x.iter()
                        .map(|picked| {
                            Formula::and(
                                x.iter()
                                    .map(|other| {
                                        let atom = Formula::atom(Var::aw(other.clone()));
                                        if other == picked {
                                            atom
                                        } else {
                                            atom.not()
                                        }
                                    })
                                    .collect(),
                            )
                        })
                        .collect(),
                ),
            })
            .collect(),
    )
}

/// An argument-incomplete framework with dependencies among the uncertain
/// arguments. The attack relation is fully known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DargIaf {
    fixed_args: ArgSet,
    uncertain_args: ArgSet,
    attacks: AttSet,
    deps: Vec<Dependency>,
}

impl DargIaf {
    pub fn new(
        fixed_args: ArgSet,
        uncertain_args: ArgSet,
        attacks: AttSet,
        deps: Vec<Dependency>,
    ) -> Result<Self, Error> {
        // reuse the incomplete-framework invariants for the graph part
        let _ = Iaf::new(
            fixed_args.clone(),
            attacks.clone(),
            uncertain_args.clone(),
            AttSet::new(),
        )?;
        for dep in &deps {
            for set in dep.arg_sets() {
                if set.is_empty() {
                    return Err(Error::invariant("dependency with an empty argument set"));
                }
                for a in set {
                    if !uncertain_args.contains(a) {
                        return Err(Error::invariant(format!(
                            "dependency mentions `{a}`, which is not an uncertain argument"
                        )));
                    }
                }
            }
        }
        Ok(DargIaf {
            fixed_args,
            uncertain_args,
            attacks,
            deps,
        })
    }

    pub fn fixed_args(&self) -> &ArgSet {
        &self.fixed_args
    }

    pub fn uncertain_args(&self) -> &ArgSet {
        &self.uncertain_args
    }

    pub fn attacks(&self) -> &AttSet {
        &self.attacks
    }

    pub fn deps(&self) -> &[Dependency] {
        &self.deps
    }

    pub fn all_args(&self) -> ArgSet {
        self.fixed_args
            .union(&self.uncertain_args)
            .cloned()
            .collect()
    }

    /// May be empty when the dependencies are jointly unsatisfiable.
    pub fn completions(&self) -> Result<BTreeSet<ArgFramework>, Error> {
        check_enum_bits(self.uncertain_args.len(), "completion enumeration")?;
        let unc: Vec<String> = self.uncertain_args.iter().cloned().collect();
        let mut out = BTreeSet::new();
        for extra in subsets_of(&unc) {
            let args: ArgSet = self.fixed_args.union(&extra).cloned().collect();
            if self.deps.iter().all(|d| d.satisfied_by(&args)) {
                out.insert(ArgFramework::new(
                    args.clone(),
                    restrict(&self.attacks, &args),
                ));
            }
        }
        Ok(out)
    }

    /// The valuation of the whole graph part: every fixed argument and every
    /// attack, dangling or not.
    pub fn valuation(&self, universe: &Universe) -> Result<Valuation, Error> {
        let mut v = Valuation::empty(universe);
        for a in &self.fixed_args {
            v.insert(universe, &Var::aw(a.clone()))?;
        }
        for (x, y) in &self.attacks {
            v.insert(universe, &Var::att(x.clone(), y.clone()))?;
        }
        Ok(v)
    }

    /// Varies the uncertain awareness variables, then tests the translated
    /// dependencies.
    pub fn make_comp(&self, universe: &Universe) -> Result<Program, Error> {
        let args = ordered_args(universe, &self.uncertain_args)?;
        Ok(vary(&aw_vars(&args)).seq(Program::test(translate_dependencies(&self.deps))))
    }
}

// ---------------------------------------------------------------------------
// Theories and expressivity
// ---------------------------------------------------------------------------

fn theory_of_sets(universe: &Universe, args: &ArgSet, atts: &AttSet) -> Formula {
    let mut parts = Vec::new();
    for x in universe.args() {
        let atom = Formula::atom(Var::aw(x.clone()));
        parts.push(if args.contains(x) { atom } else { atom.not() });
    }
    for x in universe.args() {
        for y in universe.args() {
            let atom = Formula::atom(Var::att(x.clone(), y.clone()));
            parts.push(if atts.contains(&(x.clone(), y.clone())) {
                atom
            } else {
                atom.not()
            });
        }
    }
    Formula::and(parts)
}

/// The conjunction of literals satisfied exactly by valuations that project
/// onto `af`: positive awareness/attack literals for its members, negative
/// ones for everything else in the universe.
pub fn theory_of_af(universe: &Universe, af: &ArgFramework) -> Formula {
    theory_of_sets(universe, af.args(), af.attacks())
}

/// As [`theory_of_af`], for the fixed part of an incomplete framework. The
/// fixed attack set is pinned as a set of pairs, not as a restricted graph:
/// fixed attacks between uncertain arguments stay positive literals, exactly
/// like they sit in the fixed part's valuation.
pub fn theory_of_iaf(universe: &Universe, iaf: &Iaf) -> Formula {
    theory_of_sets(universe, iaf.fixed_args(), iaf.fixed_atts())
}

/// A formula whose models (over awareness/attack variables) project exactly
/// onto the completions: reach the fixed-part theory backwards through the
/// completion program.
pub fn completion_characterization(universe: &Universe, iaf: &Iaf) -> Result<Formula, Error> {
    let program = Program::test(theory_of_iaf(universe, iaf))
        .seq(iaf.make_comp(universe)?)
        .converse();
    Ok(Formula::diamond(program, Formula::top()))
}

/// Builds a constrained framework over the whole universe whose completion
/// set is exactly `graphs`: the disjunction of their theories. The empty
/// input yields the constraint `F` and hence no completions.
pub fn ciaf_from_completion_set(
    universe: &Universe,
    graphs: &BTreeSet<ArgFramework>,
) -> Result<Ciaf, Error> {
    for g in graphs {
        for a in g.args() {
            if !universe.contains(a) {
                return Err(Error::domain(format!(
                    "graph argument `{a}` is not in the universe"
                )));
            }
        }
    }
    let constraint = Formula::or(graphs.iter().map(|g| theory_of_af(universe, g)).collect());
    Ciaf::new(universe.args().iter().cloned().collect(), constraint)
}

/// All incomplete frameworks over the given arguments (fixed/uncertain/absent
/// argument splits, each attack fixed/uncertain/absent).
pub fn enumerate_iafs(args: &[String]) -> Vec<Iaf> {
    enumerate_riafs_inner(args, false)
        .into_iter()
        .map(|r| r.iaf)
        .collect()
}

/// All rich incomplete frameworks over the given arguments. Each unordered
/// pair of distinct present arguments is either symmetric-uncertain or has
/// its two directions chosen independently from fixed/uncertain/absent.
pub fn enumerate_riafs(args: &[String]) -> Vec<Riaf> {
    enumerate_riafs_inner(args, true)
}

fn enumerate_riafs_inner(args: &[String], with_sym: bool) -> Vec<Riaf> {
    let n = args.len();
    assert!(n <= 4, "expressivity enumeration is for desk-scale universes");
    let mut out = Vec::new();
    // 0 = absent, 1 = fixed, 2 = uncertain
    let mut split = vec![0u8; n];
    loop {
        let fixed: ArgSet = (0..n)
            .filter(|&i| split[i] == 1)
            .map(|i| args[i].clone())
            .collect();
        let uncertain: ArgSet = (0..n)
            .filter(|&i| split[i] == 2)
            .map(|i| args[i].clone())
            .collect();
        let present: Vec<String> = fixed.iter().chain(uncertain.iter()).cloned().collect();

        let loops: Vec<String> = present.clone();
        let mut pairs: Vec<(String, String)> = Vec::new();
        for i in 0..present.len() {
            for j in (i + 1)..present.len() {
                pairs.push((present[i].clone(), present[j].clone()));
            }
        }

        // each self-loop: absent/fixed/uncertain; each unordered pair: both
        // directions independently absent/fixed/uncertain, or symmetric.
        let loop_opts = 3u64.pow(loops.len() as u32);
        let pair_opts = if with_sym { 10u64 } else { 9u64 };
        let pair_total = pair_opts.pow(pairs.len() as u32);
        for lmask in 0..loop_opts {
            for pmask in 0..pair_total {
                let mut fixed_atts = AttSet::new();
                let mut unc_atts = AttSet::new();
                let mut sym = AttSet::new();
                let mut l = lmask;
                for x in &loops {
                    match l % 3 {
                        1 => {
                            fixed_atts.insert((x.clone(), x.clone()));
                        }
                        2 => {
                            unc_atts.insert((x.clone(), x.clone()));
                        }
                        _ => {}
                    }
                    l /= 3;
                }
                let mut p = pmask;
                for (x, y) in &pairs {
                    let opt = p % pair_opts;
                    p /= pair_opts;
                    if opt == 9 {
                        sym.insert((x.clone(), y.clone()));
                        sym.insert((y.clone(), x.clone()));
                        continue;
                    }
                    match opt % 3 {
                        1 => {
                            fixed_atts.insert((x.clone(), y.clone()));
                        }
                        2 => {
                            unc_atts.insert((x.clone(), y.clone()));
                        }
                        _ => {}
                    }
                    match opt / 3 {
                        1 => {
                            fixed_atts.insert((y.clone(), x.clone()));
                        }
                        2 => {
                            unc_atts.insert((y.clone(), x.clone()));
                        }
                        _ => {}
                    }
                }
                let iaf = Iaf::new(fixed.clone(), fixed_atts, uncertain.clone(), unc_atts)
                    .expect("enumeration respects the invariants");
                out.push(Riaf::new(iaf, sym).expect("enumeration respects the invariants"));
            }
        }

        // next argument split
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            split[i] += 1;
            if split[i] == 3 {
                split[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// The two-argument constrained framework whose completions are the two
/// single-attack graphs: both arguments present and exactly one of the two
/// cross attacks, no self-attacks.
pub fn polarized_pair_ciaf() -> Ciaf {
    let a = || "a".to_string();
    let b = || "b".to_string();
    let aw = |x: String| Formula::atom(Var::aw(x));
    let att = |x: String, y: String| Formula::atom(Var::att(x, y));
    let constraint = Formula::and(vec![
        Formula::and(vec![aw(a()), aw(b())]),
        Formula::or(vec![att(a(), b()), att(b(), a())]),
        Formula::and(vec![att(a(), b()), att(b(), a())]).not(),
        att(a(), a()).not(),
        att(b(), b()).not(),
    ]);
    Ciaf::new([a(), b()].into_iter().collect(), constraint).expect("constraint is well-scoped")
}

/// Searches the rich incomplete frameworks over `args` for one with exactly
/// the target completion set.
pub fn riaf_matching_completions(
    args: &[String],
    target: &BTreeSet<ArgFramework>,
) -> Option<Riaf> {
    enumerate_riafs(args)
        .into_iter()
        .find(|r| r.completions().map(|c| &c == target).unwrap_or(false))
}

/// Exhaustively confirms that no rich incomplete framework over two arguments
/// has the completion set of [`polarized_pair_ciaf`].
pub fn riaf_inexpressibility_check() -> bool {
    let target = polarized_pair_ciaf()
        .completions()
        .expect("two-argument enumeration is in bounds");
    riaf_matching_completions(&["a".to_string(), "b".to_string()], &target).is_none()
}

/// Any of the uncertainty formalisms, with a plain framework as the
/// degenerate case (it is its own unique completion).
#[derive(Debug, Clone)]
pub enum Uncertain {
    Af(ArgFramework),
    Iaf(Iaf),
    Riaf(Riaf),
    Ciaf(Ciaf),
    CiafJm(CiafJm),
    DargIaf(DargIaf),
}

impl Uncertain {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Uncertain::Af(_) => "af",
            Uncertain::Iaf(_) => "iaf",
            Uncertain::Riaf(_) => "riaf",
            Uncertain::Ciaf(_) => "ciaf",
            Uncertain::CiafJm(_) => "ciafjm",
            Uncertain::DargIaf(_) => "dargiaf",
        }
    }

    pub fn completions(&self) -> Result<BTreeSet<ArgFramework>, Error> {
        match self {
            Uncertain::Af(af) => Ok(BTreeSet::from([af.clone()])),
            Uncertain::Iaf(s) => s.completions(),
            Uncertain::Riaf(s) => s.completions(),
            Uncertain::Ciaf(s) => s.completions(),
            Uncertain::CiafJm(s) => s.completions(),
            Uncertain::DargIaf(s) => s.completions(),
        }
    }

    pub fn valuation(&self, universe: &Universe) -> Result<Valuation, Error> {
        match self {
            Uncertain::Af(af) => Iaf::from_af(af).valuation(universe),
            Uncertain::Iaf(s) => s.valuation(universe),
            Uncertain::Riaf(s) => s.valuation(universe),
            Uncertain::Ciaf(s) => s.valuation(universe),
            Uncertain::CiafJm(s) => s.valuation(universe),
            Uncertain::DargIaf(s) => s.valuation(universe),
        }
    }

    pub fn make_comp(&self, universe: &Universe) -> Result<Program, Error> {
        match self {
            Uncertain::Af(af) => Iaf::from_af(af).make_comp(universe),
            Uncertain::Iaf(s) => s.make_comp(universe),
            Uncertain::Riaf(s) => s.make_comp(universe),
            Uncertain::Ciaf(s) => s.make_comp(universe),
            Uncertain::CiafJm(s) => s.make_comp(universe),
            Uncertain::DargIaf(s) => s.make_comp(universe),
        }
    }

    /// Every argument name mentioned anywhere in the structure.
    pub fn mentioned_args(&self) -> ArgSet {
        let mut out = ArgSet::new();
        let add_atts = |atts: &AttSet, out: &mut ArgSet| {
            for (x, y) in atts {
                out.insert(x.clone());
                out.insert(y.clone());
            }
        };
        match self {
            Uncertain::Af(af) => {
                out.extend(af.args().iter().cloned());
                add_atts(af.attacks(), &mut out);
            }
            Uncertain::Iaf(s) => {
                out.extend(s.all_args());
                add_atts(&s.fixed_atts, &mut out);
                add_atts(&s.uncertain_atts, &mut out);
            }
            Uncertain::Riaf(s) => {
                out.extend(s.all_args());
                add_atts(&s.iaf.fixed_atts, &mut out);
                add_atts(&s.iaf.uncertain_atts, &mut out);
                add_atts(&s.sym_atts, &mut out);
            }
            Uncertain::Ciaf(s) => out.extend(s.args.iter().cloned()),
            Uncertain::CiafJm(s) => {
                out.extend(s.iaf.all_args());
                add_atts(&s.iaf.fixed_atts, &mut out);
                add_atts(&s.iaf.uncertain_atts, &mut out);
            }
            Uncertain::DargIaf(s) => {
                out.extend(s.all_args());
                add_atts(&s.attacks, &mut out);
            }
        }
        out
    }

    /// Validates that `a` may be the subject of an acceptance query: it must
    /// belong to every completion. For the graph-based formalisms this means
    /// membership in the fixed part; for constrained ones, that the
    /// constraint entails awareness of `a`.
    pub fn check_query_arg(&self, a: &str) -> Result<(), Error> {
        let ok = match self {
            Uncertain::Af(af) => af.contains_arg(a),
            Uncertain::Iaf(s) => s.fixed_args.contains(a),
            Uncertain::Riaf(s) => s.iaf.fixed_args.contains(a),
            Uncertain::Ciaf(s) => {
                s.args.contains(a) && constraint_forces_awareness(&s.constraint, a)?
            }
            Uncertain::CiafJm(s) => s.iaf.fixed_args.contains(a),
            Uncertain::DargIaf(s) => s.fixed_args.contains(a),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "argument `{a}` is not guaranteed to appear in every completion of this {}",
                self.kind_name()
            )))
        }
    }
}
