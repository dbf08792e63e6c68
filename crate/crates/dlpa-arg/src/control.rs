//! Control frameworks: dynamics on top of uncertainty.
//!
//! A control framework extends the rich incomplete picture with control
//! arguments that the proponent may communicate; a control configuration is
//! the communicated subset. Its constrained cousin puts the control part on
//! top of a constrained framework. This module also carries the structural
//! constraint checks: whether a Boolean property of the framework holds in
//! some or in every completion, and whether settling an uncertain argument
//! can enforce it.

use std::collections::BTreeSet;

use crate::af::ArgFramework;
use crate::error::Error;
use crate::eval::Evaluator;
use crate::syntax::{mk_true_some, Formula, Program};
use crate::uncertainty::{ArgSet, AttSet, Ciaf, Iaf, Riaf, Uncertain};
use crate::universe::{Universe, Valuation, Var};

fn fmt_pair(p: &(String, String)) -> String {
    format!("({},{})", p.0, p.1)
}

fn ordered_aw_vars(universe: &Universe, args: &ArgSet) -> Result<Vec<Var>, Error> {
    let mut names: Vec<&String> = args.iter().collect();
    for a in &names {
        if !universe.contains(a) {
            return Err(Error::domain(format!(
                "argument `{a}` is not in the universe"
            )));
        }
    }
    names.sort_by_key(|a| universe.arg_index(a).unwrap());
    Ok(names.into_iter().map(|a| Var::aw(a.clone())).collect())
}

fn restrict(atts: &AttSet, args: &ArgSet) -> AttSet {
    atts.iter()
        .filter(|(x, y)| args.contains(x) && args.contains(y))
        .cloned()
        .collect()
}

/// A rich incomplete framework plus a control part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caf {
    fixed_args: ArgSet,
    fixed_atts: AttSet,
    uncertain_args: ArgSet,
    uncertain_atts: AttSet,
    sym_atts: AttSet,
    control_args: ArgSet,
    control_atts: AttSet,
}

impl Caf {
    pub fn new(
        fixed_args: ArgSet,
        fixed_atts: AttSet,
        uncertain_args: ArgSet,
        uncertain_atts: AttSet,
        sym_atts: AttSet,
        control_args: ArgSet,
        control_atts: AttSet,
    ) -> Result<Self, Error> {
        for (a, b, what) in [
            (&fixed_args, &control_args, "fixed and control"),
            (&uncertain_args, &control_args, "uncertain and control"),
        ] {
            if let Some(x) = a.intersection(b).next() {
                return Err(Error::invariant(format!(
                    "argument `{x}` is both {what}"
                )));
            }
        }
        // the graph part must be a rich incomplete framework on its own
        let riaf = Riaf::new(
            Iaf::new(
                fixed_args.clone(),
                fixed_atts.clone(),
                uncertain_args.clone(),
                uncertain_atts.clone(),
            )?,
            sym_atts.clone(),
        )?;
        let sym_atts = riaf.sym_atts().clone();

        let everyone: ArgSet = fixed_args
            .union(&uncertain_args)
            .cloned()
            .chain(control_args.iter().cloned())
            .collect();
        for p in &control_atts {
            if !(everyone.contains(&p.0) && everyone.contains(&p.1)) {
                return Err(Error::invariant(format!(
                    "control attack {} mentions an undeclared argument",
                    fmt_pair(p)
                )));
            }
            if !(control_args.contains(&p.0) || control_args.contains(&p.1)) {
                return Err(Error::invariant(format!(
                    "control attack {} does not touch a control argument",
                    fmt_pair(p)
                )));
            }
            for (other, what) in [
                (&fixed_atts, "fixed"),
                (&uncertain_atts, "uncertain"),
                (&sym_atts, "symmetric-uncertain"),
            ] {
                if other.contains(p) {
                    return Err(Error::invariant(format!(
                        "attack {} is both control and {what}",
                        fmt_pair(p)
                    )));
                }
            }
        }
        Ok(Caf {
            fixed_args,
            fixed_atts,
            uncertain_args,
            uncertain_atts,
            sym_atts,
            control_args,
            control_atts,
        })
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

    pub fn sym_atts(&self) -> &AttSet {
        &self.sym_atts
    }

    pub fn control_args(&self) -> &ArgSet {
        &self.control_args
    }

    pub fn control_atts(&self) -> &AttSet {
        &self.control_atts
    }

    pub fn mentioned_args(&self) -> ArgSet {
        let mut out: ArgSet = self.fixed_args.clone();
        out.extend(self.uncertain_args.iter().cloned());
        out.extend(self.control_args.iter().cloned());
        for atts in [
            &self.fixed_atts,
            &self.uncertain_atts,
            &self.sym_atts,
            &self.control_atts,
        ] {
            for (x, y) in atts {
                out.insert(x.clone());
                out.insert(y.clone());
            }
        }
        out
    }

    /// Replaces the control part: only the chosen arguments remain, and
    /// control attacks are restricted to the surviving arguments.
    pub fn under_configuration(&self, cfg: &ArgSet) -> Result<Caf, Error> {
        for a in cfg {
            if !self.control_args.contains(a) {
                return Err(Error::domain(format!(
                    "`{a}` is not a control argument"
                )));
            }
        }
        let kept: ArgSet = self
            .fixed_args
            .union(&self.uncertain_args)
            .cloned()
            .chain(cfg.iter().cloned())
            .collect();
        Caf::new(
            self.fixed_args.clone(),
            self.fixed_atts.clone(),
            self.uncertain_args.clone(),
            self.uncertain_atts.clone(),
            self.sym_atts.clone(),
            cfg.clone(),
            restrict(&self.control_atts, &kept),
        )
    }

    /// The rich incomplete framework obtained by merging the control part
    /// into the fixed part (control arguments behave like fixed ones once
    /// communicated).
    pub fn merged_riaf(&self) -> Riaf {
        let fixed_args: ArgSet = self
            .fixed_args
            .union(&self.control_args)
            .cloned()
            .collect();
        let mut fixed_atts = self.fixed_atts.clone();
        fixed_atts.extend(self.control_atts.iter().cloned());
        Riaf::new(
            Iaf::new(
                fixed_args,
                fixed_atts,
                self.uncertain_args.clone(),
                self.uncertain_atts.clone(),
            )
            .expect("control framework invariants imply the merged invariants"),
            self.sym_atts.clone(),
        )
        .expect("control framework invariants imply the merged invariants")
    }

    /// Direct completion enumeration: the fixed and control parts are
    /// mandatory, the uncertain part optional, and every symmetric-uncertain
    /// pair with both endpoints present appears in at least one direction.
    pub fn completions(&self) -> Result<BTreeSet<ArgFramework>, Error> {
        let mandatory_args: ArgSet = self
            .fixed_args
            .union(&self.control_args)
            .cloned()
            .collect();
        let unc: Vec<String> = self.uncertain_args.iter().cloned().collect();
        if unc.len() + self.uncertain_atts.len() + self.sym_atts.len() > 24 {
            return Err(Error::resource(
                "completion enumeration bound exceeded".to_string(),
            ));
        }
        let mut out = BTreeSet::new();
        for mask in 0u64..(1u64 << unc.len()) {
            let mut args = mandatory_args.clone();
            for (i, a) in unc.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    args.insert(a.clone());
                }
            }
            let mut mandatory_atts = restrict(&self.fixed_atts, &args);
            mandatory_atts.extend(restrict(&self.control_atts, &args));
            let mut optional: AttSet = restrict(&self.uncertain_atts, &args);
            let sym_here = restrict(&self.sym_atts, &args);
            optional.extend(sym_here.iter().cloned());
            let optional: Vec<(String, String)> = optional.into_iter().collect();
            'choice: for amask in 0u64..(1u64 << optional.len()) {
                let chosen: AttSet = optional
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| amask >> i & 1 == 1)
                    .map(|(_, p)| p.clone())
                    .collect();
                for (x, y) in &sym_here {
                    if !(chosen.contains(&(x.clone(), y.clone()))
                        || chosen.contains(&(y.clone(), x.clone())))
                    {
                        continue 'choice;
                    }
                }
                let mut atts = mandatory_atts.clone();
                atts.extend(chosen);
                out.insert(ArgFramework::new(args.clone(), atts));
            }
        }
        Ok(out)
    }

    /// The valuation knows all fixed attacks and all control attacks, but no
    /// control argument has been communicated yet.
    pub fn valuation(&self, universe: &Universe) -> Result<Valuation, Error> {
        let mut v = Valuation::empty(universe);
        for a in &self.fixed_args {
            v.insert(universe, &Var::aw(a.clone()))?;
        }
        for (x, y) in self.fixed_atts.iter().chain(self.control_atts.iter()) {
            v.insert(universe, &Var::att(x.clone(), y.clone()))?;
        }
        Ok(v)
    }

    /// Communicates some subset of the control arguments.
    pub fn control_program(&self, universe: &Universe) -> Result<Program, Error> {
        Ok(mk_true_some(&ordered_aw_vars(universe, &self.control_args)?))
    }

    /// Same completion program as for the merged rich framework.
    pub fn make_comp(&self, universe: &Universe) -> Result<Program, Error> {
        // the sym/uncertain parts do not mention control arguments, so the
        // merged framework's program is built from the same pieces
        Riaf::new(
            Iaf::new(
                self.fixed_args.clone(),
                self.fixed_atts.clone(),
                self.uncertain_args.clone(),
                self.uncertain_atts.clone(),
            )
            .expect("validated at construction"),
            self.sym_atts.clone(),
        )
        .expect("validated at construction")
        .make_comp(universe)
    }
}

/// A constrained framework plus a control part.
#[derive(Debug, Clone)]
pub struct CcIaf {
    control_args: ArgSet,
    control_atts: AttSet,
    static_args: ArgSet,
    constraint: Formula,
}

impl CcIaf {
    pub fn new(
        control_args: ArgSet,
        control_atts: AttSet,
        static_args: ArgSet,
        constraint: Formula,
    ) -> Result<Self, Error> {
        if let Some(x) = control_args.intersection(&static_args).next() {
            return Err(Error::invariant(format!(
                "argument `{x}` is both control and static"
            )));
        }
        let everyone: ArgSet = control_args.union(&static_args).cloned().collect();
        for p in &control_atts {
            if !(everyone.contains(&p.0) && everyone.contains(&p.1)) {
                return Err(Error::invariant(format!(
                    "control attack {} mentions an undeclared argument",
                    fmt_pair(p)
                )));
            }
            if !(control_args.contains(&p.0) || control_args.contains(&p.1)) {
                return Err(Error::invariant(format!(
                    "control attack {} does not touch a control argument",
                    fmt_pair(p)
                )));
            }
        }
        // reuse the constrained-framework constraint validation
        let _ = Ciaf::new(static_args.clone(), constraint.clone())?;
        Ok(CcIaf {
            control_args,
            control_atts,
            static_args,
            constraint,
        })
    }

    pub fn control_args(&self) -> &ArgSet {
        &self.control_args
    }

    pub fn control_atts(&self) -> &AttSet {
        &self.control_atts
    }

    pub fn static_args(&self) -> &ArgSet {
        &self.static_args
    }

    pub fn constraint(&self) -> &Formula {
        &self.constraint
    }

    pub fn underlying_ciaf(&self) -> Ciaf {
        Ciaf::new(self.static_args.clone(), self.constraint.clone())
            .expect("validated at construction")
    }

    pub fn mentioned_args(&self) -> ArgSet {
        let mut out: ArgSet = self.control_args.union(&self.static_args).cloned().collect();
        for (x, y) in &self.control_atts {
            out.insert(x.clone());
            out.insert(y.clone());
        }
        out
    }

    /// Keeps the chosen control arguments and the control attacks whose
    /// endpoints survive.
    pub fn under_configuration(&self, cfg: &ArgSet) -> Result<CcIaf, Error> {
        for a in cfg {
            if !self.control_args.contains(a) {
                return Err(Error::domain(format!(
                    "`{a}` is not a control argument"
                )));
            }
        }
        let kept: ArgSet = cfg.union(&self.static_args).cloned().collect();
        CcIaf::new(
            cfg.clone(),
            restrict(&self.control_atts, &kept),
            self.static_args.clone(),
            self.constraint.clone(),
        )
    }

    /// Completions: a completion of the underlying constrained framework,
    /// extended by all control arguments and the control attacks whose
    /// endpoints are present.
    pub fn completions(&self) -> Result<BTreeSet<ArgFramework>, Error> {
        let mut out = BTreeSet::new();
        for inner in self.underlying_ciaf().completions()? {
            let args: ArgSet = self
                .control_args
                .union(inner.args())
                .cloned()
                .collect();
            let mut atts = restrict(&self.control_atts, &args);
            atts.extend(inner.attacks().iter().cloned());
            out.insert(ArgFramework::new(args, atts));
        }
        Ok(out)
    }

    /// Only the control attacks are known up front.
    pub fn valuation(&self, universe: &Universe) -> Result<Valuation, Error> {
        let mut v = Valuation::empty(universe);
        for (x, y) in &self.control_atts {
            v.insert(universe, &Var::att(x.clone(), y.clone()))?;
        }
        Ok(v)
    }

    /// The valuation of a structure whose control arguments have all been
    /// communicated; the base point for structural checks on a configured
    /// structure.
    pub fn communicated_valuation(&self, universe: &Universe) -> Result<Valuation, Error> {
        let mut v = self.valuation(universe)?;
        for a in &self.control_args {
            v.insert(universe, &Var::aw(a.clone()))?;
        }
        Ok(v)
    }

    pub fn control_program(&self, universe: &Universe) -> Result<Program, Error> {
        Ok(mk_true_some(&ordered_aw_vars(universe, &self.control_args)?))
    }

    pub fn make_comp(&self, universe: &Universe) -> Result<Program, Error> {
        self.underlying_ciaf().make_comp(universe)
    }
}

/// Quantification mode for structural constraint checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintMode {
    /// The constraint holds in at least one completion.
    Possible,
    /// The constraint holds in every completion.
    Necessary,
}

impl std::str::FromStr for ConstraintMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "possible" => Ok(ConstraintMode::Possible),
            "necessary" => Ok(ConstraintMode::Necessary),
            other => Err(Error::domain(format!(
                "unknown constraint mode `{other}` (expected possible or necessary)"
            ))),
        }
    }
}

fn check_structural_formula(phi: &Formula) -> Result<(), Error> {
    if !phi.is_boolean() {
        return Err(Error::domain(
            "structural constraints must not contain modalities",
        ));
    }
    for v in phi.vars() {
        if !matches!(v, Var::Aw(_) | Var::Att(..)) {
            return Err(Error::domain(format!(
                "structural constraints may only mention awareness and attack variables, found {v}"
            )));
        }
    }
    Ok(())
}

/// Model-checks a structural constraint over the completions reached by
/// `make_comp` from `base`: diamond for possible, box for necessary.
pub fn check_structural_constraint_at(
    universe: &Universe,
    base: &Valuation,
    make_comp: &Program,
    phi: &Formula,
    mode: ConstraintMode,
) -> Result<bool, Error> {
    check_structural_formula(phi)?;
    let query = match mode {
        ConstraintMode::Possible => Formula::diamond(make_comp.clone(), phi.clone()),
        ConstraintMode::Necessary => Formula::boxed(make_comp.clone(), phi.clone()),
    };
    Evaluator::new(universe).eval(base, &query)
}

/// Structural constraint check for any uncertainty formalism.
pub fn check_structural_constraint(
    universe: &Universe,
    structure: &Uncertain,
    phi: &Formula,
    mode: ConstraintMode,
) -> Result<bool, Error> {
    check_structural_constraint_at(
        universe,
        &structure.valuation(universe)?,
        &structure.make_comp(universe)?,
        phi,
        mode,
    )
}

/// Structural constraint check for a control framework under a fixed
/// configuration: the configured control part is merged into the fixed part.
pub fn check_structural_constraint_caf(
    universe: &Universe,
    caf: &Caf,
    cfg: &ArgSet,
    phi: &Formula,
    mode: ConstraintMode,
) -> Result<bool, Error> {
    let merged = caf.under_configuration(cfg)?.merged_riaf();
    check_structural_constraint(universe, &Uncertain::Riaf(merged), phi, mode)
}

/// Structural constraint check for a constrained control framework under a
/// fixed configuration: the configured control arguments count as
/// communicated.
pub fn check_structural_constraint_cciaf(
    universe: &Universe,
    cciaf: &CcIaf,
    cfg: &ArgSet,
    phi: &Formula,
    mode: ConstraintMode,
) -> Result<bool, Error> {
    let configured = cciaf.under_configuration(cfg)?;
    check_structural_constraint_at(
        universe,
        &configured.communicated_valuation(universe)?,
        &configured.make_comp(universe)?,
        phi,
        mode,
    )
}

/// Whether settling `a` can (or must) enforce the constraint: the completion
/// program followed by the awareness assignment of `a`.
pub fn check_enforced_by_settling(
    universe: &Universe,
    iaf: &Iaf,
    a: &str,
    phi: &Formula,
    mode: ConstraintMode,
) -> Result<bool, Error> {
    check_structural_formula(phi)?;
    if !iaf.uncertain_args().contains(a) {
        return Err(Error::domain(format!(
            "argument `{a}` is not an uncertain argument"
        )));
    }
    let program = iaf
        .make_comp(universe)?
        .seq(Program::assign_true(Var::aw(a.to_string())));
    let query = match mode {
        ConstraintMode::Possible => Formula::diamond(program, phi.clone()),
        ConstraintMode::Necessary => Formula::boxed(program, phi.clone()),
    };
    Evaluator::new(universe).eval(&iaf.valuation(universe)?, &query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_formula;

    fn attset<const N: usize>(pairs: [(&str, &str); N]) -> AttSet {
        pairs
            .into_iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect()
    }

    fn argset<const N: usize>(args: [&str; N]) -> ArgSet {
        args.into_iter().map(String::from).collect()
    }

    pub(crate) fn caf0() -> Caf {
        Caf::new(
            argset(["a"]),
            attset([("f", "e")]),
            argset(["c", "e", "f"]),
            attset([("f", "c")]),
            attset([("c", "e")]),
            argset(["b", "d"]),
            attset([("b", "a"), ("d", "a"), ("c", "b"), ("e", "d")]),
        )
        .unwrap()
    }

    #[test]
    fn caf_invariants() {
        // control attack must touch a control argument
        assert!(Caf::new(
            argset(["a", "b"]),
            AttSet::new(),
            ArgSet::new(),
            AttSet::new(),
            AttSet::new(),
            argset(["x"]),
            attset([("a", "b")]),
        )
        .is_err());

        // overlap between argument classes
        assert!(Caf::new(
            argset(["a"]),
            AttSet::new(),
            ArgSet::new(),
            AttSet::new(),
            AttSet::new(),
            argset(["a"]),
            AttSet::new(),
        )
        .is_err());
    }

    #[test]
    fn full_configuration_matches_the_merged_riaf() {
        let caf = caf0();
        let full = caf.under_configuration(&caf.control_args().clone()).unwrap();
        assert_eq!(
            full.completions().unwrap(),
            caf.merged_riaf().completions().unwrap()
        );
        assert_eq!(full.completions().unwrap().len(), 16);
    }

    #[test]
    fn configurations_change_completions_but_not_their_count() {
        let caf = caf0();
        let full = caf.under_configuration(&caf.control_args().clone()).unwrap();
        let empty_cfg = caf.under_configuration(&ArgSet::new()).unwrap();
        let just_b = caf.under_configuration(&argset(["b"])).unwrap();
        let n = full.completions().unwrap().len();
        assert_eq!(empty_cfg.completions().unwrap().len(), n);
        assert_eq!(just_b.completions().unwrap().len(), n);
        assert_ne!(
            empty_cfg.completions().unwrap(),
            full.completions().unwrap()
        );

        assert!(caf.under_configuration(&argset(["zzz"])).is_err());
    }

    #[test]
    fn caf_valuation_has_control_attacks_but_no_control_awareness() {
        let caf = caf0();
        let u = Universe::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let v = caf.valuation(&u).unwrap();
        assert!(v.contains(&u, &Var::att("b", "a")).unwrap());
        assert!(v.contains(&u, &Var::att("e", "d")).unwrap());
        assert!(!v.contains(&u, &Var::aw("b")).unwrap());
        assert!(!v.contains(&u, &Var::aw("d")).unwrap());

        let succ = Evaluator::new(&u)
            .successors(&v, &caf.control_program(&u).unwrap())
            .unwrap();
        assert_eq!(succ.len(), 4);
    }

    #[test]
    fn cciaf_configuration_restricts_control_attacks() {
        let cc = CcIaf::new(
            argset(["x", "y"]),
            attset([("x", "a"), ("y", "a"), ("x", "y")]),
            argset(["a"]),
            parse_formula("aw(a) & ~att(a,a)").unwrap(),
        )
        .unwrap();
        let cfg = cc.under_configuration(&argset(["x"])).unwrap();
        assert_eq!(cfg.control_atts(), &attset([("x", "a")]));

        let comps = cfg.completions().unwrap();
        assert_eq!(comps.len(), 1);
        let only = comps.iter().next().unwrap();
        assert!(only.contains_arg("x") && only.contains_arg("a"));

        // empty configuration: completions of the underlying framework alone
        let empty_cfg = cc.under_configuration(&ArgSet::new()).unwrap();
        assert_eq!(
            empty_cfg.completions().unwrap(),
            cc.underlying_ciaf().completions().unwrap()
        );
    }

    #[test]
    fn structural_constraints_on_the_running_incomplete_framework() {
        let iaf = crate::uncertainty::Iaf::new(
            argset(["a", "b", "d"]),
            attset([
                ("b", "a"),
                ("d", "a"),
                ("c", "b"),
                ("e", "d"),
                ("c", "e"),
                ("e", "c"),
                ("f", "e"),
            ]),
            argset(["c", "e", "f"]),
            attset([("f", "c")]),
        )
        .unwrap();
        let u = Universe::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let phi = parse_formula("aw(f)").unwrap();
        let s = Uncertain::Iaf(iaf.clone());
        assert!(check_structural_constraint(&u, &s, &phi, ConstraintMode::Possible).unwrap());
        assert!(!check_structural_constraint(&u, &s, &phi, ConstraintMode::Necessary).unwrap());
        assert!(check_structural_constraint(
            &u,
            &s,
            &Formula::top(),
            ConstraintMode::Necessary
        )
        .unwrap());

        // settling f enforces its own awareness everywhere
        assert!(
            check_enforced_by_settling(&u, &iaf, "f", &phi, ConstraintMode::Necessary).unwrap()
        );

        // modalities and acceptance variables are rejected
        assert!(check_structural_constraint(
            &u,
            &s,
            &parse_formula("[+aw(a)]T").unwrap(),
            ConstraintMode::Possible
        )
        .is_err());
        assert!(check_structural_constraint(
            &u,
            &s,
            &parse_formula("in(a)").unwrap(),
            ConstraintMode::Possible
        )
        .is_err());
    }
}
