//! Formula and program abstract syntax, and the standard program builders.
//!
//! Formulas and programs are immutable reference-counted trees. Sharing
//! subterms is encouraged: the evaluator memoises by node identity, so a
//! formula that is built once and embedded in several programs is only
//! evaluated once per valuation.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::universe::{Universe, Var};
use crate::error::Error;

/// A star-free formula with converse-closed modalities.
#[derive(Debug, Clone)]
pub struct Formula(pub(crate) Arc<FormulaKind>);

#[derive(Debug)]
pub enum FormulaKind {
    Atom(Var),
    Top,
    Bot,
    Not(Formula),
    /// N-ary conjunction; empty means true.
    And(Vec<Formula>),
    /// N-ary disjunction; empty means false.
    Or(Vec<Formula>),
    Implies(Formula, Formula),
    Iff(Formula, Formula),
    /// `[pi]phi`: after every execution of `pi`, `phi` holds.
    Box(Program, Formula),
    /// `<pi>phi`: after some execution of `pi`, `phi` holds.
    Diamond(Program, Formula),
}

/// A star-free program: assignments, tests, sequence, choice, converse.
#[derive(Debug, Clone)]
pub struct Program(pub(crate) Arc<ProgramKind>);

#[derive(Debug)]
pub enum ProgramKind {
    AssignTrue(Var),
    AssignFalse(Var),
    Test(Formula),
    Seq(Program, Program),
    Choice(Program, Program),
    Converse(Program),
}

impl Formula {
    pub fn kind(&self) -> &FormulaKind {
        &self.0
    }

    pub(crate) fn node_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    pub fn atom(var: Var) -> Formula {
        Formula(Arc::new(FormulaKind::Atom(var)))
    }

    pub fn top() -> Formula {
        Formula(Arc::new(FormulaKind::Top))
    }

    pub fn bot() -> Formula {
        Formula(Arc::new(FormulaKind::Bot))
    }

    pub fn not(self) -> Formula {
        Formula(Arc::new(FormulaKind::Not(self)))
    }

    /// N-ary conjunction. The empty conjunction is `T`.
    pub fn and(conjuncts: Vec<Formula>) -> Formula {
        match conjuncts.len() {
            0 => Formula::top(),
            1 => conjuncts.into_iter().next().unwrap(),
            _ => Formula(Arc::new(FormulaKind::And(conjuncts))),
        }
    }

    /// N-ary disjunction. The empty disjunction is `F`.
    pub fn or(disjuncts: Vec<Formula>) -> Formula {
        match disjuncts.len() {
            0 => Formula::bot(),
            1 => disjuncts.into_iter().next().unwrap(),
            _ => Formula(Arc::new(FormulaKind::Or(disjuncts))),
        }
    }

    pub fn implies(self, rhs: Formula) -> Formula {
        Formula(Arc::new(FormulaKind::Implies(self, rhs)))
    }

    pub fn iff(self, rhs: Formula) -> Formula {
        Formula(Arc::new(FormulaKind::Iff(self, rhs)))
    }

    pub fn boxed(program: Program, phi: Formula) -> Formula {
        Formula(Arc::new(FormulaKind::Box(program, phi)))
    }

    pub fn diamond(program: Program, phi: Formula) -> Formula {
        Formula(Arc::new(FormulaKind::Diamond(program, phi)))
    }

    /// Every variable occurring in the formula (atoms and program bodies).
    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self.kind() {
            FormulaKind::Atom(v) => {
                out.insert(v.clone());
            }
            FormulaKind::Top | FormulaKind::Bot => {}
            FormulaKind::Not(f) => f.collect_vars(out),
            FormulaKind::And(fs) | FormulaKind::Or(fs) => {
                for f in fs {
                    f.collect_vars(out);
                }
            }
            FormulaKind::Implies(a, b) | FormulaKind::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            FormulaKind::Box(p, f) | FormulaKind::Diamond(p, f) => {
                p.collect_vars(out);
                f.collect_vars(out);
            }
        }
    }

    /// Checks that every variable of the formula resolves in `universe`.
    pub fn check(&self, universe: &Universe) -> Result<(), Error> {
        for v in self.vars() {
            universe.var_id(&v)?;
        }
        Ok(())
    }

    /// True when the formula contains no modalities (a Boolean formula).
    pub fn is_boolean(&self) -> bool {
        match self.kind() {
            FormulaKind::Atom(_) | FormulaKind::Top | FormulaKind::Bot => true,
            FormulaKind::Not(f) => f.is_boolean(),
            FormulaKind::And(fs) | FormulaKind::Or(fs) => fs.iter().all(Formula::is_boolean),
            FormulaKind::Implies(a, b) | FormulaKind::Iff(a, b) => {
                a.is_boolean() && b.is_boolean()
            }
            FormulaKind::Box(..) | FormulaKind::Diamond(..) => false,
        }
    }

    /// Structural equality (the `Arc` wrappers compare by pointer, so this
    /// walks the trees).
    pub fn structurally_eq(&self, other: &Formula) -> bool {
        use FormulaKind::*;
        match (self.kind(), other.kind()) {
            (Atom(a), Atom(b)) => a == b,
            (Top, Top) | (Bot, Bot) => true,
            (Not(a), Not(b)) => a.structurally_eq(b),
            (And(xs), And(ys)) | (Or(xs), Or(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| x.structurally_eq(y))
            }
            (Implies(a, b), Implies(c, d)) | (Iff(a, b), Iff(c, d)) => {
                a.structurally_eq(c) && b.structurally_eq(d)
            }
            (Box(p, a), Box(q, b)) | (Diamond(p, a), Diamond(q, b)) => {
                p.structurally_eq(q) && a.structurally_eq(b)
            }
            _ => false,
        }
    }
}

impl Program {
    pub fn kind(&self) -> &ProgramKind {
        &self.0
    }

    pub fn assign_true(var: Var) -> Program {
        Program(Arc::new(ProgramKind::AssignTrue(var)))
    }

    pub fn assign_false(var: Var) -> Program {
        Program(Arc::new(ProgramKind::AssignFalse(var)))
    }

    pub fn test(phi: Formula) -> Program {
        Program(Arc::new(ProgramKind::Test(phi)))
    }

    pub fn seq(self, then: Program) -> Program {
        Program(Arc::new(ProgramKind::Seq(self, then)))
    }

    pub fn choice(self, or: Program) -> Program {
        Program(Arc::new(ProgramKind::Choice(self, or)))
    }

    pub fn converse(self) -> Program {
        Program(Arc::new(ProgramKind::Converse(self)))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self.kind() {
            ProgramKind::AssignTrue(v) | ProgramKind::AssignFalse(v) => {
                out.insert(v.clone());
            }
            ProgramKind::Test(f) => f.collect_vars(out),
            ProgramKind::Seq(a, b) | ProgramKind::Choice(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            ProgramKind::Converse(p) => p.collect_vars(out),
        }
    }

    pub fn check(&self, universe: &Universe) -> Result<(), Error> {
        for v in self.vars() {
            universe.var_id(&v)?;
        }
        Ok(())
    }

    pub fn structurally_eq(&self, other: &Program) -> bool {
        use ProgramKind::*;
        match (self.kind(), other.kind()) {
            (AssignTrue(a), AssignTrue(b)) | (AssignFalse(a), AssignFalse(b)) => a == b,
            (Test(a), Test(b)) => a.structurally_eq(b),
            (Seq(a, b), Seq(c, d)) | (Choice(a, b), Choice(c, d)) => {
                a.structurally_eq(c) && b.structurally_eq(d)
            }
            (Converse(a), Converse(b)) => a.structurally_eq(b),
            _ => false,
        }
    }
}

/// Every variable assigned (made true or false) anywhere in the program,
/// including under tests and converses. Only these variables can differ
/// between a valuation and any of its successors.
pub fn assigned_vars(program: &Program) -> BTreeSet<Var> {
    fn walk(p: &Program, out: &mut BTreeSet<Var>) {
        match p.kind() {
            ProgramKind::AssignTrue(v) | ProgramKind::AssignFalse(v) => {
                out.insert(v.clone());
            }
            ProgramKind::Test(f) => walk_formula(f, out),
            ProgramKind::Seq(a, b) | ProgramKind::Choice(a, b) => {
                walk(a, out);
                walk(b, out);
            }
            ProgramKind::Converse(p) => walk(p, out),
        }
    }
    fn walk_formula(f: &Formula, out: &mut BTreeSet<Var>) {
        match f.kind() {
            FormulaKind::Atom(_) | FormulaKind::Top | FormulaKind::Bot => {}
            FormulaKind::Not(g) => walk_formula(g, out),
            FormulaKind::And(gs) | FormulaKind::Or(gs) => {
                for g in gs {
                    walk_formula(g, out);
                }
            }
            FormulaKind::Implies(a, b) | FormulaKind::Iff(a, b) => {
                walk_formula(a, out);
                walk_formula(b, out);
            }
            FormulaKind::Box(p, g) | FormulaKind::Diamond(p, g) => {
                walk(p, out);
                walk_formula(g, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(program, &mut out);
    out
}

/// Rewrites a program into an equivalent one in which converse wraps only
/// atomic assignments, using the identities
/// `(p;q)~ = q~;p~`, `(p|q)~ = p~|q~`, `(f?)~ = f?`, and `(p~)~ = p`.
pub fn converse_pushdown(program: &Program) -> Program {
    fn push(p: &Program, under_converse: bool) -> Program {
        match p.kind() {
            ProgramKind::AssignTrue(_) | ProgramKind::AssignFalse(_) => {
                if under_converse {
                    p.clone().converse()
                } else {
                    p.clone()
                }
            }
            ProgramKind::Test(f) => Program::test(f.clone()),
            ProgramKind::Seq(a, b) => {
                if under_converse {
                    push(b, true).seq(push(a, true))
                } else {
                    push(a, false).seq(push(b, false))
                }
            }
            ProgramKind::Choice(a, b) => push(a, under_converse).choice(push(b, under_converse)),
            ProgramKind::Converse(inner) => push(inner, !under_converse),
        }
    }
    push(program, false)
}

/// `skip`: the test of `T`, which always succeeds and changes nothing.
pub fn skip() -> Program {
    Program::test(Formula::top())
}

/// `if phi then alpha else beta` as `(phi?; alpha) | (~phi?; beta)`.
pub fn if_then_else(phi: Formula, alpha: Program, beta: Program) -> Program {
    Program::test(phi.clone())
        .seq(alpha)
        .choice(Program::test(phi.not()).seq(beta))
}

/// `if phi then pi`: as above with a `skip` else-branch.
pub fn if_then(phi: Formula, pi: Program) -> Program {
    if_then_else(phi, pi, skip())
}

/// Sequential composition of `build(var)` over `vars`, in the given order.
/// The empty sequence is `skip`.
pub fn seq_over_set<F>(vars: &[Var], mut build: F) -> Program
where
    F: FnMut(&Var) -> Program,
{
    let mut parts = vars.iter().map(|v| build(v));
    match parts.next() {
        None => skip(),
        Some(first) => parts.fold(first, Program::seq),
    }
}

/// Nondeterministic choice of `build(var)` over `vars`. The empty choice is
/// `skip`, matching the convention for the empty sequence.
pub fn choice_over_set<F>(vars: &[Var], mut build: F) -> Program
where
    F: FnMut(&Var) -> Program,
{
    let mut parts = vars.iter().map(|v| build(v));
    match parts.next() {
        None => skip(),
        Some(first) => parts.fold(first, Program::choice),
    }
}

/// Makes true exactly one variable of `vars` that was false before.
pub fn mk_true_one(vars: &[Var]) -> Program {
    choice_over_set(vars, |v| {
        Program::test(Formula::atom(v.clone()).not()).seq(Program::assign_true(v.clone()))
    })
}

/// Makes false exactly one variable of `vars` that was true before.
pub fn mk_false_one(vars: &[Var]) -> Program {
    choice_over_set(vars, |v| {
        Program::test(Formula::atom(v.clone())).seq(Program::assign_false(v.clone()))
    })
}

/// Makes true some (possibly empty) subset of `vars`.
pub fn mk_true_some(vars: &[Var]) -> Program {
    seq_over_set(vars, |v| {
        Program::assign_true(v.clone()).choice(skip())
    })
}

/// Makes false some (possibly empty) subset of `vars`.
pub fn mk_false_some(vars: &[Var]) -> Program {
    seq_over_set(vars, |v| {
        Program::assign_false(v.clone()).choice(skip())
    })
}

/// Sets every variable of `vars` nondeterministically to true or false.
pub fn vary(vars: &[Var]) -> Program {
    seq_over_set(vars, |v| {
        Program::assign_true(v.clone()).choice(Program::assign_false(v.clone()))
    })
}

/// For each ordered pair `(x,y)` in the list, makes true `att(x,y)` or
/// `att(y,x)`. Over a symmetric relation this realises "the attack exists in
/// at least one direction".
pub fn dis(attack_pairs: &[(String, String)]) -> Program {
    let mut parts = attack_pairs.iter().map(|(x, y)| {
        Program::assign_true(Var::att(x.clone(), y.clone()))
            .choice(Program::assign_true(Var::att(y.clone(), x.clone())))
    });
    match parts.next() {
        None => skip(),
        Some(first) => parts.fold(first, Program::seq),
    }
}

/// Copies the value of `in(x)` into `in'(x)` for every argument of the
/// universe, in canonical order.
pub fn copy_in(universe: &Universe) -> Program {
    let mut steps = universe.args().iter().map(|x| {
        let test_in = Formula::atom(Var::inn(x.clone()));
        Program::test(test_in.clone())
            .seq(Program::assign_true(Var::in_prime(x.clone())))
            .choice(
                Program::test(test_in.not()).seq(Program::assign_false(Var::in_prime(x.clone()))),
            )
    });
    match steps.next() {
        None => skip(),
        Some(first) => steps.fold(first, Program::seq),
    }
}
