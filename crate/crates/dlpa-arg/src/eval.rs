//! Relational evaluation: model checking and successor enumeration.
//!
//! Programs denote binary relations on valuations and formulas denote sets of
//! valuations. Successors are enumerated by structural recursion with
//! on-the-fly deduplication; relations are never materialised. Only variables
//! assigned somewhere in a program can change, which keeps every successor
//! set finite even though the variable space is large.
//!
//! Converse is interpreted by inverting the atomic cases and pushing the
//! operator through composite programs one level at a time:
//! `<(+p)~>` from `v` leads to `{v, v minus p}` when `p` is in `v` and fails
//! otherwise; `<(-p)~>` leads to `{v, v plus p}` when `p` is not in `v` and
//! fails otherwise. A box over a failing program is vacuously true; in
//! particular `[(-p)~]p` holds at every valuation containing `p` because no
//! converse successor exists there.

use std::collections::HashMap;

use crate::error::Error;
use crate::syntax::{Formula, FormulaKind, Program, ProgramKind};
use crate::universe::{Universe, Valuation, VarId};

/// A model-checking session over one universe.
///
/// The evaluator memoises formula values by node identity and valuation, so
/// reusing one evaluator across many related calls (as the extension and
/// completion builders do) makes nested encodings such as the ideal and eager
/// formulas tractable. Formula trees passed in must stay alive for the
/// lifetime of the evaluator; holding them by `Arc` inside `Formula` makes
/// this automatic at call sites.
pub struct Evaluator<'u> {
    universe: &'u Universe,
    memo: HashMap<(usize, Valuation), bool>,
    roots: Vec<Formula>,
    root_programs: Vec<Program>,
}

impl<'u> Evaluator<'u> {
    pub fn new(universe: &'u Universe) -> Self {
        Evaluator {
            universe,
            memo: HashMap::new(),
            roots: Vec::new(),
            root_programs: Vec::new(),
        }
    }

    pub fn universe(&self) -> &Universe {
        self.universe
    }

    /// Truth of `phi` at `v` under the relational semantics.
    pub fn eval(&mut self, v: &Valuation, phi: &Formula) -> Result<bool, Error> {
        phi.check(self.universe)?;
        self.roots.push(phi.clone());
        Ok(self.eval_inner(v, phi))
    }

    /// The set `{w | (v, w) in ||pi||}`, deduplicated, in canonical order.
    pub fn successors(&mut self, v: &Valuation, pi: &Program) -> Result<Vec<Valuation>, Error> {
        pi.check(self.universe)?;
        self.root_programs.push(pi.clone());
        let mut out = self.succ_inner(v, pi);
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    fn eval_inner(&mut self, v: &Valuation, phi: &Formula) -> bool {
        match phi.kind() {
            FormulaKind::Atom(var) => {
                let id = self.universe.var_id(var).expect("checked at entry");
                v.get_id(id)
            }
            FormulaKind::Top => true,
            FormulaKind::Bot => false,
            FormulaKind::Not(f) => !self.eval_inner(v, f),
            FormulaKind::And(fs) => fs.iter().all(|f| self.eval_inner(v, f)),
            FormulaKind::Or(fs) => fs.iter().any(|f| self.eval_inner(v, f)),
            FormulaKind::Implies(a, b) => !self.eval_inner(v, a) || self.eval_inner(v, b),
            FormulaKind::Iff(a, b) => self.eval_inner(v, a) == self.eval_inner(v, b),
            FormulaKind::Box(p, f) => self.eval_modal(v, p, f, true),
            FormulaKind::Diamond(p, f) => self.eval_modal(v, p, f, false),
        }
    }

    fn eval_modal(&mut self, v: &Valuation, p: &Program, f: &Formula, universal: bool) -> bool {
        // Memoise the modal body: across overlapping successor sets the same
        // (body, valuation) pair comes up again and again.
        for w in self.succ_inner(v, p) {
            let value = if let Some(&b) = self.memo.get(&(f.node_id(), w.clone())) {
                b
            } else {
                let b = self.eval_inner(&w, f);
                self.memo.insert((f.node_id(), w), b);
                b
            };
            if value != universal {
                return !universal;
            }
        }
        universal
    }

    fn succ_inner(&mut self, v: &Valuation, pi: &Program) -> Vec<Valuation> {
        match pi.kind() {
            ProgramKind::AssignTrue(var) => {
                let id = self.universe.var_id(var).expect("checked at entry");
                let mut w = v.clone();
                w.set_id(id, true);
                vec![w]
            }
            ProgramKind::AssignFalse(var) => {
                let id = self.universe.var_id(var).expect("checked at entry");
                let mut w = v.clone();
                w.set_id(id, false);
                vec![w]
            }
            ProgramKind::Test(f) => {
                if self.eval_inner(v, f) {
                    vec![v.clone()]
                } else {
                    vec![]
                }
            }
            ProgramKind::Seq(a, b) => {
                let mid = self.succ_inner(v, a);
                let mut out = Vec::new();
                for m in dedup_vec(mid) {
                    out.extend(self.succ_inner(&m, b));
                }
                dedup_vec(out)
            }
            ProgramKind::Choice(a, b) => {
                let mut out = self.succ_inner(v, a);
                out.extend(self.succ_inner(v, b));
                dedup_vec(out)
            }
            ProgramKind::Converse(inner) => self.succ_converse(v, inner),
        }
    }

    /// Successors of `inner~` from `v`: predecessors of `v` under `inner`.
    fn succ_converse(&mut self, v: &Valuation, inner: &Program) -> Vec<Valuation> {
        match inner.kind() {
            ProgramKind::AssignTrue(var) => {
                let id = self.universe.var_id(var).expect("checked at entry");
                // (w, v) in ||+p|| iff v = w + p; so p must hold at v, and w
                // is v with p either kept or dropped.
                if v.get_id(id) {
                    let mut dropped = v.clone();
                    dropped.set_id(id, false);
                    vec![v.clone(), dropped]
                } else {
                    vec![]
                }
            }
            ProgramKind::AssignFalse(var) => {
                let id = self.universe.var_id(var).expect("checked at entry");
                if v.get_id(id) {
                    vec![]
                } else {
                    let mut added = v.clone();
                    added.set_id(id, true);
                    vec![v.clone(), added]
                }
            }
            ProgramKind::Test(f) => {
                if self.eval_inner(v, f) {
                    vec![v.clone()]
                } else {
                    vec![]
                }
            }
            ProgramKind::Seq(a, b) => {
                // (p;q)~ = q~;p~
                let mid = self.succ_converse(v, b);
                let mut out = Vec::new();
                for m in dedup_vec(mid) {
                    out.extend(self.succ_converse(&m, a));
                }
                dedup_vec(out)
            }
            ProgramKind::Choice(a, b) => {
                let mut out = self.succ_converse(v, a);
                out.extend(self.succ_converse(v, b));
                dedup_vec(out)
            }
            ProgramKind::Converse(p) => self.succ_inner(v, p),
        }
    }
}

fn dedup_vec(mut vs: Vec<Valuation>) -> Vec<Valuation> {
    if vs.len() > 1 {
        vs.sort_unstable();
        vs.dedup();
    }
    vs
}

/// One-shot model check with a fresh evaluator.
pub fn eval(universe: &Universe, v: &Valuation, phi: &Formula) -> Result<bool, Error> {
    Evaluator::new(universe).eval(v, phi)
}

/// One-shot successor enumeration with a fresh evaluator.
pub fn successors(
    universe: &Universe,
    v: &Valuation,
    pi: &Program,
) -> Result<Vec<Valuation>, Error> {
    Evaluator::new(universe).successors(v, pi)
}

/// Checks `phi` at every valuation over the given variables (all other
/// variables false). This is validity over an explicitly bounded variable
/// set, not a general validity oracle.
pub fn valid_over(
    universe: &Universe,
    vars: &[crate::universe::Var],
    phi: &Formula,
) -> Result<bool, Error> {
    phi.check(universe)?;
    let ids: Vec<VarId> = vars
        .iter()
        .map(|v| universe.var_id(v))
        .collect::<Result<_, _>>()?;
    let mut ev = Evaluator::new(universe);
    for mask in 0u64..(1u64 << ids.len()) {
        let mut v = Valuation::empty(universe);
        for (bit, id) in ids.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                v.set_id(*id, true);
            }
        }
        if !ev.eval(&v, phi)? {
            return Ok(false);
        }
    }
    Ok(true)
}
