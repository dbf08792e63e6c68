//! Argument universes, propositional variables, and valuations.
//!
//! Everything in this crate is interpreted over a fixed, finite, non-empty
//! universe of argument names. The universe induces a finite space of
//! propositional variables (awareness, acceptance, primed acceptance copies,
//! attack variables, and a small reservoir of auxiliary variables), and a
//! valuation is a finite set of those variables. Valuations are stored as
//! bitsets over a dense index so that the evaluator can enumerate program
//! successors cheaply.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::Error;

/// A propositional variable of the session's variable space.
///
/// Argument components are names that must belong to the session [`Universe`];
/// this is checked when a variable is resolved, not at construction, so that
/// parsers can build variables before a universe is known.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// `aw(x)`: the agent is aware of argument `x`.
    Aw(String),
    /// `in(x)`: argument `x` belongs to the candidate extension.
    In(String),
    /// `in'(x)`: primed shadow copy of `in(x)`, used by range comparisons.
    InPrime(String),
    /// `att(x,y)`: `x` attacks `y`.
    Att(String, String),
    /// `aux(n)`: auxiliary variable from the session reservoir.
    Aux(u32),
}

impl Var {
    pub fn aw(x: impl Into<String>) -> Self {
        Var::Aw(x.into())
    }

    pub fn inn(x: impl Into<String>) -> Self {
        Var::In(x.into())
    }

    pub fn in_prime(x: impl Into<String>) -> Self {
        Var::InPrime(x.into())
    }

    pub fn att(x: impl Into<String>, y: impl Into<String>) -> Self {
        Var::Att(x.into(), y.into())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Aw(x) => write!(f, "aw({x})"),
            Var::In(x) => write!(f, "in({x})"),
            Var::InPrime(x) => write!(f, "in'({x})"),
            Var::Att(x, y) => write!(f, "att({x},{y})"),
            Var::Aux(n) => write!(f, "aux({n})"),
        }
    }
}

/// Dense index of a variable within a universe's variable space.
pub(crate) type VarId = u32;

/// A fixed, finite, non-empty, ordered set of argument names.
///
/// The declaration order is the canonical order for the whole session: every
/// "sequence over a set" program iterates in this order, and all printed
/// output lists variables in this order. Variable ids are laid out in blocks
/// (`aw`, `in`, `in'`, `att`, `aux`), each block sorted by universe order, so
/// the numeric id order is exactly the canonical variable order.
#[derive(Debug, Clone)]
pub struct Universe {
    args: Vec<String>,
    index: HashMap<String, usize>,
    max_aux: u32,
}

/// Default number of auxiliary variables reserved per session.
pub const DEFAULT_AUX_RESERVE: u32 = 8;

impl Universe {
    /// Creates a universe from distinct argument names, keeping their order.
    pub fn new<I, S>(args: I) -> Result<Arc<Self>, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_aux_reserve(args, DEFAULT_AUX_RESERVE)
    }

    /// As [`Universe::new`], with an explicit auxiliary-variable reservoir size.
    pub fn with_aux_reserve<I, S>(args: I, max_aux: u32) -> Result<Arc<Self>, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let args: Vec<String> = args.into_iter().map(Into::into).collect();
        if args.is_empty() {
            return Err(Error::domain("universe must be non-empty"));
        }
        let mut index = HashMap::new();
        for (i, a) in args.iter().enumerate() {
            if index.insert(a.clone(), i).is_some() {
                return Err(Error::domain(format!("duplicate argument name `{a}`")));
            }
        }
        Ok(Arc::new(Universe {
            args,
            index,
            max_aux,
        }))
    }

    /// Argument names in canonical (declaration) order.
    pub fn args(&self) -> &[String] {
        &self.args
    }

    pub fn len(&self) -> usize {
        self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn arg_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Total number of variables in the session space.
    pub(crate) fn var_count(&self) -> usize {
        let n = self.args.len();
        3 * n + n * n + self.max_aux as usize
    }

    pub(crate) fn words(&self) -> usize {
        self.var_count().div_ceil(64)
    }

    /// Resolves a variable to its dense id, or an error naming the offender.
    pub(crate) fn var_id(&self, var: &Var) -> Result<VarId, Error> {
        let n = self.args.len();
        let arg = |name: &str| -> Result<usize, Error> {
            self.arg_index(name)
                .ok_or_else(|| Error::domain(format!("unknown argument `{name}`")))
        };
        let id = match var {
            Var::Aw(x) => arg(x)?,
            Var::In(x) => n + arg(x)?,
            Var::InPrime(x) => 2 * n + arg(x)?,
            Var::Att(x, y) => 3 * n + arg(x)? * n + arg(y)?,
            Var::Aux(k) => {
                if *k >= self.max_aux {
                    return Err(Error::domain(format!(
                        "aux({k}) exceeds the session reservoir of {} auxiliary variables",
                        self.max_aux
                    )));
                }
                3 * n + n * n + *k as usize
            }
        };
        Ok(id as VarId)
    }

    pub(crate) fn var_of_id(&self, id: VarId) -> Var {
        let n = self.args.len();
        let id = id as usize;
        if id < n {
            Var::Aw(self.args[id].clone())
        } else if id < 2 * n {
            Var::In(self.args[id - n].clone())
        } else if id < 3 * n {
            Var::InPrime(self.args[id - 2 * n].clone())
        } else if id < 3 * n + n * n {
            let k = id - 3 * n;
            Var::Att(self.args[k / n].clone(), self.args[k % n].clone())
        } else {
            Var::Aux((id - 3 * n - n * n) as u32)
        }
    }

    /// Sorts variables into canonical order (kind-major, universe order within).
    pub fn sort_vars(&self, vars: &mut [Var]) {
        vars.sort_by_key(|v| self.var_id(v).unwrap_or(VarId::MAX));
    }
}

type Words = SmallVec<[u64; 4]>;

/// A finite set of true propositional variables: the model of the logic.
///
/// Valuations are tied to the universe they were built against; mixing
/// valuations from different universes is a programming error.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    words: Words,
}

impl Valuation {
    /// The empty valuation over `universe`.
    pub fn empty(universe: &Universe) -> Self {
        Valuation {
            words: smallvec::smallvec![0; universe.words()],
        }
    }

    /// Builds a valuation from the given variables.
    pub fn from_vars<'a, I>(universe: &Universe, vars: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = &'a Var>,
    {
        let mut v = Valuation::empty(universe);
        for var in vars {
            v.set_id(universe.var_id(var)?, true);
        }
        Ok(v)
    }

    pub(crate) fn get_id(&self, id: VarId) -> bool {
        self.words[(id / 64) as usize] >> (id % 64) & 1 == 1
    }

    pub(crate) fn set_id(&mut self, id: VarId, value: bool) {
        let w = &mut self.words[(id / 64) as usize];
        if value {
            *w |= 1 << (id % 64);
        } else {
            *w &= !(1 << (id % 64));
        }
    }

    pub fn contains(&self, universe: &Universe, var: &Var) -> Result<bool, Error> {
        Ok(self.get_id(universe.var_id(var)?))
    }

    pub fn insert(&mut self, universe: &Universe, var: &Var) -> Result<(), Error> {
        self.set_id(universe.var_id(var)?, true);
        Ok(())
    }

    pub fn remove(&mut self, universe: &Universe, var: &Var) -> Result<(), Error> {
        self.set_id(universe.var_id(var)?, false);
        Ok(())
    }

    pub fn is_emptyset(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn card(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// True variables in canonical order.
    pub fn vars(&self, universe: &Universe) -> Vec<Var> {
        self.iter_ids().map(|id| universe.var_of_id(id)).collect()
    }

    pub(crate) fn iter_ids(&self) -> impl Iterator<Item = VarId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, w)| {
            let mut w = *w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(wi as VarId * 64 + b)
                }
            })
        })
    }

    /// Symmetric difference cardinality; used by frame-property checks.
    pub fn diff_count(&self, other: &Valuation) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn display<'a>(&'a self, universe: &'a Universe) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Valuation, &'a Universe);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{{")?;
                for (i, var) in self.0.vars(self.1).iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{var}")?;
                }
                write!(f, "}}")
            }
        }
        D(self, universe)
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation({:?})", self.words)
    }
}

/// Canonical order on valuations: compare as big-endian bit strings, which is
/// the subset-as-binary-number order induced by the canonical variable order.
impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.words.len(), other.words.len());
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}
