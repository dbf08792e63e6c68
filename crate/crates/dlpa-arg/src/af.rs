//! Argumentation frameworks and the definition-level semantics oracle.
//!
//! Every semantics here is computed by filtering the powerset of the
//! framework's arguments against the literal definition: no fixpoint
//! shortcuts, no labelling tricks. This module is the ground truth that the
//! logical encodings are validated against, so definitional fidelity beats
//! speed. Extension sets come back in canonical order (by size, then
//! lexicographically) for reproducible output.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A directed attack graph over a subset of the universe.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgFramework {
    args: BTreeSet<String>,
    attacks: BTreeSet<(String, String)>,
}

impl ArgFramework {
    /// Builds a framework; attacks mentioning arguments outside `args` are
    /// dropped (the restriction to the argument set is applied here).
    pub fn new<A, R>(args: A, attacks: R) -> Self
    where
        A: IntoIterator<Item = String>,
        R: IntoIterator<Item = (String, String)>,
    {
        let args: BTreeSet<String> = args.into_iter().collect();
        let attacks = attacks
            .into_iter()
            .filter(|(x, y)| args.contains(x) && args.contains(y))
            .collect();
        ArgFramework { args, attacks }
    }

    pub fn empty() -> Self {
        ArgFramework {
            args: BTreeSet::new(),
            attacks: BTreeSet::new(),
        }
    }

    pub fn args(&self) -> &BTreeSet<String> {
        &self.args
    }

    pub fn attacks(&self) -> &BTreeSet<(String, String)> {
        &self.attacks
    }

    pub fn contains_arg(&self, a: &str) -> bool {
        self.args.contains(a)
    }

    fn check_subset(&self, set: &Extension) -> Result<(), Error> {
        for a in &set.members {
            if !self.args.contains(a) {
                return Err(Error::domain(format!(
                    "argument `{a}` is not in the framework"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ArgFramework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({{")?;
        for (i, a) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}},{{")?;
        for (i, (x, y)) in self.attacks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "}})")
    }
}

/// A set of arguments deemed jointly acceptable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Extension {
    pub members: BTreeSet<String>,
}

impl Extension {
    pub fn new<I: IntoIterator<Item = String>>(members: I) -> Self {
        Extension {
            members: members.into_iter().collect(),
        }
    }

    pub fn of<const N: usize>(members: [&str; N]) -> Self {
        Extension::new(members.into_iter().map(String::from))
    }

    pub fn contains(&self, a: &str) -> bool {
        self.members.contains(a)
    }

    pub fn is_subset(&self, other: &Extension) -> bool {
        self.members.is_subset(&other.members)
    }
}

/// Canonical order: size first, then lexicographic on the member list.
impl PartialOrd for Extension {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extension {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// The nine extension semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Semantics {
    Stable,
    Complete,
    Grounded,
    Preferred,
    SemiStable,
    Ideal,
    Eager,
    Naive,
    Stage,
}

pub const ALL_SEMANTICS: [Semantics; 9] = [
    Semantics::Stable,
    Semantics::Complete,
    Semantics::Grounded,
    Semantics::Preferred,
    Semantics::SemiStable,
    Semantics::Ideal,
    Semantics::Eager,
    Semantics::Naive,
    Semantics::Stage,
];

impl Semantics {
    pub fn id(&self) -> &'static str {
        match self {
            Semantics::Stable => "st",
            Semantics::Complete => "co",
            Semantics::Grounded => "gr",
            Semantics::Preferred => "pr",
            Semantics::SemiStable => "se",
            Semantics::Ideal => "id",
            Semantics::Eager => "ea",
            Semantics::Naive => "na",
            Semantics::Stage => "stg",
        }
    }

    /// Semantics that always yield exactly one extension.
    pub fn is_single_status(&self) -> bool {
        matches!(
            self,
            Semantics::Grounded | Semantics::Ideal | Semantics::Eager
        )
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "st" => Semantics::Stable,
            "co" => Semantics::Complete,
            "gr" => Semantics::Grounded,
            "pr" => Semantics::Preferred,
            "se" => Semantics::SemiStable,
            "id" => Semantics::Ideal,
            "ea" => Semantics::Eager,
            "na" => Semantics::Naive,
            "stg" => Semantics::Stage,
            other => {
                return Err(Error::domain(format!(
                    "unknown semantics `{other}` (expected one of st, co, gr, pr, se, id, ea, na, stg)"
                )))
            }
        })
    }
}

/// Default cap on argument count for powerset enumeration.
pub const DEFAULT_ORACLE_BOUND: usize = 20;

/// The arguments attacked by `set` in `af`.
pub fn attacked_by(af: &ArgFramework, set: &Extension) -> Result<Extension, Error> {
    af.check_subset(set)?;
    let members = af
        .args
        .iter()
        .filter(|x| {
            af.attacks
                .iter()
                .any(|(y, z)| z == *x && set.contains(y))
        })
        .cloned()
        .collect();
    Ok(Extension { members })
}

/// The range of `set`: the set together with everything it attacks.
pub fn range(af: &ArgFramework, set: &Extension) -> Result<Extension, Error> {
    let mut r = attacked_by(af, set)?;
    r.members.extend(set.members.iter().cloned());
    Ok(r)
}

pub fn is_conflict_free(af: &ArgFramework, set: &Extension) -> Result<bool, Error> {
    let attacked = attacked_by(af, set)?;
    Ok(set.members.is_disjoint(&attacked.members))
}

/// Whether `set` defends `a`: every attacker of `a` is attacked by `set`.
pub fn defends(af: &ArgFramework, set: &Extension, a: &str) -> Result<bool, Error> {
    if !af.contains_arg(a) {
        return Err(Error::domain(format!(
            "argument `{a}` is not in the framework"
        )));
    }
    af.check_subset(set)?;
    let attacked = attacked_by(af, set)?;
    Ok(af
        .attacks
        .iter()
        .filter(|(_, y)| y == a)
        .all(|(x, _)| attacked.contains(x)))
}

pub fn is_admissible(af: &ArgFramework, set: &Extension) -> Result<bool, Error> {
    if !is_conflict_free(af, set)? {
        return Ok(false);
    }
    for a in &set.members {
        if !defends(af, set, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Index-based view used for powerset enumeration.
struct Dense {
    names: Vec<String>,
    /// attacks_from[i] = bitmask of arguments attacked by i
    attacks_from: Vec<u32>,
    /// attackers_of[i] = bitmask of attackers of i
    attackers_of: Vec<u32>,
}

impl Dense {
    fn new(af: &ArgFramework) -> Self {
        let names: Vec<String> = af.args.iter().cloned().collect();
        let idx = |name: &str| names.iter().position(|n| n == name).unwrap();
        let mut attacks_from = vec![0u32; names.len()];
        let mut attackers_of = vec![0u32; names.len()];
        for (x, y) in &af.attacks {
            let (xi, yi) = (idx(x), idx(y));
            attacks_from[xi] |= 1 << yi;
            attackers_of[yi] |= 1 << xi;
        }
        Dense {
            names,
            attacks_from,
            attackers_of,
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn attacked(&self, set: u32) -> u32 {
        let mut out = 0;
        let mut s = set;
        while s != 0 {
            let i = s.trailing_zeros() as usize;
            s &= s - 1;
            out |= self.attacks_from[i];
        }
        out
    }

    fn conflict_free(&self, set: u32) -> bool {
        set & self.attacked(set) == 0
    }

    /// Members are exactly the defended arguments (given conflict-freeness
    /// this is the completeness condition).
    fn defended(&self, set: u32) -> u32 {
        let attacked = self.attacked(set);
        let mut out = 0;
        for i in 0..self.n() {
            if self.attackers_of[i] & !attacked == 0 {
                out |= 1 << i;
            }
        }
        out
    }

    fn admissible(&self, set: u32) -> bool {
        self.conflict_free(set) && set & !self.defended(set) == 0
    }

    fn complete(&self, set: u32) -> bool {
        self.conflict_free(set) && set == self.defended(set)
    }

    fn stable(&self, set: u32) -> bool {
        let all = if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        };
        self.conflict_free(set) && all & !set & !self.attacked(set) == 0
    }

    fn range(&self, set: u32) -> u32 {
        set | self.attacked(set)
    }

    fn extension(&self, set: u32) -> Extension {
        Extension::new(
            (0..self.n())
                .filter(|i| set >> i & 1 == 1)
                .map(|i| self.names[i].clone()),
        )
    }
}

fn subset_maximal(cands: &[u32]) -> Vec<u32> {
    cands
        .iter()
        .copied()
        .filter(|&s| !cands.iter().any(|&t| t != s && s & !t == 0))
        .collect()
}

fn subset_minimal(cands: &[u32]) -> Vec<u32> {
    cands
        .iter()
        .copied()
        .filter(|&s| !cands.iter().any(|&t| t != s && t & !s == 0))
        .collect()
}

fn range_maximal(dense: &Dense, cands: &[u32]) -> Vec<u32> {
    let ranges: Vec<u32> = cands.iter().map(|&s| dense.range(s)).collect();
    cands
        .iter()
        .copied()
        .enumerate()
        .filter(|(i, _)| {
            !ranges
                .iter()
                .enumerate()
                .any(|(j, &r)| j != *i && ranges[*i] != r && ranges[*i] & !r == 0)
        })
        .map(|(_, s)| s)
        .collect()
}

/// All extensions of `af` under `sem`, with the default enumeration bound.
pub fn extensions(af: &ArgFramework, sem: Semantics) -> Result<Vec<Extension>, Error> {
    extensions_bounded(af, sem, DEFAULT_ORACLE_BOUND)
}

/// All extensions of `af` under `sem`; errors if `af` has more than
/// `max_args` arguments (the enumeration is exponential in that count).
pub fn extensions_bounded(
    af: &ArgFramework,
    sem: Semantics,
    max_args: usize,
) -> Result<Vec<Extension>, Error> {
    let n = af.args.len();
    if n > max_args.min(31) {
        return Err(Error::resource(format!(
            "framework has {n} arguments, above the enumeration bound {max_args}"
        )));
    }
    let dense = Dense::new(af);
    let all_sets = 0u32..(1u32 << n);

    let picked: Vec<u32> = match sem {
        Semantics::Stable => all_sets.filter(|&s| dense.stable(s)).collect(),
        Semantics::Complete => all_sets.filter(|&s| dense.complete(s)).collect(),
        Semantics::Grounded => {
            let complete: Vec<u32> = all_sets.filter(|&s| dense.complete(s)).collect();
            subset_minimal(&complete)
        }
        Semantics::Preferred => {
            let complete: Vec<u32> = all_sets.filter(|&s| dense.complete(s)).collect();
            subset_maximal(&complete)
        }
        Semantics::SemiStable => {
            let complete: Vec<u32> = all_sets.filter(|&s| dense.complete(s)).collect();
            range_maximal(&dense, &complete)
        }
        Semantics::Naive => {
            let cf: Vec<u32> = all_sets.filter(|&s| dense.conflict_free(s)).collect();
            subset_maximal(&cf)
        }
        Semantics::Stage => {
            let cf: Vec<u32> = all_sets.filter(|&s| dense.conflict_free(s)).collect();
            range_maximal(&dense, &cf)
        }
        Semantics::Ideal => {
            let complete: Vec<u32> = all_sets.clone().filter(|&s| dense.complete(s)).collect();
            let preferred = subset_maximal(&complete);
            let ideal_sets: Vec<u32> = all_sets
                .filter(|&s| dense.admissible(s) && preferred.iter().all(|&p| s & !p == 0))
                .collect();
            subset_maximal(&ideal_sets)
        }
        Semantics::Eager => {
            let complete: Vec<u32> = all_sets.clone().filter(|&s| dense.complete(s)).collect();
            let semi_stable = range_maximal(&dense, &complete);
            let eager_sets: Vec<u32> = all_sets
                .filter(|&s| dense.admissible(s) && semi_stable.iter().all(|&p| s & !p == 0))
                .collect();
            subset_maximal(&eager_sets)
        }
    };

    let mut exts: Vec<Extension> = picked.into_iter().map(|s| dense.extension(s)).collect();
    exts.sort();
    exts.dedup();
    Ok(exts)
}

/// Whether `a` belongs to at least one extension under `sem`.
pub fn credulous(af: &ArgFramework, sem: Semantics, a: &str) -> Result<bool, Error> {
    if !af.contains_arg(a) {
        return Err(Error::domain(format!(
            "argument `{a}` is not in the framework"
        )));
    }
    Ok(extensions(af, sem)?.iter().any(|e| e.contains(a)))
}

/// Whether `a` belongs to every extension under `sem`. Vacuously true when
/// there are no extensions (only possible for stable semantics).
pub fn sceptical(af: &ArgFramework, sem: Semantics, a: &str) -> Result<bool, Error> {
    if !af.contains_arg(a) {
        return Err(Error::domain(format!(
            "argument `{a}` is not in the framework"
        )));
    }
    Ok(extensions(af, sem)?.iter().all(|e| e.contains(a)))
}
