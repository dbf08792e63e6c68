//! Shared fixtures: the well-known frameworks used across the suites.

#![allow(dead_code)]

use std::sync::Arc;

use dlpa_arg::af::ArgFramework;
use dlpa_arg::control::{Caf, CcIaf};
use dlpa_arg::uncertainty::{ArgSet, AttSet, Ciaf, Iaf, Riaf};
use dlpa_arg::universe::Universe;

pub fn argset<const N: usize>(args: [&str; N]) -> ArgSet {
    args.into_iter().map(String::from).collect()
}

pub fn attset<const N: usize>(pairs: [(&str, &str); N]) -> AttSet {
    pairs
        .into_iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect()
}

pub fn af<const N: usize, const M: usize>(
    args: [&str; N],
    attacks: [(&str, &str); M],
) -> ArgFramework {
    ArgFramework::new(argset(args), attset(attacks))
}

/// Five arguments; two stable extensions ({b,e} and {c,d}), empty grounded.
pub fn a0() -> ArgFramework {
    af(
        ["a", "b", "c", "d", "e"],
        [
            ("b", "a"),
            ("d", "a"),
            ("c", "b"),
            ("e", "d"),
            ("c", "e"),
            ("e", "c"),
        ],
    )
}

/// No stable extension; {a,c} is the unique semi-stable one.
pub fn a1() -> ArgFramework {
    af(
        ["a", "b", "c", "d"],
        [("b", "a"), ("c", "b"), ("d", "b"), ("d", "d")],
    )
}

/// {a} is preferred but not (semi-)stable; eager {b,d}, ideal empty.
pub fn a2() -> ArgFramework {
    af(
        ["a", "b", "c", "d", "e"],
        [
            ("a", "b"),
            ("b", "a"),
            ("b", "c"),
            ("d", "e"),
            ("e", "c"),
            ("c", "d"),
        ],
    )
}

/// The running incomplete framework: ten completions.
pub fn iaf0() -> Iaf {
    Iaf::new(
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
    .unwrap()
}

/// The rich variant: the c-e conflict direction is open; sixteen completions.
pub fn riaf0() -> Riaf {
    Riaf::new(
        Iaf::new(
            argset(["a", "b", "d"]),
            attset([("b", "a"), ("d", "a"), ("c", "b"), ("e", "d"), ("f", "e")]),
            argset(["c", "e", "f"]),
            attset([("f", "c")]),
        )
        .unwrap(),
        attset([("c", "e")]),
    )
    .unwrap()
}

/// The polarized two-argument constrained framework: two completions.
pub fn ciaf0() -> Ciaf {
    dlpa_arg::uncertainty::polarized_pair_ciaf()
}

/// The running control framework: b and d are control arguments.
pub fn caf0() -> Caf {
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

/// A small constrained control framework used by the control suites.
pub fn cciaf_small() -> CcIaf {
    CcIaf::new(
        argset(["x"]),
        attset([("x", "b")]),
        argset(["a", "b"]),
        dlpa_arg::parser::parse_formula(
            "aw(a) & aw(b) & (att(b,a) | att(a,b)) & ~att(a,a) & ~att(b,b)",
        )
        .unwrap(),
    )
    .unwrap()
}

pub fn universe6() -> Arc<Universe> {
    Universe::new(["a", "b", "c", "d", "e", "f"]).unwrap()
}

pub fn universe_of(names: &[&str]) -> Arc<Universe> {
    Universe::new(names.iter().map(|s| s.to_string())).unwrap()
}
