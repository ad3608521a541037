//! Textual rendering shared by the chain-module decompositions and the
//! resolution summaries.
//!
//! Monomials print with variables `x`, `y`, `z` when `r ≤ 3` and `x1..xr`
//! otherwise, factors separated by spaces (`x^2 y`), and `1` for the empty
//! exponent. Free-module shifts print as `R(-a,-b)`, collecting repeated
//! shifts with `^m`.

use crate::degree::Multidegree;
use crate::graded::FreeModule;
use std::collections::BTreeMap;

fn variable(i: usize, r: usize) -> String {
    if r <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

/// Renders an exponent vector as a monomial, e.g. `(2,1)` as `x^2 y`.
pub fn monomial(deg: &Multidegree) -> String {
    let r = deg.r();
    let mut factors = Vec::new();
    for (i, &e) in deg.coords().iter().enumerate() {
        match e {
            0 => {}
            1 => factors.push(variable(i, r)),
            _ => factors.push(format!("{}^{}", variable(i, r), e)),
        }
    }
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join(" ")
    }
}

/// Renders a generator list as an ideal, e.g. `<x y, x^3, y^2>`.
pub fn ideal(generators: &[Multidegree]) -> String {
    let inner: Vec<String> = generators.iter().map(monomial).collect();
    format!("<{}>", inner.join(", "))
}

/// Renders a chain-module decomposition line,
/// e.g. `C_1 = <x^2> (+) <y^2, x^2 y>`.
pub fn decomposition_line(n: usize, ideals: &[Vec<Multidegree>]) -> String {
    if ideals.is_empty() {
        return format!("C_{n} = 0");
    }
    let parts: Vec<String> = ideals.iter().map(|g| ideal(g)).collect();
    format!("C_{n} = {}", parts.join(" (+) "))
}

/// Renders one free module as a sum of shifts, e.g. `R(-2,-2)(+)R(-3,-1)`,
/// with equal shifts collapsed to `R(-a,-b)^m` and shifts listed in the
/// graded-lexicographic order of their degrees. The zero module prints `0`.
pub fn shifts(term: &FreeModule) -> String {
    if term.is_empty() {
        return "0".to_string();
    }
    let mut counts: BTreeMap<&Multidegree, usize> = BTreeMap::new();
    for d in term.degrees() {
        *counts.entry(d).or_insert(0) += 1;
    }
    let parts: Vec<String> = counts
        .iter()
        .map(|(d, m)| {
            let coords: Vec<String> =
                d.coords().iter().map(|&c| format!("{}", -(c as i64))).collect();
            let base = format!("R({})", coords.join(","));
            if *m == 1 {
                base
            } else {
                format!("{base}^{m}")
            }
        })
        .collect();
    parts.join("(+)")
}

/// Renders the one-line complex summary, highest homological degree first,
/// e.g. `0 -> R(-3,-2)^2 -> R(-2,-2)(+)R(-3,-1) -> 0`.
pub fn summary_line(terms: &[FreeModule]) -> String {
    let mut parts = vec!["0".to_string()];
    for term in terms.iter().rev() {
        parts.push(shifts(term));
    }
    parts.push("0".to_string());
    parts.join(" -> ")
}
