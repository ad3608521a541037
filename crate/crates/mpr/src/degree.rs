//! Multidegrees in `N^r`, the componentwise partial order, and the finite
//! grid `[0, g]` on which all modules are represented.

use std::cmp::Ordering;
use std::fmt;

/// An exponent vector in `N^r`, grading modules over `k[x_1, ..., x_r]`.
///
/// The module-theoretic order is the componentwise partial order, exposed
/// as [`Multidegree::leq`]. The derived total order used for sorted
/// containers and printing is graded lexicographic: compare total degree
/// first, then exponents left to right.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multidegree(Vec<u32>);

impl Multidegree {
    pub fn new(coords: Vec<u32>) -> Self {
        Multidegree(coords)
    }

    pub fn zero(r: usize) -> Self {
        Multidegree(vec![0; r])
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// The componentwise partial order `self ⪯ other`.
    pub fn leq(&self, other: &Multidegree) -> bool {
        debug_assert_eq!(self.r(), other.r());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum (the join, i.e. the lcm of monomials).
    pub fn join(&self, other: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.r(), other.r());
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise minimum (the meet).
    pub fn meet(&self, other: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.r(), other.r());
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.r(), other.r());
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` unless `other ⪯ self`.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        if other.leq(self) {
            Some(Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn plus_unit(&self, axis: usize) -> Multidegree {
        let mut c = self.0.clone();
        c[axis] += 1;
        Multidegree(c)
    }

    pub fn minus_unit(&self, axis: usize) -> Option<Multidegree> {
        if self.0[axis] == 0 {
            return None;
        }
        let mut c = self.0.clone();
        c[axis] -= 1;
        Some(Multidegree(c))
    }

    /// Raises every coordinate by `k`.
    pub fn padded(&self, k: u32) -> Multidegree {
        Multidegree(self.0.iter().map(|c| c + k).collect())
    }

    /// Parses `(a1,...,ar)` with optional interior whitespace.
    pub fn parse(s: &str) -> Result<Multidegree, String> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("expected `(a1,...,ar)`, got `{s}`"))?;
        let mut coords = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            let c: u32 = part
                .parse()
                .map_err(|_| format!("bad coordinate `{part}` in `{s}`"))?;
            coords.push(c);
        }
        if coords.is_empty() {
            return Err(format!("empty multidegree `{s}`"));
        }
        Ok(Multidegree(coords))
    }
}

impl PartialOrd for Multidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reduces a set of grades to its antichain of minimal elements,
/// preserving first-occurrence order.
pub fn minimal_antichain(grades: &[Multidegree]) -> Vec<Multidegree> {
    let mut out: Vec<Multidegree> = Vec::new();
    for g in grades {
        if out.iter().any(|kept| kept.leq(g)) {
            continue;
        }
        out.retain(|kept| !g.leq(kept));
        out.push(g.clone());
    }
    out
}

/// The finite grid of all grades `v ⪯ bound`, with a fixed linear indexing.
///
/// Points are addressed by a mixed-radix index (last axis fastest); the
/// graded-lexicographic traversal used by generator extraction is exposed
/// separately via [`Grid::grlex_indices`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    bound: Multidegree,
    strides: Vec<usize>,
    len: usize,
}

impl Grid {
    pub fn new(bound: Multidegree) -> Self {
        let r = bound.r();
        let mut strides = vec![0usize; r];
        let mut len = 1usize;
        for i in (0..r).rev() {
            strides[i] = len;
            len *= bound.get(i) as usize + 1;
        }
        Grid { bound, strides, len }
    }

    pub fn r(&self) -> usize {
        self.bound.r()
    }

    pub fn bound(&self) -> &Multidegree {
        &self.bound
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &Multidegree) -> bool {
        v.r() == self.r() && v.leq(&self.bound)
    }

    pub fn index(&self, v: &Multidegree) -> usize {
        debug_assert!(self.contains(v));
        v.coords()
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn point(&self, idx: usize) -> Multidegree {
        debug_assert!(idx < self.len);
        let mut rem = idx;
        let mut coords = Vec::with_capacity(self.r());
        for &s in &self.strides {
            coords.push((rem / s) as u32);
            rem %= s;
        }
        Multidegree::new(coords)
    }

    /// All points in linear-index order.
    pub fn points(&self) -> impl Iterator<Item = Multidegree> + '_ {
        (0..self.len).map(|i| self.point(i))
    }

    /// Linear indices sorted graded-lexicographically by their points.
    pub fn grlex_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len).collect();
        idx.sort_by_key(|&a| self.point(a));
        idx
    }

    /// Index of `v - e_axis`, if that coordinate is positive.
    pub fn pred(&self, idx: usize, axis: usize) -> Option<usize> {
        let v = self.point(idx);
        if v.get(axis) == 0 {
            None
        } else {
            Some(idx - self.strides[axis])
        }
    }

    /// Index of `v + e_axis`, if it stays within the grid.
    pub fn succ(&self, idx: usize, axis: usize) -> Option<usize> {
        let v = self.point(idx);
        if v.get(axis) >= self.bound.get(axis) {
            None
        } else {
            Some(idx + self.strides[axis])
        }
    }

    /// Clamps an arbitrary grade onto the grid (componentwise meet with the
    /// bound); by stationarity this identifies the isomorphic grid grade.
    pub fn clamp(&self, v: &Multidegree) -> Multidegree {
        v.meet(&self.bound)
    }

    /// The grid enlarged by `k` along every axis.
    pub fn padded(&self, k: u32) -> Grid {
        Grid::new(self.bound.padded(k))
    }
}
