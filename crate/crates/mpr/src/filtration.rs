//! Multifiltered simplicial complexes and the `.mfil` interchange format.
//!
//! A multifiltration lists simplices together with their critical grades:
//! the minimal grades at which each simplex enters. Grade sets are kept as
//! antichains; parsing normalizes arbitrary entry sets to their minimal
//! elements. Validation enforces face closure and monotonicity, so every
//! grade of the grid cuts out an honest simplicial complex.

use crate::degree::{minimal_antichain, Multidegree};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

/// A simplex with a user-facing id and strictly increasing vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub id: u32,
    pub vertices: Vec<u32>,
}

impl Simplex {
    /// Canonicalizes the vertex list by sorting; repeated vertices are
    /// rejected.
    pub fn new(id: u32, mut vertices: Vec<u32>) -> Result<Self, FiltrationError> {
        vertices.sort_unstable();
        for pair in vertices.windows(2) {
            if pair[0] == pair[1] {
                return Err(FiltrationError::RepeatedVertex { id, vertex: pair[0] });
            }
        }
        if vertices.is_empty() {
            return Err(FiltrationError::EmptyVertexList { id });
        }
        Ok(Simplex { id, vertices })
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The i-th facet (vertex i removed), for simplices of dimension ≥ 1.
    pub fn facet(&self, i: usize) -> Vec<u32> {
        let mut v = self.vertices.clone();
        v.remove(i);
        v
    }
}

/// A simplex together with its antichain of critical grades, in input
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredSimplex {
    pub simplex: Simplex,
    pub grades: Vec<Multidegree>,
}

impl FilteredSimplex {
    /// Whether the simplex is present in the slice at `v`.
    pub fn present_at(&self, v: &Multidegree) -> bool {
        self.grades.iter().any(|g| g.leq(v))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `r <integer>` header")]
    MissingHeader,
    #[error("simplex {id}: repeated vertex {vertex}")]
    RepeatedVertex { id: u32, vertex: u32 },
    #[error("simplex {id}: empty vertex list")]
    EmptyVertexList { id: u32 },
    #[error("duplicate simplex id {0}")]
    DuplicateId(u32),
    #[error("duplicate simplex on vertices [{0}]")]
    DuplicateSimplex(String),
    #[error("simplex {id}: no critical grades given")]
    NoGrades { id: u32 },
    #[error("simplex {id}: grade {grade} has {got} coordinates, expected {expected}")]
    ArityMismatch { id: u32, grade: Multidegree, got: usize, expected: usize },
    #[error("simplex {id}: critical grades {lower} and {upper} are comparable")]
    ComparableGrades { id: u32, lower: Multidegree, upper: Multidegree },
    #[error("closure violation: simplex {id} is missing its face [{face}]")]
    MissingFace { id: u32, face: String },
    #[error(
        "monotonicity violation: simplex {id} at grade {grade} has facet [{facet}] \
         with no critical grade below {grade}"
    )]
    Monotonicity { id: u32, grade: Multidegree, facet: String },
    #[error("lower-star: vertex {0} has no value")]
    MissingVertexValue(u32),
}

fn vertex_list_string(vertices: &[u32]) -> String {
    vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// A validated multifiltered simplicial complex.
///
/// Immutable after construction; simplices keep their input order, which
/// fixes the generator order of every module downstream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiFiltration {
    r: usize,
    simplices: Vec<FilteredSimplex>,
    by_vertices: BTreeMap<Vec<u32>, usize>,
}

impl MultiFiltration {
    /// Validates and builds a multifiltration. Grade lists must already be
    /// antichains; use [`MultiFiltration::parse`] for lenient input that
    /// normalizes arbitrary grade sets.
    pub fn new(
        r: usize,
        simplices: Vec<(Simplex, Vec<Multidegree>)>,
    ) -> Result<Self, FiltrationError> {
        let mut ids = BTreeSet::new();
        let mut by_vertices = BTreeMap::new();
        for (pos, (s, grades)) in simplices.iter().enumerate() {
            if !ids.insert(s.id) {
                return Err(FiltrationError::DuplicateId(s.id));
            }
            if by_vertices.insert(s.vertices.clone(), pos).is_some() {
                return Err(FiltrationError::DuplicateSimplex(vertex_list_string(&s.vertices)));
            }
            if grades.is_empty() {
                return Err(FiltrationError::NoGrades { id: s.id });
            }
            for g in grades {
                if g.r() != r {
                    return Err(FiltrationError::ArityMismatch {
                        id: s.id,
                        grade: g.clone(),
                        got: g.r(),
                        expected: r,
                    });
                }
            }
            for (i, a) in grades.iter().enumerate() {
                for b in grades.iter().skip(i + 1) {
                    if a.leq(b) {
                        return Err(FiltrationError::ComparableGrades {
                            id: s.id,
                            lower: a.clone(),
                            upper: b.clone(),
                        });
                    }
                    if b.leq(a) {
                        return Err(FiltrationError::ComparableGrades {
                            id: s.id,
                            lower: b.clone(),
                            upper: a.clone(),
                        });
                    }
                }
            }
        }
        // Face closure, then monotonicity against each facet's grades.
        for (s, grades) in &simplices {
            if s.dim() == 0 {
                continue;
            }
            for i in 0..s.vertices.len() {
                let facet = s.facet(i);
                let Some(&fpos) = by_vertices.get(&facet) else {
                    return Err(FiltrationError::MissingFace {
                        id: s.id,
                        face: vertex_list_string(&facet),
                    });
                };
                let facet_grades = &simplices[fpos].1;
                for u in grades {
                    if !facet_grades.iter().any(|w| w.leq(u)) {
                        return Err(FiltrationError::Monotonicity {
                            id: s.id,
                            grade: u.clone(),
                            facet: vertex_list_string(&facet),
                        });
                    }
                }
            }
        }
        let simplices = simplices
            .into_iter()
            .map(|(simplex, grades)| FilteredSimplex { simplex, grades })
            .collect();
        Ok(MultiFiltration { r, simplices, by_vertices })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn simplices(&self) -> &[FilteredSimplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// The top dimension, or `None` for the empty filtration.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.simplex.dim()).max()
    }

    /// Positions of the n-simplices, in input order.
    pub fn simplices_of_dim(&self, n: usize) -> Vec<usize> {
        (0..self.simplices.len())
            .filter(|&i| self.simplices[i].simplex.dim() == n)
            .collect()
    }

    pub fn position_by_vertices(&self, vertices: &[u32]) -> Option<usize> {
        self.by_vertices.get(vertices).copied()
    }

    /// The componentwise maximum of all critical grades; every slice at
    /// `v ⪰ g` equals the slice at `g`.
    pub fn grid_bound(&self) -> Multidegree {
        let mut g = Multidegree::zero(self.r);
        for fs in &self.simplices {
            for grade in &fs.grades {
                g = g.join(grade);
            }
        }
        g
    }

    pub fn is_one_critical(&self) -> bool {
        self.simplices.iter().all(|fs| fs.grades.len() == 1)
    }

    /// Positions of the simplices present at `v`, in input order; closed
    /// under faces by monotonicity.
    pub fn slice(&self, v: &Multidegree) -> Vec<usize> {
        (0..self.simplices.len()).filter(|&i| self.simplices[i].present_at(v)).collect()
    }

    /// Parses the `.mfil` format, normalizing grade sets to minimal
    /// antichains before validation.
    pub fn parse(text: &str) -> Result<Self, FiltrationError> {
        let mut r: Option<usize> = None;
        let mut simplices = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut tokens = content.split_whitespace();
            match tokens.next() {
                Some("r") => {
                    if r.is_some() {
                        return Err(FiltrationError::Syntax {
                            line,
                            msg: "repeated `r` header".to_string(),
                        });
                    }
                    let val = tokens.next().ok_or(FiltrationError::Syntax {
                        line,
                        msg: "expected `r <integer>`".to_string(),
                    })?;
                    let val: usize = val.parse().map_err(|_| FiltrationError::Syntax {
                        line,
                        msg: format!("bad value for r: `{val}`"),
                    })?;
                    if val == 0 {
                        return Err(FiltrationError::Syntax {
                            line,
                            msg: "r must be at least 1".to_string(),
                        });
                    }
                    if tokens.next().is_some() {
                        return Err(FiltrationError::Syntax {
                            line,
                            msg: "trailing tokens after r header".to_string(),
                        });
                    }
                    r = Some(val);
                }
                Some("simplex") => {
                    if r.is_none() {
                        return Err(FiltrationError::MissingHeader);
                    }
                    let (simplex, grades) = parse_simplex_decl(content, line)?;
                    let grades = minimal_antichain(&grades);
                    simplices.push((simplex, grades));
                }
                Some(other) => {
                    return Err(FiltrationError::Syntax {
                        line,
                        msg: format!("unknown directive `{other}`"),
                    });
                }
                None => unreachable!(),
            }
        }
        let r = r.ok_or(FiltrationError::MissingHeader)?;
        MultiFiltration::new(r, simplices)
    }

    /// Serializes in the `.mfil` format; `parse` of the result reproduces
    /// this filtration exactly.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "r {}", self.r);
        for fs in &self.simplices {
            let _ = write!(
                out,
                "simplex {} : {} @",
                fs.simplex.id,
                vertex_list_string(&fs.simplex.vertices)
            );
            for g in &fs.grades {
                let _ = write!(out, " {g}");
            }
            out.push('\n');
        }
        out
    }
}

/// Parses `simplex <id> : <v0> ... <vk> @ (a1,...,ar) [(b1,...,br) ...]`.
/// Shared by the `.mfil` and `.lsc` readers.
pub(crate) fn parse_simplex_decl(
    content: &str,
    line: usize,
) -> Result<(Simplex, Vec<Multidegree>), FiltrationError> {
    let syntax = |msg: String| FiltrationError::Syntax { line, msg };
    let rest = content
        .strip_prefix("simplex")
        .ok_or_else(|| syntax("expected `simplex`".to_string()))?;
    let (head, grades_part) = rest
        .split_once('@')
        .ok_or_else(|| syntax("expected `@` before the grade list".to_string()))?;
    let (id_part, vertex_part) = head
        .split_once(':')
        .ok_or_else(|| syntax("expected `:` after the simplex id".to_string()))?;
    let id_str = id_part.trim();
    let id: u32 = id_str
        .parse()
        .map_err(|_| syntax(format!("bad simplex id `{id_str}`")))?;
    let mut vertices = Vec::new();
    for tok in vertex_part.split_whitespace() {
        let v: u32 = tok
            .parse()
            .map_err(|_| syntax(format!("bad vertex `{tok}`")))?;
        vertices.push(v);
    }
    let simplex = Simplex::new(id, vertices)?;
    let mut grades = Vec::new();
    for tok in split_grade_tokens(grades_part).map_err(&syntax)? {
        let g = Multidegree::parse(&tok).map_err(&syntax)?;
        grades.push(g);
    }
    if grades.is_empty() {
        return Err(FiltrationError::NoGrades { id });
    }
    Ok((simplex, grades))
}

/// Splits a run of `(...)` groups, tolerating interior whitespace.
fn split_grade_tokens(s: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut depth = 0usize;
    for ch in s.chars() {
        match ch {
            '(' => {
                if depth > 0 {
                    return Err("nested parenthesis in grade list".to_string());
                }
                depth = 1;
                current.clear();
                current.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return Err("unmatched `)` in grade list".to_string());
                }
                depth = 0;
                current.push(ch);
                out.push(current.clone());
            }
            c if depth == 1 => current.push(c),
            c if c.is_whitespace() => {}
            c => return Err(format!("unexpected `{c}` in grade list")),
        }
    }
    if depth != 0 {
        return Err("unterminated `(` in grade list".to_string());
    }
    Ok(out)
}

/// Builds the one-critical filtration in which every simplex enters at the
/// join of its vertices' values.
pub fn lower_star(
    r: usize,
    complex: &[Simplex],
    values: &BTreeMap<u32, Multidegree>,
) -> Result<MultiFiltration, FiltrationError> {
    let mut simplices = Vec::with_capacity(complex.len());
    for s in complex {
        let mut grade = Multidegree::zero(r);
        for v in &s.vertices {
            let val = values
                .get(v)
                .ok_or(FiltrationError::MissingVertexValue(*v))?;
            grade = grade.join(val);
        }
        simplices.push((s.clone(), vec![grade]));
    }
    MultiFiltration::new(r, simplices)
}

/// Parsed `.star` data: grading arity, the bare complex, and vertex values.
pub type StarData = (usize, Vec<Simplex>, BTreeMap<u32, Multidegree>);

/// Parses the `.star` input of `generate lower-star`: an `r` header,
/// `value <vertex> @ (grade)` lines, and unlabelled `simplex` lines.
pub fn parse_star(text: &str) -> Result<StarData, FiltrationError> {
    let mut r: Option<usize> = None;
    let mut complex = Vec::new();
    let mut values = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let syntax = |msg: String| FiltrationError::Syntax { line, msg };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("r") => {
                let val = tokens
                    .next()
                    .ok_or_else(|| syntax("expected `r <integer>`".to_string()))?;
                let val: usize =
                    val.parse().map_err(|_| syntax(format!("bad value for r: `{val}`")))?;
                r = Some(val);
            }
            Some("value") => {
                let (head, grade_part) = content
                    .strip_prefix("value")
                    .unwrap()
                    .split_once('@')
                    .ok_or_else(|| syntax("expected `@` in value line".to_string()))?;
                let v_str = head.trim();
                let v: u32 =
                    v_str.parse().map_err(|_| syntax(format!("bad vertex `{v_str}`")))?;
                let grade = Multidegree::parse(grade_part.trim()).map_err(syntax)?;
                if values.insert(v, grade).is_some() {
                    return Err(syntax(format!("repeated value for vertex {v}")));
                }
            }
            Some("simplex") => {
                let rest = content.strip_prefix("simplex").unwrap();
                let (id_part, vertex_part) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax("expected `:` after the simplex id".to_string()))?;
                let id_str = id_part.trim();
                let id: u32 =
                    id_str.parse().map_err(|_| syntax(format!("bad simplex id `{id_str}`")))?;
                let mut vertices = Vec::new();
                for tok in vertex_part.split_whitespace() {
                    let v: u32 =
                        tok.parse().map_err(|_| syntax(format!("bad vertex `{tok}`")))?;
                    vertices.push(v);
                }
                complex.push(Simplex::new(id, vertices)?);
            }
            Some(other) => return Err(syntax(format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    let r = r.ok_or(FiltrationError::MissingHeader)?;
    Ok((r, complex, values))
}
