//! Free resolutions of the modules attached to a multifiltered complex.
//!
//! The resolutions come from two sources: Taylor resolutions of the monomial
//! ideals decomposing a chain module, assembled by direct sum, and minimal
//! resolutions computed gradewise. Mapping cones along comparison lifts
//! turn those into resolutions of boundary and homology modules. Every
//! resolution can be verified grade by grade and minimized by cancelling
//! unit entries between generators of equal degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::chains::{self, MonomialIdeal};
use crate::degree::{Grid, Multidegree};
use crate::field::Field;
use crate::filtration::MultiFiltration;
use crate::graded::{FreeModule, GradedMatrix};
use crate::grid::{minimal_resolution_data, BettiTable, GradewiseComplex, GridModule};
use crate::matrix::Matrix;
use crate::render;

/// A chain complex of free multigraded modules: `diffs[j]` maps term
/// `j + 1` into term `j`. Construction checks shapes; whether consecutive
/// differentials compose to zero is a property of the complex, checked by
/// [`verify_resolution`] where it is required.
#[derive(Clone, Debug)]
pub struct FreeChainComplex<F: Field> {
    field: F,
    terms: Vec<FreeModule>,
    diffs: Vec<GradedMatrix<F>>,
}

impl<F: Field> PartialEq for FreeChainComplex<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.diffs == other.diffs
    }
}

impl<F: Field> Eq for FreeChainComplex<F> {}

impl<F: Field> FreeChainComplex<F> {
    pub fn new(field: F, terms: Vec<FreeModule>, diffs: Vec<GradedMatrix<F>>) -> Self {
        if terms.is_empty() {
            assert!(diffs.is_empty(), "differentials without terms");
        } else {
            assert_eq!(diffs.len() + 1, terms.len(), "term and differential counts disagree");
        }
        for (j, d) in diffs.iter().enumerate() {
            assert_eq!(d.target(), &terms[j], "differential {} has the wrong target", j + 1);
            assert_eq!(d.source(), &terms[j + 1], "differential {} has the wrong source", j + 1);
        }
        FreeChainComplex { field, terms, diffs }
    }

    pub fn empty(field: F) -> Self {
        FreeChainComplex { field, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[FreeModule] {
        &self.terms
    }

    pub fn diffs(&self) -> &[GradedMatrix<F>] {
        &self.diffs
    }

    /// Term `j`, the zero module out of range.
    pub fn term(&self, j: usize) -> FreeModule {
        self.terms.get(j).cloned().unwrap_or_else(FreeModule::empty)
    }

    /// The differential into term `j - 1`, for `j >= 1`; zero out of range.
    pub fn differential(&self, j: usize) -> GradedMatrix<F> {
        assert!(j >= 1, "differentials start at 1");
        if j < self.terms.len() {
            self.diffs[j - 1].clone()
        } else {
            GradedMatrix::zero(self.field.clone(), self.term(j - 1), self.term(j))
        }
    }

    /// Whether all consecutive differentials compose to zero as formal
    /// graded matrices.
    pub fn composites_are_zero(&self) -> bool {
        (1..self.diffs.len()).all(|j| self.diffs[j - 1].compose(&self.diffs[j]).is_zero())
    }
}

/// The direct sum of complexes: terms and differentials concatenate
/// blockwise in the order given.
pub fn direct_sum<F: Field>(field: F, parts: &[FreeChainComplex<F>]) -> FreeChainComplex<F> {
    let len = parts.iter().map(|c| c.len()).max().unwrap_or(0);
    let terms: Vec<FreeModule> = (0..len)
        .map(|j| {
            let mut gens = Vec::new();
            for c in parts {
                gens.extend(c.term(j).degrees().iter().cloned());
            }
            FreeModule::new(gens)
        })
        .collect();
    let mut diffs = Vec::new();
    for j in 1..len {
        let mut d = GradedMatrix::zero(field.clone(), terms[j - 1].clone(), terms[j].clone());
        let mut row_off = 0;
        let mut col_off = 0;
        for c in parts {
            for (r, s, e) in c.differential(j).entries() {
                d.set(row_off + r, col_off + s, e.clone());
            }
            row_off += c.term(j - 1).rank();
            col_off += c.term(j).rank();
        }
        diffs.push(d);
    }
    FreeChainComplex::new(field, terms, diffs)
}

/// Betti numbers read straight off a complex's generator degrees. For a
/// minimal complex these are the Betti numbers of the resolved module.
pub fn betti_of_complex<F: Field>(c: &FreeChainComplex<F>) -> BettiTable {
    let steps = c
        .terms
        .iter()
        .map(|t| {
            let mut counts: BTreeMap<Multidegree, usize> = BTreeMap::new();
            for d in t.degrees() {
                *counts.entry(d.clone()).or_insert(0) += 1;
            }
            counts
        })
        .collect();
    BettiTable { steps }
}

/// A free complex augmented onto a grid module. `augmentation[i]` is the
/// map from the fiber of term 0 at grid point `i` (columns in `indices_at`
/// order) onto the fiber of the target.
#[derive(Clone)]
pub struct Resolution<F: Field> {
    pub complex: FreeChainComplex<F>,
    pub target: GridModule<F>,
    pub augmentation: Vec<Matrix<F>>,
}

/// The cyclic grid module of a monomial ideal: a one-dimensional fiber at
/// every grade dominating some generator, with identity actions.
pub fn ideal_module<F: Field>(ideal: &MonomialIdeal, field: F, grid: &Grid) -> GridModule<F> {
    let dims: Vec<usize> = (0..grid.len()).map(|i| ideal.dim_at(&grid.point(i))).collect();
    let actions = (0..grid.r())
        .map(|axis| {
            (0..grid.len())
                .map(|i| {
                    grid.succ(i, axis).map(|w| {
                        let mut m = Matrix::zero(field.clone(), dims[w], dims[i]);
                        if dims[i] == 1 {
                            m.set(0, 0, field.one());
                        }
                        m
                    })
                })
                .collect()
        })
        .collect();
    GridModule::new(field, grid.clone(), dims, actions)
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// The Taylor resolution of a monomial ideal: term `j` is free on the
/// `(j + 1)`-element subsets of the generators in lexicographic order,
/// each placed at the join of its degrees, with alternating-sign subset
/// deletion as the differential.
pub fn taylor_resolution<F: Field>(
    ideal: &MonomialIdeal,
    field: F,
    grid: &Grid,
) -> Resolution<F> {
    let gens = &ideal.generators;
    let m = gens.len();
    let target = ideal_module(ideal, field.clone(), grid);
    if m == 0 {
        let augmentation =
            (0..grid.len()).map(|_| Matrix::zero(field.clone(), 0, 0)).collect();
        return Resolution { complex: FreeChainComplex::empty(field), target, augmentation };
    }
    let levels: Vec<Vec<Vec<usize>>> = (1..=m).map(|k| combinations(m, k)).collect();
    let join_of = |s: &[usize]| {
        s.iter().skip(1).fold(gens[s[0]].clone(), |acc, &i| acc.join(&gens[i]))
    };
    let terms: Vec<FreeModule> = levels
        .iter()
        .map(|subs| FreeModule::new(subs.iter().map(|s| join_of(s)).collect()))
        .collect();
    let mut diffs = Vec::new();
    for j in 1..m {
        let index: BTreeMap<&[usize], usize> =
            levels[j - 1].iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut d = GradedMatrix::zero(field.clone(), terms[j - 1].clone(), terms[j].clone());
        for (col, s) in levels[j].iter().enumerate() {
            for drop in 0..s.len() {
                let mut t = s.clone();
                t.remove(drop);
                let sign =
                    if drop % 2 == 0 { field.one() } else { field.neg(&field.one()) };
                d.add_to(index[t.as_slice()], col, &sign);
            }
        }
        diffs.push(d);
    }
    let augmentation = (0..grid.len())
        .map(|idx| {
            let v = grid.point(idx);
            let cols = terms[0].rank_at(&v);
            let mut a = Matrix::zero(field.clone(), target.dim_at(idx), cols);
            if target.dim_at(idx) == 1 {
                for j in 0..cols {
                    a.set(0, j, field.one());
                }
            }
            a
        })
        .collect();
    Resolution { complex: FreeChainComplex::new(field, terms, diffs), target, augmentation }
}

/// Resolves the module of `n`-chains by the direct sum of the Taylor
/// resolutions of its simplexwise monomial ideals.
pub fn resolve_chains<F: Field>(
    f: &MultiFiltration,
    n: usize,
    field: F,
    grid: &Grid,
) -> Resolution<F> {
    let gw = chains::gradewise_complex(f, field.clone(), grid);
    resolve_chains_with(&gw, f, n, field, grid)
}

fn resolve_chains_with<F: Field>(
    gw: &GradewiseComplex<F>,
    f: &MultiFiltration,
    n: usize,
    field: F,
    grid: &Grid,
) -> Resolution<F> {
    let parts: Vec<FreeChainComplex<F>> = chains::decompose(f, n)
        .iter()
        .map(|ideal| taylor_resolution(ideal, field.clone(), grid).complex)
        .collect();
    let complex = direct_sum(field.clone(), &parts);
    let target = gw.chain_module(n);
    let augmentation = chains::chain_augmentation(f, n, field, grid);
    Resolution { complex, target, augmentation }
}

/// The minimal free resolution of a grid module, computed gradewise by
/// iterated minimal covers of kernels.
pub fn resolve_module<F: Field>(m: &GridModule<F>) -> Resolution<F> {
    let field = m.field().clone();
    let grid = m.grid().clone();
    let (terms, diffs, aug) = minimal_resolution_data(m, None);
    let augmentation = if terms.is_empty() {
        (0..grid.len()).map(|i| Matrix::zero(field.clone(), m.dim_at(i), 0)).collect()
    } else {
        aug
    };
    Resolution {
        complex: FreeChainComplex::new(field, terms, diffs),
        target: m.clone(),
        augmentation,
    }
}

/// A chain map between free complexes: `components[j]` maps source term
/// `j` into target term `j`.
#[derive(Clone)]
pub struct ChainMap<F: Field> {
    pub source: FreeChainComplex<F>,
    pub target: FreeChainComplex<F>,
    pub components: Vec<GradedMatrix<F>>,
}

impl<F: Field> ChainMap<F> {
    /// Component `j`, zero out of range.
    pub fn component(&self, j: usize) -> GradedMatrix<F> {
        if j < self.components.len() {
            self.components[j].clone()
        } else {
            GradedMatrix::zero(
                self.source.field.clone(),
                self.target.term(j),
                self.source.term(j),
            )
        }
    }

    /// Whether every square of the map commutes formally.
    pub fn commutes(&self) -> bool {
        (1..=self.source.len()).all(|j| {
            self.target.differential(j).compose(&self.component(j))
                == self.component(j - 1).compose(&self.source.differential(j))
        })
    }
}

fn column_matrix<F: Field>(field: &F, m: &Matrix<F>, j: usize) -> Matrix<F> {
    Matrix::from_columns(field.clone(), m.rows(), &[m.column(j)])
}

/// Lifts a map of resolved modules to a chain map of the resolutions.
///
/// `map_at[i]` is the matrix of the module map from `from.target` to
/// `to.target` in the fiber bases at grid point `i`. Each component entry
/// is solved at the degree of the source generator; the solves cannot fail
/// when `to` is exact.
pub fn lift_chain_map<F: Field>(
    map_at: &[Matrix<F>],
    from: &Resolution<F>,
    to: &Resolution<F>,
    grid: &Grid,
) -> ChainMap<F> {
    let field = from.complex.field.clone();
    let mut components: Vec<GradedMatrix<F>> = Vec::new();
    for j in 0..from.complex.len() {
        let src = from.complex.term(j);
        let tgt = to.complex.term(j);
        let mut comp = GradedMatrix::zero(field.clone(), tgt.clone(), src.clone());
        for i in 0..src.rank() {
            let d = src.degree(i).clone();
            let idx = grid.index(&d);
            let pos = src.positions_at(&d)[i].expect("generator present at its own degree");
            let (lhs, rhs) = if j == 0 {
                let col = column_matrix(&field, &from.augmentation[idx], pos);
                (to.augmentation[idx].clone(), map_at[idx].mul(&col))
            } else {
                let dcol =
                    column_matrix(&field, &from.complex.differential(j).evaluate_at(&d), pos);
                (
                    to.complex.differential(j).evaluate_at(&d),
                    components[j - 1].evaluate_at(&d).mul(&dcol),
                )
            };
            let x = lhs.solve(&rhs).expect("internal: comparison lift failed");
            for (p, &row) in tgt.indices_at(&d).iter().enumerate() {
                let e = x.get(p, 0).clone();
                if !field.is_zero(&e) {
                    comp.set(row, i, e);
                }
            }
        }
        components.push(comp);
    }
    ChainMap { source: from.complex.clone(), target: to.complex.clone(), components }
}

/// The mapping cone of a chain map: term `j` is source term `j - 1`
/// followed by target term `j`, with differential blocks
/// `(-d_src, 0; f, d_tgt)`. Its zeroth homology is the cokernel of the
/// resolved map.
pub fn mapping_cone<F: Field>(map: &ChainMap<F>) -> FreeChainComplex<F> {
    let field = map.source.field.clone();
    let src = &map.source;
    let tgt = &map.target;
    let len = (src.len() + 1).max(tgt.len());
    let terms: Vec<FreeModule> = (0..len)
        .map(|j| {
            let mut gens = if j >= 1 {
                src.term(j - 1).degrees().to_vec()
            } else {
                Vec::new()
            };
            gens.extend(tgt.term(j).degrees().iter().cloned());
            FreeModule::new(gens)
        })
        .collect();
    let mut diffs = Vec::new();
    for j in 1..len {
        let mut d = GradedMatrix::zero(field.clone(), terms[j - 1].clone(), terms[j].clone());
        let row_off = if j >= 2 { src.term(j - 2).rank() } else { 0 };
        let col_off = src.term(j - 1).rank();
        if j >= 2 {
            for (r, s, e) in src.differential(j - 1).entries() {
                d.set(r, s, field.neg(e));
            }
        }
        for (r, s, e) in map.component(j - 1).entries() {
            d.set(row_off + r, s, e.clone());
        }
        for (r, s, e) in tgt.differential(j).entries() {
            d.set(row_off + r, col_off + s, e.clone());
        }
        diffs.push(d);
    }
    FreeChainComplex::new(field, terms, diffs)
}

/// Resolves the boundary module `B_{k-1}` as the cone of a lift of the
/// inclusion of the `k`-cycles into the `k`-chains.
fn cone_for_boundaries<F: Field>(
    gw: &GradewiseComplex<F>,
    f: &MultiFiltration,
    k: usize,
    field: F,
    grid: &Grid,
    minimal_p: bool,
) -> Resolution<F> {
    assert!(k >= 1, "boundaries need a level k >= 1");
    let z = gw.cycles(k);
    let q = resolve_module(&z.module);
    let p = if minimal_p {
        resolve_module(&gw.chain_module(k))
    } else {
        resolve_chains_with(gw, f, k, field.clone(), grid)
    };
    let inclusion = lift_chain_map(&z.basis, &q, &p, grid);
    let cone = mapping_cone(&inclusion);
    let b = gw.boundaries_module(k - 1);
    let augmentation: Vec<Matrix<F>> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let reached = gw.boundary(k, idx).mul(&p.augmentation[idx]);
            b.basis[idx]
                .solve(&reached)
                .expect("internal: boundary outside its own basis span")
        })
        .collect();
    Resolution { complex: cone, target: b.module, augmentation }
}

/// Resolves the boundary module `B_{n-1}`, the image of the boundary map
/// out of the `n`-chains. Requires `n >= 1`.
pub fn resolve_boundaries<F: Field>(
    f: &MultiFiltration,
    n: usize,
    field: F,
    grid: &Grid,
    minimal_p: bool,
) -> Resolution<F> {
    let gw = chains::gradewise_complex(f, field.clone(), grid);
    cone_for_boundaries(&gw, f, n, field, grid, minimal_p)
}

/// Resolves the homology module `H_n` as a double cone: a cone resolving
/// the boundaries `B_n` maps into the minimal resolution of the cycles
/// `Z_n`, and the cone of that lift resolves the quotient.
pub fn resolve_homology<F: Field>(
    f: &MultiFiltration,
    n: usize,
    field: F,
    grid: &Grid,
    minimal_p: bool,
) -> Resolution<F> {
    let gw = chains::gradewise_complex(f, field.clone(), grid);
    let h = gw.homology(n);
    let cone_b = cone_for_boundaries(&gw, f, n + 1, field.clone(), grid, minimal_p);
    let q = resolve_module(&h.cycles.module);
    let map_at: Vec<Matrix<F>> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            h.cycles.basis[idx]
                .solve(&h.boundaries.basis[idx])
                .expect("internal: boundary outside the cycle space")
        })
        .collect();
    let lifted = lift_chain_map(&map_at, &cone_b, &q, grid);
    let cone = mapping_cone(&lifted);
    let augmentation: Vec<Matrix<F>> = (0..grid.len())
        .map(|idx| h.from_cycles[idx].mul(&q.augmentation[idx]))
        .collect();
    Resolution { complex: cone, target: h.module, augmentation }
}

/// One failed verification check: the homological step, the grade if the
/// check was gradewise, and what went wrong.
#[derive(Clone, Debug)]
pub struct VerifyFailure {
    pub step: usize,
    pub grade: Option<Multidegree>,
    pub message: String,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.grade {
            Some(v) => write!(f, "j={} v={}: {}", self.step, v, self.message),
            None => write!(f, "j={}: {}", self.step, self.message),
        }
    }
}

/// The outcome of verifying a resolution: every failed check in grade
/// order, and how many grades were examined.
#[derive(Debug)]
pub struct VerifyReport {
    pub failures: Vec<VerifyFailure>,
    pub grades_checked: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first(&self) -> Option<&VerifyFailure> {
        self.failures.first()
    }
}

fn structural_failures<F: Field>(complex: &FreeChainComplex<F>) -> Vec<VerifyFailure> {
    let mut out = Vec::new();
    for (j, d) in complex.diffs().iter().enumerate() {
        if !d.is_homogeneous() {
            out.push(VerifyFailure {
                step: j + 1,
                grade: None,
                message: "differential is inhomogeneous".to_string(),
            });
        }
    }
    for j in 1..complex.diffs().len() {
        if !complex.diffs()[j - 1].compose(&complex.diffs()[j]).is_zero() {
            out.push(VerifyFailure {
                step: j + 1,
                grade: None,
                message: "consecutive differentials do not compose to zero".to_string(),
            });
        }
    }
    out
}

fn exactness_failures_at<F: Field>(
    complex: &FreeChainComplex<F>,
    v: &Multidegree,
    h0_dim: usize,
    skip_h0: bool,
) -> Vec<VerifyFailure> {
    let mut out = Vec::new();
    let r0 = complex.term(0).rank_at(v);
    let r1 = complex.differential(1).evaluate_at(v).rank();
    if !skip_h0 && r0 != r1 + h0_dim {
        out.push(VerifyFailure {
            step: 0,
            grade: Some(v.clone()),
            message: format!(
                "zeroth homology has dimension {} but the target has {}",
                r0 - r1,
                h0_dim
            ),
        });
    }
    let mut prev = r1;
    for j in 1..complex.len() {
        let next = complex.differential(j + 1).evaluate_at(v).rank();
        let rj = complex.term(j).rank_at(v);
        if prev + next != rj {
            out.push(VerifyFailure {
                step: j,
                grade: Some(v.clone()),
                message: format!("exactness fails: rank {prev} + rank {next} != dim {rj}"),
            });
        }
        prev = next;
    }
    out
}

fn padded_ring_failures<F: Field>(
    complex: &FreeChainComplex<F>,
    target: &GridModule<F>,
) -> (Vec<VerifyFailure>, usize) {
    let grid = target.grid();
    let padded = grid.padded(1);
    let extra: Vec<Multidegree> = padded
        .grlex_indices()
        .into_iter()
        .map(|i| padded.point(i))
        .filter(|v| !grid.contains(v))
        .collect();
    let failures: Vec<Vec<VerifyFailure>> = extra
        .par_iter()
        .map(|v| {
            if complex.is_empty() {
                return Vec::new();
            }
            let h0 = target.dim(&grid.clamp(v));
            exactness_failures_at(complex, v, h0, false)
        })
        .collect();
    (failures.into_iter().flatten().collect(), extra.len())
}

/// Verifies that a resolution is exact: homogeneous differentials with
/// formally vanishing composites, a surjective augmentation whose kernel
/// is exactly the image of the first differential, rank exactness at every
/// higher term, all of it at every grade of the grid and of a one-step
/// padding ring around it.
pub fn verify_resolution<F: Field>(res: &Resolution<F>) -> VerifyReport {
    let grid = res.target.grid();
    let complex = &res.complex;
    let mut failures = structural_failures(complex);
    if res.augmentation.len() != grid.len() {
        failures.push(VerifyFailure {
            step: 0,
            grade: None,
            message: format!(
                "augmentation covers {} grades, the grid has {}",
                res.augmentation.len(),
                grid.len()
            ),
        });
        return VerifyReport { failures, grades_checked: 0 };
    }
    let per_grade: Vec<Vec<VerifyFailure>> = grid
        .grlex_indices()
        .par_iter()
        .map(|&idx| {
            let v = grid.point(idx);
            let mut out = Vec::new();
            let aug = &res.augmentation[idx];
            let tdim = res.target.dim_at(idx);
            if complex.is_empty() {
                if tdim != 0 {
                    out.push(VerifyFailure {
                        step: 0,
                        grade: Some(v.clone()),
                        message: "the complex is empty but the target is nonzero".to_string(),
                    });
                }
                return out;
            }
            let r0 = complex.term(0).rank_at(&v);
            if aug.rows() != tdim || aug.cols() != r0 {
                out.push(VerifyFailure {
                    step: 0,
                    grade: Some(v.clone()),
                    message: format!(
                        "augmentation is {}x{}, expected {}x{}",
                        aug.rows(),
                        aug.cols(),
                        tdim,
                        r0
                    ),
                });
                return out;
            }
            let ra = aug.rank();
            if ra != tdim {
                out.push(VerifyFailure {
                    step: 0,
                    grade: Some(v.clone()),
                    message: format!("augmentation is not surjective: rank {ra} < dim {tdim}"),
                });
            }
            let d1 = complex.differential(1).evaluate_at(&v);
            if !aug.mul(&d1).is_zero() {
                out.push(VerifyFailure {
                    step: 1,
                    grade: Some(v.clone()),
                    message: "augmentation composed with the first differential is nonzero"
                        .to_string(),
                });
            }
            let r1 = d1.rank();
            if ra + r1 != r0 {
                out.push(VerifyFailure {
                    step: 0,
                    grade: Some(v.clone()),
                    message: format!("exactness fails: rank {ra} + rank {r1} != dim {r0}"),
                });
            }
            out.extend(exactness_failures_at(complex, &v, 0, true));
            out
        })
        .collect();
    failures.extend(per_grade.into_iter().flatten());
    let (pad, extra) = padded_ring_failures(complex, &res.target);
    failures.extend(pad);
    VerifyReport { failures, grades_checked: grid.len() + extra }
}

/// Verifies a bare complex against a target module when no augmentation is
/// available: exactness at every positive step and agreement of the zeroth
/// homology with the target's Hilbert function, over the grid and its
/// padding ring.
pub fn verify_against_module<F: Field>(
    complex: &FreeChainComplex<F>,
    target: &GridModule<F>,
) -> VerifyReport {
    let grid = target.grid();
    let mut failures = structural_failures(complex);
    let per_grade: Vec<Vec<VerifyFailure>> = grid
        .grlex_indices()
        .par_iter()
        .map(|&idx| {
            let v = grid.point(idx);
            let tdim = target.dim_at(idx);
            if complex.is_empty() {
                if tdim != 0 {
                    return vec![VerifyFailure {
                        step: 0,
                        grade: Some(v.clone()),
                        message: "the complex is empty but the target is nonzero".to_string(),
                    }];
                }
                return Vec::new();
            }
            exactness_failures_at(complex, &v, tdim, false)
        })
        .collect();
    failures.extend(per_grade.into_iter().flatten());
    let (pad, extra) = padded_ring_failures(complex, target);
    failures.extend(pad);
    VerifyReport { failures, grades_checked: grid.len() + extra }
}

#[allow(clippy::too_many_arguments)]
fn cancel_pair<F: Field>(
    field: &F,
    grid: &Grid,
    terms: &mut [FreeModule],
    diffs: &mut [GradedMatrix<F>],
    augmentation: &mut [Matrix<F>],
    jd: usize,
    i: usize,
    k: usize,
) {
    let c = diffs[jd].entry(i, k).unwrap().clone();
    let cinv = field.inv(&c);
    let new_target = terms[jd].without(i);
    let new_source = terms[jd + 1].without(k);
    let shift_i = |r: usize| if r > i { r - 1 } else { r };
    let shift_k = |s: usize| if s > k { s - 1 } else { s };

    let mut row_i: Vec<(usize, F::Elem)> = Vec::new();
    let mut col_k: Vec<(usize, F::Elem)> = Vec::new();
    let mut rest: Vec<(usize, usize, F::Elem)> = Vec::new();
    for (r, s, e) in diffs[jd].entries() {
        if r == i && s == k {
            continue;
        } else if r == i {
            row_i.push((s, e.clone()));
        } else if s == k {
            col_k.push((r, e.clone()));
        } else {
            rest.push((r, s, e.clone()));
        }
    }
    let mut nd = GradedMatrix::zero(field.clone(), new_target.clone(), new_source.clone());
    for (r, s, e) in rest {
        nd.set(shift_i(r), shift_k(s), e);
    }
    for (r, a) in &col_k {
        for (s, b) in &row_i {
            let upd = field.neg(&field.mul(&field.mul(a, &cinv), b));
            nd.add_to(shift_i(*r), shift_k(*s), &upd);
        }
    }
    diffs[jd] = nd;

    if jd + 1 < diffs.len() {
        let old = &diffs[jd + 1];
        let mut nd =
            GradedMatrix::zero(field.clone(), new_source.clone(), old.source().clone());
        for (r, s, e) in old.entries() {
            if r != k {
                nd.set(shift_k(r), s, e.clone());
            }
        }
        diffs[jd + 1] = nd;
    }

    if jd >= 1 {
        let old = &diffs[jd - 1];
        let mut nd =
            GradedMatrix::zero(field.clone(), old.target().clone(), new_target.clone());
        for (r, s, e) in old.entries() {
            if s != i {
                nd.set(r, shift_i(s), e.clone());
            }
        }
        diffs[jd - 1] = nd;
    } else {
        let old_term0 = &terms[0];
        for (idx, aug) in augmentation.iter_mut().enumerate() {
            let v = grid.point(idx);
            if let Some(p) = old_term0.positions_at(&v)[i] {
                let keep: Vec<usize> = (0..aug.cols()).filter(|&c| c != p).collect();
                *aug = aug.select_cols(&keep);
            }
        }
    }

    terms[jd] = new_target;
    terms[jd + 1] = new_source;
}

/// Minimizes a resolution: repeatedly cancels a nonzero entry between
/// generators of equal degree, updating the neighbouring differentials and
/// the augmentation, until every differential vanishes after setting the
/// variables to zero. The result resolves the same target.
pub fn minimize<F: Field>(res: &Resolution<F>) -> Resolution<F> {
    let field = res.complex.field.clone();
    let grid = res.target.grid().clone();
    let mut terms = res.complex.terms.clone();
    let mut diffs = res.complex.diffs.clone();
    let mut augmentation = res.augmentation.clone();
    loop {
        let mut found = None;
        'scan: for (jd, d) in diffs.iter().enumerate() {
            for (i, k, _) in d.entries() {
                if d.target().degree(i) == d.source().degree(k) {
                    found = Some((jd, i, k));
                    break 'scan;
                }
            }
        }
        let Some((jd, i, k)) = found else { break };
        cancel_pair(&field, &grid, &mut terms, &mut diffs, &mut augmentation, jd, i, k);
    }
    while terms.last().is_some_and(|t| t.rank() == 0) {
        terms.pop();
        diffs.pop();
    }
    if terms.is_empty() {
        augmentation = (0..grid.len())
            .map(|i| Matrix::zero(field.clone(), res.target.dim_at(i), 0))
            .collect();
    }
    Resolution {
        complex: FreeChainComplex::new(field, terms, diffs),
        target: res.target.clone(),
        augmentation,
    }
}

/// Which module of the filtration a resolution targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetKind {
    Chains,
    Cycles,
    Boundaries,
    Homology,
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TargetKind::Chains => "chains",
            TargetKind::Cycles => "cycles",
            TargetKind::Boundaries => "boundaries",
            TargetKind::Homology => "homology",
        };
        f.write_str(s)
    }
}

impl FromStr for TargetKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "chains" => Ok(TargetKind::Chains),
            "cycles" => Ok(TargetKind::Cycles),
            "boundaries" => Ok(TargetKind::Boundaries),
            "homology" => Ok(TargetKind::Homology),
            _ => Err(format!("unknown target kind `{s}`")),
        }
    }
}

/// Serializes a resolution: a summary line, header fields, the generator
/// degrees of every term, and each differential as an entry block.
pub fn render_resolution<F: Field>(
    res: &Resolution<F>,
    kind: TargetKind,
    n: usize,
) -> String {
    let complex = &res.complex;
    let grid = res.target.grid();
    let mut out = String::new();
    out.push_str(&render::summary_line(complex.terms()));
    out.push('\n');
    out.push_str(&format!("field {}\n", complex.field.name()));
    out.push_str(&format!("r {}\n", grid.r()));
    out.push_str(&format!("grid {}\n", grid.bound()));
    out.push_str(&format!("target {kind} {n}\n"));
    out.push_str(&format!("terms {}\n", complex.len()));
    for (j, term) in complex.terms().iter().enumerate() {
        out.push_str(&format!("term {j} :"));
        for d in term.degrees() {
            out.push(' ');
            out.push_str(&d.to_string());
        }
        out.push('\n');
    }
    for j in 1..complex.len() {
        out.push_str(&format!("differential {j}\n"));
        out.push_str(&complex.diffs()[j - 1].render_block());
    }
    out.push_str("end\n");
    out
}

/// A resolution file parsed back into a complex and its declared context.
pub struct ParsedResolution<F: Field> {
    pub kind: TargetKind,
    pub n: usize,
    pub r: usize,
    pub bound: Multidegree,
    pub complex: FreeChainComplex<F>,
}

struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn expect(&mut self, prefix: &str) -> Result<&'a str, String> {
        let line = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| format!("missing `{prefix}` line"))?;
        self.pos += 1;
        line.strip_prefix(prefix)
            .map(str::trim)
            .ok_or_else(|| format!("expected `{prefix}`, got `{line}`"))
    }
}

/// Parses the format produced by [`render_resolution`]. The field must
/// match the one the file was written with.
pub fn parse_resolution<F: Field>(
    field: F,
    text: &str,
) -> Result<ParsedResolution<F>, String> {
    let lines: Vec<&str> =
        text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let mut cur = Cursor { lines, pos: 0 };
    cur.expect("0 ->")?;
    let fname = cur.expect("field")?;
    if fname != field.name() {
        return Err(format!("file uses field `{}`, expected `{}`", fname, field.name()));
    }
    let r: usize =
        cur.expect("r")?.parse().map_err(|_| "bad `r` value".to_string())?;
    let bound = Multidegree::parse(cur.expect("grid")?)?;
    if bound.r() != r {
        return Err("grid bound arity does not match `r`".to_string());
    }
    let target_line = cur.expect("target")?;
    let mut tparts = target_line.split_whitespace();
    let kind: TargetKind = tparts
        .next()
        .ok_or_else(|| "missing target kind".to_string())?
        .parse()?;
    let n: usize = tparts
        .next()
        .ok_or_else(|| "missing target level".to_string())?
        .parse()
        .map_err(|_| "bad target level".to_string())?;
    let count: usize =
        cur.expect("terms")?.parse().map_err(|_| "bad `terms` value".to_string())?;
    let mut terms = Vec::with_capacity(count);
    for j in 0..count {
        let rest = cur.expect("term")?;
        let rest = rest
            .strip_prefix(&format!("{j} :"))
            .ok_or_else(|| format!("expected `term {j} :`"))?;
        let degs: Result<Vec<Multidegree>, String> =
            rest.split_whitespace().map(Multidegree::parse).collect();
        let degs = degs?;
        if degs.iter().any(|d| d.r() != r) {
            return Err(format!("term {j} has a degree of the wrong arity"));
        }
        terms.push(FreeModule::new(degs));
    }
    let mut diffs = Vec::new();
    for j in 1..count {
        let header = cur.expect("differential")?;
        if header != j.to_string() {
            return Err(format!("expected `differential {j}`"));
        }
        let start = cur.pos;
        while cur.pos < cur.lines.len()
            && !cur.lines[cur.pos].starts_with("differential")
            && cur.lines[cur.pos] != "end"
        {
            cur.pos += 1;
        }
        let block = GradedMatrix::parse_block(field.clone(), &cur.lines[start..cur.pos])?;
        if block.target() != &terms[j - 1] || block.source() != &terms[j] {
            return Err(format!("differential {j} does not match the declared terms"));
        }
        diffs.push(block);
    }
    if cur.lines.get(cur.pos).copied() != Some("end") {
        return Err("missing `end` line".to_string());
    }
    Ok(ParsedResolution {
        kind,
        n,
        r,
        bound,
        complex: FreeChainComplex::new(field, terms, diffs),
    })
}
