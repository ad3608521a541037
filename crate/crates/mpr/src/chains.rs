//! Chain modules of a multifiltration.
//!
//! The module of `n`-chains decomposes as a direct sum over the
//! `n`-simplices of monomial ideals, one generator per critical grade.
//! These fundamental elements index the rows and columns of boundary
//! matrices between free modules, and the pairwise syzygy binomials within
//! each simplex generate all relations among them. The same data evaluated
//! slice by slice yields the gradewise chain complex used for homology.

use crate::degree::{Grid, Multidegree};
use crate::field::Field;
use crate::filtration::MultiFiltration;
use crate::graded::{FreeModule, GradedMatrix};
use crate::grid::GradewiseComplex;
use crate::matrix::Matrix;
use crate::resolution::FreeChainComplex;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::ops::Range;

/// A generator of a chain module: a simplex id paired with one of its
/// critical grades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalElement {
    pub simplex: u32,
    pub degree: Multidegree,
}

/// The block of fundamental elements contributed by one simplex.
#[derive(Clone, Debug)]
pub struct SimplexGroup {
    pub simplex_pos: usize,
    pub simplex_id: u32,
    pub range: Range<usize>,
}

/// Generators of the module of `n`-chains, grouped by simplex in input
/// order; within a simplex, grades keep their stored antichain order.
#[derive(Clone, Debug)]
pub struct ChainModuleData {
    pub n: usize,
    pub elements: Vec<FundamentalElement>,
    pub groups: Vec<SimplexGroup>,
}

impl ChainModuleData {
    /// The free module on the fundamental elements' degrees.
    pub fn module(&self) -> FreeModule {
        FreeModule::new(self.elements.iter().map(|e| e.degree.clone()).collect())
    }
}

/// Lists the fundamental elements of the `n`-chains.
pub fn fundamental_elements(f: &MultiFiltration, n: usize) -> ChainModuleData {
    let mut elements = Vec::new();
    let mut groups = Vec::new();
    for pos in f.simplices_of_dim(n) {
        let fs = &f.simplices()[pos];
        let start = elements.len();
        for grade in &fs.grades {
            elements.push(FundamentalElement {
                simplex: fs.simplex.id,
                degree: grade.clone(),
            });
        }
        groups.push(SimplexGroup {
            simplex_pos: pos,
            simplex_id: fs.simplex.id,
            range: start..elements.len(),
        });
    }
    ChainModuleData { n, elements, groups }
}

/// A monomial ideal, given by its antichain of generator degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub generators: Vec<Multidegree>,
}

impl MonomialIdeal {
    /// Dimension of the graded piece at `v`: one if some generator divides
    /// `x^v`, zero otherwise.
    pub fn dim_at(&self, v: &Multidegree) -> usize {
        usize::from(self.generators.iter().any(|g| g.leq(v)))
    }
}

/// The decomposition of the `n`-chains as a direct sum of monomial ideals,
/// one per `n`-simplex in input order.
pub fn decompose(f: &MultiFiltration, n: usize) -> Vec<MonomialIdeal> {
    f.simplices_of_dim(n)
        .into_iter()
        .map(|pos| MonomialIdeal { generators: f.simplices()[pos].grades.clone() })
        .collect()
}

/// A relation between two fundamental elements of the same simplex:
/// `x^(c - deg a) a - x^(c - deg b) b` with `c` the join of the degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyzygyBinomial {
    pub simplex: u32,
    pub first: Multidegree,
    pub second: Multidegree,
    pub join: Multidegree,
}

/// All pairwise syzygy binomials of the `n`-chains; together they generate
/// the relations among the fundamental elements.
pub fn syzygy_binomials(f: &MultiFiltration, n: usize) -> Vec<SyzygyBinomial> {
    let data = fundamental_elements(f, n);
    let mut out = Vec::new();
    for group in &data.groups {
        let elems = &data.elements[group.range.clone()];
        for i in 0..elems.len() {
            for j in (i + 1)..elems.len() {
                out.push(SyzygyBinomial {
                    simplex: group.simplex_id,
                    first: elems[i].degree.clone(),
                    second: elems[j].degree.clone(),
                    join: elems[i].degree.join(&elems[j].degree),
                });
            }
        }
    }
    out
}

/// The boundary map from `n`-chains to `(n-1)`-chains on fundamental
/// elements. The column of `(σ, u)` has sign `(-1)^i` for the `i`-th facet,
/// placed in the row of that facet's qualifying fundamental element with
/// lexicographically least degree; scalars carry implied monomials.
///
/// For multicritical filtrations the composite of two such matrices need
/// not vanish identically (distinct fundamental elements of one simplex
/// stay distinct in the free modules); it always vanishes after the
/// augmentation onto the chain modules.
pub fn boundary_matrix<F: Field>(
    f: &MultiFiltration,
    n: usize,
    field: F,
) -> GradedMatrix<F> {
    let source_data = fundamental_elements(f, n);
    let target_data = if n == 0 {
        ChainModuleData { n: 0, elements: Vec::new(), groups: Vec::new() }
    } else {
        fundamental_elements(f, n - 1)
    };
    let mut group_of_pos: BTreeMap<usize, usize> = BTreeMap::new();
    for (gidx, g) in target_data.groups.iter().enumerate() {
        group_of_pos.insert(g.simplex_pos, gidx);
    }
    let mut out = GradedMatrix::zero(field.clone(), target_data.module(), source_data.module());
    if n == 0 {
        return out;
    }
    for (col, group) in source_data
        .groups
        .iter()
        .flat_map(|g| g.range.clone().map(move |col| (col, g)))
    {
        let u = &source_data.elements[col].degree;
        let simplex = &f.simplices()[group.simplex_pos].simplex;
        for i in 0..simplex.vertices.len() {
            let facet = simplex.facet(i);
            let fpos = f
                .position_by_vertices(&facet)
                .expect("validated filtration is closed under faces");
            let fgroup = &target_data.groups[group_of_pos[&fpos]];
            let felems = &target_data.elements[fgroup.range.clone()];
            let mut best: Option<usize> = None;
            for (k, e) in felems.iter().enumerate() {
                if !e.degree.leq(u) {
                    continue;
                }
                match best {
                    Some(b) if felems[b].degree.coords() <= e.degree.coords() => {}
                    _ => best = Some(k),
                }
            }
            let k = best.expect("monotonicity provides a facet grade below each grade");
            let row = fgroup.range.start + k;
            let sign = if i % 2 == 0 { field.one() } else { field.neg(&field.one()) };
            out.add_to(row, col, &sign);
        }
    }
    out
}

/// The chain complex of free modules on fundamental elements, from the
/// 0-chains up to the top dimension.
pub fn chain_complex<F: Field>(f: &MultiFiltration, field: F) -> FreeChainComplex<F> {
    let Some(top) = f.dim() else {
        return FreeChainComplex::empty(field);
    };
    let terms: Vec<FreeModule> =
        (0..=top).map(|n| fundamental_elements(f, n).module()).collect();
    let diffs: Vec<GradedMatrix<F>> =
        (1..=top).map(|n| boundary_matrix(f, n, field.clone())).collect();
    FreeChainComplex::new(field, terms, diffs)
}

/// Evaluates the filtration slice by slice over the grid: per level, the
/// simplices present at each grade, with inclusion transports and honest
/// simplicial boundary matrices.
pub fn gradewise_complex<F: Field>(
    f: &MultiFiltration,
    field: F,
    grid: &Grid,
) -> GradewiseComplex<F> {
    let levels = f.dim().map_or(0, |d| d + 1);
    let positions: Vec<Vec<usize>> = (0..levels).map(|n| f.simplices_of_dim(n)).collect();
    // present[n][idx]: positions of the n-simplices present at grid point idx.
    let present: Vec<Vec<Vec<usize>>> = (0..levels)
        .map(|n| {
            (0..grid.len())
                .into_par_iter()
                .map(|idx| {
                    let v = grid.point(idx);
                    positions[n]
                        .iter()
                        .copied()
                        .filter(|&p| f.simplices()[p].present_at(&v))
                        .collect()
                })
                .collect()
        })
        .collect();
    let dims: Vec<Vec<usize>> =
        present.iter().map(|per| per.iter().map(|l| l.len()).collect()).collect();
    let transports: Vec<Vec<Vec<Option<Matrix<F>>>>> = (0..levels)
        .map(|n| {
            (0..grid.r())
                .map(|axis| {
                    (0..grid.len())
                        .into_par_iter()
                        .map(|idx| {
                            grid.succ(idx, axis).map(|w| {
                                let rows = &present[n][w];
                                let cols = &present[n][idx];
                                let row_of: BTreeMap<usize, usize> = rows
                                    .iter()
                                    .enumerate()
                                    .map(|(i, &p)| (p, i))
                                    .collect();
                                let mut m =
                                    Matrix::zero(field.clone(), rows.len(), cols.len());
                                for (j, p) in cols.iter().enumerate() {
                                    m.set(row_of[p], j, field.one());
                                }
                                m
                            })
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let boundaries: Vec<Vec<Matrix<F>>> = (0..levels)
        .map(|n| {
            (0..grid.len())
                .into_par_iter()
                .map(|idx| {
                    if n == 0 {
                        return Matrix::zero(field.clone(), 0, present[0][idx].len());
                    }
                    let rows = &present[n - 1][idx];
                    let cols = &present[n][idx];
                    let row_of: BTreeMap<usize, usize> =
                        rows.iter().enumerate().map(|(i, &p)| (p, i)).collect();
                    let mut m = Matrix::zero(field.clone(), rows.len(), cols.len());
                    for (j, &p) in cols.iter().enumerate() {
                        let simplex = &f.simplices()[p].simplex;
                        for i in 0..simplex.vertices.len() {
                            let fpos = f
                                .position_by_vertices(&simplex.facet(i))
                                .expect("validated filtration is closed under faces");
                            let sign = if i % 2 == 0 {
                                field.one()
                            } else {
                                field.neg(&field.one())
                            };
                            m.set(row_of[&fpos], j, sign);
                        }
                    }
                    m
                })
                .collect()
        })
        .collect();
    GradewiseComplex::new(field, grid.clone(), dims, transports, boundaries)
}

/// The augmentation of the free module on fundamental elements onto the
/// `n`-chains, evaluated at every grid point: entry one where the column's
/// element belongs to the row's simplex.
pub fn chain_augmentation<F: Field>(
    f: &MultiFiltration,
    n: usize,
    field: F,
    grid: &Grid,
) -> Vec<Matrix<F>> {
    let data = fundamental_elements(f, n);
    let module = data.module();
    let positions = f.simplices_of_dim(n);
    (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let v = grid.point(idx);
            let rows: Vec<usize> = positions
                .iter()
                .copied()
                .filter(|&p| f.simplices()[p].present_at(&v))
                .collect();
            let row_of: BTreeMap<u32, usize> = rows
                .iter()
                .enumerate()
                .map(|(i, &p)| (f.simplices()[p].simplex.id, i))
                .collect();
            let cols = module.indices_at(&v);
            let mut m = Matrix::zero(field.clone(), rows.len(), cols.len());
            for (j, &e) in cols.iter().enumerate() {
                m.set(row_of[&data.elements[e].simplex], j, field.one());
            }
            m
        })
        .collect()
}
