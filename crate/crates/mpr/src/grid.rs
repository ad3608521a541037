//! Multigraded modules represented gradewise on a finite grid.
//!
//! A finitely generated module over `k[x_1, ..., x_r]` whose structure
//! stabilizes past a grid bound is stored by its restriction to the grid:
//! one vector space dimension per grade and one action matrix per grid
//! edge. Submodules of free modules carry an explicit embedding basis per
//! grade. Minimal generators, free covers, gradewise kernels, minimal
//! resolutions and Betti numbers are all computed here by exact linear
//! algebra over the chosen field.
//!
//! Every construction picks canonical bases (reduced echelon pivots,
//! leftmost independent columns, generators in graded lexicographic order),
//! so repeated runs produce identical output.

use crate::degree::{Grid, Multidegree};
use crate::field::Field;
use crate::graded::{free_transport, FreeModule, GradedMatrix};
use crate::matrix::{BasisBuilder, Matrix};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// A module restricted to the grid: a dimension per grade and an action
/// matrix along every grid edge.
#[derive(Clone, Debug)]
pub struct GridModule<F: Field> {
    field: F,
    grid: Grid,
    dims: Vec<usize>,
    actions: Vec<Vec<Option<Matrix<F>>>>,
}

impl<F: Field> GridModule<F> {
    /// Wraps raw gradewise data. `actions[axis][i]` maps the fiber at point
    /// `i` to the fiber at its successor along `axis`, and is `None` exactly
    /// on the grid boundary.
    pub fn new(
        field: F,
        grid: Grid,
        dims: Vec<usize>,
        actions: Vec<Vec<Option<Matrix<F>>>>,
    ) -> Self {
        assert_eq!(dims.len(), grid.len());
        assert_eq!(actions.len(), grid.r());
        GridModule { field, grid, dims, actions }
    }

    pub fn zero(field: F, grid: Grid) -> Self {
        let dims = vec![0; grid.len()];
        let actions = (0..grid.r())
            .map(|axis| {
                (0..grid.len())
                    .map(|i| grid.succ(i, axis).map(|_| Matrix::zero(field.clone(), 0, 0)))
                    .collect()
            })
            .collect();
        GridModule { field, grid, dims, actions }
    }

    /// The gradewise picture of a free module with the given generators.
    pub fn from_free(field: F, grid: Grid, module: &FreeModule) -> Self {
        let dims = (0..grid.len()).map(|i| module.rank_at(&grid.point(i))).collect();
        let actions = (0..grid.r())
            .map(|axis| {
                (0..grid.len())
                    .map(|i| {
                        grid.succ(i, axis).map(|w| {
                            free_transport(&field, module, &grid.point(i), &grid.point(w))
                        })
                    })
                    .collect()
            })
            .collect();
        GridModule { field, grid, dims, actions }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dim_at(&self, idx: usize) -> usize {
        self.dims[idx]
    }

    pub fn dim(&self, v: &Multidegree) -> usize {
        self.dims[self.grid.index(v)]
    }

    /// The action along `axis` out of point `idx`, if `idx` is not on the
    /// grid boundary in that direction.
    pub fn action(&self, axis: usize, idx: usize) -> Option<&Matrix<F>> {
        self.actions[axis][idx].as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Dimension at every grid point in graded lexicographic order,
    /// including zero fibers.
    pub fn hilbert_function(&self) -> Vec<(Multidegree, usize)> {
        self.grid
            .grlex_indices()
            .into_iter()
            .map(|i| (self.grid.point(i), self.dims[i]))
            .collect()
    }

    /// Checks shapes and commutation of the action squares. Used by tests;
    /// production constructors build commuting actions by design.
    pub fn validate(&self) -> bool {
        for axis in 0..self.grid.r() {
            for i in 0..self.grid.len() {
                match (&self.actions[axis][i], self.grid.succ(i, axis)) {
                    (Some(m), Some(w)) => {
                        if m.rows() != self.dims[w] || m.cols() != self.dims[i] {
                            return false;
                        }
                    }
                    (None, None) => {}
                    _ => return false,
                }
            }
        }
        for a in 0..self.grid.r() {
            for b in (a + 1)..self.grid.r() {
                for i in 0..self.grid.len() {
                    let (Some(ia), Some(ib)) = (self.grid.succ(i, a), self.grid.succ(i, b))
                    else {
                        continue;
                    };
                    let first = self.actions[b][ia]
                        .as_ref()
                        .unwrap()
                        .mul(self.actions[a][i].as_ref().unwrap());
                    let second = self.actions[a][ib]
                        .as_ref()
                        .unwrap()
                        .mul(self.actions[b][i].as_ref().unwrap());
                    if first != second {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A submodule of an ambient module, carried by one embedding matrix per
/// grade: columns are the chosen basis vectors in ambient coordinates.
#[derive(Clone, Debug)]
pub struct EmbeddedModule<F: Field> {
    pub module: GridModule<F>,
    pub basis: Vec<Matrix<F>>,
}

/// The gradewise picture of a chain complex: per level, dimensions,
/// transports along grid edges, and boundary matrices within each grade.
#[derive(Clone, Debug)]
pub struct GradewiseComplex<F: Field> {
    field: F,
    grid: Grid,
    dims: Vec<Vec<usize>>,
    transports: Vec<Vec<Vec<Option<Matrix<F>>>>>,
    boundaries: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> GradewiseComplex<F> {
    /// Wraps raw data. `boundaries[n][i]` maps level `n` to level `n - 1`
    /// within the grade at point `i`; `boundaries[0]` has zero rows.
    pub fn new(
        field: F,
        grid: Grid,
        dims: Vec<Vec<usize>>,
        transports: Vec<Vec<Vec<Option<Matrix<F>>>>>,
        boundaries: Vec<Vec<Matrix<F>>>,
    ) -> Self {
        assert_eq!(dims.len(), transports.len());
        assert_eq!(dims.len(), boundaries.len());
        GradewiseComplex { field, grid, dims, transports, boundaries }
    }

    /// Evaluates a complex of free modules gradewise over the grid.
    /// `diffs[n]` must map `terms[n + 1]` to `terms[n]`.
    pub fn from_free_data(
        field: F,
        grid: Grid,
        terms: &[FreeModule],
        diffs: &[GradedMatrix<F>],
    ) -> Self {
        let levels = terms.len();
        let dims: Vec<Vec<usize>> = terms
            .iter()
            .map(|t| (0..grid.len()).map(|i| t.rank_at(&grid.point(i))).collect())
            .collect();
        let transports = terms
            .iter()
            .map(|t| {
                (0..grid.r())
                    .map(|axis| {
                        (0..grid.len())
                            .map(|i| {
                                grid.succ(i, axis).map(|w| {
                                    free_transport(&field, t, &grid.point(i), &grid.point(w))
                                })
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut boundaries = Vec::with_capacity(levels);
        for n in 0..levels {
            if n == 0 {
                boundaries.push(
                    (0..grid.len())
                        .map(|i| Matrix::zero(field.clone(), 0, dims[0][i]))
                        .collect(),
                );
            } else {
                boundaries.push(
                    (0..grid.len()).map(|i| diffs[n - 1].evaluate_at(&grid.point(i))).collect(),
                );
            }
        }
        GradewiseComplex { field, grid, dims, transports, boundaries }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Number of stored levels; level `n` holds the `n`-chains.
    pub fn levels(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, n: usize, idx: usize) -> usize {
        if n < self.dims.len() {
            self.dims[n][idx]
        } else {
            0
        }
    }

    /// The boundary matrix at level `n` within the grade at `idx`, shaped
    /// `dim(n - 1) x dim(n)`; zero outside the stored range.
    pub fn boundary(&self, n: usize, idx: usize) -> Matrix<F> {
        if n < self.boundaries.len() {
            self.boundaries[n][idx].clone()
        } else {
            let rows = if n >= 1 { self.dim(n - 1, idx) } else { 0 };
            Matrix::zero(self.field.clone(), rows, 0)
        }
    }

    fn transport(&self, n: usize, axis: usize, idx: usize) -> Option<&Matrix<F>> {
        self.transports[n][axis][idx].as_ref()
    }

    /// Level `n` as a standalone module.
    pub fn chain_module(&self, n: usize) -> GridModule<F> {
        if n >= self.dims.len() {
            return GridModule::zero(self.field.clone(), self.grid.clone());
        }
        GridModule {
            field: self.field.clone(),
            grid: self.grid.clone(),
            dims: self.dims[n].clone(),
            actions: self.transports[n].clone(),
        }
    }

    /// The cycle submodule at level `n`, embedded in the `n`-chains.
    pub fn cycles(&self, n: usize) -> EmbeddedModule<F> {
        if n >= self.dims.len() {
            return EmbeddedModule {
                module: GridModule::zero(self.field.clone(), self.grid.clone()),
                basis: (0..self.grid.len())
                    .map(|_| Matrix::zero(self.field.clone(), 0, 0))
                    .collect(),
            };
        }
        let bases: Vec<Matrix<F>> = (0..self.grid.len())
            .into_par_iter()
            .map(|i| self.boundary(n, i).nullspace())
            .collect();
        self.embed(n, bases)
    }

    /// The boundary submodule at level `n`: the image of the boundary map
    /// from level `n + 1`, embedded in the `n`-chains.
    pub fn boundaries_module(&self, n: usize) -> EmbeddedModule<F> {
        if n >= self.dims.len() {
            return EmbeddedModule {
                module: GridModule::zero(self.field.clone(), self.grid.clone()),
                basis: (0..self.grid.len())
                    .map(|_| Matrix::zero(self.field.clone(), 0, 0))
                    .collect(),
            };
        }
        let bases: Vec<Matrix<F>> = (0..self.grid.len())
            .into_par_iter()
            .map(|i| {
                let d = self.boundary(n + 1, i);
                let cols = d.independent_columns();
                d.select_cols(&cols)
            })
            .collect();
        self.embed(n, bases)
    }

    /// Packages per-grade bases of subspaces of the `n`-chains into an
    /// embedded module, deriving the induced actions.
    fn embed(&self, n: usize, bases: Vec<Matrix<F>>) -> EmbeddedModule<F> {
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let actions: Vec<Vec<Option<Matrix<F>>>> = (0..self.grid.r())
            .map(|axis| {
                (0..self.grid.len())
                    .into_par_iter()
                    .map(|i| {
                        self.grid.succ(i, axis).map(|w| {
                            let moved = self.transport(n, axis, i).unwrap().mul(&bases[i]);
                            bases[w]
                                .solve(&moved)
                                .expect("internal: submodule not closed under the actions")
                        })
                    })
                    .collect()
            })
            .collect();
        let module = GridModule {
            field: self.field.clone(),
            grid: self.grid.clone(),
            dims,
            actions,
        };
        EmbeddedModule { module, basis: bases }
    }

    /// Homology at level `n`, with cycle and boundary submodules, chosen
    /// representative cycles, and the projection from cycle coordinates.
    pub fn homology(&self, n: usize) -> HomologyData<F> {
        let cycles = self.cycles(n);
        let bnd = self.boundaries_module(n);
        if n >= self.dims.len() {
            let zeros: Vec<Matrix<F>> = (0..self.grid.len())
                .map(|_| Matrix::zero(self.field.clone(), 0, 0))
                .collect();
            return HomologyData {
                module: GridModule::zero(self.field.clone(), self.grid.clone()),
                cycles,
                boundaries: bnd,
                reps: zeros.clone(),
                from_cycles: zeros,
            };
        }
        let field = &self.field;
        let pieces: Vec<(Matrix<F>, Matrix<F>)> = (0..self.grid.len())
            .into_par_iter()
            .map(|i| {
                let zb = &cycles.basis[i];
                let bb = &bnd.basis[i];
                let ambient = self.dim(n, i);
                let mut builder = BasisBuilder::new(field.clone(), ambient);
                for j in 0..bb.cols() {
                    let inserted = builder.try_insert(bb.column(j));
                    debug_assert!(inserted);
                }
                let mut rep_cols = Vec::new();
                for j in 0..zb.cols() {
                    if builder.try_insert(zb.column(j)) {
                        rep_cols.push(j);
                    }
                }
                let reps = zb.select_cols(&rep_cols);
                let br = bb.hstack(&reps);
                let sol = br.solve(zb).expect("internal: cycle outside its own span");
                let h_rows: Vec<usize> = (bb.cols()..bb.cols() + reps.cols()).collect();
                let from_cycles = sol.select_rows(&h_rows);
                (reps, from_cycles)
            })
            .collect();
        let reps: Vec<Matrix<F>> = pieces.iter().map(|(r, _)| r.clone()).collect();
        let from_cycles: Vec<Matrix<F>> = pieces.into_iter().map(|(_, f)| f).collect();
        let dims: Vec<usize> = reps.iter().map(|r| r.cols()).collect();
        let actions: Vec<Vec<Option<Matrix<F>>>> = (0..self.grid.r())
            .map(|axis| {
                (0..self.grid.len())
                    .into_par_iter()
                    .map(|i| {
                        self.grid.succ(i, axis).map(|w| {
                            let moved = self.transport(n, axis, i).unwrap().mul(&reps[i]);
                            let br = bnd.basis[w].hstack(&reps[w]);
                            let sol = br
                                .solve(&moved)
                                .expect("internal: transported cycle left the cycle space");
                            let h_rows: Vec<usize> =
                                (bnd.basis[w].cols()..br.cols()).collect();
                            sol.select_rows(&h_rows)
                        })
                    })
                    .collect()
            })
            .collect();
        let module = GridModule {
            field: self.field.clone(),
            grid: self.grid.clone(),
            dims,
            actions,
        };
        HomologyData { cycles, boundaries: bnd, module, reps, from_cycles }
    }

    /// The homology modules of every stored level.
    pub fn homology_modules(&self) -> Vec<GridModule<F>> {
        (0..self.levels()).map(|n| self.homology(n).module).collect()
    }
}

/// Homology at one level, together with the submodule data needed to map
/// resolutions onto it.
pub struct HomologyData<F: Field> {
    pub cycles: EmbeddedModule<F>,
    pub boundaries: EmbeddedModule<F>,
    pub module: GridModule<F>,
    /// Representative cycles per grade, ambient coordinates.
    pub reps: Vec<Matrix<F>>,
    /// Projection from cycle coordinates to homology coordinates per grade.
    pub from_cycles: Vec<Matrix<F>>,
}

/// A minimal generator: a fiber vector at the grade where it first appears.
#[derive(Clone, Debug)]
pub struct ModuleGenerator<F: Field> {
    pub degree: Multidegree,
    pub vector: Vec<F::Elem>,
}

/// Minimal generators of a grid module, found in graded lexicographic
/// order: at each grade, standard basis vectors outside the span of what
/// arrives from below, taken in coordinate order.
pub fn minimal_generators<F: Field>(m: &GridModule<F>) -> Vec<ModuleGenerator<F>> {
    minimal_generators_in_order(m, &m.grid().grlex_indices())
}

/// As [`minimal_generators`] along any linear extension of the grade order;
/// generator counts per degree do not depend on the extension.
pub(crate) fn minimal_generators_in_order<F: Field>(
    m: &GridModule<F>,
    order: &[usize],
) -> Vec<ModuleGenerator<F>> {
    let field = m.field().clone();
    let grid = m.grid();
    let mut gens = Vec::new();
    for &idx in order {
        let dim = m.dim_at(idx);
        if dim == 0 {
            continue;
        }
        let mut builder = BasisBuilder::new(field.clone(), dim);
        for axis in 0..grid.r() {
            if let Some(uidx) = grid.pred(idx, axis) {
                let act = m.action(axis, uidx).unwrap();
                for j in 0..act.cols() {
                    builder.try_insert(act.column(j));
                }
            }
        }
        for t in 0..dim {
            let mut e = vec![field.zero(); dim];
            e[t] = field.one();
            if builder.try_insert(e.clone()) {
                gens.push(ModuleGenerator { degree: grid.point(idx), vector: e });
            }
        }
    }
    gens
}

/// A free cover of a grid module: generators, the free module on their
/// degrees, and the cover map evaluated at every grade.
pub struct Cover<F: Field> {
    pub gens: Vec<ModuleGenerator<F>>,
    pub module: FreeModule,
    /// `maps[i]`: fiber dimension of the target at point `i` by
    /// `module.rank_at` columns, in generator order.
    pub maps: Vec<Matrix<F>>,
}

/// The minimal free cover: one free generator per minimal generator, mapped
/// by transporting each generator vector across the grid.
pub fn free_cover<F: Field>(m: &GridModule<F>) -> Cover<F> {
    let field = m.field().clone();
    let grid = m.grid().clone();
    let gens = minimal_generators(m);
    let module = FreeModule::new(gens.iter().map(|g| g.degree.clone()).collect());
    let mut carried: Vec<Vec<Option<Vec<F::Elem>>>> =
        vec![vec![None; grid.len()]; gens.len()];
    for idx in grid.grlex_indices() {
        let v = grid.point(idx);
        for (gi, gen) in gens.iter().enumerate() {
            if !gen.degree.leq(&v) {
                continue;
            }
            let vec = if gen.degree == v {
                gen.vector.clone()
            } else {
                let axis = (0..grid.r())
                    .find(|&a| gen.degree.get(a) < v.get(a))
                    .unwrap();
                let uidx = grid.pred(idx, axis).unwrap();
                let prev = carried[gi][uidx].as_ref().unwrap();
                m.action(axis, uidx).unwrap().mul_vec(prev)
            };
            carried[gi][idx] = Some(vec);
        }
    }
    let maps = (0..grid.len())
        .map(|idx| {
            let v = grid.point(idx);
            let cols: Vec<Vec<F::Elem>> = module
                .indices_at(&v)
                .into_iter()
                .map(|gi| carried[gi][idx].clone().unwrap())
                .collect();
            Matrix::from_columns(field.clone(), m.dim_at(idx), &cols)
        })
        .collect();
    Cover { gens, module, maps }
}

/// The kernel of a gradewise map out of a free module, embedded in that
/// free module. `maps[i]` must have `ambient.rank_at` columns at point `i`.
pub fn kernel_gradewise<F: Field>(
    field: F,
    grid: &Grid,
    ambient: &FreeModule,
    maps: &[Matrix<F>],
) -> EmbeddedModule<F> {
    let bases: Vec<Matrix<F>> =
        (0..grid.len()).into_par_iter().map(|i| maps[i].nullspace()).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
    let actions: Vec<Vec<Option<Matrix<F>>>> = (0..grid.r())
        .map(|axis| {
            (0..grid.len())
                .into_par_iter()
                .map(|i| {
                    grid.succ(i, axis).map(|w| {
                        let tr =
                            free_transport(&field, ambient, &grid.point(i), &grid.point(w));
                        bases[w]
                            .solve(&tr.mul(&bases[i]))
                            .expect("internal: kernel not closed under transport")
                    })
                })
                .collect()
        })
        .collect();
    let module = GridModule::new(field, grid.clone(), dims, actions);
    EmbeddedModule { module, basis: bases }
}

/// The kernel of a homogeneous matrix of free modules, evaluated over the
/// grid and embedded in its source.
pub fn kernel_of_matrix<F: Field>(mat: &GradedMatrix<F>, grid: &Grid) -> EmbeddedModule<F> {
    let field = mat.field().clone();
    let maps: Vec<Matrix<F>> = (0..grid.len())
        .into_par_iter()
        .map(|i| mat.evaluate_at(&grid.point(i)))
        .collect();
    kernel_gradewise(field, grid, mat.source(), &maps)
}

/// Builds a minimal free resolution gradewise: iterated minimal covers of
/// kernels. Returns the terms, the differentials (`diffs[j]` maps term
/// `j + 1` to term `j`), and the augmentation of term 0 onto the module at
/// every grade. `max_steps` truncates after that many differentials.
pub fn minimal_resolution_data<F: Field>(
    m: &GridModule<F>,
    max_steps: Option<usize>,
) -> (Vec<FreeModule>, Vec<GradedMatrix<F>>, Vec<Matrix<F>>) {
    let field = m.field().clone();
    let grid = m.grid().clone();
    if m.is_zero() {
        return (Vec::new(), Vec::new(), Vec::new());
    }
    let cover0 = free_cover(m);
    let mut terms = vec![cover0.module.clone()];
    let mut diffs: Vec<GradedMatrix<F>> = Vec::new();
    let mut kernel = kernel_gradewise(field.clone(), &grid, &cover0.module, &cover0.maps);
    loop {
        if kernel.module.is_zero() {
            break;
        }
        if let Some(ms) = max_steps {
            if diffs.len() >= ms {
                break;
            }
        }
        assert!(
            diffs.len() < grid.r() + 1,
            "internal: resolution exceeded the syzygy bound"
        );
        let cover = free_cover(&kernel.module);
        let prev = terms.last().unwrap().clone();
        let mut d = GradedMatrix::zero(field.clone(), prev.clone(), cover.module.clone());
        for (col, gen) in cover.gens.iter().enumerate() {
            let idx = grid.index(&gen.degree);
            let ambient_vec = kernel.basis[idx].mul_vec(&gen.vector);
            for (pos, row) in prev.indices_at(&gen.degree).into_iter().enumerate() {
                if !field.is_zero(&ambient_vec[pos]) {
                    d.set(row, col, ambient_vec[pos].clone());
                }
            }
        }
        terms.push(cover.module.clone());
        diffs.push(d);
        kernel = kernel_gradewise(field.clone(), &grid, &cover.module, &cover.maps);
    }
    (terms, diffs, cover0.maps)
}

/// The minimal presentation: minimal generators, minimal relations, and the
/// relation matrix between them.
pub fn minimal_presentation<F: Field>(
    m: &GridModule<F>,
) -> (FreeModule, FreeModule, GradedMatrix<F>) {
    let field = m.field().clone();
    let (mut terms, mut diffs, _) = minimal_resolution_data(m, Some(1));
    let gens = if terms.is_empty() { FreeModule::empty() } else { terms.remove(0) };
    if diffs.is_empty() {
        let rels = FreeModule::empty();
        let mat = GradedMatrix::zero(field, gens.clone(), rels.clone());
        (gens, rels, mat)
    } else {
        let rels = terms.remove(0);
        (gens, rels, diffs.remove(0))
    }
}

/// Multigraded Betti numbers: for each homological step, how many minimal
/// generators the minimal resolution has at each degree.
pub struct BettiTable {
    pub steps: Vec<BTreeMap<Multidegree, usize>>,
}

impl BettiTable {
    /// Tab-separated rows `step degree count`, grades in graded
    /// lexicographic order within each step.
    pub fn render_tsv(&self) -> String {
        let mut out = String::new();
        for (j, counts) in self.steps.iter().enumerate() {
            for (deg, count) in counts {
                let _ = writeln!(out, "{j}\t{deg}\t{count}");
            }
        }
        out
    }

    pub fn count(&self, step: usize, deg: &Multidegree) -> usize {
        self.steps.get(step).and_then(|c| c.get(deg)).copied().unwrap_or(0)
    }

    pub fn total(&self, step: usize) -> usize {
        self.steps.get(step).map(|c| c.values().sum()).unwrap_or(0)
    }
}

/// Betti numbers of a grid module, optionally truncated to the first
/// `max_step` syzygy steps.
pub fn betti_numbers<F: Field>(m: &GridModule<F>, max_step: Option<usize>) -> BettiTable {
    let (terms, _, _) = minimal_resolution_data(m, max_step);
    let steps = terms
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use num::BigRational;

    fn d(coords: &[u32]) -> Multidegree {
        Multidegree::new(coords.to_vec())
    }

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    fn mat(rows: usize, cols: usize, entries: &[i64]) -> Matrix<Rationals> {
        assert_eq!(entries.len(), rows * cols);
        let mut m = Matrix::zero(Rationals, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, q(entries[i * cols + j]));
            }
        }
        m
    }

    /// The degree-zero homology of two vertices merged by an edge entering
    /// at (1,0) and (0,1): fibers 2, 1, 1, 1 on the unit grid.
    fn merge_module() -> GridModule<Rationals> {
        let grid = Grid::new(d(&[1, 1]));
        let i00 = grid.index(&d(&[0, 0]));
        let i10 = grid.index(&d(&[1, 0]));
        let i01 = grid.index(&d(&[0, 1]));
        let i11 = grid.index(&d(&[1, 1]));
        let mut dims = vec![0; grid.len()];
        dims[i00] = 2;
        dims[i10] = 1;
        dims[i01] = 1;
        dims[i11] = 1;
        let mut actions: Vec<Vec<Option<Matrix<Rationals>>>> =
            vec![vec![None; grid.len()]; 2];
        actions[0][i00] = Some(mat(1, 2, &[1, 1]));
        actions[0][i01] = Some(mat(1, 1, &[1]));
        actions[1][i00] = Some(mat(1, 2, &[1, 1]));
        actions[1][i10] = Some(mat(1, 1, &[1]));
        let m = GridModule::new(Rationals, grid, dims, actions);
        assert!(m.validate());
        m
    }

    /// The ideal generated by x and y on the unit grid.
    fn xy_ideal() -> GridModule<Rationals> {
        let grid = Grid::new(d(&[1, 1]));
        let i00 = grid.index(&d(&[0, 0]));
        let i10 = grid.index(&d(&[1, 0]));
        let i01 = grid.index(&d(&[0, 1]));
        let mut dims = vec![1; grid.len()];
        dims[i00] = 0;
        let mut actions: Vec<Vec<Option<Matrix<Rationals>>>> =
            vec![vec![None; grid.len()]; 2];
        actions[0][i00] = Some(mat(1, 0, &[]));
        actions[0][i01] = Some(mat(1, 1, &[1]));
        actions[1][i00] = Some(mat(1, 0, &[]));
        actions[1][i10] = Some(mat(1, 1, &[1]));
        let m = GridModule::new(Rationals, grid, dims, actions);
        assert!(m.validate());
        m
    }

    #[test]
    fn minimal_generators_of_the_merge_module() {
        let m = merge_module();
        let gens = minimal_generators(&m);
        assert_eq!(gens.len(), 2);
        assert!(gens.iter().all(|g| g.degree == d(&[0, 0])));
        assert_eq!(gens[0].vector, vec![q(1), q(0)]);
        assert_eq!(gens[1].vector, vec![q(0), q(1)]);
    }

    #[test]
    fn generator_counts_match_along_another_linear_extension() {
        let m = merge_module();
        let grid = m.grid().clone();
        let mut lex: Vec<usize> = (0..grid.len()).collect();
        lex.sort_by_key(|&i| grid.point(i).coords().to_vec());
        let a = minimal_generators(&m);
        let b = minimal_generators_in_order(&m, &lex);
        let count = |gens: &[ModuleGenerator<Rationals>]| {
            let mut c: BTreeMap<Multidegree, usize> = BTreeMap::new();
            for g in gens {
                *c.entry(g.degree.clone()).or_insert(0) += 1;
            }
            c
        };
        assert_eq!(count(&a), count(&b));
    }

    #[test]
    fn presentation_of_the_merge_module() {
        let m = merge_module();
        let (gens, rels, mat) = minimal_presentation(&m);
        assert_eq!(gens.degrees(), &[d(&[0, 0]), d(&[0, 0])]);
        assert_eq!(rels.degrees(), &[d(&[0, 1]), d(&[1, 0])]);
        for col in 0..2 {
            assert_eq!(mat.entry(0, col), Some(&q(1)));
            assert_eq!(mat.entry(1, col), Some(&q(-1)));
        }
        // The cokernel of the presentation has the module's Hilbert function.
        for (v, dim) in m.hilbert_function() {
            let e = mat.evaluate_at(&v);
            assert_eq!(gens.rank_at(&v) - e.rank(), dim);
        }
    }

    #[test]
    fn full_resolution_of_the_merge_module() {
        let m = merge_module();
        let (terms, diffs, aug) = minimal_resolution_data(&m, None);
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[2].degrees(), &[d(&[1, 1])]);
        assert_eq!(diffs[1].entry(0, 0), Some(&q(1)));
        assert_eq!(diffs[1].entry(1, 0), Some(&q(-1)));
        assert!(diffs[0].compose(&diffs[1]).is_zero());
        let grid = m.grid();
        let i00 = grid.index(&d(&[0, 0]));
        assert_eq!(aug[i00], mat(2, 2, &[1, 0, 0, 1]));
    }

    #[test]
    fn betti_numbers_of_the_merge_module() {
        let b = betti_numbers(&merge_module(), None);
        assert_eq!(b.count(0, &d(&[0, 0])), 2);
        assert_eq!(b.count(1, &d(&[1, 0])), 1);
        assert_eq!(b.count(1, &d(&[0, 1])), 1);
        assert_eq!(b.count(2, &d(&[1, 1])), 1);
        assert_eq!(
            b.render_tsv(),
            "0\t(0,0)\t2\n1\t(0,1)\t1\n1\t(1,0)\t1\n2\t(1,1)\t1\n"
        );
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let b = betti_numbers(&xy_ideal(), None);
        assert_eq!(b.count(0, &d(&[1, 0])), 1);
        assert_eq!(b.count(0, &d(&[0, 1])), 1);
        assert_eq!(b.count(1, &d(&[1, 1])), 1);
        assert_eq!(b.total(2), 0);
    }

    #[test]
    fn hilbert_function_lists_the_whole_grid() {
        let m = xy_ideal();
        let h = m.hilbert_function();
        assert_eq!(
            h,
            vec![
                (d(&[0, 0]), 0),
                (d(&[0, 1]), 1),
                (d(&[1, 0]), 1),
                (d(&[1, 1]), 1),
            ]
        );
    }

    /// Gradewise complex of the merged-edge example: two vertices at the
    /// origin, one edge entering at (1,0) and (0,1).
    fn edge_complex() -> GradewiseComplex<Rationals> {
        let grid = Grid::new(d(&[1, 1]));
        let i00 = grid.index(&d(&[0, 0]));
        let i10 = grid.index(&d(&[1, 0]));
        let i01 = grid.index(&d(&[0, 1]));
        let dims0 = vec![2; grid.len()];
        let mut dims1 = vec![1; grid.len()];
        dims1[i00] = 0;
        let id2 = mat(2, 2, &[1, 0, 0, 1]);
        let mut t0: Vec<Vec<Option<Matrix<Rationals>>>> = vec![vec![None; grid.len()]; 2];
        t0[0][i00] = Some(id2.clone());
        t0[0][i01] = Some(id2.clone());
        t0[1][i00] = Some(id2.clone());
        t0[1][i10] = Some(id2.clone());
        let mut t1: Vec<Vec<Option<Matrix<Rationals>>>> = vec![vec![None; grid.len()]; 2];
        t1[0][i00] = Some(mat(1, 0, &[]));
        t1[0][i01] = Some(mat(1, 1, &[1]));
        t1[1][i00] = Some(mat(1, 0, &[]));
        t1[1][i10] = Some(mat(1, 1, &[1]));
        let b0: Vec<Matrix<Rationals>> =
            dims0.iter().map(|&c| Matrix::zero(Rationals, 0, c)).collect();
        let b1: Vec<Matrix<Rationals>> = (0..grid.len())
            .map(|i| {
                if dims1[i] == 0 {
                    Matrix::zero(Rationals, 2, 0)
                } else {
                    mat(2, 1, &[-1, 1])
                }
            })
            .collect();
        GradewiseComplex::new(
            Rationals,
            grid,
            vec![dims0, dims1],
            vec![t0, t1],
            vec![b0, b1],
        )
    }

    #[test]
    fn homology_of_the_edge_complex_merges_components() {
        let gw = edge_complex();
        let h0 = gw.homology(0);
        let grid = gw.grid().clone();
        assert_eq!(h0.module.dim(&d(&[0, 0])), 2);
        assert_eq!(h0.module.dim(&d(&[1, 0])), 1);
        assert_eq!(h0.module.dim(&d(&[0, 1])), 1);
        assert_eq!(h0.module.dim(&d(&[1, 1])), 1);
        assert!(h0.module.validate());
        let h1 = gw.homology(1);
        assert!(h1.module.is_zero());
        // Betti numbers agree with the hand-built merge module.
        let b = betti_numbers(&h0.module, None);
        assert_eq!(b.count(0, &d(&[0, 0])), 2);
        assert_eq!(b.count(1, &d(&[1, 0])), 1);
        assert_eq!(b.count(2, &d(&[1, 1])), 1);
        // from_cycles sends each representative to a standard basis vector.
        let i10 = grid.index(&d(&[1, 0]));
        let prod = h0.from_cycles[i10]
            .mul(&h0.cycles.basis[i10].solve(&h0.reps[i10]).unwrap());
        assert_eq!(prod, mat(1, 1, &[1]));
    }

    #[test]
    fn cycles_and_boundaries_of_the_edge_complex() {
        let gw = edge_complex();
        let z1 = gw.cycles(1);
        assert!(z1.module.is_zero());
        let b0 = gw.boundaries_module(0);
        assert_eq!(b0.module.dim(&d(&[0, 0])), 0);
        assert_eq!(b0.module.dim(&d(&[1, 0])), 1);
        let grid = gw.grid().clone();
        let i10 = grid.index(&d(&[1, 0]));
        assert_eq!(b0.basis[i10], mat(2, 1, &[-1, 1]));
        assert!(b0.module.validate());
    }

    #[test]
    fn kernel_of_a_graded_matrix() {
        let f0 = FreeModule::new(vec![d(&[0, 0]), d(&[0, 0])]);
        let rels = FreeModule::new(vec![d(&[1, 0]), d(&[0, 1])]);
        let mut pres = GradedMatrix::zero(Rationals, f0.clone(), rels);
        for col in 0..2 {
            pres.set(0, col, q(1));
            pres.set(1, col, q(-1));
        }
        let grid = Grid::new(d(&[1, 1]));
        let ker = kernel_of_matrix(&pres, &grid);
        assert_eq!(ker.module.dim(&d(&[1, 0])), 0);
        assert_eq!(ker.module.dim(&d(&[1, 1])), 1);
        let i11 = grid.index(&d(&[1, 1]));
        assert_eq!(ker.basis[i11], mat(2, 1, &[1, -1]));
    }

    #[test]
    fn zero_module_resolves_to_nothing() {
        let grid = Grid::new(d(&[1, 1]));
        let m = GridModule::zero(Rationals, grid);
        assert!(m.is_zero());
        let (terms, diffs, aug) = minimal_resolution_data(&m, None);
        assert!(terms.is_empty());
        assert!(diffs.is_empty());
        assert!(aug.is_empty());
    }

    #[test]
    fn free_cover_maps_are_surjective_gradewise() {
        let m = merge_module();
        let cover = free_cover(&m);
        for idx in 0..m.grid().len() {
            assert_eq!(cover.maps[idx].rank(), m.dim_at(idx));
        }
    }
}
