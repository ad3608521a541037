//! Free multigraded modules and the homogeneous matrices between them.
//!
//! A matrix between free modules stores only scalar entries; the monomial
//! carried by an entry is implied by the degrees of its row and column
//! generators. Evaluating at a grade `v` restricts rows and columns to the
//! generators of degree `⪯ v` and forgets the monomials, which is exactly
//! the graded piece of the module map.

use crate::degree::Multidegree;
use crate::field::Field;
use crate::matrix::Matrix;
use std::collections::BTreeMap;

/// A free multigraded module, described by its ordered generator degrees.
///
/// Generators are identified by their index in this list; all matrices and
/// serialized formats refer to them that way.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeModule {
    gens: Vec<Multidegree>,
}

impl FreeModule {
    pub fn new(gens: Vec<Multidegree>) -> Self {
        FreeModule { gens }
    }

    pub fn empty() -> Self {
        FreeModule { gens: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn degree(&self, i: usize) -> &Multidegree {
        &self.gens[i]
    }

    pub fn degrees(&self) -> &[Multidegree] {
        &self.gens
    }

    /// Indices of the generators of degree `⪯ v`, in generator order: the
    /// basis of the graded piece at `v`.
    pub fn indices_at(&self, v: &Multidegree) -> Vec<usize> {
        (0..self.gens.len()).filter(|&i| self.gens[i].leq(v)).collect()
    }

    /// Dimension of the graded piece at `v`.
    pub fn rank_at(&self, v: &Multidegree) -> usize {
        self.gens.iter().filter(|d| d.leq(v)).count()
    }

    /// Positions within `indices_at(v)` indexed by generator; `None` for
    /// generators not yet present at `v`.
    pub fn positions_at(&self, v: &Multidegree) -> Vec<Option<usize>> {
        let mut out = vec![None; self.gens.len()];
        for (pos, idx) in self.indices_at(v).into_iter().enumerate() {
            out[idx] = Some(pos);
        }
        out
    }

    /// The module with generator `i` removed; later generators shift down.
    pub fn without(&self, i: usize) -> FreeModule {
        let mut gens = self.gens.clone();
        gens.remove(i);
        FreeModule { gens }
    }
}

/// The inclusion of graded pieces `F_v -> F_w` of a free module for
/// `v ⪯ w`, as a 0/1 matrix in the bases given by `indices_at`.
pub fn free_transport<F: Field>(
    field: &F,
    module: &FreeModule,
    v: &Multidegree,
    w: &Multidegree,
) -> Matrix<F> {
    debug_assert!(v.leq(w));
    let rows = module.indices_at(w);
    let cols = module.indices_at(v);
    let pos_w = module.positions_at(w);
    let mut m = Matrix::zero(field.clone(), rows.len(), cols.len());
    for (j, idx) in cols.iter().enumerate() {
        let i = pos_w[*idx].expect("generator present at v must be present at w");
        m.set(i, j, field.one());
    }
    m
}

/// A homogeneous matrix between free multigraded modules.
///
/// Entry `(i, j)` is the scalar coefficient of target generator `i` in the
/// image of source generator `j`; the implied monomial is
/// `x^(deg_source(j) − deg_target(i))`. Homogeneity requires
/// `deg_target(i) ⪯ deg_source(j)` wherever an entry is nonzero.
#[derive(Clone, Debug)]
pub struct GradedMatrix<F: Field> {
    field: F,
    target: FreeModule,
    source: FreeModule,
    entries: BTreeMap<(usize, usize), F::Elem>,
}

impl<F: Field> PartialEq for GradedMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target
            && self.source == other.source
            && self.entries == other.entries
    }
}

impl<F: Field> Eq for GradedMatrix<F> {}

impl<F: Field> GradedMatrix<F> {
    pub fn zero(field: F, target: FreeModule, source: FreeModule) -> Self {
        GradedMatrix { field, target, source, entries: BTreeMap::new() }
    }

    pub fn identity(field: F, module: &FreeModule) -> Self {
        let mut m = GradedMatrix::zero(field, module.clone(), module.clone());
        for i in 0..module.rank() {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    /// Sets an entry; zero scalars are dropped. Panics if the entry would
    /// be inhomogeneous.
    pub fn set(&mut self, row: usize, col: usize, e: F::Elem) {
        if self.field.is_zero(&e) {
            self.entries.remove(&(row, col));
            return;
        }
        assert!(
            self.target.degree(row).leq(self.source.degree(col)),
            "inhomogeneous entry at ({row}, {col}): {} into {}",
            self.source.degree(col),
            self.target.degree(row),
        );
        self.entries.insert((row, col), e);
    }

    pub fn add_to(&mut self, row: usize, col: usize, e: &F::Elem) {
        let cur = self.entries.get(&(row, col)).cloned().unwrap_or_else(|| self.field.zero());
        let next = self.field.add(&cur, e);
        self.set(row, col, next);
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&F::Elem> {
        self.entries.get(&(row, col))
    }

    /// Nonzero entries in (row, col) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F::Elem)> {
        self.entries.iter().map(|(&(i, j), e)| (i, j, e))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// The monomial exponent implied by an entry position.
    pub fn implied_monomial(&self, row: usize, col: usize) -> Option<Multidegree> {
        self.source.degree(col).checked_sub(self.target.degree(row))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.entries
            .keys()
            .all(|&(i, j)| self.target.degree(i).leq(self.source.degree(j)))
    }

    /// The graded piece at `v`: a dense scalar matrix from the source basis
    /// at `v` to the target basis at `v`.
    pub fn evaluate_at(&self, v: &Multidegree) -> Matrix<F> {
        let row_pos = self.target.positions_at(v);
        let col_idx = self.source.indices_at(v);
        let mut m =
            Matrix::zero(self.field.clone(), self.target.rank_at(v), col_idx.len());
        for (jpos, j) in col_idx.iter().enumerate() {
            for (i, pos) in row_pos.iter().enumerate() {
                if let Some(e) = self.entries.get(&(i, *j)) {
                    let ipos = pos.expect("homogeneity places rows below columns");
                    m.set(ipos, jpos, e.clone());
                }
            }
        }
        m
    }

    /// The composite `self ∘ rhs`; requires `rhs.target == self.source`.
    pub fn compose(&self, rhs: &GradedMatrix<F>) -> GradedMatrix<F> {
        assert_eq!(
            self.source, rhs.target,
            "composition shape mismatch: inner modules differ"
        );
        let f = self.field.clone();
        let mut out = GradedMatrix::zero(f.clone(), self.target.clone(), rhs.source.clone());
        // Group the right factor's entries by row for the sparse product.
        let mut by_row: BTreeMap<usize, Vec<(usize, &F::Elem)>> = BTreeMap::new();
        for (j, k, e) in rhs.entries() {
            by_row.entry(j).or_default().push((k, e));
        }
        for (i, j, a) in self.entries() {
            if let Some(row) = by_row.get(&j) {
                for (k, b) in row {
                    out.add_to(i, *k, &f.mul(a, b));
                }
            }
        }
        out
    }

    /// Renders the textual block: a `rows:` header, a `cols:` header, then
    /// one `i j scalar` line per nonzero entry in (row, col) order.
    pub fn render_block(&self) -> String {
        let mut out = String::new();
        out.push_str("rows:");
        for d in self.target.degrees() {
            out.push(' ');
            out.push_str(&d.to_string());
        }
        out.push('\n');
        out.push_str("cols:");
        for d in self.source.degrees() {
            out.push(' ');
            out.push_str(&d.to_string());
        }
        out.push('\n');
        for (i, j, e) in self.entries() {
            out.push_str(&format!("{} {} {}\n", i, j, self.field.render(e)));
        }
        out
    }

    /// Parses the block format produced by [`GradedMatrix::render_block`].
    pub fn parse_block(field: F, lines: &[&str]) -> Result<Self, String> {
        let mut it = lines.iter();
        let rows_line = it.next().ok_or("missing `rows:` header")?;
        let cols_line = it.next().ok_or("missing `cols:` header")?;
        let target = FreeModule::new(parse_degree_list(rows_line, "rows:")?);
        let source = FreeModule::new(parse_degree_list(cols_line, "cols:")?);
        let mut m = GradedMatrix::zero(field, target, source);
        for line in it {
            let mut parts = line.split_whitespace();
            let (Some(i), Some(j), Some(s)) = (parts.next(), parts.next(), parts.next()) else {
                return Err(format!("bad entry line `{line}`"));
            };
            if parts.next().is_some() {
                return Err(format!("bad entry line `{line}`"));
            }
            let i: usize = i.parse().map_err(|_| format!("bad row index `{i}`"))?;
            let j: usize = j.parse().map_err(|_| format!("bad column index `{j}`"))?;
            if i >= m.target.rank() || j >= m.source.rank() {
                return Err(format!("entry ({i}, {j}) out of range"));
            }
            let e = m.field.parse(s)?;
            if !m.target.degree(i).leq(m.source.degree(j)) {
                return Err(format!("inhomogeneous entry at ({i}, {j})"));
            }
            m.set(i, j, e);
        }
        Ok(m)
    }
}

fn parse_degree_list(line: &str, prefix: &str) -> Result<Vec<Multidegree>, String> {
    let rest = line
        .trim()
        .strip_prefix(prefix)
        .ok_or_else(|| format!("expected `{prefix}` header, got `{line}`"))?;
    rest.split_whitespace().map(Multidegree::parse).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    fn d(coords: &[u32]) -> Multidegree {
        Multidegree::new(coords.to_vec())
    }

    fn edge_boundary() -> GradedMatrix<Rationals> {
        // Two edge generators at (1,0) and (0,1) mapping onto two vertex
        // generators at the origin, as for an edge appearing twice.
        let f = Rationals;
        let target = FreeModule::new(vec![d(&[0, 0]), d(&[0, 0])]);
        let source = FreeModule::new(vec![d(&[1, 0]), d(&[0, 1])]);
        let mut m = GradedMatrix::zero(f, target, source);
        m.set(0, 0, f.from_i64(-1));
        m.set(1, 0, f.from_i64(1));
        m.set(0, 1, f.from_i64(-1));
        m.set(1, 1, f.from_i64(1));
        m
    }

    #[test]
    fn graded_pieces_grow_with_the_grade() {
        let m = edge_boundary();
        let at_origin = m.evaluate_at(&d(&[0, 0]));
        assert_eq!((at_origin.rows(), at_origin.cols()), (2, 0));
        let at_x = m.evaluate_at(&d(&[1, 0]));
        assert_eq!((at_x.rows(), at_x.cols()), (2, 1));
        assert_eq!(*at_x.get(0, 0), Rationals.from_i64(-1));
        let at_top = m.evaluate_at(&d(&[1, 1]));
        assert_eq!((at_top.rows(), at_top.cols()), (2, 2));
    }

    #[test]
    fn implied_monomials_come_from_degrees() {
        let m = edge_boundary();
        assert_eq!(m.implied_monomial(0, 0).unwrap(), d(&[1, 0]));
        assert_eq!(m.implied_monomial(1, 1).unwrap(), d(&[0, 1]));
    }

    #[test]
    fn identity_evaluates_to_identity() {
        let module = FreeModule::new(vec![d(&[0, 0])]);
        let id = GradedMatrix::identity(Rationals, &module);
        let at = id.evaluate_at(&d(&[2, 3]));
        assert_eq!(at, Matrix::identity(Rationals, 1));
    }

    #[test]
    fn compose_matches_gradewise_products() {
        let f = Rationals;
        let a = FreeModule::new(vec![d(&[0, 0])]);
        let b = FreeModule::new(vec![d(&[1, 0]), d(&[0, 1])]);
        let c = FreeModule::new(vec![d(&[1, 1])]);
        let mut g = GradedMatrix::zero(f, a.clone(), b.clone());
        g.set(0, 0, f.from_i64(2));
        g.set(0, 1, f.from_i64(3));
        let mut h = GradedMatrix::zero(f, b.clone(), c.clone());
        h.set(0, 0, f.from_i64(1));
        h.set(1, 0, f.from_i64(-1));
        let gh = g.compose(&h);
        assert_eq!(gh.entry(0, 0), Some(&f.from_i64(-1)));
        let v = d(&[2, 2]);
        assert_eq!(gh.evaluate_at(&v), g.evaluate_at(&v).mul(&h.evaluate_at(&v)));
    }

    #[test]
    fn zero_entries_are_dropped() {
        let f = Rationals;
        let a = FreeModule::new(vec![d(&[0, 0])]);
        let b = FreeModule::new(vec![d(&[1, 0])]);
        let mut m = GradedMatrix::zero(f, a, b);
        m.set(0, 0, f.from_i64(5));
        m.add_to(0, 0, &f.from_i64(-5));
        assert!(m.is_zero());
    }

    #[test]
    #[should_panic(expected = "inhomogeneous")]
    fn inhomogeneous_entries_are_rejected() {
        let f = Rationals;
        let target = FreeModule::new(vec![d(&[2, 0])]);
        let source = FreeModule::new(vec![d(&[1, 0])]);
        let mut m = GradedMatrix::zero(f, target, source);
        m.set(0, 0, f.from_i64(1));
    }

    #[test]
    fn block_roundtrip() {
        let m = edge_boundary();
        let text = m.render_block();
        let lines: Vec<&str> = text.lines().collect();
        let back = GradedMatrix::parse_block(Rationals, &lines).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn free_transport_is_the_basis_inclusion() {
        let f = Rationals;
        let module = FreeModule::new(vec![d(&[0, 0]), d(&[1, 0]), d(&[0, 1])]);
        let t = free_transport(&f, &module, &d(&[1, 0]), &d(&[1, 1]));
        assert_eq!((t.rows(), t.cols()), (3, 2));
        assert_eq!(*t.get(0, 0), f.one());
        assert_eq!(*t.get(1, 1), f.one());
        assert_eq!(*t.get(2, 0), f.zero());
    }
}
