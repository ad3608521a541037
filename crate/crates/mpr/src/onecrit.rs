//! One-critical multifiltrations as labelled simplicial complexes.
//!
//! When every simplex enters at a single critical grade, its label, the
//! filtration can be read as a multigraded cellular complex: one free
//! generator per simplex placed at its label, with the simplicial boundary
//! as differential. This module builds that complex, compares it with the
//! general chain-module construction, and measures its gradewise homology,
//! the acyclicity defect.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::chains;
use crate::degree::Grid;
use crate::field::Field;
use crate::filtration::{
    parse_simplex_decl, FiltrationError, MultiFiltration,
};
use crate::graded::{FreeModule, GradedMatrix};
use crate::grid::{GradewiseComplex, GridModule};
use crate::resolution::FreeChainComplex;

/// A validated one-critical multifiltration: every simplex carries exactly
/// one critical grade, its label.
#[derive(Clone, Debug)]
pub struct LabelledComplex {
    filtration: MultiFiltration,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelledComplexError {
    #[error(transparent)]
    Filtration(#[from] FiltrationError),
    #[error("simplex {id} has {count} critical grades; a labelled complex needs exactly one")]
    NotOneCritical { id: u32, count: usize },
}

impl LabelledComplex {
    pub fn filtration(&self) -> &MultiFiltration {
        &self.filtration
    }

    /// The label of the simplex at position `pos`.
    pub fn label(&self, pos: usize) -> &crate::degree::Multidegree {
        &self.filtration.simplices()[pos].grades[0]
    }
}

/// Wraps a filtration as a labelled complex, rejecting the first simplex
/// with more than one critical grade.
pub fn labelled_complex(
    f: &MultiFiltration,
) -> Result<LabelledComplex, LabelledComplexError> {
    for fs in f.simplices() {
        if fs.grades.len() != 1 {
            return Err(LabelledComplexError::NotOneCritical {
                id: fs.simplex.id,
                count: fs.grades.len(),
            });
        }
    }
    Ok(LabelledComplex { filtration: f.clone() })
}

/// Parses the `.lsc` format: the `.mfil` syntax restricted to exactly one
/// grade per simplex, taken verbatim as the label.
pub fn parse_lsc(text: &str) -> Result<LabelledComplex, LabelledComplexError> {
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
                let val = tokens.next().ok_or(FiltrationError::Syntax {
                    line,
                    msg: "expected `r <integer>`".to_string(),
                })?;
                let val: usize = val.parse().map_err(|_| FiltrationError::Syntax {
                    line,
                    msg: format!("bad value for r: `{val}`"),
                })?;
                r = Some(val);
            }
            Some("simplex") => {
                let (simplex, grades) = parse_simplex_decl(content, line)?;
                if grades.len() != 1 {
                    return Err(LabelledComplexError::NotOneCritical {
                        id: simplex.id,
                        count: grades.len(),
                    });
                }
                simplices.push((simplex, grades));
            }
            Some(other) => {
                return Err(FiltrationError::Syntax {
                    line,
                    msg: format!("unknown directive `{other}`"),
                }
                .into());
            }
            None => unreachable!(),
        }
    }
    let r = r.ok_or(FiltrationError::MissingHeader)?;
    let filtration = MultiFiltration::new(r, simplices)?;
    labelled_complex(&filtration)
}

/// The multigraded cellular chain complex: one generator per simplex at
/// its label, with the signed simplicial boundary as differential. Its
/// graded piece at `v` is the simplicial chain complex of the slice at
/// `v`, so consecutive differentials compose to zero formally.
pub fn cellular_chain_complex<F: Field>(
    x: &LabelledComplex,
    field: F,
) -> FreeChainComplex<F> {
    let f = x.filtration();
    let Some(top) = f.dim() else {
        return FreeChainComplex::empty(field);
    };
    let positions: Vec<Vec<usize>> = (0..=top).map(|n| f.simplices_of_dim(n)).collect();
    let terms: Vec<FreeModule> = positions
        .iter()
        .map(|ps| FreeModule::new(ps.iter().map(|&p| x.label(p).clone()).collect()))
        .collect();
    let mut diffs = Vec::new();
    for n in 1..=top {
        let row_of: BTreeMap<usize, usize> =
            positions[n - 1].iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut d = GradedMatrix::zero(field.clone(), terms[n - 1].clone(), terms[n].clone());
        for (col, &p) in positions[n].iter().enumerate() {
            let simplex = &f.simplices()[p].simplex;
            for i in 0..simplex.vertices.len() {
                let facet = simplex.facet(i);
                let fpos = f
                    .position_by_vertices(&facet)
                    .expect("validated filtration is closed under faces");
                let sign =
                    if i % 2 == 0 { field.one() } else { field.neg(&field.one()) };
                d.add_to(row_of[&fpos], col, &sign);
            }
        }
        diffs.push(d);
    }
    FreeChainComplex::new(field, terms, diffs)
}

/// Whether the cellular chain complex of a one-critical filtration agrees
/// with the fundamental-element chain complex, term by term and
/// differential by differential.
pub fn check_equality_with_c<F: Field>(
    f: &MultiFiltration,
    field: F,
) -> Result<bool, LabelledComplexError> {
    let x = labelled_complex(f)?;
    let cellular = cellular_chain_complex(&x, field.clone());
    let general = chains::chain_complex(f, field);
    Ok(cellular == general)
}

/// The gradewise homology of the cellular chain complex over the grid
/// spanned by the labels. All modules vanish above level zero exactly when
/// the labelled complex is acyclic grade by grade.
pub fn acyclicity_defect<F: Field>(x: &LabelledComplex, field: F) -> Vec<GridModule<F>> {
    let c = cellular_chain_complex(x, field.clone());
    let grid = Grid::new(x.filtration().grid_bound());
    GradewiseComplex::from_free_data(field, grid, c.terms(), c.diffs()).homology_modules()
}
