//! Shared helpers for the integration suites: fixture paths and seeded
//! generators for random filtrations, lower-star data, and monomial ideals.

// Each integration test binary compiles its own copy and uses a subset.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::Rng;

use mpr::chains::MonomialIdeal;
use mpr::degree::Multidegree;
use mpr::filtration::{lower_star, MultiFiltration, Simplex};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

pub fn load_fixture(name: &str) -> MultiFiltration {
    MultiFiltration::parse(&fixture_text(name)).unwrap()
}

/// A random simplicial complex on up to six vertices, closed under faces by
/// construction: higher simplices are only attached where every facet exists.
fn random_complex(rng: &mut impl Rng, max_simplices: usize) -> Vec<Simplex> {
    let nverts = rng.gen_range(2..=7u32);
    let has = |list: &[Vec<u32>], want: &[u32]| list.iter().any(|s| s == want);
    let mut vertices: Vec<Vec<u32>> = (0..nverts).map(|v| vec![v]).collect();
    let mut edges = Vec::new();
    for a in 0..nverts {
        for b in (a + 1)..nverts {
            if rng.gen_bool(0.7) {
                edges.push(vec![a, b]);
            }
        }
    }
    let mut triangles = Vec::new();
    for a in 0..nverts {
        for b in (a + 1)..nverts {
            for c in (b + 1)..nverts {
                let closed =
                    has(&edges, &[a, b]) && has(&edges, &[a, c]) && has(&edges, &[b, c]);
                if closed && rng.gen_bool(0.7) {
                    triangles.push(vec![a, b, c]);
                }
            }
        }
    }
    let mut tetrahedra = Vec::new();
    for a in 0..nverts {
        for b in (a + 1)..nverts {
            for c in (b + 1)..nverts {
                for d in (c + 1)..nverts {
                    let closed = has(&triangles, &[a, b, c])
                        && has(&triangles, &[a, b, d])
                        && has(&triangles, &[a, c, d])
                        && has(&triangles, &[b, c, d]);
                    if closed && rng.gen_bool(0.6) {
                        tetrahedra.push(vec![a, b, c, d]);
                    }
                }
            }
        }
    }
    // Trim from the top dimension down so face closure survives the cap.
    loop {
        let total = vertices.len() + edges.len() + triangles.len() + tetrahedra.len();
        if total <= max_simplices {
            break;
        }
        if !tetrahedra.is_empty() {
            tetrahedra.pop();
        } else if !triangles.is_empty() {
            triangles.pop();
        } else if !edges.is_empty() {
            edges.pop();
        } else {
            vertices.pop();
        }
    }
    let mut all = vertices;
    all.extend(edges);
    all.extend(triangles);
    all.extend(tetrahedra);
    all.into_iter()
        .enumerate()
        .map(|(i, vertices)| Simplex { id: i as u32, vertices })
        .collect()
}

fn low_biased(rng: &mut impl Rng, max: u32) -> u32 {
    rng.gen_range(0..=max).min(rng.gen_range(0..=max))
}

/// Keeps the minimal elements of a list of grades, deduplicated.
fn antichain(mut grades: Vec<Multidegree>) -> Vec<Multidegree> {
    grades.sort_by(|a, b| a.coords().cmp(b.coords()));
    grades.dedup();
    grades
        .iter()
        .filter(|g| !grades.iter().any(|h| h != *g && h.leq(g)))
        .cloned()
        .collect()
}

fn facets(vertices: &[u32]) -> Vec<Vec<u32>> {
    (0..vertices.len())
        .map(|i| {
            let mut f = vertices.to_vec();
            f.remove(i);
            f
        })
        .collect()
}

/// A random multifiltration: grades are assigned bottom-up, each built on
/// the join of one critical grade per facet so monotonicity holds, then
/// reduced to an antichain.
pub fn random_filtration(
    rng: &mut impl Rng,
    r: usize,
    max_simplices: usize,
    max_grade: u32,
) -> MultiFiltration {
    let complex = random_complex(rng, max_simplices);
    let mut by_vertices: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut grades_by_pos: Vec<Vec<Multidegree>> = Vec::with_capacity(complex.len());
    for (pos, s) in complex.iter().enumerate() {
        by_vertices.insert(s.vertices.clone(), pos);
        let want = match rng.gen_range(0..6u32) {
            0..=2 => 1,
            3..=4 => 2,
            _ => 3,
        };
        // Greedy draws keep only mutually incomparable grades, so multiple
        // draws yield genuinely multicritical simplices when the grid allows.
        let mut chosen: Vec<Multidegree> = Vec::new();
        for _ in 0..(4 * want) {
            if chosen.len() == want {
                break;
            }
            let grade = if s.vertices.len() == 1 {
                Multidegree::new((0..r).map(|_| low_biased(rng, max_grade)).collect())
            } else {
                let mut base = Multidegree::zero(r);
                for facet in facets(&s.vertices) {
                    let fg = &grades_by_pos[by_vertices[&facet]];
                    base = base.join(&fg[rng.gen_range(0..fg.len())]);
                }
                let coords = (0..r)
                    .map(|i| (base.get(i) + rng.gen_range(0..=1)).min(max_grade).max(base.get(i)))
                    .collect();
                Multidegree::new(coords)
            };
            if chosen.iter().all(|h| !h.leq(&grade) && !grade.leq(h)) {
                chosen.push(grade);
            }
        }
        grades_by_pos.push(antichain(chosen));
    }
    let simplices: Vec<(Simplex, Vec<Multidegree>)> =
        complex.into_iter().zip(grades_by_pos).collect();
    MultiFiltration::new(r, simplices).expect("the generator keeps the filtration invariants")
}

/// A random lower-star filtration: random complex, random vertex values.
pub fn random_lower_star(
    rng: &mut impl Rng,
    r: usize,
    max_simplices: usize,
    max_grade: u32,
) -> MultiFiltration {
    let complex = random_complex(rng, max_simplices);
    let mut values = BTreeMap::new();
    for s in &complex {
        if s.vertices.len() == 1 {
            let coords = (0..r).map(|_| rng.gen_range(0..=max_grade)).collect();
            values.insert(s.vertices[0], Multidegree::new(coords));
        }
    }
    lower_star(r, &complex, &values).expect("every vertex carries a value")
}

/// A random monomial ideal; the generators need not form an antichain.
pub fn random_ideal(rng: &mut impl Rng, r: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let m = rng.gen_range(0..=max_gens);
    let generators = (0..m)
        .map(|_| Multidegree::new((0..r).map(|_| rng.gen_range(0..=max_exp)).collect()))
        .collect();
    MonomialIdeal { generators }
}
