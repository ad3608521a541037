//! Shared inline fixtures for unit tests.

/// Two vertices joined by an edge that enters along both axes.
pub(crate) const EDGE: &str = "\
r 2
simplex 0 : 0 @ (0,0)
simplex 1 : 1 @ (0,0)
simplex 2 : 0 1 @ (1,0) (0,1)
";

/// A filled triangle with multicritical vertices and edges.
pub(crate) const TRIANGLE: &str = "\
r 2
simplex 0 : 0 @ (0,0)
simplex 1 : 1 @ (1,1) (3,0) (0,2)
simplex 2 : 2 @ (0,1) (2,0)
simplex 3 : 0 2 @ (2,0)
simplex 4 : 0 1 @ (0,2) (2,1)
simplex 5 : 1 2 @ (1,2) (3,0)
simplex 6 : 0 1 2 @ (3,2)
";

/// A one-critical labelled triangle whose top label strictly exceeds the
/// join of its facet labels.
pub(crate) const NONLCM: &str = "\
r 2
simplex 0 : 0 @ (0,0)
simplex 1 : 1 @ (0,0)
simplex 2 : 2 @ (0,0)
simplex 3 : 0 1 @ (1,0)
simplex 4 : 0 2 @ (0,1)
simplex 5 : 1 2 @ (1,1)
simplex 6 : 0 1 2 @ (2,2)
";

/// Vertex values and complex for the lower-star filtration of an edge.
pub(crate) const STAR_EDGE: &str = "\
r 2
value 0 @ (1,0)
value 1 @ (0,1)
simplex 0 : 0
simplex 1 : 1
simplex 2 : 0 1
";
