//! Structured quadrilateral meshes of the two-subdomain rectangle geometry.
//!
//! The fluid rectangle sits on top of the porous rectangle and shares the
//! horizontal interface edge; the interface normal (outward of the fluid) is
//! the constant `(0, -1)`. Cells are axis-aligned rectangles stored with
//! explicit counterclockwise connectivity. Lateral boundaries may be paired
//! periodically; grading compresses cells geometrically toward the interface
//! and the outer walls.

use crate::{Error, Result};

/// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x1 > x0 && y1 > y0) {
            return Err(Error::GeometryMismatch(format!(
                "degenerate rectangle [{x0},{x1}]x[{y0},{y1}]"
            )));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }
}

/// Which subdomain a cell belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Fluid,
    Porous,
}

/// Boundary condition tag attached to an outer edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryTag {
    /// Velocity fixed (value supplied by the scenario).
    DirichletVel,
    /// Natural no-flux Darcy boundary.
    NeumannDarcy,
    /// Darcy pressure fixed (value supplied by the scenario).
    DirichletDarcy,
    /// Tangential lid velocity (ramped in time by the scenario).
    Inflow,
    /// Lateral edge paired with its opposite twin.
    Periodic,
}

/// An outer edge: owning region, cell index within that region, local edge
/// (0 bottom, 1 right, 2 top, 3 left in the counterclockwise ordering).
#[derive(Debug, Clone, Copy)]
pub struct TaggedEdge {
    pub region: Region,
    pub cell: usize,
    pub local_edge: u8,
    pub tag: BoundaryTag,
}

/// One conforming interface segment: fluid cell, porous cell, and the local
/// edges that coincide on the interface (bottom of the fluid cell, top of
/// the porous cell).
#[derive(Debug, Clone, Copy)]
pub struct InterfaceEdge {
    pub cell_f: usize,
    pub cell_p: usize,
    pub local_edge_f: u8,
    pub local_edge_p: u8,
}

/// Tags assigned to the outer boundary, one preset per experiment family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryProfile {
    /// Periodic laterals, velocity clamped on top, pressure clamped at the
    /// bottom (error-equation strip).
    PeriodicStrip,
    /// Dirichlet everywhere away from the interface (manufactured solution).
    AllDirichlet,
    /// As `PeriodicStrip` but with Dirichlet laterals instead of pairing.
    DirichletStrip,
    /// Lid cavity over an aquifer: ramped lid on top, no-slip fluid walls,
    /// impervious porous walls, drained bottom.
    Filtration,
}

/// Conforming two-subdomain quadrilateral mesh.
#[derive(Debug, Clone)]
pub struct CoupledMesh {
    /// Corner-node coordinates shared by both subdomains.
    pub nodes: Vec<[f64; 2]>,
    /// Fluid cells, counterclockwise corner indices.
    pub cells_f: Vec<[usize; 4]>,
    /// Porous cells, counterclockwise corner indices.
    pub cells_p: Vec<[usize; 4]>,
    pub interface_edges: Vec<InterfaceEdge>,
    pub boundary_tags: Vec<TaggedEdge>,
    /// `(left node, right node)` pairs identified by lateral periodicity.
    pub periodic_pairs: Vec<(usize, usize)>,
    /// 1D coordinate lines: `xs` shared by both subdomains, `ys_p` ascending
    /// up to the interface, `ys_f` ascending from the interface.
    pub xs: Vec<f64>,
    pub ys_f: Vec<f64>,
    pub ys_p: Vec<f64>,
    pub periodic: bool,
}

impl CoupledMesh {
    pub fn nx(&self) -> usize {
        self.xs.len() - 1
    }

    pub fn ny_f(&self) -> usize {
        self.ys_f.len() - 1
    }

    pub fn ny_p(&self) -> usize {
        self.ys_p.len() - 1
    }

    /// Interface height (top of the porous region).
    pub fn y_interface(&self) -> f64 {
        self.ys_p[self.ys_p.len() - 1]
    }

    /// Interface length.
    pub fn gamma_len(&self) -> f64 {
        self.xs[self.xs.len() - 1] - self.xs[0]
    }

    /// Average interface spacing, the `h` fed to the frequency analysis.
    pub fn h_avg(&self) -> f64 {
        self.gamma_len() / self.nx() as f64
    }

    /// Plain-text dump: one `x y` line per node, then one
    /// `n0 n1 n2 n3 region` line per cell.
    pub fn dump_plain(&self, out: &mut impl std::io::Write) -> std::io::Result<()> {
        writeln!(out, "# nodes {}", self.nodes.len())?;
        for n in &self.nodes {
            writeln!(out, "{:.17e} {:.17e}", n[0], n[1])?;
        }
        writeln!(out, "# cells {}", self.cells_f.len() + self.cells_p.len())?;
        for c in &self.cells_f {
            writeln!(out, "{} {} {} {} fluid", c[0], c[1], c[2], c[3])?;
        }
        for c in &self.cells_p {
            writeln!(out, "{} {} {} {} porous", c[0], c[1], c[2], c[3])?;
        }
        Ok(())
    }

    /// Retag the outer boundary for a different experiment family.
    pub fn apply_profile(&mut self, profile: BoundaryProfile) {
        let nx = self.nx();
        let ny_f = self.ny_f();
        let ny_p = self.ny_p();
        let mut tags = Vec::new();
        let (lateral_f, lateral_p) = match profile {
            BoundaryProfile::PeriodicStrip => (BoundaryTag::Periodic, BoundaryTag::Periodic),
            BoundaryProfile::AllDirichlet | BoundaryProfile::DirichletStrip => {
                (BoundaryTag::DirichletVel, BoundaryTag::DirichletDarcy)
            }
            BoundaryProfile::Filtration => (BoundaryTag::DirichletVel, BoundaryTag::NeumannDarcy),
        };
        let top = match profile {
            BoundaryProfile::Filtration => BoundaryTag::Inflow,
            _ => BoundaryTag::DirichletVel,
        };
        for j in 0..ny_f {
            tags.push(TaggedEdge {
                region: Region::Fluid,
                cell: j * nx,
                local_edge: 3,
                tag: lateral_f,
            });
            tags.push(TaggedEdge {
                region: Region::Fluid,
                cell: j * nx + nx - 1,
                local_edge: 1,
                tag: lateral_f,
            });
        }
        for i in 0..nx {
            tags.push(TaggedEdge {
                region: Region::Fluid,
                cell: (ny_f - 1) * nx + i,
                local_edge: 2,
                tag: top,
            });
        }
        for j in 0..ny_p {
            tags.push(TaggedEdge {
                region: Region::Porous,
                cell: j * nx,
                local_edge: 3,
                tag: lateral_p,
            });
            tags.push(TaggedEdge {
                region: Region::Porous,
                cell: j * nx + nx - 1,
                local_edge: 1,
                tag: lateral_p,
            });
        }
        for i in 0..nx {
            tags.push(TaggedEdge {
                region: Region::Porous,
                cell: i,
                local_edge: 0,
                tag: BoundaryTag::DirichletDarcy,
            });
        }
        self.boundary_tags = tags;
        self.periodic = profile == BoundaryProfile::PeriodicStrip;
        self.periodic_pairs = if self.periodic {
            lateral_pairs(self)
        } else {
            Vec::new()
        };
    }
}

fn lateral_pairs(mesh: &CoupledMesh) -> Vec<(usize, usize)> {
    // Corner-node grid: porous rows first, then fluid rows above the shared
    // interface row.
    let nx = mesh.nx();
    let rows = mesh.ys_p.len() + mesh.ys_f.len() - 1;
    let mut pairs = Vec::with_capacity(rows);
    for r in 0..rows {
        let left = r * (nx + 1);
        let right = left + nx;
        pairs.push((left, right));
    }
    pairs
}

/// Geometrically graded 1D subdivision of `[a, b]` into `n` cells; the first
/// `layers` cells at each end shrink by `ratio` toward the boundary.
fn graded_line(a: f64, b: f64, n: usize, layers: usize, ratio: f64) -> Vec<f64> {
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let depth = i.min(n - 1 - i).min(layers);
        // Interior cells carry weight ratio^depth, boundary cells weight 1.
        weights.push(ratio.powi(depth as i32));
    }
    let total: f64 = weights.iter().sum();
    let len = b - a;
    let mut xs = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    xs.push(a);
    for w in &weights {
        acc += w;
        xs.push(a + len * acc / total);
    }
    let last = xs.len() - 1;
    xs[last] = b;
    xs
}

fn uniform_line(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect()
}

fn build_from_lines(
    xs: Vec<f64>,
    ys_p: Vec<f64>,
    ys_f: Vec<f64>,
    profile: BoundaryProfile,
) -> CoupledMesh {
    let nx = xs.len() - 1;
    let ny_p = ys_p.len() - 1;
    let ny_f = ys_f.len() - 1;
    // Stacked corner grid: ys_p then ys_f without repeating the interface.
    let mut ys_all = ys_p.clone();
    ys_all.extend_from_slice(&ys_f[1..]);
    let mut nodes = Vec::with_capacity((nx + 1) * ys_all.len());
    for y in &ys_all {
        for x in &xs {
            nodes.push([*x, *y]);
        }
    }
    let node = |i: usize, j: usize| j * (nx + 1) + i;
    let mut cells_p = Vec::with_capacity(nx * ny_p);
    for j in 0..ny_p {
        for i in 0..nx {
            cells_p.push([
                node(i, j),
                node(i + 1, j),
                node(i + 1, j + 1),
                node(i, j + 1),
            ]);
        }
    }
    let mut cells_f = Vec::with_capacity(nx * ny_f);
    for j in 0..ny_f {
        let jj = ny_p + j;
        for i in 0..nx {
            cells_f.push([
                node(i, jj),
                node(i + 1, jj),
                node(i + 1, jj + 1),
                node(i, jj + 1),
            ]);
        }
    }
    let interface_edges = (0..nx)
        .map(|i| InterfaceEdge {
            cell_f: i,
            cell_p: (ny_p - 1) * nx + i,
            local_edge_f: 0,
            local_edge_p: 2,
        })
        .collect();
    let mut mesh = CoupledMesh {
        nodes,
        cells_f,
        cells_p,
        interface_edges,
        boundary_tags: Vec::new(),
        periodic_pairs: Vec::new(),
        xs,
        ys_f,
        ys_p,
        periodic: false,
    };
    mesh.apply_profile(profile);
    mesh
}

fn check_alignment(domain_f: &Rect, domain_p: &Rect) -> Result<()> {
    let tol = 1e-12 * (domain_f.width() + domain_f.height()).max(1.0);
    if (domain_f.y0 - domain_p.y1).abs() > tol {
        return Err(Error::GeometryMismatch(format!(
            "fluid bottom {} does not meet porous top {}",
            domain_f.y0, domain_p.y1
        )));
    }
    if (domain_f.x0 - domain_p.x0).abs() > tol || (domain_f.x1 - domain_p.x1).abs() > tol {
        return Err(Error::GeometryMismatch(
            "subdomains must share the full horizontal extent".into(),
        ));
    }
    Ok(())
}

/// Uniform structured mesh of the stacked rectangles.
pub fn build_uniform(
    domain_f: Rect,
    domain_p: Rect,
    nx: usize,
    ny_f: usize,
    ny_p: usize,
    periodic: bool,
) -> Result<CoupledMesh> {
    check_alignment(&domain_f, &domain_p)?;
    if nx == 0 || ny_f == 0 || ny_p == 0 {
        return Err(Error::InvalidInput("cell counts must be at least 1".into()));
    }
    let profile = if periodic {
        BoundaryProfile::PeriodicStrip
    } else {
        BoundaryProfile::AllDirichlet
    };
    Ok(build_from_lines(
        uniform_line(domain_f.x0, domain_f.x1, nx),
        uniform_line(domain_p.y0, domain_p.y1, ny_p),
        uniform_line(domain_f.y0, domain_f.y1, ny_f),
        profile,
    ))
}

/// Grading parameters: `boundary_layers` cells shrink geometrically by
/// `ratio` toward the interface and the outer walls.
#[derive(Debug, Clone, Copy)]
pub struct GradingSpec {
    pub boundary_layers: usize,
    pub ratio: f64,
}

impl GradingSpec {
    pub fn new(boundary_layers: usize, ratio: f64) -> Result<Self> {
        if !(ratio > 1.0 && ratio <= 4.0) {
            return Err(Error::InvalidInput(format!(
                "grading ratio must lie in (1,4]: {ratio}"
            )));
        }
        Ok(Self {
            boundary_layers,
            ratio,
        })
    }
}

/// Graded mesh for the filtration experiment; `base_n` cells along the
/// interface, vertical counts chosen for near-square interior cells.
pub fn build_graded(
    domain_f: Rect,
    domain_p: Rect,
    base_n: usize,
    spec: GradingSpec,
) -> Result<CoupledMesh> {
    check_alignment(&domain_f, &domain_p)?;
    if base_n < 2 * spec.boundary_layers + 1 {
        return Err(Error::InvalidInput(format!(
            "base_n = {base_n} too small for {} boundary layers",
            spec.boundary_layers
        )));
    }
    let per_len = base_n as f64 / domain_f.width();
    let ny_f = ((domain_f.height() * per_len).round() as usize).max(2 * spec.boundary_layers + 1);
    let ny_p = ((domain_p.height() * per_len).round() as usize).max(2 * spec.boundary_layers + 1);
    Ok(build_from_lines(
        graded_line(
            domain_f.x0,
            domain_f.x1,
            base_n,
            spec.boundary_layers,
            spec.ratio,
        ),
        graded_line(
            domain_p.y0,
            domain_p.y1,
            ny_p,
            spec.boundary_layers,
            spec.ratio,
        ),
        graded_line(
            domain_f.y0,
            domain_f.y1,
            ny_f,
            spec.boundary_layers,
            spec.ratio,
        ),
        BoundaryProfile::Filtration,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell_area(mesh: &CoupledMesh, cell: &[usize; 4]) -> f64 {
        // Shoelace formula; positive for counterclockwise orientation.
        let mut a = 0.0;
        for i in 0..4 {
            let p = mesh.nodes[cell[i]];
            let q = mesh.nodes[cell[(i + 1) % 4]];
            a += p[0] * q[1] - q[0] * p[1];
        }
        0.5 * a
    }

    #[test]
    fn uniform_counts_and_areas() {
        let f = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let p = Rect::new(0.0, 1.0, -1.0, 0.0).unwrap();
        let mesh = build_uniform(f, p, 10, 10, 10, false).unwrap();
        assert_eq!(mesh.cells_f.len() + mesh.cells_p.len(), 200);
        assert_eq!(mesh.interface_edges.len(), 10);
        let area: f64 = mesh
            .cells_f
            .iter()
            .chain(mesh.cells_p.iter())
            .map(|c| cell_area(&mesh, c))
            .sum();
        assert!((area - 2.0).abs() < 1e-12);
        for c in mesh.cells_f.iter().chain(mesh.cells_p.iter()) {
            assert!(cell_area(&mesh, c) > 0.0, "cell not counterclockwise");
        }
        // Interface edges sum to |Gamma| and coincide node-by-node.
        let mut len = 0.0;
        for e in &mesh.interface_edges {
            let cf = mesh.cells_f[e.cell_f];
            let cp = mesh.cells_p[e.cell_p];
            // Bottom edge of the fluid cell: corners 0-1; top edge of the
            // porous cell: corners 3-2.
            assert_eq!(cf[0], cp[3]);
            assert_eq!(cf[1], cp[2]);
            len += mesh.nodes[cf[1]][0] - mesh.nodes[cf[0]][0];
        }
        assert!((len - mesh.gamma_len()).abs() < 1e-12);
    }

    #[test]
    fn refinement_doubles_interface_edges() {
        // h_j = 0.1 * 2^{1-j}: nx doubles per level.
        let f = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let p = Rect::new(0.0, 1.0, -1.0, 0.0).unwrap();
        let mut prev = 0;
        for j in 1..=4 {
            let h = 0.1 * 2f64.powi(1 - j);
            let n = (1.0 / h).round() as usize;
            let mesh = build_uniform(f, p, n, n, n, true).unwrap();
            assert_eq!(mesh.interface_edges.len(), n);
            if prev > 0 {
                assert_eq!(n, 2 * prev);
            }
            prev = n;
        }
    }

    #[test]
    fn periodic_pairs_cover_left_boundary() {
        let f = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let p = Rect::new(0.0, 1.0, -1.0, 0.0).unwrap();
        let mesh = build_uniform(f, p, 8, 5, 7, true).unwrap();
        // One pair per corner row.
        assert_eq!(mesh.periodic_pairs.len(), 5 + 7 + 1);
        for &(l, r) in &mesh.periodic_pairs {
            assert_ne!(l, r);
            assert!((mesh.nodes[l][1] - mesh.nodes[r][1]).abs() < 1e-12);
            assert!((mesh.nodes[l][0] - 0.0).abs() < 1e-12);
            assert!((mesh.nodes[r][0] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn geometry_mismatch_is_rejected() {
        let f = Rect::new(0.0, 1.0, 0.5, 1.0).unwrap();
        let p = Rect::new(0.0, 1.0, -1.0, 0.0).unwrap();
        assert!(build_uniform(f, p, 4, 4, 4, false).is_err());
        let p2 = Rect::new(0.1, 1.0, 0.0, 0.5).unwrap();
        assert!(build_uniform(f, p2, 4, 4, 4, false).is_err());
    }

    #[test]
    fn graded_interface_unknown_counts() {
        // Quadratic traces carry 2(2n+1) interface velocity unknowns; the
        // filtration levels 21/42/84 match the reported 86/170/338.
        let f = Rect::new(0.0, 1.0, 0.4, 1.0).unwrap();
        let p = Rect::new(0.0, 1.0, 0.0, 0.4).unwrap();
        for (n, unknowns) in [(21usize, 86usize), (42, 170), (84, 338)] {
            let mesh = build_graded(f, p, n, GradingSpec::new(3, 1.6).unwrap()).unwrap();
            assert_eq!(2 * (2 * mesh.nx() + 1), unknowns);
            assert!((mesh.h_avg() - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn grading_degenerates_to_uniform() {
        let xs = graded_line(0.0, 1.0, 10, 3, 1.0 + 1e-12);
        for (i, x) in xs.iter().enumerate() {
            assert!((x - i as f64 / 10.0).abs() < 1e-9);
        }
        // Total area preserved under grading.
        let f = Rect::new(0.0, 1.0, 0.4, 1.0).unwrap();
        let p = Rect::new(0.0, 1.0, 0.0, 0.4).unwrap();
        let mesh = build_graded(f, p, 21, GradingSpec::new(3, 1.6).unwrap()).unwrap();
        let area: f64 = mesh
            .cells_f
            .iter()
            .chain(mesh.cells_p.iter())
            .map(|c| cell_area(&mesh, c))
            .sum();
        assert!((area - 1.0).abs() < 1e-12, "area = {area}");
        // Cells shrink toward the interface.
        let first = mesh.ys_f[1] - mesh.ys_f[0];
        let mid = mesh.ys_f[mesh.ny_f() / 2 + 1] - mesh.ys_f[mesh.ny_f() / 2];
        assert!(first < mid);
    }

    #[test]
    fn dump_round_trips_node_count() {
        let f = Rect::new(0.0, 1.0, 0.0, 1.0).unwrap();
        let p = Rect::new(0.0, 1.0, -1.0, 0.0).unwrap();
        let mesh = build_uniform(f, p, 3, 2, 2, false).unwrap();
        let mut buf = Vec::new();
        mesh.dump_plain(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let node_lines = text
            .lines()
            .filter(|l| !l.starts_with('#') && l.split_whitespace().count() == 2);
        assert_eq!(node_lines.count(), mesh.nodes.len());
    }
}
