use crate::error::{Error, Result};
use std::collections::VecDeque;
use std::fmt::Write as _;

/// Largest graph the exact arm accepts.
pub const MAX_EXACT_VERTICES: usize = 400;

/// An undirected multigraph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Parameter("graph needs at least one vertex".into()));
        }
        for &(u, v) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Parameter(format!(
                    "edge ({u}, {v}) out of range for {vertex_count} vertices"
                )));
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
        }
        Ok(Self { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Combinatorial Laplacian; parallel edges add up.
    pub fn laplacian(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count;
        let mut l = vec![vec![0i64; n]; n];
        for &(u, v) in &self.edges {
            l[u][u] += 1;
            l[v][v] += 1;
            l[u][v] -= 1;
            l[v][u] -= 1;
        }
        l
    }

    /// Errors with the component of vertex 0 when the graph is disconnected.
    pub fn check_connected(&self) -> Result<()> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            return Ok(());
        }
        Err(Error::Disconnected {
            vertex_count: self.vertex_count,
            reachable: (0..self.vertex_count).filter(|&v| seen[v]).collect(),
        })
    }

    /// `p <vertex_count>` followed by one `e u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("p {}\n", self.vertex_count);
        for (u, v) in &self.edges {
            writeln!(s, "e {u} {v}").unwrap();
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input".into(),
        })?;
        let vertex_count = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["p", n] => parse_field(n, 1)?,
            _ => {
                return Err(Error::Parse { line: 1, message: format!("expected 'p <count>', got '{header}'") })
            }
        };
        let mut edges = Vec::new();
        for (i, line) in lines {
            let line_no = i + 1;
            match line.split_whitespace().collect::<Vec<_>>()[..] {
                ["e", u, v] => edges.push((parse_field(u, line_no)?, parse_field(v, line_no)?)),
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected 'e <u> <v>', got '{line}'"),
                    })
                }
            }
        }
        Self::new(vertex_count, edges)
    }
}

fn parse_field(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse { line, message: format!("invalid integer '{s}'") })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Grid,
    Torus,
    Qad,
}

impl std::str::FromStr for GraphKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grid" => Ok(Self::Grid),
            "torus" => Ok(Self::Torus),
            "qad" => Ok(Self::Qad),
            other => Err(Error::Parameter(format!("unknown graph kind '{other}'"))),
        }
    }
}

/// Vertex rule for the quartered Aztec diamond of order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QadRule {
    /// `k₁ + k₂ ≤ n − 1`; agrees with the double-product formula.
    #[default]
    Corrected,
    /// `k₁ + k₂ ≤ n`, kept for comparison.
    Inclusive,
}

/// Grid sides, torus half-sides, or the single QAD order.
pub fn build_graph(kind: GraphKind, params: &[usize]) -> Result<GraphSpec> {
    match kind {
        GraphKind::Grid => grid_graph(params),
        GraphKind::Torus => torus_graph(params),
        GraphKind::Qad => match params {
            [n] => qad_graph(*n, QadRule::Corrected),
            _ => Err(Error::Parameter("qad takes exactly one order".into())),
        },
    }
}

fn product_graph(lengths: &[usize], wrap: bool) -> Result<GraphSpec> {
    if lengths.is_empty() || lengths.contains(&0) {
        return Err(Error::Parameter("sides must be a nonempty list of positive integers".into()));
    }
    let count = lengths
        .iter()
        .try_fold(1usize, |acc, &n| acc.checked_mul(n))
        .filter(|&c| c <= MAX_EXACT_VERTICES)
        .ok_or_else(|| Error::Size(format!("exact arm is limited to {MAX_EXACT_VERTICES} vertices")))?;
    let mut strides = vec![1; lengths.len()];
    for i in (0..lengths.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * lengths[i + 1];
    }
    let mut edges = Vec::new();
    for v in 0..count {
        for (&len, &stride) in lengths.iter().zip(&strides) {
            let k = v / stride % len;
            if k + 1 < len {
                edges.push((v, v + stride));
            } else if wrap {
                edges.push((v, v + stride - len * stride));
            }
        }
    }
    GraphSpec::new(count, edges)
}

/// Cartesian product of paths, vertices in lexicographic order.
pub fn grid_graph(sides: &[usize]) -> Result<GraphSpec> {
    product_graph(sides, false)
}

/// `T(2n₁,…,2n_d)`: a cycle of length `2n_i` per axis, doubled when the
/// length is 2.
pub fn torus_graph(half_sides: &[usize]) -> Result<GraphSpec> {
    let lengths: Vec<usize> = half_sides.iter().map(|&n| 2 * n).collect();
    if half_sides.contains(&0) {
        return Err(Error::Parameter("torus half-sides must be >= 1".into()));
    }
    product_graph(&lengths, true)
}

/// Induced subgraph of `Z²` on the staircase of order `n`, vertices listed
/// by anti-diagonal, `k₁` descending within each.
pub fn qad_graph(n: usize, rule: QadRule) -> Result<GraphSpec> {
    if n == 0 {
        return Err(Error::Parameter("QAD order must be >= 1".into()));
    }
    let max_sum = match rule {
        QadRule::Corrected => n - 1,
        QadRule::Inclusive => n,
    };
    let count = (max_sum + 1) * (max_sum + 2) / 2;
    if count > MAX_EXACT_VERTICES {
        return Err(Error::Size(format!("QAD of order {n} exceeds the exact arm")));
    }
    let mut coords = Vec::with_capacity(count);
    for s in 0..=max_sum {
        for k1 in (0..=s).rev() {
            coords.push((k1, s - k1));
        }
    }
    let index = |k1: usize, k2: usize| {
        let s = k1 + k2;
        s * (s + 1) / 2 + (s - k1)
    };
    let mut edges = Vec::new();
    for &(k1, k2) in &coords {
        if k1 + k2 < max_sum {
            edges.push((index(k1, k2), index(k1 + 1, k2)));
            edges.push((index(k1, k2), index(k1, k2 + 1)));
        }
    }
    GraphSpec::new(count, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let c4 = grid_graph(&[2, 2]).unwrap();
        assert_eq!(c4.vertex_count(), 4);
        assert_eq!(c4.edges().len(), 4);
        let t = torus_graph(&[1, 1]).unwrap();
        assert_eq!((t.vertex_count(), t.edges().len()), (4, 8));
        let q = qad_graph(3, QadRule::Corrected).unwrap();
        assert_eq!(q.vertex_count(), 6);
        assert_eq!(q.edges().len(), 6);
        assert_eq!(qad_graph(2, QadRule::Inclusive).unwrap().edges().len(), 6);
    }

    #[test]
    fn edge_list_round_trip() {
        for g in [grid_graph(&[3, 2]).unwrap(), torus_graph(&[1, 2]).unwrap(), qad_graph(5, QadRule::Corrected).unwrap()] {
            let text = g.to_edge_list();
            let back = GraphSpec::from_edge_list(&text).unwrap();
            assert_eq!(back, g);
            assert_eq!(back.to_edge_list(), text);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match GraphSpec::from_edge_list("p 3\ne 0 1\ne 1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(GraphSpec::from_edge_list("").is_err());
        assert!(GraphSpec::from_edge_list("p 2\ne 0 2\n").is_err());
    }

    #[test]
    fn connectivity_witness() {
        let g = GraphSpec::new(4, vec![(0, 1), (2, 3)]).unwrap();
        match g.check_connected() {
            Err(Error::Disconnected { reachable, .. }) => assert_eq!(reachable, vec![0, 1]),
            other => panic!("{other:?}"),
        }
        assert!(grid_graph(&[3, 3]).unwrap().check_connected().is_ok());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(grid_graph(&[]).is_err());
        assert!(grid_graph(&[0, 2]).is_err());
        assert!(grid_graph(&[21, 20]).is_err());
        assert!(qad_graph(0, QadRule::Corrected).is_err());
        assert!(build_graph(GraphKind::Qad, &[2, 3]).is_err());
    }
}
