//! The star instance family: a graph lifts to the cubic function
//! `sum_{(i,j) in E} x_0 x_i x_j`, whose optimal pair-substitution
//! quadratizations correspond to minimum vertex covers.

use pbq_core::{rat, Pbf, VarSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: expected two vertex numbers")]
    BadLine { line: usize },

    #[error("line {line}: vertices are numbered from 1")]
    ZeroVertex { line: usize },

    #[error("line {line}: self-loop {v}-{v} is not a graph edge")]
    SelfLoop { line: usize, v: u32 },
}

/// Reads one edge per line (`i j`, whitespace separated); `#` comments and
/// blank lines are skipped. The vertex count is the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<(Vec<(u32, u32)>, usize), EdgeListError> {
    let mut edges = Vec::new();
    let mut n = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(EdgeListError::BadLine { line });
        }
        let parse = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| EdgeListError::BadLine { line })
        };
        let (i, j) = (parse(tokens[0])?, parse(tokens[1])?);
        if i == 0 || j == 0 {
            return Err(EdgeListError::ZeroVertex { line });
        }
        if i == j {
            return Err(EdgeListError::SelfLoop { line, v: i });
        }
        n = n.max(i as usize).max(j as usize);
        edges.push((i, j));
    }
    Ok((edges, n))
}

/// `sum_{(i,j) in E} x_0 x_i x_j` over vertices `1..=n`, with the center
/// `x_0` stored as variable `n + 1`.
pub fn star_family(edges: &[(u32, u32)], n: usize) -> Pbf {
    let center = n as u32 + 1;
    let terms = edges.iter().map(|&(i, j)| {
        assert!(
            i >= 1 && j >= 1 && i != j,
            "edges must join two distinct vertices"
        );
        assert!(
            i as usize <= n && j as usize <= n,
            "edge endpoint above vertex count"
        );
        (VarSet::from_indices([i, j, center]), rat(1))
    });
    Pbf::from_terms(n + 1, terms).expect("terms fit the extended universe")
}
