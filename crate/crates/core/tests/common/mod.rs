//! Independent reference implementations used as test oracles. None of this
//! calls into the library's algebra or search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use dihomotopy::Digraph;
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn digraph(vertices: &[&str], edges: &[(&str, &str)]) -> Arc<Digraph> {
    Arc::new(Digraph::new(vertices.iter().copied(), edges.iter().copied()).unwrap())
}

pub fn four_cycle() -> Arc<Digraph> {
    digraph(&["0", "1", "2", "3"], &[("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")])
}

pub fn transitive_triangle() -> Arc<Digraph> {
    digraph(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")])
}

pub fn path_abc() -> Arc<Digraph> {
    digraph(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
}

/// Rank and determinant by fraction-free (Bareiss) elimination.
pub fn bareiss(rows: &[Vec<BigInt>]) -> (usize, BigInt) {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut sign = BigInt::one();
    for col in 0..n_cols {
        let Some(p) = (rank..n_rows).find(|&r| !m[r][col].is_zero()) else { continue };
        if p != rank {
            m.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..n_rows {
            for c in col + 1..n_cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    let det = if n_rows == n_cols && rank == n_rows {
        if n_rows == 0 { BigInt::one() } else { sign * &m[n_rows - 1][n_cols - 1] }
    } else {
        BigInt::zero()
    };
    (rank, det)
}

pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    bareiss(rows).0
}

/// Betti numbers of path homology over the rationals, computed from ranks
/// of boundary matrices on allowed paths:
/// `dim Ω_p = |A_p| − rank N_p` and `rank ∂|Ω_p = rank ∂_p − rank N_p`,
/// where `N_p` is the block of `∂_p` landing on non-allowed paths.
pub fn rational_betti(g: &Digraph, p_max: usize) -> Vec<usize> {
    let edges: BTreeSet<(&str, &str)> = g.edge_labels().collect();
    let mut allowed: Vec<Vec<Vec<&str>>> = vec![g.labels().iter().map(|v| vec![v.as_str()]).collect()];
    for p in 1..=p_max + 1 {
        let mut next = Vec::new();
        for path in &allowed[p - 1] {
            for &(a, b) in &edges {
                if a == *path.last().unwrap() {
                    let mut longer = path.clone();
                    longer.push(b);
                    next.push(longer);
                }
            }
        }
        allowed.push(next);
    }
    let mut omega_dim = Vec::new();
    let mut boundary_rank = vec![0usize];
    for p in 0..=p_max + 1 {
        if p == 0 {
            omega_dim.push(allowed[0].len());
            continue;
        }
        let lower: BTreeSet<&Vec<&str>> = allowed[p - 1].iter().collect();
        let mut faces: BTreeMap<Vec<&str>, usize> = BTreeMap::new();
        let mut columns: Vec<BTreeMap<usize, i64>> = Vec::new();
        for path in &allowed[p] {
            let mut col = BTreeMap::new();
            for i in 0..path.len() {
                let mut face = path.clone();
                face.remove(i);
                if face.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let n = faces.len();
                let idx = *faces.entry(face).or_insert(n);
                *col.entry(idx).or_insert(0) += if i % 2 == 0 { 1 } else { -1 };
            }
            columns.push(col);
        }
        let to_rows = |keep: &dyn Fn(&Vec<&str>) -> bool| -> Vec<Vec<BigInt>> {
            faces
                .iter()
                .filter(|(f, _)| keep(f))
                .map(|(_, &idx)| columns.iter().map(|c| BigInt::from(*c.get(&idx).unwrap_or(&0))).collect())
                .collect()
        };
        let non_allowed = rank(&to_rows(&|f| !lower.contains(f)));
        let full = rank(&to_rows(&|_| true));
        omega_dim.push(allowed[p].len() - non_allowed);
        boundary_rank.push(full - non_allowed);
    }
    (0..=p_max).map(|p| omega_dim[p] - boundary_rank[p] - boundary_rank[p + 1]).collect()
}

/// All digraph maps `g → h` by brute force over every vertex function.
pub fn all_maps(g: &Digraph, h: &Digraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let m = h.vertex_count();
    let total = m.checked_pow(n as u32).unwrap();
    let mut out = Vec::new();
    for code in 0..total {
        let mut a = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            a.push(c % m.max(1));
            c /= m.max(1);
        }
        if g.edges().all(|(x, y)| a[x] == a[y] || h.has_edge(a[x], a[y])) {
            out.push(a);
        }
    }
    if n == 0 {
        out = vec![Vec::new()];
    }
    out
}

/// Connected components of the one-step graph on all maps `g → h`.
pub fn homotopy_components(g: &Digraph, h: &Digraph) -> (Vec<Vec<usize>>, Vec<usize>) {
    let maps = all_maps(g, h);
    let mut parent: Vec<usize> = (0..maps.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let forward = |a: &[usize], b: &[usize]| a.iter().zip(b).all(|(&x, &y)| x == y || h.has_edge(x, y));
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            if forward(&maps[i], &maps[j]) || forward(&maps[j], &maps[i]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let roots = (0..maps.len()).map(|i| find(&mut parent, i)).collect();
    (maps, roots)
}
