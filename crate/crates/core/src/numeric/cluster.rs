//! Single-linkage clustering of approximate roots.

use super::{ComplexApprox, ABS_FLOOR};

#[derive(Debug, Clone)]
pub struct Cluster {
    pub representative: ComplexApprox,
    pub size: usize,
}

/// Groups roots into clusters: points within `rel_tol` of each other
/// (relative to the larger modulus) link up, and points whose modulus is
/// below the near-zero floor all snap to the zero cluster. Deterministic in
/// the input order.
pub fn cluster_roots(roots: &[ComplexApprox], rel_tol: f64) -> Vec<Cluster> {
    assert!(rel_tol > 0.0, "relative tolerance must be positive");
    let n = roots.len();
    if n == 0 {
        return vec![];
    }
    let scale = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let zero_tol = ABS_FLOOR.max(rel_tol * scale);

    // union-find
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let mut zero_anchor: Option<usize> = None;
    for i in 0..n {
        if roots[i].norm() <= zero_tol {
            match zero_anchor {
                None => zero_anchor = Some(i),
                Some(a) => {
                    let (ra, ri) = (find(&mut parent, a), find(&mut parent, i));
                    parent[ra.max(ri)] = ra.min(ri);
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let link = (roots[i] - roots[j]).norm() <= rel_tol * roots[i].norm().max(roots[j].norm());
            if link {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut clusters: Vec<(usize, ComplexApprox, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match clusters.iter_mut().find(|(root, _, _)| *root == r) {
            Some((_, sum, count)) => {
                *sum += roots[i];
                *count += 1;
            }
            None => clusters.push((r, roots[i], 1)),
        }
    }
    clusters
        .into_iter()
        .map(|(_, sum, count)| Cluster {
            representative: sum / ComplexApprox::new(count as f64, 0.0),
            size: count,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> ComplexApprox {
        ComplexApprox::new(re, 0.0)
    }

    #[test]
    fn near_duplicates_merge() {
        let cl = cluster_roots(&[c(1.0), c(1.0 + 1e-12), c(-2.0)], 1e-8);
        assert_eq!(cl.len(), 2);
    }

    #[test]
    fn empty() {
        assert!(cluster_roots(&[], 1e-8).is_empty());
    }

    #[test]
    fn zero_floor_snaps() {
        // 0 and 1e-9 both sit below the near-zero threshold set by the
        // scale of the root set, so they form one cluster with 1 apart.
        let cl = cluster_roots(&[c(0.0), c(1e-9), c(1.0)], 1e-8);
        assert_eq!(cl.len(), 2);
    }
}
