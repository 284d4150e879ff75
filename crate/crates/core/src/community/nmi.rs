use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::Partition;
use crate::error::{Error, Result};

fn entropy(counts: impl Iterator<Item = usize>, n: f64) -> f64 {
    counts
        .filter(|&c| c > 0)
        .map(|c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum()
}

/// Normalised mutual information with arithmetic-mean normalisation.
///
/// Two single-block partitions score 1; a single-block partition against any
/// other scores 0. Nodes are matched by id, so node order may differ.
pub fn nmi(p: &Partition, q: &Partition) -> Result<f64> {
    let left: BTreeSet<_> = p.nodes.iter().collect();
    let right: BTreeSet<_> = q.nodes.iter().collect();
    if left != right || left.len() != p.len() || right.len() != q.len() {
        return Err(Error::NodeSetMismatch {
            only_left: left.difference(&right).map(|s| s.to_string()).collect(),
            only_right: right.difference(&left).map(|s| s.to_string()).collect(),
        });
    }
    let n = p.len();
    if n == 0 {
        return Ok(1.0);
    }
    let q_of: HashMap<_, usize> = q.nodes.iter().zip(&q.membership).map(|(id, &c)| (id, c)).collect();

    let mut joint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut row = vec![0usize; p.community_count()];
    let mut col = vec![0usize; q.community_count()];
    for (id, &a) in p.nodes.iter().zip(&p.membership) {
        let b = q_of[id];
        *joint.entry((a, b)).or_insert(0) += 1;
        row[a] += 1;
        col[b] += 1;
    }

    let nf = n as f64;
    let h_p = entropy(row.iter().copied(), nf);
    let h_q = entropy(col.iter().copied(), nf);
    let single_p = row.iter().filter(|&&c| c > 0).count() <= 1;
    let single_q = col.iter().filter(|&&c| c > 0).count() <= 1;
    match (single_p, single_q) {
        (true, true) => return Ok(1.0),
        (true, false) | (false, true) => return Ok(0.0),
        _ => {}
    }

    let mutual: f64 = joint
        .iter()
        .map(|(&(a, b), &c)| {
            let pab = c as f64 / nf;
            pab * (pab * nf * nf / (row[a] as f64 * col[b] as f64)).ln()
        })
        .sum();
    Ok((mutual / ((h_p + h_q) / 2.0)).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::community::Method;
    use crate::PlayerId;

    fn part(labels: &[usize]) -> Partition {
        let nodes = (0..labels.len()).map(|i| PlayerId::from(format!("p{i}"))).collect();
        Partition::from_labels(Method::Leiden, nodes, labels)
    }

    #[test]
    fn identical_partitions_score_one() {
        let p = part(&[0, 0, 1, 1, 2]);
        assert!((nmi(&p, &p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_block_against_singletons_is_zero() {
        let a = part(&[0; 11]);
        let b = part(&(0..11).collect::<Vec<_>>());
        assert_eq!(nmi(&a, &b).unwrap(), 0.0);
        assert_eq!(nmi(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn matches_by_id_not_order() {
        let p = part(&[0, 0, 1, 1]);
        let mut q = p.clone();
        q.nodes.reverse();
        q.membership.reverse();
        assert!((nmi(&p, &q).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn independent_partitions_score_zero() {
        let p = part(&[0, 0, 1, 1]);
        let q = part(&[0, 1, 0, 1]);
        assert!(nmi(&p, &q).unwrap().abs() < 1e-12);
    }

    #[test]
    fn mismatched_nodes_are_reported() {
        let p = part(&[0, 1]);
        let mut q = part(&[0, 1]);
        q.nodes[1] = "x".into();
        match nmi(&p, &q) {
            Err(Error::NodeSetMismatch { only_left, only_right }) => {
                assert_eq!(only_left, ["p1"]);
                assert_eq!(only_right, ["x"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
