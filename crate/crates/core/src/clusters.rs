//! Cluster pictures: the laminar family of root sets cut out by p-adic
//! discs, and the per-cluster invariants feeding the Galois representation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::ord2;
use crate::padic::{RootSystem, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    /// sorted root indices
    pub members: Vec<usize>,
    /// None for singletons
    pub depth: Option<Q>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn is_even(&self) -> bool {
        self.members.len() % 2 == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterPicture {
    pub n_roots: usize,
    /// clusters sorted by decreasing size; index 0 is the top cluster
    pub clusters: Vec<Cluster>,
    pub val_matrix: Vec<Vec<Option<Q>>>,
    /// valuation of the leading coefficient
    pub lead_val: i64,
    pub iota_perm: Vec<usize>,
    pub frob_perm: Vec<usize>,
    pub iota_on_clusters: Vec<usize>,
    pub frob_on_clusters: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EpsKind {
    Zero,
    Trivial,
    Order2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterInvariants {
    /// odd children
    pub s0: Vec<usize>,
    pub index_i: u64,
    pub mu: Q,
    pub lambda: Q,
    pub eps_kind: EpsKind,
    pub gamma_order: u64,
    /// mu has an odd denominator > 1
    pub odd_mu_denominator: bool,
}

pub fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for i in 0..perm.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        out.push(len);
    }
    out
}

fn act_on_clusters(clusters: &[Cluster], perm: &[usize]) -> Vec<usize> {
    let index: BTreeMap<&Vec<usize>, usize> = clusters
        .iter()
        .enumerate()
        .map(|(i, c)| (&c.members, i))
        .collect();
    clusters
        .iter()
        .map(|c| {
            let mut img: Vec<usize> = c.members.iter().map(|&r| perm[r]).collect();
            img.sort_unstable();
            *index.get(&img).expect("cluster family is Galois-stable")
        })
        .collect()
}

pub fn build_clusters(rs: &RootSystem) -> ClusterPicture {
    let n = rs.degree();
    let vm = &rs.val_matrix;
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..n {
        sets.insert(vec![i]);
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = vm[i][j].unwrap();
            let s: Vec<usize> = (0..n)
                .filter(|&k| k == i || vm[i][k].unwrap() >= d)
                .collect();
            sets.insert(s);
        }
    }
    sets.insert((0..n).collect());
    let mut list: Vec<Vec<usize>> = sets.into_iter().collect();
    list.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut clusters: Vec<Cluster> = list
        .iter()
        .map(|m| {
            let depth = if m.len() < 2 {
                None
            } else {
                let mut d: Option<Q> = None;
                for (x, &i) in m.iter().enumerate() {
                    for &j in &m[x + 1..] {
                        let v = vm[i][j].unwrap();
                        d = Some(d.map_or(v, |c: Q| c.min(v)));
                    }
                }
                d
            };
            Cluster {
                members: m.clone(),
                depth,
                parent: None,
                children: vec![],
            }
        })
        .collect();
    for c in 1..clusters.len() {
        // the smallest strictly larger cluster containing c
        let parent = (0..c)
            .rev()
            .find(|&a| {
                clusters[a].size() > clusters[c].size()
                    && clusters[c]
                        .members
                        .iter()
                        .all(|r| clusters[a].members.binary_search(r).is_ok())
            })
            .expect("top cluster contains everything");
        clusters[c].parent = Some(parent);
        clusters[parent].children.push(c);
    }
    let iota_on_clusters = act_on_clusters(&clusters, &rs.iota_perm);
    let frob_on_clusters = act_on_clusters(&clusters, &rs.frob_perm);
    ClusterPicture {
        n_roots: n,
        clusters,
        val_matrix: vm.clone(),
        lead_val: rs.lead_val,
        iota_perm: rs.iota_perm.clone(),
        frob_perm: rs.frob_perm.clone(),
        iota_on_clusters,
        frob_on_clusters,
    }
}

impl ClusterPicture {
    pub fn top(&self) -> &Cluster {
        &self.clusters[0]
    }

    pub fn genus(&self) -> u64 {
        ((self.n_roots - 1) / 2) as u64
    }

    /// Orbit of a cluster under a cluster permutation.
    pub fn orbit(&self, c: usize, perm: &[usize]) -> Vec<usize> {
        let mut out = vec![c];
        let mut j = perm[c];
        while j != c {
            out.push(j);
            j = perm[j];
        }
        out
    }

    /// Even cluster all of whose children are even.
    pub fn is_ubereven(&self, c: usize) -> bool {
        let s = &self.clusters[c];
        s.is_even() && s.children.iter().all(|&k| self.clusters[k].is_even())
    }

    /// Nested-bracket rendering with root labels r0, r1, ...
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, c: usize, out: &mut String) {
        let s = &self.clusters[c];
        match s.depth {
            None => {
                let _ = write!(out, "r{}", s.members[0]);
            }
            Some(d) => {
                out.push('(');
                for (k, &ch) in s.children.iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    self.render_into(ch, out);
                }
                let _ = write!(out, ")_{d}");
            }
        }
    }

    /// Depths of the non-singleton clusters, top first.
    pub fn depths(&self) -> Vec<Q> {
        self.clusters.iter().filter_map(|c| c.depth).collect()
    }
}

fn prime_to_p(mut n: u64, p: u64) -> u64 {
    while n % p == 0 {
        n /= p;
    }
    n
}

/// Invariants of every cluster of size at least 2.
pub fn cluster_invariants(cp: &ClusterPicture, p: u64) -> BTreeMap<usize, ClusterInvariants> {
    let mut out = BTreeMap::new();
    for (c, s) in cp.clusters.iter().enumerate() {
        let Some(d) = s.depth else { continue };
        let s0: Vec<usize> = s
            .children
            .iter()
            .copied()
            .filter(|&k| !cp.clusters[k].is_even())
            .collect();
        let index_i = cp.orbit(c, &cp.iota_on_clusters).len() as u64;
        let r0 = s.members[0];
        let mu: Q = (0..cp.n_roots)
            .filter(|r| s.members.binary_search(r).is_err())
            .map(|r| cp.val_matrix[r0][r].unwrap())
            .sum();
        let lead = Q::from(cp.lead_val);
        let lambda = (lead + mu + d * Q::from(s0.len() as i64)) / Q::from(2);
        let eps_kind = if !s.is_even() {
            EpsKind::Zero
        } else {
            match ord2(&(Q::from(index_i as i64) * (mu + lead))) {
                None => EpsKind::Trivial,
                Some(k) if k >= 1 => EpsKind::Trivial,
                Some(_) => EpsKind::Order2,
            }
        };
        let il = Q::from(index_i as i64) * lambda;
        let gamma_order = if lambda.is_zero() {
            1
        } else {
            prime_to_p(*il.denom() as u64, p)
        };
        out.insert(
            c,
            ClusterInvariants {
                s0,
                index_i,
                mu,
                lambda,
                eps_kind,
                gamma_order,
                odd_mu_denominator: *mu.denom() % 2 == 1 && *mu.denom() > 1,
            },
        );
    }
    out
}

/// Clusters contributing to the cohomology: non-singletons that are not
/// übereven.
pub fn principal_clusters(cp: &ClusterPicture) -> Vec<usize> {
    (0..cp.clusters.len())
        .filter(|&c| cp.clusters[c].size() >= 2 && !cp.is_ubereven(c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{splitting_data, SplitOptions};
    use crate::poly::from_i64;

    fn picture(f: &[i64], p: u64) -> (ClusterPicture, BTreeMap<usize, ClusterInvariants>) {
        let rs = splitting_data(&from_i64(f), p, SplitOptions::default()).unwrap();
        let cp = build_clusters(&rs);
        let inv = cluster_invariants(&cp, p);
        (cp, inv)
    }

    #[test]
    fn worked_example() {
        let (cp, inv) = picture(&[-8, 12, 8, -8, -8, 0, 1], 13);
        assert_eq!(cp.depths(), vec![Q::zero(), Q::new(1, 4)]);
        let s1 = 1;
        assert_eq!(cp.clusters[s1].size(), 5);
        let i1 = &inv[&s1];
        assert_eq!(i1.s0.len(), 5);
        assert_eq!(i1.mu, Q::zero());
        assert_eq!(i1.eps_kind, EpsKind::Zero);
        assert_eq!(i1.lambda, Q::new(5, 8));
        assert_eq!(i1.gamma_order, 8);
        let ir = &inv[&0];
        assert_eq!(ir.mu, Q::zero());
        assert_eq!(ir.eps_kind, EpsKind::Trivial);
        assert_eq!(ir.lambda, Q::zero());
        assert_eq!(ir.gamma_order, 1);
        assert_eq!(principal_clusters(&cp), vec![0, 1]);
        let r = cp.render();
        assert!(r.ends_with(")_0"), "{r}");
        assert!(r.contains(")_1/4"), "{r}");
    }

    #[test]
    fn unit_distances_give_one_cluster() {
        let (cp, inv) = picture(&[-1, 0, 0, 0, 0, 1], 11);
        assert_eq!(cp.depths(), vec![Q::zero()]);
        assert_eq!(inv.len(), 1);
        assert_eq!(principal_clusters(&cp), vec![0]);
    }

    #[test]
    fn twins_at_seven() {
        let mut f = from_i64(&[1]);
        for r in [0, 7, 1, 8, 2, 3] {
            f = crate::poly::mul(&f, &from_i64(&[-r, 1]));
        }
        let rs = splitting_data(&f, 7, SplitOptions::default()).unwrap();
        let cp = build_clusters(&rs);
        let inv = cluster_invariants(&cp, 7);
        assert_eq!(cp.depths(), vec![Q::zero(), Q::from(1), Q::from(1)]);
        for c in [1, 2] {
            assert_eq!(cp.clusters[c].size(), 2);
            let i = &inv[&c];
            assert_eq!(i.index_i, 1);
            assert_eq!(i.mu, Q::zero());
            assert_eq!(i.eps_kind, EpsKind::Trivial);
        }
    }

    #[test]
    fn ubereven_top_is_not_principal() {
        // three twins at p = 7
        let mut f = from_i64(&[1]);
        for r in [0, 7, 1, 8, 2, 9] {
            f = crate::poly::mul(&f, &from_i64(&[-r, 1]));
        }
        let rs = splitting_data(&f, 7, SplitOptions::default()).unwrap();
        let cp = build_clusters(&rs);
        assert!(cp.is_ubereven(0));
        assert_eq!(principal_clusters(&cp), vec![1, 2, 3]);
    }
}
