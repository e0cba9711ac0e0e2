//! From a cluster picture to the data the root-number formulas consume:
//! inertia eigenvalue packets of the abelian part and the order <= 2
//! character multiplicities of the toric part.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::clusters::{
    build_clusters, cluster_invariants, cycle_lengths, principal_clusters, ClusterInvariants,
    ClusterPicture, EpsKind,
};
use crate::error::{Error, Result};
use crate::ff::{Elem2, Fq2};
use crate::padic::{perm_pow, splitting_data, RootSystem, SplitOptions, Q};
use crate::rootnum::tilde_phi;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LocalRepData {
    pub p: u64,
    pub q: u64,
    pub g: u64,
    /// e -> m_e, positive entries only
    pub m: BTreeMap<u64, u64>,
    pub m_t: u64,
    pub t1: u64,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub n4: u64,
    pub dim_t: u64,
}

impl LocalRepData {
    /// Good reduction data for genus g.
    pub fn good(p: u64, g: u64) -> LocalRepData {
        let mut m = BTreeMap::new();
        if g > 0 {
            m.insert(1, g);
        }
        LocalRepData {
            p,
            q: p,
            g,
            m,
            ..Default::default()
        }
    }

    /// sum m_e phi~(e) + 2 dim rho_T
    pub fn h1_dimension(&self) -> u64 {
        self.m.iter().map(|(&e, &m)| m * tilde_phi(e)).sum::<u64>() + 2 * self.dim_t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricOrbit {
    /// clusters in one orbit of the full Galois action
    pub clusters: Vec<usize>,
    /// size of the stabilizer in the covering group
    pub stabilizer: usize,
    /// orbits of inertia alone, with eps_s(iota^k) for each
    pub inertia_orbits: Vec<(Vec<usize>, i8)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricRep {
    pub orbits: Vec<ToricOrbit>,
    /// eps_R(iota) when the top cluster is even
    pub top_correction: Option<i8>,
    pub dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricPart {
    pub rep: ToricRep,
    pub m_t: u64,
    pub t1: u64,
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub n4: u64,
}

/// Eigenvalues of a permutation as fractions in [0, 1).
fn perm_eigenvalues(cycles: &[usize]) -> Vec<Q> {
    cycles
        .iter()
        .flat_map(|&l| (0..l).map(move |j| Q::new(j as i64, l as i64)))
        .collect()
}

fn frac(x: Q) -> Q {
    x - Q::from(x.floor().to_integer())
}

/// Inertia eigenvalue orders of the abelian part, packed into m_e.
pub fn abelian_part(
    cp: &ClusterPicture,
    inv: &BTreeMap<usize, ClusterInvariants>,
) -> Result<BTreeMap<u64, u64>> {
    let mut seen = vec![false; cp.clusters.len()];
    let mut buckets: BTreeMap<u64, usize> = BTreeMap::new();
    for s in principal_clusters(cp) {
        if seen[s] {
            continue;
        }
        for c in cp.orbit(s, &cp.iota_on_clusters) {
            seen[c] = true;
        }
        let ci = &inv[&s];
        let k = ci.index_i;
        let iota_k = perm_pow(&cp.iota_on_clusters, k);
        // cycle structure of iota^k on the odd children
        let pos: BTreeMap<usize, usize> = ci.s0.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let local: Vec<usize> = ci.s0.iter().map(|c| pos[&iota_k[*c]]).collect();
        let mut eig = perm_eigenvalues(&cycle_lengths(&local));
        if let Some(i) = eig.iter().position(|x| x.is_zero()) {
            eig.swap_remove(i);
        } else {
            continue;
        }
        let shift = Q::new(1, ci.gamma_order as i64);
        let mut eig: Vec<Q> = eig.into_iter().map(|x| frac(x + shift)).collect();
        match ci.eps_kind {
            EpsKind::Zero => {}
            kind => {
                let target = if kind == EpsKind::Trivial {
                    Q::zero()
                } else {
                    Q::new(1, 2)
                };
                match eig.iter().position(|&x| x == target) {
                    Some(i) => {
                        eig.swap_remove(i);
                    }
                    None => {
                        return Err(Error::Invalid(format!(
                            "cluster {s}: eps eigenvalue missing from gamma (x) (C[s0] - 1)"
                        )))
                    }
                }
            }
        }
        for x in eig {
            for t in 0..k {
                let y = frac((x + Q::from(t as i64)) / Q::from(k as i64));
                *buckets.entry(*y.denom() as u64).or_default() += 1;
            }
        }
    }
    let mut m = BTreeMap::new();
    for (e, size) in buckets {
        let phi = tilde_phi(e);
        if size as u64 % phi != 0 {
            return Err(Error::BucketMismatch {
                order: e,
                size,
                expected: phi,
            });
        }
        m.insert(e, size as u64 / phi);
    }
    Ok(m)
}

/// The covering group Z/2E x| Z/B acting on L(pi^(1/2)), with the data
/// needed to evaluate the sign characters eps_s.
struct Covering<'a> {
    rs: &'a RootSystem,
    fq2: Fq2,
    two_e: u64,
    b: u64,
    t: u64,
    zeta: Vec<Elem2>,
    /// S_b = 1 + p + ... + p^(b-1) mod 2E
    geometric: Vec<u64>,
    iota_c: Vec<Vec<usize>>,
    frob_c: Vec<Vec<usize>>,
}

impl<'a> Covering<'a> {
    fn new(rs: &'a RootSystem, cp: &ClusterPicture) -> Covering<'a> {
        let field = &rs.field;
        let e = field.e as u64;
        let two_e = 2 * e;
        let t = rs.lift.shift();
        let b = if t == 0 {
            2 * field.f as u64
        } else {
            4 * e * field.f as u64
        };
        let fq2 = Fq2::new(field.residue.clone());
        let mut z = fq2.sqrt_base(&field.zeta_residue);
        if fq2.pow_u64(&z, e) == fq2.one() {
            z = (fq2.base.neg(&z.0), fq2.base.neg(&z.1));
        }
        let zeta: Vec<Elem2> = {
            let mut v = vec![fq2.one()];
            for _ in 1..two_e {
                let last = v.last().unwrap().clone();
                v.push(fq2.mul(&last, &z));
            }
            v
        };
        let mut geometric = vec![0u64];
        for _ in 1..b {
            let s = *geometric.last().unwrap();
            geometric.push((s * (field.p % two_e) + 1) % two_e);
        }
        let ident: Vec<usize> = (0..cp.clusters.len()).collect();
        let powers = |g: &[usize], count: u64| {
            let mut out = vec![ident.clone()];
            for _ in 1..count {
                let last = out.last().unwrap();
                out.push(last.iter().map(|&c| g[c]).collect());
            }
            out
        };
        let iota_c = powers(&cp.iota_on_clusters, two_e);
        let frob_c = powers(&cp.frob_on_clusters, b);
        Covering {
            rs,
            fq2,
            two_e,
            b,
            t,
            zeta,
            geometric,
            iota_c,
            frob_c,
        }
    }

    /// sigma = iota^a Frob^b applied to a cluster
    fn act(&self, a: u64, b: u64, c: usize) -> usize {
        self.iota_c[a as usize][self.frob_c[b as usize][c]]
    }

    fn elements(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (0..self.two_e).flat_map(move |a| (0..self.b).map(move |b| (a, b)))
    }

    /// The sign character of G_s given by sigma(sqrt x_s) / sqrt x_s on
    /// the leading term of x_s = c prod_{r not in s} (r0 - r).
    fn eps(&self, cp: &ClusterPicture, s: usize) -> Result<BTreeMap<(u64, u64), i8>> {
        let members = &cp.clusters[s].members;
        let others: Vec<usize> = (0..cp.n_roots)
            .filter(|r| members.binary_search(r).is_err())
            .collect();
        let (k, u) = self.rs.leading_term_of_product(members[0], &others);
        let k = k.rem_euclid(self.two_e as i64) as u64;
        let root = self.fq2.sqrt_base(&u);
        let root_inv = self.fq2.inv(&root);
        let mut conj = vec![root.clone()];
        for _ in 1..self.b {
            let last = conj.last().unwrap();
            conj.push(self.fq2.frobenius(last));
        }
        let mut out = BTreeMap::new();
        for (a, b) in self.elements() {
            if self.act(a, b, s) != s {
                continue;
            }
            let exp = k * ((a + self.t * self.geometric[b as usize]) % self.two_e) % self.two_e;
            let v = self.fq2.mul(
                &self.fq2.mul(&self.zeta[exp as usize], &conj[b as usize]),
                &root_inv,
            );
            let sign = self
                .fq2
                .as_sign(&v)
                .ok_or_else(|| Error::Invalid(format!("cluster {s}: eps value is not a sign")))?;
            out.insert((a, b), sign);
        }
        Ok(out)
    }

    /// The four order <= 2 characters: trivial, unramified, and the two
    /// ramified ones.
    fn characters(&self, a: u64, b: u64) -> [i8; 4] {
        let sgn = |k: u64| if k % 2 == 0 { 1i8 } else { -1 };
        let eta = sgn(b);
        let chi1 = sgn(a + self.t * b);
        [1, eta, chi1, chi1 * eta]
    }
}

pub fn toric_part(
    cp: &ClusterPicture,
    inv: &BTreeMap<usize, ClusterInvariants>,
    rs: &RootSystem,
) -> Result<ToricPart> {
    let top_even = cp.top().is_even();
    let u: Vec<usize> = principal_clusters(cp)
        .into_iter()
        .filter(|&c| cp.clusters[c].is_even())
        .collect();
    let dim = u.len() as u64 - top_even as u64;
    if dim > 0 && rs.p() == 2 {
        return Err(Error::ToricAtEvenResidue);
    }
    let cov = Covering::new(rs, cp);
    let mut counts = [0i64; 4];
    let mut m_t = 0i64;
    let mut orbits = Vec::new();
    let mut seen = vec![false; cp.clusters.len()];
    for &s in &u {
        if seen[s] {
            continue;
        }
        let mut orbit: Vec<usize> = Vec::new();
        for (a, b) in cov.elements() {
            let c = cov.act(a, b, s);
            if !orbit.contains(&c) {
                orbit.push(c);
            }
        }
        orbit.sort_unstable();
        for &c in &orbit {
            seen[c] = true;
        }
        let eps = cov.eps(cp, s)?;
        for (i, count) in counts.iter_mut().enumerate() {
            if eps.iter().all(|(&(a, b), &v)| cov.characters(a, b)[i] == v) {
                *count += 1;
            }
        }
        // inertia orbits inside the Galois orbit
        let mut inertia_orbits = Vec::new();
        let mut iseen: Vec<usize> = Vec::new();
        for &c in &orbit {
            if iseen.contains(&c) {
                continue;
            }
            let io = cp.orbit(c, &cp.iota_on_clusters);
            iseen.extend(&io);
            let k = io.len() as u64;
            let e0 = if c == s {
                eps[&(k % cov.two_e, 0)]
            } else {
                cov.eps(cp, c)?[&(k % cov.two_e, 0)]
            };
            let expected = if inv[&c].eps_kind == EpsKind::Trivial {
                1
            } else {
                -1
            };
            if e0 != expected {
                return Err(Error::Invalid(format!(
                    "cluster {c}: eps(iota^{k}) = {e0} disagrees with its 2-adic type"
                )));
            }
            if (if k % 2 == 0 { 1 } else { -1 }) == e0 {
                m_t += 1;
            }
            inertia_orbits.push((io, e0));
        }
        orbits.push(ToricOrbit {
            clusters: orbit,
            stabilizer: eps.len(),
            inertia_orbits,
        });
    }
    let mut top_correction = None;
    if top_even {
        let eps_r = cov.eps(cp, 0)?;
        for (i, count) in counts.iter_mut().enumerate() {
            if eps_r
                .iter()
                .all(|(&(a, b), &v)| cov.characters(a, b)[i] == v)
            {
                *count -= 1;
            }
        }
        let at_iota = eps_r[&(1 % cov.two_e, 0)];
        if at_iota == -1 {
            m_t -= 1;
        }
        top_correction = Some(at_iota);
    }
    if counts.iter().any(|&c| c < 0) || m_t < 0 {
        return Err(Error::Invalid("negative toric multiplicity".into()));
    }
    let [n1, n2, n3, n4] = counts.map(|c| c as u64);
    Ok(ToricPart {
        rep: ToricRep {
            orbits,
            top_correction,
            dim,
        },
        m_t: m_t as u64,
        t1: n1,
        n1,
        n2,
        n3,
        n4,
    })
}

/// Everything computed at one prime.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalAnalysis {
    pub p: u64,
    pub residue_degree: usize,
    pub ramification_degree: usize,
    pub precision: u32,
    pub picture: ClusterPicture,
    pub invariants: BTreeMap<usize, ClusterInvariants>,
    pub principal: Vec<usize>,
    pub toric: ToricPart,
    pub rep: LocalRepData,
}

pub fn analyze_roots(rs: &RootSystem) -> Result<LocalAnalysis> {
    let p = rs.p();
    let cp = build_clusters(rs);
    let inv = cluster_invariants(&cp, p);
    let m = abelian_part(&cp, &inv)?;
    let toric = toric_part(&cp, &inv, rs)?;
    let rep = LocalRepData {
        p,
        q: p,
        g: cp.genus(),
        m,
        m_t: toric.m_t,
        t1: toric.t1,
        n1: toric.n1,
        n2: toric.n2,
        n3: toric.n3,
        n4: toric.n4,
        dim_t: toric.rep.dim,
    };
    Ok(LocalAnalysis {
        p,
        residue_degree: rs.field.f,
        ramification_degree: rs.field.e,
        precision: rs.field.n,
        principal: principal_clusters(&cp),
        picture: cp,
        invariants: inv,
        toric,
        rep,
    })
}

/// Split f over Q_p and compute its local representation data.
pub fn analyze(f: &[BigInt], p: u64, opts: SplitOptions) -> Result<LocalAnalysis> {
    analyze_roots(&splitting_data(f, p, opts)?)
}

/// Least common multiple of the inertia orders seen in the abelian part.
pub fn inertia_exponent(d: &LocalRepData) -> u64 {
    d.m.keys().fold(1u64, |acc, &e| lcm(acc, e))
}

/// True when the local data describes good reduction.
pub fn is_good(d: &LocalRepData) -> bool {
    d.dim_t == 0 && d.m.keys().all(|&e| e.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{from_i64, mul};

    fn product(roots: &[i64]) -> Vec<BigInt> {
        roots
            .iter()
            .fold(from_i64(&[1]), |f, &r| mul(&f, &from_i64(&[-r, 1])))
    }

    #[test]
    fn worked_example_data() {
        let a = analyze(
            &from_i64(&[-8, 12, 8, -8, -8, 0, 1]),
            13,
            SplitOptions::default(),
        )
        .unwrap();
        assert_eq!(a.rep.m, BTreeMap::from([(8, 1)]));
        assert_eq!(a.rep.m_t, 0);
        assert_eq!(a.rep.dim_t, 0);
        assert_eq!(a.rep.h1_dimension(), 4);
    }

    #[test]
    fn quintic_pure_power() {
        // x^5 - 7 over Q_7: one cluster of depth 1/5, lambda = 1/2
        let a = analyze(&from_i64(&[-7, 0, 0, 0, 0, 1]), 7, SplitOptions::default()).unwrap();
        assert_eq!(a.invariants[&0].gamma_order, 2);
        assert_eq!(a.rep.m, BTreeMap::from([(10, 1)]));
    }

    #[test]
    fn good_reduction_is_unramified() {
        let a = analyze(&from_i64(&[1, 2, 0, 3, 0, 1]), 11, SplitOptions::default());
        let a = a.unwrap();
        assert_eq!(a.rep.m, BTreeMap::from([(1, 2)]));
        assert!(is_good(&a.rep));
    }

    #[test]
    fn split_multiplicative_elliptic() {
        // x (x - 7)(x + 1): twin {0, 7} with x_s = 1
        let a = analyze(&product(&[0, 7, -1]), 7, SplitOptions::default()).unwrap();
        assert_eq!(a.rep.dim_t, 1);
        assert_eq!(
            (a.rep.t1, a.rep.n1, a.rep.n2, a.rep.n3, a.rep.n4),
            (1, 1, 0, 0, 0)
        );
        assert!(a.rep.m.is_empty());
    }

    #[test]
    fn nonsplit_multiplicative_elliptic() {
        // x (x - 7)(x - 1): x_s = -1 is a non-square mod 7
        let a = analyze(&product(&[0, 7, 1]), 7, SplitOptions::default()).unwrap();
        assert_eq!(a.rep.dim_t, 1);
        assert_eq!((a.rep.t1, a.rep.n2), (0, 1));
    }

    #[test]
    fn six_roots_toric() {
        let a = analyze(&product(&[0, 7, 1, 8, 2, 3]), 7, SplitOptions::default()).unwrap();
        assert_eq!(a.rep.dim_t, 2);
        assert_eq!(a.rep.h1_dimension(), 4);
        assert_eq!(a.rep.m_t, a.rep.n3 + a.rep.n4);
        assert_eq!(a.rep.n1 + a.rep.n2, 2);
    }
}
