//! Exact representation theory of the metacyclic groups
//! <iota, Frob | iota^e, Frob^n, Frob iota Frob^-1 = iota^q>, used as a
//! brute-force check on the closed root-number formulas.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, lcm, mult_order, pow_mod};
use crate::rootnum::{dual_pair_w, selfdual_irred_w, SelfDualKind, Sign};

/// Element sum c_k zeta_M^k of Q(zeta_M), kept in the group ring and
/// reduced modulo the M-th cyclotomic polynomial for comparisons.
#[derive(Debug, Clone)]
pub struct Cyclo {
    pub m: u64,
    pub c: Vec<i64>,
}

fn poly_divexact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0; a.len() - db];
    for k in (0..q.len()).rev() {
        let t = r[k + db] / b[db];
        q[k] = t;
        for (i, &bi) in b.iter().enumerate() {
            r[k + i] -= t * bi;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Coefficients of the n-th cyclotomic polynomial, ascending.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_divexact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

impl Cyclo {
    pub fn zero(m: u64) -> Cyclo {
        Cyclo {
            m,
            c: vec![0; m as usize],
        }
    }

    /// zeta_M^k
    pub fn root(m: u64, k: i64) -> Cyclo {
        let mut z = Cyclo::zero(m);
        z.c[k.rem_euclid(m as i64) as usize] = 1;
        z
    }

    pub fn integer(m: u64, v: i64) -> Cyclo {
        let mut z = Cyclo::zero(m);
        z.c[0] = v;
        z
    }

    pub fn add(&self, o: &Cyclo) -> Cyclo {
        Cyclo {
            m: self.m,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul(&self, o: &Cyclo) -> Cyclo {
        let m = self.m as usize;
        let mut c = vec![0i64; m];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[(i + j) % m] += a * b;
            }
        }
        Cyclo { m: self.m, c }
    }

    pub fn conj(&self) -> Cyclo {
        let m = self.m as usize;
        let mut c = vec![0i64; m];
        for (i, &a) in self.c.iter().enumerate() {
            c[(m - i) % m] += a;
        }
        Cyclo { m: self.m, c }
    }

    /// Canonical representative of degree < phi(M).
    pub fn reduced(&self) -> Vec<i64> {
        let phi = cyclotomic_poly(self.m);
        let d = phi.len() - 1;
        let mut r = self.c.clone();
        for k in (d..r.len()).rev() {
            let t = r[k];
            if t == 0 {
                continue;
            }
            for (i, &pi) in phi.iter().enumerate() {
                r[k - d + i] -= t * pi;
            }
        }
        r.truncate(d);
        r
    }

    /// Some(v) when the element is the rational integer v.
    pub fn as_integer(&self) -> Option<i64> {
        let r = self.reduced();
        if r[1..].iter().all(|&x| x == 0) {
            Some(r[0])
        } else {
            None
        }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, o: &Cyclo) -> bool {
        self.m == o.m && self.reduced() == o.reduced()
    }
}

/// g w_i = zeta_M^exp[i] w_perm[i]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub exp: Vec<u64>,
}

impl Monomial {
    pub fn identity(dim: usize) -> Monomial {
        Monomial {
            perm: (0..dim).collect(),
            exp: vec![0; dim],
        }
    }

    /// self after o
    pub fn compose(&self, o: &Monomial, m: u64) -> Monomial {
        let dim = self.perm.len();
        let mut perm = vec![0; dim];
        let mut exp = vec![0; dim];
        for i in 0..dim {
            let j = o.perm[i];
            perm[i] = self.perm[j];
            exp[i] = (o.exp[i] + self.exp[j]) % m;
        }
        Monomial { perm, exp }
    }

    pub fn pow(&self, k: u64, m: u64) -> Monomial {
        let mut r = Monomial::identity(self.perm.len());
        for _ in 0..k {
            r = self.compose(&r, m);
        }
        r
    }

    pub fn trace(&self, m: u64) -> Cyclo {
        let mut t = Cyclo::zero(m);
        for (i, &j) in self.perm.iter().enumerate() {
            if i == j {
                t.c[self.exp[i] as usize] += 1;
            }
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetacyclicRep {
    pub e: u64,
    pub n: u64,
    pub q: u64,
    /// conductor of the coefficient field
    pub m: u64,
    /// inertia character index: iota acts on w_0 by zeta_e^c
    pub c: u64,
    /// Frob^f acts on w_0 by zeta_(n/f)^j
    pub j: u64,
    pub iota: Monomial,
    pub frob: Monomial,
}

impl MetacyclicRep {
    pub fn dim(&self) -> usize {
        self.iota.perm.len()
    }

    pub fn group_order(&self) -> u64 {
        self.e * self.n
    }

    /// iota^a Frob^b
    pub fn element(&self, a: u64, b: u64) -> Monomial {
        self.iota
            .pow(a, self.m)
            .compose(&self.frob.pow(b, self.m), self.m)
    }

    /// Characters in the order (a, b), a < e, b < n.
    pub fn character(&self) -> Vec<Cyclo> {
        let mut out = Vec::with_capacity(self.group_order() as usize);
        let mut ia = Monomial::identity(self.dim());
        for _ in 0..self.e {
            let mut g = ia.clone();
            for _ in 0..self.n {
                out.push(g.trace(self.m));
                g = g.compose(&self.frob, self.m);
            }
            ia = self.iota.compose(&ia, self.m);
        }
        out
    }

    /// Checks iota^e = 1, Frob^n = 1 and Frob iota = iota^q Frob.
    pub fn relations_hold(&self) -> bool {
        let id = Monomial::identity(self.dim());
        let m = self.m;
        self.iota.pow(self.e, m) == id
            && self.frob.pow(self.n, m) == id
            && self.frob.compose(&self.iota, m)
                == self.iota.pow(self.q % self.e, m).compose(&self.frob, m)
    }

    /// Twist by the unramified character Frob -> zeta_k (k | n).
    pub fn twist_unramified(&self, k: u64) -> MetacyclicRep {
        assert!(
            self.n % k == 0,
            "unramified character of order {k} needs k | n"
        );
        let mut r = self.clone();
        let step = self.m / k;
        for x in r.frob.exp.iter_mut() {
            *x = (*x + step) % self.m;
        }
        r
    }

    /// Inertia eigenvalue exponents c q^-i of w_i.
    pub fn inertia_orbit(&self) -> Vec<u64> {
        let step = self.m / self.e;
        let mut v: Vec<u64> = self.iota.exp.iter().map(|x| x / step).collect();
        v.sort_unstable();
        v
    }
}

/// Conductor used for representations of the group with parameters (e, n).
pub fn conductor(e: u64, n: u64) -> u64 {
    lcm(e, 2 * n)
}

fn inverse_mod(q: u64, e: u64) -> u64 {
    if e == 1 {
        return 0;
    }
    pow_mod(q, mult_order(q, e) - 1, e)
}

/// Induced from iota -> zeta_e^c, Frob^f -> zeta_(n/f)^j on the
/// stabilizer <iota, Frob^f> of the character.
pub fn induced(e: u64, n: u64, q: u64, c: u64, j: u64) -> MetacyclicRep {
    let m = conductor(e, n);
    let qm = q % e;
    let mut f = 1;
    while (c * pow_mod(qm, f, e)) % e != c % e {
        f += 1;
    }
    assert!(n % f == 0, "q^n must be 1 mod e");
    let qinv = inverse_mod(qm, e);
    let dim = f as usize;
    let iota = Monomial {
        perm: (0..dim).collect(),
        exp: (0..f)
            .map(|i| (c * pow_mod(qinv, i, e) % e) * (m / e) % m)
            .collect(),
    };
    let mut frob = Monomial {
        perm: (1..=dim).map(|i| i % dim).collect(),
        exp: vec![0; dim],
    };
    frob.exp[dim - 1] = j * (m / (n / f)) % m;
    MetacyclicRep {
        e,
        n,
        q,
        m,
        c,
        j,
        iota,
        frob,
    }
}

/// All irreducible representations, one per (q-orbit of c, j).
pub fn irreducibles(e: u64, n: u64, q: u64) -> Vec<MetacyclicRep> {
    assert!(
        pow_mod(q, n, e.max(1)) % e.max(1) == 1 % e.max(1),
        "q^n must be 1 mod e"
    );
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for c in 0..e {
        if seen.contains(&c) {
            continue;
        }
        let mut x = c;
        let mut f = 0;
        loop {
            seen.insert(x);
            f += 1;
            x = x * (q % e) % e;
            if x == c {
                break;
            }
        }
        for j in 0..n / f {
            out.push(induced(e, n, q, c, j));
        }
    }
    out
}

fn average(sum: &Cyclo, order: u64) -> i64 {
    let v = sum.as_integer().expect("character sums are rational");
    assert!(
        v % order as i64 == 0,
        "character sum {v} not divisible by |G| = {order}"
    );
    v / order as i64
}

/// <chi, psi> for characters listed over the same group.
pub fn inner_product(chi: &[Cyclo], psi: &[Cyclo]) -> i64 {
    let m = chi[0].m;
    let s = chi
        .iter()
        .zip(psi)
        .fold(Cyclo::zero(m), |acc, (a, b)| acc.add(&a.mul(&b.conj())));
    average(&s, chi.len() as u64)
}

/// (1/|G|) sum_g chi(g^2)
pub fn frobenius_schur(rep: &MetacyclicRep) -> i8 {
    let m = rep.m;
    let mut s = Cyclo::zero(m);
    for a in 0..rep.e {
        for b in 0..rep.n {
            let g = rep.element(a, b);
            s = s.add(&g.compose(&g, m).trace(m));
        }
    }
    average(&s, rep.group_order()) as i8
}

/// Character of a one-dimensional representation iota -> zeta_e^x,
/// Frob -> zeta_n^y as a list over the group.
pub fn linear_character(e: u64, n: u64, x: u64, y: u64) -> Vec<Cyclo> {
    let m = conductor(e, n);
    let mut out = Vec::new();
    for a in 0..e {
        for b in 0..n {
            let k = (a * x * (m / e) + b * y * (m / n)) % m;
            out.push(Cyclo::root(m, k as i64));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockKind {
    /// sigma + sigma* with sigma not self-dual
    DualPair,
    /// self-dual irreducible, replaced by its symplectic twist when it
    /// was orthogonal
    SelfDual { was_orthogonal: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoBlock {
    pub orbit: Vec<u64>,
    pub dim: u64,
    pub kind: BlockKind,
    pub w: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoE {
    pub e: u64,
    pub q: u64,
    pub blocks: Vec<RhoBlock>,
    pub w: Sign,
}

fn orbit_of(c: u64, q: u64, e: u64) -> Vec<u64> {
    let mut v = vec![c];
    let mut x = c * q % e;
    while x != c {
        v.push(x);
        x = x * q % e;
    }
    v.sort_unstable();
    v
}

/// The symplectic block with inertia eigenvalues of exact order e,
/// assembled from irreducibles of C_e x| C_2f, and its root number.
pub fn brute_rho_e(e: u64, q: u64) -> RhoE {
    assert!(gcd(e, q) == 1, "gcd(e, q) must be 1");
    if e <= 2 {
        let w = dual_pair_w(e, 1, q);
        let c = e - 1;
        return RhoE {
            e,
            q,
            blocks: vec![RhoBlock {
                orbit: vec![c],
                dim: 1,
                kind: BlockKind::DualPair,
                w,
            }],
            w,
        };
    }
    let qm = q % e;
    let f = mult_order(qm, e);
    let n = 2 * f;
    let mut seen = BTreeSet::new();
    let mut blocks = Vec::new();
    for c in 1..e {
        if gcd(c, e) != 1 || seen.contains(&c) {
            continue;
        }
        let orbit = orbit_of(c, qm, e);
        seen.extend(orbit.iter().copied());
        let theta = induced(e, n, qm, c, 0);
        let fs = frobenius_schur(&theta);
        if fs != 0 {
            let was_orthogonal = fs == 1;
            let sym = if was_orthogonal {
                theta.twist_unramified(2 * f)
            } else {
                theta
            };
            assert_eq!(
                frobenius_schur(&sym),
                -1,
                "twist of an orthogonal block is symplectic"
            );
            let w = selfdual_irred_w(e, f, q, SelfDualKind::Symplectic);
            blocks.push(RhoBlock {
                orbit,
                dim: f,
                kind: BlockKind::SelfDual { was_orthogonal },
                w,
            });
        } else {
            let dual = orbit_of(e - c, qm, e);
            seen.extend(dual.iter().copied());
            let w = dual_pair_w(e, f, q);
            blocks.push(RhoBlock {
                orbit,
                dim: f,
                kind: BlockKind::DualPair,
                w,
            });
        }
    }
    let w = blocks.iter().map(|b| b.w).product();
    RhoE { e, q, blocks, w }
}

/// Faithful irreducibles of dimension f = ord_e(q) of C_e x| C_f.
pub fn rho_ef(e: u64, q: u64) -> Vec<MetacyclicRep> {
    assert!(gcd(e, q) == 1, "gcd(e, q) must be 1");
    let f = mult_order(q % e.max(1), e);
    irreducibles(e, f, q)
        .into_iter()
        .filter(|r| gcd(r.c, e) == 1 && r.dim() as u64 == f)
        .collect()
}

/// <rho_{e,f}, chi> for a character chi of C_e x| C_f given on the
/// generators as iota -> (-1)^x, Frob -> (-1)^y; zero when chi does not
/// factor through the group.
pub fn rho_ef_quadratic(e: u64, q: u64, iota_sign: bool, frob_sign: bool) -> u64 {
    let f = mult_order(q % e.max(1), e);
    if (iota_sign && e % 2 == 1) || (frob_sign && f % 2 == 1) {
        return 0;
    }
    let x = if iota_sign { e / 2 } else { 0 };
    let y = if frob_sign { f / 2 } else { 0 };
    let chi = linear_character(e, f, x, y);
    rho_ef(e, q)
        .iter()
        .map(|r| inner_product(&r.character(), &chi) as u64)
        .sum()
}
