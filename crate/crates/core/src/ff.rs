//! Finite fields F_q = F_p[x]/(g), their quadratic extensions, and root
//! finding for polynomials over F_q.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{factor_u64, mul_mod, pow_mod};

pub type Elem = Vec<u64>;
pub type Poly = Vec<Elem>;

/// F_p[x] modulo a monic irreducible polynomial of degree `deg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fq {
    pub p: u64,
    pub deg: usize,
    /// monic, ascending, length deg + 1
    pub modulus: Vec<u64>,
}

impl Fq {
    pub fn prime(p: u64) -> Fq {
        Fq {
            p,
            deg: 1,
            modulus: vec![0, 1],
        }
    }

    /// The field of degree `deg` over F_p, modulo a monic irreducible found
    /// by a seeded random search.
    pub fn new(p: u64, deg: usize) -> Fq {
        if deg == 1 {
            return Fq::prime(p);
        }
        let fp = Fq::prime(p);
        let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((deg as u64) << 32));
        loop {
            let mut m: Vec<u64> = (0..deg).map(|_| rng.gen_range(0..p)).collect();
            m.push(1);
            if m[0] != 0 && fp.poly_is_irreducible(&to_poly(&m)) {
                return Fq { p, deg, modulus: m };
            }
        }
    }

    pub fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.p), self.deg)
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.deg]
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> Elem {
        let mut v = self.zero();
        v[0] = c.rem_euclid(self.p as i64) as u64;
        v
    }

    pub fn gen(&self) -> Elem {
        if self.deg == 1 {
            return self.from_int(-(self.modulus[0] as i64));
        }
        let mut v = self.zero();
        v[1] = 1;
        v
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + self.p - y) % self.p)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Elem {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Elem {
        a.iter().map(|&x| mul_mod(x, c, self.p)).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Elem {
        let d = self.deg;
        let p = self.p;
        let mut prod = vec![0u128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p as u128;
            }
        }
        let mut prod: Vec<u64> = prod.into_iter().map(|x| x as u64).collect();
        for k in (d..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                let t = mul_mod(c, self.modulus[i], p);
                prod[k - d + i] = (prod[k - d + i] + p - t) % p;
            }
            prod[k] = 0;
        }
        prod.truncate(d);
        prod
    }

    pub fn pow(&self, a: &[u64], e: &BigUint) -> Elem {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }

    pub fn pow_u64(&self, a: &[u64], e: u64) -> Elem {
        self.pow(a, &BigUint::from(e))
    }

    pub fn frobenius(&self, a: &[u64]) -> Elem {
        self.pow_u64(a, self.p)
    }

    pub fn inv(&self, a: &[u64]) -> Elem {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, &(self.order() - 2u32))
    }

    pub fn is_square(&self, a: &[u64]) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = (self.order() - 1u32) / 2u32;
        self.pow(a, &e) == self.one()
    }

    /// Seeded random search for a non-square.
    pub fn non_square(&self) -> Elem {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5a5a ^ self.p);
        loop {
            let cand = self.random(&mut rng);
            if !self.is_zero(&cand) && !self.is_square(&cand) {
                return cand;
            }
        }
    }

    /// Tonelli-Shanks square root, None for non-squares.
    pub fn sqrt(&self, a: &[u64]) -> Option<Elem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        let qm1 = self.order() - 1u32;
        let s = qm1.trailing_zeros().unwrap_or(0);
        let t = &qm1 >> s;
        let z = self.non_square();
        let mut m = s;
        let mut c = self.pow(&z, &t);
        let mut x = self.pow(a, &((&t + 1u32) / 2u32));
        let mut b = self.pow(a, &t);
        let one = self.one();
        while b != one {
            let mut i = 0;
            let mut bb = b.clone();
            while bb != one {
                bb = self.mul(&bb, &bb);
                i += 1;
            }
            let mut w = c.clone();
            for _ in 0..(m - i - 1) {
                w = self.mul(&w, &w);
            }
            x = self.mul(&x, &w);
            c = self.mul(&w, &w);
            b = self.mul(&b, &c);
            m = i;
        }
        Some(x)
    }

    /// An element of exact multiplicative order n (n | q - 1).
    pub fn primitive_root_of_unity(&self, n: u64) -> Elem {
        let qm1 = self.order() - 1u32;
        assert!((&qm1 % n).is_zero(), "{n} does not divide q - 1");
        let cof = &qm1 / n;
        let primes: Vec<u64> = factor_u64(n).into_iter().map(|(l, _)| l).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(0x2007 ^ self.p ^ n);
        loop {
            let cand = self.random(&mut rng);
            if self.is_zero(&cand) {
                continue;
            }
            let z = self.pow(&cand, &cof);
            if primes
                .iter()
                .all(|&l| self.pow_u64(&z, n / l) != self.one())
            {
                return z;
            }
        }
    }

    pub fn random(&self, rng: &mut ChaCha8Rng) -> Elem {
        (0..self.deg).map(|_| rng.gen_range(0..self.p)).collect()
    }

    // ---- polynomials over F_q (ascending coefficient vectors) ----

    pub fn poly_trim(&self, mut a: Poly) -> Poly {
        while a.last().is_some_and(|c| self.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn poly_deg(&self, a: &Poly) -> Option<usize> {
        a.iter().rposition(|c| !self.is_zero(c))
    }

    pub fn poly_monic(&self, a: &Poly) -> Poly {
        let a = self.poly_trim(a.clone());
        let lc = self.inv(a.last().expect("zero polynomial"));
        a.iter().map(|c| self.mul(c, &lc)).collect()
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let z = self.zero();
        let r = (0..n)
            .map(|i| self.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect();
        self.poly_trim(r)
    }

    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut r = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] = self.add(&r[i + j], &self.mul(x, y));
            }
        }
        self.poly_trim(r)
    }

    pub fn poly_divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let b = self.poly_trim(b.clone());
        let db = b.len() - 1;
        let inv_lc = self.inv(&b[db]);
        let mut r = self.poly_trim(a.clone());
        if r.len() < b.len() {
            return (vec![], r);
        }
        let mut q = vec![self.zero(); r.len() - db];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = self.mul(r.last().unwrap(), &inv_lc);
            for i in 0..=db {
                r[k + i] = self.sub(&r[k + i], &self.mul(&c, &b[i]));
            }
            q[k] = c;
            r.pop();
            r = self.poly_trim(r);
        }
        (self.poly_trim(q), r)
    }

    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly_divrem(a, b).1
    }

    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut a = self.poly_trim(a.clone());
        let mut b = self.poly_trim(b.clone());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            a
        } else {
            self.poly_monic(&a)
        }
    }

    pub fn poly_powmod(&self, base: &Poly, e: &BigUint, m: &Poly) -> Poly {
        let mut r: Poly = vec![self.one()];
        let base = self.poly_rem(base, m);
        for i in (0..e.bits()).rev() {
            r = self.poly_rem(&self.poly_mul(&r, &r), m);
            if e.bit(i) {
                r = self.poly_rem(&self.poly_mul(&r, &base), m);
            }
        }
        r
    }

    pub fn poly_eval(&self, a: &Poly, x: &[u64]) -> Elem {
        let mut r = self.zero();
        for c in a.iter().rev() {
            r = self.add(&self.mul(&r, x), c);
        }
        r
    }

    fn x_poly(&self) -> Poly {
        vec![self.zero(), self.one()]
    }

    /// x^(q^k) mod m
    fn frob_x(&self, m: &Poly, k: usize) -> Poly {
        let q = self.order();
        let mut r = self.x_poly();
        for _ in 0..k {
            r = self.poly_powmod(&r, &q, m);
        }
        r
    }

    pub fn poly_is_irreducible(&self, g: &Poly) -> bool {
        let g = self.poly_monic(g);
        let n = g.len() - 1;
        if n <= 1 {
            return n == 1;
        }
        let x = self.x_poly();
        if !self.poly_sub(&self.frob_x(&g, n), &x).is_empty() {
            return false;
        }
        factor_u64(n as u64).into_iter().all(|(l, _)| {
            let h = self.poly_sub(&self.frob_x(&g, n / l as usize), &x);
            self.poly_deg(&self.poly_gcd(&g, &h)) == Some(0)
        })
    }

    /// Degrees of the irreducible factors of g (without multiplicity).
    pub fn factor_degrees(&self, g: &Poly) -> Vec<usize> {
        let mut rest = self.poly_monic(g);
        let x = self.x_poly();
        let mut out = Vec::new();
        let mut d = 1;
        let q = self.order();
        let mut xq = x.clone();
        while rest.len() > 1 {
            xq = self.poly_powmod(&xq, &q, &rest);
            let h = self.poly_gcd(&rest, &self.poly_sub(&xq, &x));
            if h.len() > 1 {
                out.push(d);
                loop {
                    let c = self.poly_gcd(&rest, &h);
                    if c.len() <= 1 {
                        break;
                    }
                    rest = self.poly_divrem(&rest, &c).0;
                }
                if rest.len() > 1 {
                    xq = self.poly_rem(&xq, &rest);
                }
            }
            d += 1;
        }
        out
    }

    /// Distinct roots of g in F_q with their multiplicities, sorted.
    pub fn poly_roots(&self, g: &Poly) -> Vec<(Elem, usize)> {
        let g = self.poly_monic(g);
        if g.len() <= 1 {
            return vec![];
        }
        let x = self.x_poly();
        let xq = self.poly_powmod(&x, &self.order(), &g);
        let h = self.poly_gcd(&g, &self.poly_sub(&xq, &x));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ self.p);
        let mut roots = Vec::new();
        self.split_linear(h, &mut rng, &mut roots);
        roots.sort();
        roots
            .into_iter()
            .map(|r| {
                let lin = vec![self.neg(&r), self.one()];
                let mut m = 0;
                let mut cur = g.clone();
                loop {
                    let (qq, rr) = self.poly_divrem(&cur, &lin);
                    if !rr.is_empty() {
                        break;
                    }
                    m += 1;
                    cur = qq;
                }
                (r, m)
            })
            .collect()
    }

    fn split_linear(&self, h: Poly, rng: &mut ChaCha8Rng, out: &mut Vec<Elem>) {
        let n = h.len().saturating_sub(1);
        if n == 0 {
            return;
        }
        if n == 1 {
            out.push(self.neg(&h[0]));
            return;
        }
        if self.p == 2 {
            for r in self.all_elements() {
                if self.is_zero(&self.poly_eval(&h, &r)) {
                    out.push(r);
                }
            }
            return;
        }
        let e = (self.order() - 1u32) / 2u32;
        loop {
            let a = self.random(rng);
            let t = vec![a, self.one()];
            let mut w = self.poly_powmod(&t, &e, &h);
            if w.is_empty() {
                continue;
            }
            w[0] = self.sub(&w[0], &self.one());
            let d = self.poly_gcd(&h, &self.poly_trim(w));
            let dd = d.len().saturating_sub(1);
            if dd > 0 && dd < n {
                let other = self.poly_divrem(&h, &d).0;
                self.split_linear(d, rng, out);
                self.split_linear(self.poly_monic(&other), rng, out);
                return;
            }
        }
    }

    fn all_elements(&self) -> Vec<Elem> {
        let total = self.p.pow(self.deg as u32);
        (0..total)
            .map(|mut k| {
                let mut v = self.zero();
                for c in v.iter_mut() {
                    *c = k % self.p;
                    k /= self.p;
                }
                v
            })
            .collect()
    }
}

fn to_poly(coeffs: &[u64]) -> Poly {
    coeffs.iter().map(|&c| vec![c]).collect()
}

/// F_q(y) with y^2 = n, n a non-square of F_q.
#[derive(Debug, Clone)]
pub struct Fq2 {
    pub base: Fq,
    pub nonsq: Elem,
}

pub type Elem2 = (Elem, Elem);

impl Fq2 {
    pub fn new(base: Fq) -> Fq2 {
        let nonsq = base.non_square();
        Fq2 { base, nonsq }
    }

    pub fn embed(&self, a: &[u64]) -> Elem2 {
        (a.to_vec(), self.base.zero())
    }

    pub fn one(&self) -> Elem2 {
        self.embed(&self.base.one())
    }

    pub fn mul(&self, a: &Elem2, b: &Elem2) -> Elem2 {
        let f = &self.base;
        let bb = f.mul(&a.1, &b.1);
        (
            f.add(&f.mul(&a.0, &b.0), &f.mul(&bb, &self.nonsq)),
            f.add(&f.mul(&a.0, &b.1), &f.mul(&a.1, &b.0)),
        )
    }

    pub fn pow_u64(&self, a: &Elem2, mut e: u64) -> Elem2 {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn frobenius(&self, a: &Elem2) -> Elem2 {
        self.pow_u64(a, self.base.p)
    }

    pub fn inv(&self, a: &Elem2) -> Elem2 {
        let f = &self.base;
        // (x + y s)^-1 = (x - y s) / (x^2 - n y^2)
        let norm = f.sub(&f.mul(&a.0, &a.0), &f.mul(&f.mul(&a.1, &a.1), &self.nonsq));
        let ni = f.inv(&norm);
        (f.mul(&a.0, &ni), f.neg(&f.mul(&a.1, &ni)))
    }

    /// A square root of an element of the base field.
    pub fn sqrt_base(&self, a: &[u64]) -> Elem2 {
        let f = &self.base;
        match f.sqrt(a) {
            Some(r) => self.embed(&r),
            None => {
                let t = f.mul(a, &f.inv(&self.nonsq));
                let r = f.sqrt(&t).expect("a / n is a square");
                (f.zero(), r)
            }
        }
    }

    /// +1, -1 or None when the element is neither.
    pub fn as_sign(&self, a: &Elem2) -> Option<i8> {
        let f = &self.base;
        if !f.is_zero(&a.1) {
            return None;
        }
        if a.0 == f.one() {
            Some(1)
        } else if a.0 == f.from_int(-1) {
            Some(-1)
        } else {
            None
        }
    }
}

/// Integer polynomial reduced to F_p coefficients, as a polynomial over F_q.
pub fn reduce_int_poly(fq: &Fq, coeffs: &[num_bigint::BigInt]) -> Poly {
    let p = num_bigint::BigInt::from(fq.p);
    let r = coeffs
        .iter()
        .map(|c| {
            let v: u64 = c.mod_floor(&p).try_into().unwrap();
            let mut e = fq.zero();
            e[0] = v;
            e
        })
        .collect();
    fq.poly_trim(r)
}

pub fn legendre_u64(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        0
    } else if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn is_one(fq: &Fq, a: &[u64]) -> bool {
    a == fq.one().as_slice()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        let f = Fq::new(5, 2);
        assert!(Fq::prime(5).poly_is_irreducible(&to_poly(&f.modulus)));
        let elems = f.all_elements();
        assert_eq!(elems.len(), 25);
        for a in &elems {
            if !f.is_zero(a) {
                assert_eq!(f.mul(a, &f.inv(a)), f.one());
            }
            assert_eq!(f.pow_u64(a, 25), *a);
        }
    }

    #[test]
    fn sqrt_and_roots() {
        let f = Fq::new(13, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let a = f.random(&mut rng);
            let sq = f.mul(&a, &a);
            let r = f.sqrt(&sq).unwrap();
            assert_eq!(f.mul(&r, &r), sq);
        }
        let z = f.primitive_root_of_unity(61);
        assert_ne!(z, f.one());
        assert_eq!(f.pow_u64(&z, 61), f.one());
    }

    #[test]
    fn polynomial_roots_with_multiplicity() {
        let f = Fq::prime(7);
        // (x-1)^2 (x-3) (x^2+1)
        let lin = |a: i64| vec![f.from_int(-a), f.one()];
        let mut g = f.poly_mul(&lin(1), &lin(1));
        g = f.poly_mul(&g, &lin(3));
        g = f.poly_mul(&g, &vec![f.one(), f.zero(), f.one()]);
        let r = f.poly_roots(&g);
        assert_eq!(r, vec![(f.from_int(1), 2), (f.from_int(3), 1)]);
        let mut degs = f.factor_degrees(&g);
        degs.sort();
        assert_eq!(degs, vec![1, 2]);
    }

    #[test]
    fn quadratic_extension() {
        let f = Fq::new(7, 2);
        let f2 = Fq2::new(f.clone());
        let n = f2.nonsq.clone();
        let r = f2.sqrt_base(&n);
        assert_eq!(f2.mul(&r, &r), f2.embed(&n));
        let x = (f.gen(), f.one());
        assert_eq!(f2.mul(&x, &f2.inv(&x)), f2.one());
    }
}
