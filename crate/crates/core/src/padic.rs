//! Exact arithmetic in Q_{p^F}(p^{1/E}) with E | p^F - 1, and root finding
//! for integer polynomials in such fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{bigpow, lcm, mult_order, val_p};
use crate::error::{Error, Result};
use crate::ff::{Elem, Fq};
use crate::poly;

pub type Q = Ratio<i64>;

type Unr = Vec<BigInt>;

/// Q_{p^F}(pi) with pi^E = p, elements kept modulo p^N.
#[derive(Debug, Clone)]
pub struct TameLocalField {
    pub p: u64,
    pub f: usize,
    pub e: usize,
    pub n: u32,
    modulus: BigInt,
    bp: BigInt,
    g_lift: Vec<BigInt>,
    pub residue: Fq,
    frob_pows: Vec<Unr>,
    zeta_pows: Vec<Unr>,
    pub zeta_residue: Elem,
}

/// Coefficients `c[i][j]` of omega^j pi^i, 0 <= i < E, 0 <= j < F.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameElement {
    pub c: Vec<Unr>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum FrobeniusLift {
    /// Frobenius fixes pi.
    #[default]
    FixPi,
    /// Frobenius sends pi to zeta_E pi.
    ShiftPi,
}

impl FrobeniusLift {
    pub fn shift(self) -> u64 {
        match self {
            FrobeniusLift::FixPi => 0,
            FrobeniusLift::ShiftPi => 1,
        }
    }
}

impl TameLocalField {
    pub fn new(p: u64, f: usize, e: usize, n: u32) -> TameLocalField {
        assert!(p % 2 == 1 && e as u64 % p != 0);
        let residue = Fq::new(p, f);
        let modulus = bigpow(p, n);
        let g_lift = residue.modulus.iter().map(|&c| BigInt::from(c)).collect();
        let mut k = TameLocalField {
            p,
            f,
            e,
            n,
            modulus,
            bp: BigInt::from(p),
            g_lift,
            residue,
            frob_pows: vec![],
            zeta_pows: vec![],
            zeta_residue: vec![],
        };
        k.frob_pows = k.frobenius_powers();
        let zr = k.residue.primitive_root_of_unity(e as u64);
        let zeta = k.teichmuller(&zr, e as u64);
        let mut pows = vec![k.u_one()];
        for i in 1..e {
            let nxt = k.u_mul(&pows[i - 1], &zeta);
            pows.push(nxt);
        }
        k.zeta_pows = pows;
        k.zeta_residue = zr;
        k
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    // ---- unramified part Z_p[x]/(G) ----

    fn red(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.modulus)
    }

    fn u_zero(&self) -> Unr {
        vec![BigInt::zero(); self.f]
    }

    fn u_one(&self) -> Unr {
        let mut v = self.u_zero();
        v[0] = BigInt::one();
        v
    }

    fn u_add(&self, a: &Unr, b: &Unr) -> Unr {
        a.iter().zip(b).map(|(x, y)| self.red(&(x + y))).collect()
    }

    fn u_sub(&self, a: &Unr, b: &Unr) -> Unr {
        a.iter().zip(b).map(|(x, y)| self.red(&(x - y))).collect()
    }

    fn u_scale(&self, a: &Unr, c: &BigInt) -> Unr {
        a.iter().map(|x| self.red(&(x * c))).collect()
    }

    fn u_mul(&self, a: &Unr, b: &Unr) -> Unr {
        let f = self.f;
        if f == 1 {
            return vec![self.red(&(&a[0] * &b[0]))];
        }
        let mut prod = vec![BigInt::zero(); 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (f..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            let c = self.red(&c);
            for i in 0..f {
                let t = &c * &self.g_lift[i];
                prod[k - f + i] -= t;
            }
        }
        prod.truncate(f);
        prod.iter().map(|x| self.red(x)).collect()
    }

    fn u_is_zero(&self, a: &Unr) -> bool {
        a.iter().all(|x| x.is_zero())
    }

    fn u_val(&self, a: &Unr) -> Option<u32> {
        a.iter()
            .filter(|x| !x.is_zero())
            .map(|x| val_p(x, self.p))
            .min()
    }

    fn u_residue(&self, a: &Unr) -> Elem {
        a.iter()
            .map(|x| x.mod_floor(&self.bp).to_u64().unwrap())
            .collect()
    }

    fn u_lift(&self, a: &[u64]) -> Unr {
        a.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn newton_steps(&self) -> usize {
        (64 - (self.n as u64 * self.e as u64 + 1).leading_zeros()) as usize + 2
    }

    fn u_inv(&self, a: &Unr) -> Unr {
        let r = self.u_residue(a);
        let mut y = self.u_lift(&self.residue.inv(&r));
        let two = {
            let mut v = self.u_zero();
            v[0] = BigInt::from(2);
            v
        };
        for _ in 0..self.newton_steps() {
            let ay = self.u_mul(a, &y);
            y = self.u_mul(&y, &self.u_sub(&two, &ay));
        }
        y
    }

    fn u_pow(&self, a: &Unr, mut k: u64) -> Unr {
        let mut r = self.u_one();
        let mut b = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                r = self.u_mul(&r, &b);
            }
            b = self.u_mul(&b, &b);
            k >>= 1;
        }
        r
    }

    /// x^j for the Frobenius image of x, j < F.
    fn frobenius_powers(&self) -> Vec<Unr> {
        let f = self.f;
        if f == 1 {
            return vec![self.u_one()];
        }
        let mut x = self.u_zero();
        x[1] = BigInt::one();
        let mut y = self.u_pow(&x, self.p);
        let eval = |t: &Unr, coeffs: &[BigInt]| {
            let mut acc = self.u_zero();
            for c in coeffs.iter().rev() {
                acc = self.u_mul(&acc, t);
                acc[0] = self.red(&(&acc[0] + c));
            }
            acc
        };
        let deriv: Vec<BigInt> = self
            .g_lift
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        for _ in 0..self.newton_steps() {
            let num = eval(&y, &self.g_lift);
            let den = eval(&y, &deriv);
            y = self.u_sub(&y, &self.u_mul(&num, &self.u_inv(&den)));
        }
        let mut pows = vec![self.u_one()];
        for j in 1..f {
            let nxt = self.u_mul(&pows[j - 1], &y);
            pows.push(nxt);
        }
        pows
    }

    fn teichmuller(&self, r: &[u64], order: u64) -> Unr {
        let mut y = self.u_lift(r);
        let ord = BigInt::from(order);
        for _ in 0..self.newton_steps() {
            let ym1 = self.u_pow(&y, order - 1);
            let mut num = self.u_mul(&ym1, &y);
            num[0] = self.red(&(&num[0] - 1));
            let den = self.u_scale(&ym1, &ord);
            y = self.u_sub(&y, &self.u_mul(&num, &self.u_inv(&den)));
        }
        y
    }

    fn u_frob(&self, a: &Unr) -> Unr {
        let mut acc = self.u_zero();
        for (j, c) in a.iter().enumerate() {
            if !c.is_zero() {
                acc = self.u_add(&acc, &self.u_scale(&self.frob_pows[j], c));
            }
        }
        acc
    }

    // ---- the ramified field ----

    pub fn zero(&self) -> TameElement {
        TameElement {
            c: vec![self.u_zero(); self.e],
        }
    }

    pub fn from_int(&self, v: &BigInt) -> TameElement {
        let mut x = self.zero();
        x.c[0][0] = self.red(v);
        x
    }

    pub fn from_residue(&self, r: &[u64]) -> TameElement {
        let mut x = self.zero();
        x.c[0] = self.u_lift(r);
        x
    }

    pub fn add(&self, a: &TameElement, b: &TameElement) -> TameElement {
        TameElement {
            c: a.c
                .iter()
                .zip(&b.c)
                .map(|(x, y)| self.u_add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &TameElement, b: &TameElement) -> TameElement {
        TameElement {
            c: a.c
                .iter()
                .zip(&b.c)
                .map(|(x, y)| self.u_sub(x, y))
                .collect(),
        }
    }

    pub fn mul(&self, a: &TameElement, b: &TameElement) -> TameElement {
        let e = self.e;
        let mut out = self.zero();
        for (i, x) in a.c.iter().enumerate() {
            if self.u_is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if self.u_is_zero(y) {
                    continue;
                }
                let mut t = self.u_mul(x, y);
                let mut k = i + j;
                if k >= e {
                    k -= e;
                    t = self.u_scale(&t, &self.bp);
                }
                out.c[k] = self.u_add(&out.c[k], &t);
            }
        }
        out
    }

    /// Multiply by pi^s (s may be negative; division must be exact up to
    /// the precision the caller tracks).
    pub fn shift(&self, a: &TameElement, s: i64) -> TameElement {
        let e = self.e as i64;
        let mut out = self.zero();
        for (i, u) in a.c.iter().enumerate() {
            let t = i as i64 + s;
            let k = t.div_euclid(e);
            let r = t.rem_euclid(e) as usize;
            out.c[r] = if k >= 0 {
                self.u_scale(u, &bigpow(self.p, k as u32))
            } else {
                let d = bigpow(self.p, (-k) as u32);
                u.iter().map(|x| x.div_floor(&d)).collect()
            };
        }
        out
    }

    /// Valuation in units of 1/E; None if zero modulo p^N.
    pub fn val(&self, a: &TameElement) -> Option<i64> {
        a.c.iter()
            .enumerate()
            .filter_map(|(i, u)| self.u_val(u).map(|v| v as i64 * self.e as i64 + i as i64))
            .min()
    }

    /// Residue class of an integral element.
    pub fn residue_of(&self, a: &TameElement) -> Elem {
        self.u_residue(&a.c[0])
    }

    /// (k, u) with a = pi^k * unit and u the residue of that unit.
    pub fn leading_term(&self, a: &TameElement) -> Option<(i64, Elem)> {
        let k = self.val(a)?;
        let e = self.e as i64;
        let i = k.rem_euclid(e) as usize;
        let d = bigpow(self.p, k.div_euclid(e) as u32);
        let u: Unr = a.c[i].iter().map(|x| x.div_floor(&d)).collect();
        Some((k, self.u_residue(&u)))
    }

    pub fn inv_unit(&self, a: &TameElement) -> TameElement {
        let r = self.residue_of(a);
        let mut y = self.from_residue(&self.residue.inv(&r));
        let two = self.from_int(&BigInt::from(2));
        for _ in 0..self.newton_steps() {
            let ay = self.mul(a, &y);
            y = self.mul(&y, &self.sub(&two, &ay));
        }
        y
    }

    /// The inertia generator: pi -> zeta_E pi.
    pub fn iota(&self, a: &TameElement) -> TameElement {
        TameElement {
            c: a.c
                .iter()
                .enumerate()
                .map(|(i, u)| self.u_mul(u, &self.zeta_pows[i]))
                .collect(),
        }
    }

    /// The Frobenius lift: omega -> omega^p on the unramified part, and
    /// pi -> pi or pi -> zeta_E pi depending on the lift.
    pub fn frob(&self, a: &TameElement, lift: FrobeniusLift) -> TameElement {
        let x = TameElement {
            c: a.c.iter().map(|u| self.u_frob(u)).collect(),
        };
        match lift {
            FrobeniusLift::FixPi => x,
            FrobeniusLift::ShiftPi => self.iota(&x),
        }
    }

    pub fn poly_eval(&self, g: &[TameElement], x: &TameElement) -> TameElement {
        let mut acc = self.zero();
        for c in g.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    fn poly_deriv(&self, g: &[TameElement]) -> Vec<TameElement> {
        g.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let k = BigInt::from(i);
                TameElement {
                    c: c.c.iter().map(|u| self.u_scale(u, &k)).collect(),
                }
            })
            .collect()
    }

    /// Coefficients of g(a + x).
    fn taylor_shift(&self, g: &[TameElement], a: &TameElement) -> Vec<TameElement> {
        let mut c = g.to_vec();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = self.mul(a, &c[j + 1]);
                c[j] = self.add(&c[j], &t);
            }
        }
        c
    }
}

/// Lower convex hull of points (x, y) sorted by x; returns (slope, length).
pub fn lower_hull(points: &[(i64, Q)]) -> Vec<(Q, i64)> {
    let mut hull: Vec<(i64, Q)> = Vec::new();
    for &(x, y) in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // drop middle point if it lies on or above the chord
            if (y2 - y1) * Q::from(x - x1) >= (y - y1) * Q::from(x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    hull.windows(2)
        .map(|w| {
            (
                (w[1].1 - w[0].1) / Q::from(w[1].0 - w[0].0),
                w[1].0 - w[0].0,
            )
        })
        .collect()
}

/// A Newton polygon segment; `slope: None` stands for the roots at zero
/// (valuation infinity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub slope: Option<Q>,
    pub length: i64,
}

/// Newton polygon of an integer polynomial at p. Roots equal to zero are
/// reported as one leading segment with slope None so that the lengths sum
/// to the degree.
pub fn newton_polygon(f: &[BigInt], p: u64) -> Vec<Segment> {
    let f = poly::trim(f.to_vec());
    assert!(!f.is_empty(), "zero polynomial");
    let low = f.iter().position(|c| !c.is_zero()).unwrap();
    let mut out = Vec::new();
    if low > 0 {
        out.push(Segment {
            slope: None,
            length: low as i64,
        });
    }
    let pts: Vec<(i64, Q)> = f
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, Q::from(val_p(c, p) as i64)))
        .collect();
    for (s, l) in lower_hull(&pts) {
        match out.last_mut() {
            Some(Segment {
                slope: Some(t),
                length,
            }) if *t == s => *length += l,
            _ => out.push(Segment {
                slope: Some(s),
                length: l,
            }),
        }
    }
    out
}

#[derive(Debug, Clone)]
struct RootApprox {
    value: TameElement,
    /// known modulo pi^prec
    prec: i64,
}

enum Search {
    Done(Vec<RootApprox>),
    Need { f: u64, e: u64 },
}

/// The roots of f with their pairwise valuations and Galois action.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub field: TameLocalField,
    /// roots of the monic polynomial c^(n-1) f(x/c), i.e. c times the roots of f
    pub scaled_roots: Vec<TameElement>,
    pub lead: BigInt,
    /// v_p of the leading coefficient
    pub lead_val: i64,
    /// v(r_i - r_j) for the roots r_i of f; None on the diagonal
    pub val_matrix: Vec<Vec<Option<Q>>>,
    pub iota_perm: Vec<usize>,
    pub frob_perm: Vec<usize>,
    pub lift: FrobeniusLift,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SplitOptions {
    pub precision: Option<u32>,
    pub lift: FrobeniusLift,
}

pub const PRECISION_CAP: u32 = 1 << 14;
const MAX_FIELD_DEGREE: u64 = 4096;

impl RootSystem {
    pub fn degree(&self) -> usize {
        self.scaled_roots.len()
    }

    pub fn val(&self, i: usize, j: usize) -> Q {
        self.val_matrix[i][j].expect("diagonal valuation")
    }

    pub fn p(&self) -> u64 {
        self.field.p
    }

    /// Leading term (valuation in 1/E units, residue) of
    /// c * prod_{j in others} (r_i - r_j).
    pub fn leading_term_of_product(&self, i: usize, others: &[usize]) -> (i64, Elem) {
        let k = &self.field;
        let fq = &k.residue;
        let c = k.from_int(&self.lead);
        let (cv, cu) = k.leading_term(&c).expect("nonzero leading coefficient");
        let m = others.len() as i64;
        // c * prod (R_i - R_j) / c^m
        let mut val = cv * (1 - m);
        let cu_inv = fq.inv(&cu);
        let mut res = if m == 0 {
            cu.clone()
        } else {
            fq.pow_u64(&cu_inv, (m - 1) as u64)
        };
        for &j in others {
            let d = k.sub(&self.scaled_roots[i], &self.scaled_roots[j]);
            let (dv, du) = k.leading_term(&d).expect("distinct roots");
            val += dv;
            res = fq.mul(&res, &du);
        }
        (val, res)
    }
}

/// Split f over a tamely ramified extension of Q_p.
pub fn splitting_data(f: &[BigInt], p: u64, opts: SplitOptions) -> Result<RootSystem> {
    let f = poly::trim(f.to_vec());
    if f.len() < 2 {
        return Err(Error::Invalid("polynomial of degree < 1".into()));
    }
    if p % 2 == 0 || !crate::arith::is_prime(p) {
        return Err(Error::Invalid(format!("p = {p} must be an odd prime")));
    }
    let disc = poly::discriminant(&f);
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    let start = opts.precision.unwrap_or(2 * val_p(&disc, p) + 8).max(4);
    let monic = poly::scale_to_monic(&f);
    let lead = f.last().unwrap().clone();
    let mut n = start;
    let (mut fdeg, mut edeg) = (1u64, 1u64);
    loop {
        if n > PRECISION_CAP {
            return Err(Error::PrecisionExhausted {
                p,
                precision: PRECISION_CAP,
            });
        }
        let field = TameLocalField::new(p, fdeg as usize, edeg as usize, n);
        let g: Vec<TameElement> = monic.iter().map(|c| field.from_int(c)).collect();
        let prec = field.e as i64 * n as i64;
        match find_roots(&field, g, prec) {
            Ok(Search::Need { f: fm, e: em }) => {
                if em % p == 0 {
                    return Err(Error::WildRamification { p });
                }
                edeg = lcm(edeg, em);
                fdeg = lcm(fdeg, fm);
                fdeg = lcm(fdeg, mult_order(p % edeg, edeg));
                if fdeg * edeg > MAX_FIELD_DEGREE {
                    return Err(Error::Invalid(format!(
                        "splitting field at p = {p} exceeds degree {MAX_FIELD_DEGREE}"
                    )));
                }
            }
            Ok(Search::Done(roots)) => {
                assert_eq!(roots.len(), f.len() - 1);
                match assemble(field, roots, &lead, opts.lift) {
                    Ok(rs) => return Ok(rs),
                    Err(Error::PrecisionExhausted { .. }) => n *= 2,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::PrecisionExhausted { .. }) => n *= 2,
            Err(e) => return Err(e),
        }
    }
}

fn find_roots(k: &TameLocalField, g: Vec<TameElement>, prec: i64) -> Result<Search> {
    let exhausted = || Error::PrecisionExhausted {
        p: k.p,
        precision: k.n,
    };
    if prec <= 0 {
        return Err(exhausted());
    }
    let vals: Vec<Option<i64>> = g.iter().map(|c| k.val(c).filter(|&v| v < prec)).collect();
    let content = vals.iter().flatten().min().copied().ok_or_else(exhausted)?;
    let prec = prec - content;
    if prec <= 0 {
        return Err(exhausted());
    }
    let g: Vec<TameElement> = g.iter().map(|c| k.shift(c, -content)).collect();
    let fq = &k.residue;
    let gbar = fq.poly_trim(g.iter().map(|c| k.residue_of(c)).collect());
    let d = gbar.len().saturating_sub(1);
    if d == 0 {
        return Ok(Search::Done(vec![]));
    }
    let roots = fq.poly_roots(&gbar);
    let split: usize = roots.iter().map(|(_, m)| m).sum();
    if split < d {
        let degs = fq.factor_degrees(&gbar);
        let fm = degs.into_iter().fold(1u64, |a, b| lcm(a, b as u64));
        return Ok(Search::Need {
            f: k.f as u64 * fm,
            e: k.e as u64,
        });
    }
    let mut out = Vec::new();
    for (abar, m) in roots {
        let a = k.from_residue(&abar);
        if m == 1 {
            out.push(hensel(k, &g, a, prec)?);
            continue;
        }
        let shifted = k.taylor_shift(&g, &a);
        let scaled: Vec<TameElement> = shifted
            .iter()
            .enumerate()
            .map(|(i, c)| k.shift(c, i as i64))
            .collect();
        match find_roots(k, scaled, prec)? {
            Search::Need { f, e } => return Ok(Search::Need { f, e }),
            Search::Done(ys) => {
                if ys.len() < m {
                    return ramification_need(k, &shifted, prec);
                }
                for y in ys {
                    let v = k.add(&a, &k.shift(&y.value, 1));
                    out.push(RootApprox {
                        value: v,
                        prec: y.prec + 1,
                    });
                }
            }
        }
    }
    Ok(Search::Done(out))
}

fn ramification_need(k: &TameLocalField, shifted: &[TameElement], prec: i64) -> Result<Search> {
    let pts: Vec<(i64, Q)> = shifted
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            k.val(c)
                .filter(|&v| v < prec)
                .map(|v| (i as i64, Q::from(v)))
        })
        .collect();
    let mut need = 1u64;
    for (slope, _) in lower_hull(&pts) {
        let s = -slope;
        if s > Q::zero() && s < Q::one() {
            need = lcm(need, *s.denom() as u64);
        }
    }
    if need == 1 {
        return Err(Error::PrecisionExhausted {
            p: k.p,
            precision: k.n,
        });
    }
    Ok(Search::Need {
        f: k.f as u64,
        e: k.e as u64 * need,
    })
}

fn hensel(k: &TameLocalField, g: &[TameElement], a: TameElement, prec: i64) -> Result<RootApprox> {
    let dg = k.poly_deriv(g);
    let mut x = a;
    for _ in 0..k.newton_steps() + 2 {
        let gx = k.poly_eval(g, &x);
        if k.val(&gx).is_none_or(|v| v >= prec) {
            return Ok(RootApprox { value: x, prec });
        }
        let d = k.poly_eval(&dg, &x);
        if k.val(&d) != Some(0) {
            break;
        }
        x = k.sub(&x, &k.mul(&gx, &k.inv_unit(&d)));
    }
    Err(Error::PrecisionExhausted {
        p: k.p,
        precision: k.n,
    })
}

fn assemble(
    field: TameLocalField,
    roots: Vec<RootApprox>,
    lead: &BigInt,
    lift: FrobeniusLift,
) -> Result<RootSystem> {
    let n = roots.len();
    let exhausted = || Error::PrecisionExhausted {
        p: field.p,
        precision: field.n,
    };
    let e = field.e as i64;
    let lead_val = val_p(lead, field.p) as i64;
    let mut vm = vec![vec![None; n]; n];
    let mut max_entry = i64::MIN;
    for i in 0..n {
        for j in 0..i {
            let bound = roots[i].prec.min(roots[j].prec);
            let v = field
                .val(&field.sub(&roots[i].value, &roots[j].value))
                .filter(|&v| v < bound)
                .ok_or_else(exhausted)?;
            max_entry = max_entry.max(v);
            let q = Q::new(v, e) - Q::from(lead_val);
            vm[i][j] = Some(q);
            vm[j][i] = Some(q);
        }
    }
    if roots.iter().any(|r| r.prec <= max_entry) {
        return Err(exhausted());
    }
    let matcher = |img: &TameElement, i: usize| -> Result<usize> {
        let hits: Vec<usize> = (0..n)
            .filter(|&j| {
                let bound = roots[i].prec.min(roots[j].prec);
                match field.val(&field.sub(img, &roots[j].value)) {
                    None => true,
                    Some(v) => v >= bound || v > max_entry,
                }
            })
            .collect();
        match hits.as_slice() {
            [j] => Ok(*j),
            _ => Err(exhausted()),
        }
    };
    let mut iota_perm = Vec::with_capacity(n);
    let mut frob_perm = Vec::with_capacity(n);
    for (i, r) in roots.iter().enumerate() {
        iota_perm.push(matcher(&field.iota(&r.value), i)?);
        frob_perm.push(matcher(&field.frob(&r.value, lift), i)?);
    }
    for perm in [&iota_perm, &frob_perm] {
        let mut seen = vec![false; n];
        for &j in perm.iter() {
            if std::mem::replace(&mut seen[j], true) {
                return Err(exhausted());
            }
        }
    }
    Ok(RootSystem {
        field,
        scaled_roots: roots.into_iter().map(|r| r.value).collect(),
        lead: lead.clone(),
        lead_val,
        val_matrix: vm,
        iota_perm,
        frob_perm,
        lift,
    })
}

/// Compose permutations: (a then b)[i] = b[a[i]].
pub fn perm_then(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&i| b[i]).collect()
}

pub fn perm_pow(a: &[usize], k: u64) -> Vec<usize> {
    let mut r: Vec<usize> = (0..a.len()).collect();
    for _ in 0..k {
        r = perm_then(&r, a);
    }
    r
}

pub fn perm_inverse(a: &[usize]) -> Vec<usize> {
    let mut r = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        r[j] = i;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn field_arithmetic_roundtrip() {
        let k = TameLocalField::new(13, 2, 4, 10);
        let a = k.add(
            &k.from_residue(&[3, 5]),
            &k.shift(&k.from_residue(&[1, 2]), 1),
        );
        let b = k.inv_unit(&a);
        assert_eq!(k.mul(&a, &b), k.from_int(&BigInt::one()));
        let pi = k.shift(&k.from_int(&BigInt::one()), 1);
        let mut pe = k.from_int(&BigInt::one());
        for _ in 0..4 {
            pe = k.mul(&pe, &pi);
        }
        assert_eq!(pe, k.from_int(&BigInt::from(13)));
        assert_eq!(k.val(&pi), Some(1));
        // iota^E = id and frob^F = id
        let mut x = a.clone();
        for _ in 0..4 {
            x = k.iota(&x);
        }
        assert_eq!(x, a);
        let y = k.frob(&k.frob(&a, FrobeniusLift::FixPi), FrobeniusLift::FixPi);
        assert_eq!(y, a);
        // frob is a ring map
        let c = k.add(
            &k.from_residue(&[7, 1]),
            &k.shift(&k.from_residue(&[0, 9]), 3),
        );
        let lhs = k.frob(&k.mul(&a, &c), FrobeniusLift::FixPi);
        let rhs = k.mul(
            &k.frob(&a, FrobeniusLift::FixPi),
            &k.frob(&c, FrobeniusLift::FixPi),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn newton_polygon_examples() {
        let np = newton_polygon(&ints(&[-5, 0, 1]), 5);
        assert_eq!(
            np,
            vec![Segment {
                slope: Some(Q::new(-1, 2)),
                length: 2
            }]
        );
        let np = newton_polygon(&ints(&[0, -1, 1]), 3);
        assert_eq!(
            np,
            vec![
                Segment {
                    slope: None,
                    length: 1
                },
                Segment {
                    slope: Some(Q::zero()),
                    length: 1
                }
            ]
        );
        let np = newton_polygon(&ints(&[-8, 12, 8, -8, -8, 0, 1]), 13);
        assert_eq!(
            np,
            vec![Segment {
                slope: Some(Q::zero()),
                length: 6
            }]
        );
    }

    #[test]
    fn sqrt5() {
        let rs = splitting_data(&ints(&[-5, 0, 1]), 5, SplitOptions::default()).unwrap();
        assert_eq!((rs.field.f, rs.field.e), (1, 2));
        assert_eq!(rs.val(0, 1), Q::new(1, 2));
        assert_eq!(rs.iota_perm, vec![1, 0]);
        assert_eq!(rs.frob_perm, vec![0, 1]);
    }

    #[test]
    fn worked_example_13() {
        let f = ints(&[-8, 12, 8, -8, -8, 0, 1]);
        let rs = splitting_data(&f, 13, SplitOptions::default()).unwrap();
        assert_eq!(rs.field.e, 4);
        let mut counts = std::collections::BTreeMap::new();
        for i in 0..6 {
            for j in 0..i {
                *counts.entry(rs.val(i, j)).or_insert(0) += 1;
            }
        }
        assert_eq!(counts[&Q::new(1, 4)], 10);
        assert_eq!(counts[&Q::zero()], 5);
        let cycles = crate::clusters::cycle_lengths(&rs.iota_perm);
        let mut c = cycles.clone();
        c.sort();
        assert_eq!(c, vec![1, 1, 4]);
    }

    #[test]
    fn six_roots_at_seven() {
        // x (x-7)(x-1)(x-8)(x-2)(x-3)
        let mut f = ints(&[1]);
        for r in [0, 7, 1, 8, 2, 3] {
            f = poly::mul(&f, &ints(&[-r, 1]));
        }
        let rs = splitting_data(&f, 7, SplitOptions::default()).unwrap();
        assert_eq!((rs.field.f, rs.field.e), (1, 1));
        let mut ones = 0;
        for i in 0..6 {
            for j in 0..i {
                let v = rs.val(i, j);
                assert!(v == Q::one() || v == Q::zero());
                ones += (v == Q::one()) as usize;
            }
        }
        assert_eq!(ones, 2);
        assert_eq!(rs.iota_perm, (0..6).collect::<Vec<_>>());
        assert_eq!(rs.frob_perm, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn wild_is_rejected() {
        let r = splitting_data(&ints(&[-3, 0, 0, 1]), 3, SplitOptions::default());
        assert!(matches!(r, Err(Error::WildRamification { p: 3 })));
    }

    #[test]
    fn non_squarefree_is_rejected() {
        let r = splitting_data(&ints(&[1, -2, 1]), 7, SplitOptions::default());
        assert_eq!(r.unwrap_err(), Error::NotSquarefree);
    }
}
