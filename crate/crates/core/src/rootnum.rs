//! Closed-form local root numbers: Jacobi symbols, the W(q, e) table and the
//! building blocks for dual pairs and self-dual irreducibles.

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, prime_power};
use crate::galois_rep::LocalRepData;

/// A root number, always +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bool(plus: bool) -> Sign {
        if plus {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Panics on 0; callers only pass symbols at coprime arguments.
    pub fn from_symbol(s: i8) -> Sign {
        match s {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => panic!("symbol {s} is not a unit"),
        }
    }

    /// (-1)^k
    pub fn parity(k: u64) -> Sign {
        Sign::from_bool(k % 2 == 0)
    }

    pub fn pow(self, k: u64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => Sign::parity(k),
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.as_i8()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;
    fn try_from(v: i8) -> Result<Sign, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(format!("{v} is not a sign")),
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        Sign::from_bool(self == o)
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, o: Sign) {
        *self = *self * o;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(it: I) -> Sign {
        it.fold(Sign::Plus, |a, b| a * b)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// A root number together with the factors it was assembled from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedRootNumber {
    pub value: Sign,
    pub breakdown: Vec<(String, Sign)>,
}

impl SignedRootNumber {
    pub fn from_factors(breakdown: Vec<(String, Sign)>) -> Self {
        let value = breakdown.iter().map(|(_, s)| *s).product();
        SignedRootNumber { value, breakdown }
    }
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi needs odd n");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (d/n) for n >= 1.
pub fn kronecker(d: i64, n: u64) -> i8 {
    assert!(n >= 1);
    let k = n.trailing_zeros();
    let odd = n >> k;
    let two = if k == 0 {
        1
    } else if d % 2 == 0 {
        0
    } else if matches!(d.rem_euclid(8), 1 | 7) || k % 2 == 0 {
        1
    } else {
        -1
    };
    two * jacobi(d, odd)
}

/// 2 for e <= 2, Euler phi otherwise.
pub fn tilde_phi(e: u64) -> u64 {
    if e <= 2 {
        2
    } else {
        crate::arith::euler_phi(e)
    }
}

/// The root number W(q, e) of the symplectic block with inertia eigenvalues
/// of exact order e. Requires gcd(q, e) = 1.
pub fn w_qe(q: u64, e: u64) -> Sign {
    assert!(e >= 1 && gcd(q, e) == 1, "W(q, e) needs gcd(q, e) = 1");
    let minus_one = || Sign::from_symbol(jacobi(-1, q));
    if e == 1 {
        return Sign::Plus;
    }
    if e == 2 {
        return minus_one();
    }
    if e == 4 {
        return Sign::from_symbol(jacobi(-2, q));
    }
    if e.is_power_of_two() {
        return Sign::from_symbol(jacobi(2, q));
    }
    if e % 2 == 1 {
        if let Some((l, _)) = prime_power(e) {
            return Sign::from_symbol(jacobi(q as i64, l));
        }
        return Sign::Plus;
    }
    if e % 4 == 2 {
        if let Some((l, _)) = prime_power(e / 2) {
            if l % 4 == 3 {
                return minus_one();
            }
        }
    }
    Sign::Plus
}

fn sum_powers_mod(q: u64, f: u64, m: u64) -> u64 {
    let mut s = 0u64;
    let mut t = 1 % m;
    for _ in 0..f {
        s = (s + t) % m;
        t = crate::arith::mul_mod(t, q, m);
    }
    s
}

/// Root number of sigma + sigma* for sigma irreducible of dimension f with
/// inertia image of order e.
pub fn dual_pair_w(e: u64, f: u64, q: u64) -> Sign {
    if q % 2 == 0 {
        return Sign::Plus;
    }
    let s = sum_powers_mod(q, f, e);
    let m = 2 * e / gcd(e, s);
    Sign::from_bool(q % m == 1 % m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelfDualKind {
    Orthogonal,
    Symplectic,
}

/// Root number of a self-dual irreducible of dimension f (f even,
/// q^(f/2) = -1 mod e) with inertia image of order e.
pub fn selfdual_irred_w(e: u64, f: u64, q: u64, kind: SelfDualKind) -> Sign {
    assert!(f >= 2 && f % 2 == 0, "self-dual block needs even f");
    if q % 2 == 0 {
        return Sign::from_bool(kind == SelfDualKind::Orthogonal);
    }
    let x: BigInt = num_traits::pow(BigInt::from(q), (f / 2) as usize) + 1u32;
    let t = x.trailing_zeros().unwrap_or(0) as u32;
    let same = t == e.trailing_zeros();
    match kind {
        SelfDualKind::Orthogonal => Sign::from_bool(!same),
        SelfDualKind::Symplectic => Sign::from_bool(same),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EllipticReduction {
    Split,
    Nonsplit,
    Additive,
}

/// Root number of an elliptic curve over a local field with odd
/// residue cardinality q (p >= 5 in the potentially good branch).
pub fn elliptic_local_w(v_j: i64, v_disc: i64, red: EllipticReduction, q: u64) -> Sign {
    if v_j < 0 {
        return match red {
            EllipticReduction::Split => Sign::Minus,
            EllipticReduction::Nonsplit => Sign::Plus,
            EllipticReduction::Additive => Sign::from_symbol(jacobi(-1, q)),
        };
    }
    let e = 12 / gcd(v_disc.rem_euclid(12) as u64, 12);
    match e {
        1 => Sign::Plus,
        2 | 6 => Sign::from_symbol(jacobi(-1, q)),
        3 => Sign::from_symbol(jacobi(-3, q)),
        4 => Sign::from_symbol(jacobi(-2, q)),
        _ => panic!("v(disc) = {v_disc} is not a minimal discriminant valuation for p >= 5"),
    }
}

/// W(tau (x) sp(2)) for a real character sum tau.
pub fn steinberg_twist_w(t1: u64, det_minus1: Sign) -> Sign {
    Sign::parity(t1) * det_minus1
}

/// Local root number of an abelian variety with tame reduction.
pub fn local_root_number(d: &LocalRepData) -> SignedRootNumber {
    let mut parts = Vec::new();
    for (&e, &m) in &d.m {
        if m > 0 {
            parts.push((format!("e={e}, m={m}"), w_qe(d.q, e).pow(m)));
        }
    }
    parts.push(("toric (-1)^t1".to_string(), Sign::parity(d.t1)));
    if d.m_t > 0 {
        parts.push(("toric W(q,2)^m_T".to_string(), w_qe(d.q, 2).pow(d.m_t)));
    }
    SignedRootNumber::from_factors(parts)
}
