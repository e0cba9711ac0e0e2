//! Hyperelliptic curves y^2 = f(x) over Q and their global root numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::factor_bigint;
use crate::error::{Error, Result};
use crate::galois_rep::{analyze, LocalAnalysis, LocalRepData};
use crate::padic::{FrobeniusLift, SplitOptions};
use crate::poly;
use crate::rootnum::{local_root_number, Sign, SignedRootNumber};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperellipticCurve {
    /// f in ascending degree
    pub coeffs: Vec<BigInt>,
}

impl HyperellipticCurve {
    pub fn new(coeffs: Vec<BigInt>) -> Result<HyperellipticCurve> {
        let coeffs = poly::trim(coeffs);
        if coeffs.len() < 4 {
            return Err(Error::Invalid("f must have degree at least 3".into()));
        }
        if poly::discriminant(&coeffs).is_zero() {
            return Err(Error::NotSquarefree);
        }
        Ok(HyperellipticCurve { coeffs })
    }

    pub fn from_i64(c: &[i64]) -> Result<HyperellipticCurve> {
        HyperellipticCurve::new(poly::from_i64(c))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn genus(&self) -> u64 {
        ((self.degree() - 1) / 2) as u64
    }

    pub fn discriminant(&self) -> BigInt {
        poly::discriminant(&self.coeffs)
    }

    /// y^2 = d f(x)
    pub fn quadratic_twist(&self, d: i64) -> Result<HyperellipticCurve> {
        let d = BigInt::from(d);
        HyperellipticCurve::new(self.coeffs.iter().map(|c| c * &d).collect())
    }

    /// f(x + a)
    pub fn shifted(&self, a: i64) -> HyperellipticCurve {
        HyperellipticCurve {
            coeffs: poly::shift(&self.coeffs, &BigInt::from(a)),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalOptions {
    /// conductor of the Jacobian, if known
    pub conductor: Option<u64>,
    /// treat p = 2 as a prime of good reduction
    pub good_at_2: bool,
    pub precision: Option<u32>,
    pub lift: FrobeniusLift,
}

impl GlobalOptions {
    pub fn with_conductor(n: u64) -> GlobalOptions {
        GlobalOptions {
            conductor: Some(n),
            ..Default::default()
        }
    }

    pub fn split_options(&self) -> SplitOptions {
        SplitOptions {
            precision: self.precision,
            lift: self.lift,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlaceResult {
    pub p: u64,
    /// None when the place was certified good without computation
    pub analysis: Option<LocalAnalysis>,
    pub data: LocalRepData,
    pub w: SignedRootNumber,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GlobalResult {
    pub genus: u64,
    pub places: Vec<PlaceResult>,
    pub archimedean: Sign,
    pub value: Sign,
}

/// Primes at which the model may have bad reduction, after the conductor
/// hint removes those known to be good. p = 2 is always listed unless
/// certified good.
pub fn bad_primes(curve: &HyperellipticCurve, opts: &GlobalOptions) -> Result<Vec<u64>> {
    let disc = curve.discriminant();
    let mut primes: Vec<u64> = factor_bigint(&disc)?.into_iter().map(|(p, _)| p).collect();
    if !primes.contains(&2) {
        primes.insert(0, 2);
    }
    if let Some(n) = opts.conductor {
        primes.retain(|&p| n % p == 0);
        if n % 2 == 0 {
            return Err(Error::WildRamification { p: 2 });
        }
    } else if opts.good_at_2 {
        primes.retain(|&p| p != 2);
    } else {
        return Err(Error::Unknown2AdicPlace);
    }
    Ok(primes)
}

pub fn local_place(
    curve: &HyperellipticCurve,
    p: u64,
    opts: &GlobalOptions,
) -> Result<PlaceResult> {
    if p == 2 {
        let data = LocalRepData::good(2, curve.genus());
        let w = local_root_number(&data);
        return Ok(PlaceResult {
            p,
            analysis: None,
            data,
            w,
        });
    }
    let a = analyze(&curve.coeffs, p, opts.split_options())?;
    let data = a.rep.clone();
    let w = local_root_number(&data);
    Ok(PlaceResult {
        p,
        analysis: Some(a),
        data,
        w,
    })
}

pub fn global_root_number(
    curve: &HyperellipticCurve,
    opts: &GlobalOptions,
) -> Result<GlobalResult> {
    let g = curve.genus();
    let mut places = Vec::new();
    for p in bad_primes(curve, opts)? {
        places.push(local_place(curve, p, opts)?);
    }
    let archimedean = Sign::parity(g);
    let value = places.iter().map(|pl| pl.w.value).product::<Sign>() * archimedean;
    Ok(GlobalResult {
        genus: g,
        places,
        archimedean,
        value,
    })
}

/// Conductor of the twist by a fundamental discriminant d coprime to N,
/// for a Jacobian of dimension g: N d^(2g). None on overflow.
pub fn twisted_conductor(n: u64, d: i64, g: u64) -> Option<u64> {
    let ad = d.unsigned_abs();
    let mut out = n;
    for _ in 0..2 * g {
        out = out.checked_mul(ad)?;
    }
    Some(out)
}

/// True for fundamental discriminants d != 1.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let m = d.rem_euclid(4);
    let squarefree = |n: u64| crate::arith::factor_u64(n).iter().all(|&(_, k)| k == 1);
    if m == 1 {
        squarefree(d.unsigned_abs())
    } else if m == 0 {
        let e = d / 4;
        let r = e.rem_euclid(4);
        (r == 2 || r == 3) && squarefree(e.unsigned_abs())
    } else {
        false
    }
}

pub fn coprime(d: i64, n: &BigInt) -> bool {
    BigInt::from(d).gcd(n).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_global() {
        let c = HyperellipticCurve::from_i64(&[-8, 12, 8, -8, -8, 0, 1]).unwrap();
        assert_eq!(c.genus(), 2);
        let r = global_root_number(&c, &GlobalOptions::with_conductor(28561)).unwrap();
        assert_eq!(r.places.len(), 1);
        assert_eq!(r.value, Sign::Minus);
    }

    #[test]
    fn two_adic_needs_a_certificate() {
        let c = HyperellipticCurve::from_i64(&[-8, 12, 8, -8, -8, 0, 1]).unwrap();
        let e = global_root_number(&c, &GlobalOptions::default()).unwrap_err();
        assert_eq!(e, Error::Unknown2AdicPlace);
        let opts = GlobalOptions {
            good_at_2: true,
            ..Default::default()
        };
        assert_eq!(global_root_number(&c, &opts).unwrap().value, Sign::Minus);
    }

    #[test]
    fn fundamental_discriminants() {
        let fd: Vec<i64> = (-30..30)
            .filter(|&d| is_fundamental_discriminant(d))
            .collect();
        assert_eq!(
            fd,
            vec![-24, -23, -20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17, 21, 24, 28, 29]
        );
    }
}
