//! Root numbers of Jacobians twisted by self-dual Artin representations,
//! with the quadratic characters worked out from local data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::mult_order;
use crate::curve::GlobalResult;
use crate::error::{Error, Result};
use crate::galois_rep::LocalRepData;
use crate::repcalc::rho_ef_quadratic;
use crate::rootnum::{jacobi, kronecker, tilde_phi, Sign};

/// Inner products and determinant data of a self-dual twist at one place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDualTwistData {
    pub dim_tau: u64,
    /// (det tau)(-1)
    pub det_at_minus1: Sign,
    pub ip_triv: u64,
    pub ip_eta: u64,
    pub ip_rho_t: u64,
    /// e -> <rho_{e,f}, tau>
    pub ip_ef: BTreeMap<u64, u64>,
}

impl SelfDualTwistData {
    pub fn trivial() -> SelfDualTwistData {
        SelfDualTwistData {
            dim_tau: 1,
            det_at_minus1: Sign::Plus,
            ip_triv: 1,
            ip_eta: 0,
            ip_rho_t: 0,
            ip_ef: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistKind {
    Trivial,
    /// the unramified quadratic character
    Unramified,
    /// character of Q_p(sqrt p)
    Ramified1,
    /// the other ramified quadratic character
    Ramified2,
}

impl TwistKind {
    fn generator_signs(self) -> (bool, bool) {
        match self {
            TwistKind::Trivial => (false, false),
            TwistKind::Unramified => (false, true),
            TwistKind::Ramified1 => (true, false),
            TwistKind::Ramified2 => (true, true),
        }
    }

    pub fn is_ramified(self) -> bool {
        matches!(self, TwistKind::Ramified1 | TwistKind::Ramified2)
    }
}

/// Restriction of the quadratic character of Q(sqrt d) to Q_p, p odd,
/// d a fundamental discriminant.
pub fn local_kind(d: i64, p: u64) -> TwistKind {
    assert!(p % 2 == 1, "local_kind needs odd p");
    let pi = p as i64;
    if d % pi != 0 {
        return if jacobi(d, p) == 1 {
            TwistKind::Trivial
        } else {
            TwistKind::Unramified
        };
    }
    if jacobi(d / pi, p) == 1 {
        TwistKind::Ramified1
    } else {
        TwistKind::Ramified2
    }
}

/// [Q_p(zeta_e) : Q_p] for residue field size q.
pub fn residue_degree_of_zeta(q: u64, e: u64) -> u64 {
    mult_order(q % e.max(1), e)
}

pub fn quadratic_twist_data(kind: TwistKind, d: &LocalRepData) -> Result<SelfDualTwistData> {
    if kind.is_ramified() && d.q % 2 == 0 {
        return Err(Error::RamifiedAtEvenResidue);
    }
    let (iota_sign, frob_sign) = kind.generator_signs();
    let ip_ef =
        d.m.keys()
            .filter(|&&e| e > 2)
            .map(|&e| (e, rho_ef_quadratic(e, d.q, iota_sign, frob_sign)))
            .collect();
    let det_at_minus1 = if kind.is_ramified() {
        Sign::from_symbol(jacobi(-1, d.q))
    } else {
        Sign::Plus
    };
    let ip_rho_t = match kind {
        TwistKind::Trivial => d.n1,
        TwistKind::Unramified => d.n2,
        TwistKind::Ramified1 => d.n3,
        TwistKind::Ramified2 => d.n4,
    };
    Ok(SelfDualTwistData {
        dim_tau: 1,
        det_at_minus1,
        ip_triv: (kind == TwistKind::Trivial) as u64,
        ip_eta: (kind == TwistKind::Unramified) as u64,
        ip_rho_t,
        ip_ef,
    })
}

/// Parity of l1 + l2. Blocks with e <= 2 are sums of a character and its
/// inverse and contribute an even amount.
pub fn twist_exponent(d: &LocalRepData, t: &SelfDualTwistData) -> u64 {
    let l1 = t.ip_rho_t + t.dim_tau * d.t1;
    let mut l2 = 0;
    for (&e, &m) in &d.m {
        if e <= 2 {
            continue;
        }
        let f = residue_degree_of_zeta(d.q, e);
        let ef = t.ip_ef.get(&e).copied().unwrap_or(0);
        l2 += m * (ef + tilde_phi(e) / f * (t.ip_triv + t.ip_eta + t.dim_tau));
    }
    l1 + l2
}

pub fn twisted_local(d: &LocalRepData, g: u64, t: &SelfDualTwistData, base_w: Sign) -> Sign {
    base_w.pow(t.dim_tau) * t.det_at_minus1.pow(g) * Sign::parity(twist_exponent(d, t))
}

pub fn archimedean_w(g: u64, dim_tau: u64) -> Sign {
    Sign::parity(g * dim_tau)
}

/// Global twisted root number from the untwisted global result and the
/// twist data at each bad place of the Jacobian. Places missing from
/// `taus` are treated as unramified-trivial.
pub fn global_twisted(
    base: &GlobalResult,
    taus: &BTreeMap<u64, SelfDualTwistData>,
    dim_tau: u64,
    sign_det: Sign,
) -> Sign {
    let g = base.genus;
    let mut out = base.value.pow(dim_tau) * sign_det.pow(g);
    for pl in &base.places {
        if crate::galois_rep::is_good(&pl.data) {
            continue;
        }
        let t = match taus.get(&pl.p) {
            Some(t) => t.clone(),
            None => SelfDualTwistData {
                dim_tau,
                ..SelfDualTwistData::trivial()
            },
        };
        out *= Sign::parity(twist_exponent(&pl.data, &t));
    }
    out
}

/// Twist by the quadratic character of fundamental discriminant d.
pub fn quadratic_global_twist(base: &GlobalResult, d: i64) -> Result<Sign> {
    let mut taus = BTreeMap::new();
    for pl in &base.places {
        if crate::galois_rep::is_good(&pl.data) {
            continue;
        }
        if pl.p == 2 {
            return Err(Error::WildOrEvenToric { p: 2 });
        }
        taus.insert(pl.p, quadratic_twist_data(local_kind(d, pl.p), &pl.data)?);
    }
    let sign_det = if d < 0 { Sign::Minus } else { Sign::Plus };
    Ok(global_twisted(base, &taus, 1, sign_det))
}

pub fn coprime_twist(base_w: Sign, dim_tau: u64, det_of_n: Sign, sign_det: Sign, g: u64) -> Sign {
    base_w.pow(dim_tau) * det_of_n * sign_det.pow(g)
}

/// coprime_twist for the quadratic character of discriminant d and
/// conductor n.
pub fn coprime_quadratic_twist(base_w: Sign, d: i64, n: u64, g: u64) -> Sign {
    let sign_det = if d < 0 { Sign::Minus } else { Sign::Plus };
    coprime_twist(base_w, 1, Sign::from_symbol(kronecker(d, n)), sign_det, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{global_root_number, GlobalOptions, HyperellipticCurve};
    use crate::galois_rep::analyze;
    use crate::padic::SplitOptions;
    use crate::poly::from_i64;

    fn worked_example_data() -> LocalRepData {
        analyze(
            &from_i64(&[-8, 12, 8, -8, -8, 0, 1]),
            13,
            SplitOptions::default(),
        )
        .unwrap()
        .rep
    }

    #[test]
    fn trivial_twist_is_identity() {
        let d = worked_example_data();
        let t = quadratic_twist_data(TwistKind::Trivial, &d).unwrap();
        assert_eq!(t.ip_ef.get(&8), Some(&0));
        assert_eq!(twisted_local(&d, 2, &t, Sign::Minus), Sign::Minus);
        assert_eq!(twisted_local(&d, 2, &t, Sign::Plus), Sign::Plus);
    }

    #[test]
    fn unramified_twist_of_worked_example() {
        let d = worked_example_data();
        let t = quadratic_twist_data(TwistKind::Unramified, &d).unwrap();
        assert_eq!(t.ip_eta, 1);
        assert_eq!(t.ip_ef[&8], 0);
        assert_eq!(twisted_local(&d, 2, &t, Sign::Minus), Sign::Minus);
    }

    #[test]
    fn split_multiplicative_flips_under_ramified_twist() {
        let a = analyze(&from_i64(&[0, -7, 1, 1]), 7, SplitOptions::default()).unwrap();
        let d = a.rep;
        assert_eq!(d.t1, 1);
        let t = quadratic_twist_data(TwistKind::Ramified1, &d).unwrap();
        assert_eq!(t.ip_rho_t, 0);
        let base = crate::rootnum::local_root_number(&d).value;
        let twisted = twisted_local(&d, 1, &t, base);
        // y^2 = 7 x (x - 7)(x + 1), computed from scratch
        let direct = analyze(&from_i64(&[0, -49, 42, 7]), 7, SplitOptions::default()).unwrap();
        let direct_w = crate::rootnum::local_root_number(&direct.rep).value;
        assert_eq!(twisted, direct_w);
        assert_eq!(twisted, -base * t.det_at_minus1);
    }

    #[test]
    fn local_kinds() {
        assert_eq!(local_kind(5, 11), TwistKind::Trivial);
        assert_eq!(local_kind(5, 13), TwistKind::Unramified);
        // 13 = 13 * 1 and 1 is a square
        assert_eq!(local_kind(13, 13), TwistKind::Ramified1);
        // -7 = 7 * -1, -1 not a square mod 7
        assert_eq!(local_kind(-7, 7), TwistKind::Ramified2);
    }

    #[test]
    fn archimedean_factors() {
        assert_eq!(archimedean_w(2, 1), Sign::Plus);
        assert_eq!(archimedean_w(1, 1), Sign::Minus);
        assert_eq!(archimedean_w(2, 3), Sign::Plus);
    }

    #[test]
    fn ramified_at_two_is_rejected() {
        let d = LocalRepData::good(2, 2);
        assert_eq!(
            quadratic_twist_data(TwistKind::Ramified1, &d).unwrap_err(),
            Error::RamifiedAtEvenResidue
        );
    }

    #[test]
    fn coprime_twists_of_169_curve() {
        let c = HyperellipticCurve::from_i64(&[1, 2, 1, 2, 6, 4, 1]).unwrap();
        let base = global_root_number(&c, &GlobalOptions::with_conductor(169)).unwrap();
        assert_eq!(base.value, Sign::Plus);
        for d in [1, 5, -7, -11, 13] {
            let via_places = quadratic_global_twist(&base, d).unwrap();
            if d == 1 || d % 13 != 0 {
                assert_eq!(
                    via_places,
                    coprime_quadratic_twist(base.value, d, 169, 2),
                    "d = {d}"
                );
            }
            if d != 1 {
                let tc = c.quadratic_twist(d).unwrap();
                let n = crate::curve::twisted_conductor(169, d, 2).unwrap();
                let direct = global_root_number(&tc, &GlobalOptions::with_conductor(n)).unwrap();
                assert_eq!(via_places, direct.value, "d = {d}");
            }
        }
    }
}
