//! Criterion A at each place, lawfulness, and the good/evil split.

use serde::{Deserialize, Serialize};

use crate::curve::{global_root_number, GlobalOptions, HyperellipticCurve};
use crate::error::{Error, Result};
use crate::galois_rep::LocalRepData;
use crate::rootnum::{w_qe, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    Good,
    Evil,
    NotLawful,
}

impl Flavor {
    pub fn parse(s: &str) -> Option<Flavor> {
        match s.trim().to_ascii_lowercase().as_str() {
            "good" => Some(Flavor::Good),
            "evil" => Some(Flavor::Evil),
            "not-lawful" | "n/a" | "none" => Some(Flavor::NotLawful),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Good => "good",
            Flavor::Evil => "evil",
            Flavor::NotLawful => "not-lawful",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceReport {
    pub p: u64,
    pub w_g: Sign,
    pub n: [u64; 4],
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawfulVerdict {
    pub lawful: bool,
    pub flavor: Flavor,
    pub global_w: Sign,
    pub places: Vec<PlaceReport>,
}

/// prod_{e odd} W(q,e)^m_e * prod_{e = 4 or 2 || e} W(q,e/2)^m_e
pub fn w_g(d: &LocalRepData) -> Sign {
    d.m.iter()
        .map(|(&e, &m)| {
            if e % 2 == 1 {
                w_qe(d.q, e).pow(m)
            } else if e == 4 || e % 4 == 2 {
                w_qe(d.q, e / 2).pow(m)
            } else {
                Sign::Plus
            }
        })
        .product()
}

pub fn criterion_a(d: &LocalRepData, p: u64) -> Result<bool> {
    let wg = w_g(d);
    if p == 2 {
        if d.dim_t != 0 {
            return Err(Error::WildOrEvenToric { p });
        }
        return Ok(wg == Sign::Plus);
    }
    Ok(d.n1 % 2 == d.n2 % 2 && d.n3 % 2 == d.n4 % 2 && wg == Sign::parity(d.n1 + d.n3))
}

pub fn classify(curve: &HyperellipticCurve, opts: &GlobalOptions) -> Result<LawfulVerdict> {
    let global = global_root_number(curve, opts)?;
    let mut places = Vec::new();
    let mut all = curve.genus() % 2 == 0;
    for pl in &global.places {
        let d = &pl.data;
        let satisfied = criterion_a(d, pl.p)?;
        all &= satisfied;
        places.push(PlaceReport {
            p: pl.p,
            w_g: w_g(d),
            n: [d.n1, d.n2, d.n3, d.n4],
            satisfied,
        });
    }
    let flavor = match (all, global.value) {
        (false, _) => Flavor::NotLawful,
        (true, Sign::Plus) => Flavor::Good,
        (true, Sign::Minus) => Flavor::Evil,
    };
    Ok(LawfulVerdict {
        lawful: all,
        flavor,
        global_w: global.value,
        places,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn data(q: u64, m: &[(u64, u64)], n: [u64; 4]) -> LocalRepData {
        LocalRepData {
            p: q,
            q,
            g: 2,
            m: m.iter().copied().collect::<BTreeMap<_, _>>(),
            n1: n[0],
            n2: n[1],
            n3: n[2],
            n4: n[3],
            t1: n[0],
            m_t: n[2] + n[3],
            dim_t: n.iter().sum(),
        }
    }

    #[test]
    fn w_g_examples() {
        assert_eq!(w_g(&data(13, &[(8, 1)], [0; 4])), Sign::Plus);
        assert_eq!(w_g(&data(7, &[(3, 1)], [0; 4])), Sign::Plus);
        for q in [3u64, 5, 7, 11, 13] {
            let expect = Sign::from_symbol(crate::rootnum::jacobi(-1, q));
            assert_eq!(w_g(&data(q, &[(4, 1)], [0; 4])), expect);
        }
    }

    #[test]
    fn criterion_examples() {
        assert!(criterion_a(&data(13, &[(8, 1)], [0; 4]), 13).unwrap());
        assert!(!criterion_a(&data(7, &[], [1, 0, 0, 0]), 7).unwrap());
        // n3 = n4 = 1 needs W_g = -1
        assert!(!criterion_a(&data(7, &[], [0, 0, 1, 1]), 7).unwrap());
        assert!(criterion_a(&data(5, &[(3, 1)], [0, 0, 1, 1]), 5).unwrap());
        assert_eq!(
            criterion_a(&data(2, &[], [1, 0, 0, 0]), 2).unwrap_err(),
            Error::WildOrEvenToric { p: 2 }
        );
    }

    #[test]
    fn first_table_row() {
        let c = HyperellipticCurve::from_i64(&[1, 2, 1, 2, 6, 4, 1]).unwrap();
        let v = classify(&c, &GlobalOptions::with_conductor(169)).unwrap();
        assert_eq!(v.flavor, Flavor::Good);
    }
}
