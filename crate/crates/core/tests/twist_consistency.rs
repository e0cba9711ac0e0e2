use std::fs::File;

use tameroot::corpus::read_csv;
use tameroot::curve::{
    global_root_number, is_fundamental_discriminant, twisted_conductor, GlobalOptions,
    HyperellipticCurve,
};
use tameroot::twist::{coprime_quadratic_twist, quadratic_global_twist};

fn corpus() -> Vec<tameroot::corpus::CurveRecord> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../cli/tests/data/lawful_genus2.csv"
    );
    read_csv(File::open(path).unwrap()).unwrap()
}

#[test]
fn twisted_models_agree_with_twist_formula() {
    let ds: Vec<i64> = (-60i64..=60)
        .filter(|&d| d.rem_euclid(4) == 1 && is_fundamental_discriminant(d))
        .collect();
    let mut checked = 0;
    for rec in corpus() {
        let n = rec.conductor.unwrap();
        let c = HyperellipticCurve::new(rec.coeffs.clone()).unwrap();
        let base = global_root_number(&c, &GlobalOptions::with_conductor(n)).unwrap();
        for &d in &ds {
            let formula = quadratic_global_twist(&base, d).unwrap();
            if num_integer::gcd(d.unsigned_abs(), n) == 1 {
                assert_eq!(
                    formula,
                    coprime_quadratic_twist(base.value, d, n, c.genus())
                );
            }
            let tc = c.quadratic_twist(d).unwrap();
            let tn = twisted_conductor(n, d, c.genus()).unwrap();
            let direct = global_root_number(&tc, &GlobalOptions::with_conductor(tn)).unwrap();
            assert_eq!(formula, direct.value, "{:?} d = {d}", rec.label);
            checked += 1;
        }
    }
    assert!(checked > 0);
}
