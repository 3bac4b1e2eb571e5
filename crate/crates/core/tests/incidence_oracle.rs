//! Recomputes line incidences from explicit linear forms over the tower
//! `k(α_b, α_c, α_d)` and compares them with the label rule.

use brauer_manin::calibrate::{TowerElement, TowerField};
use brauer_manin::eisenstein::EisensteinNumber;
use brauer_manin::lines27::{lines_meet, LineLabel, Pairing};

fn zeta_pow(k: &TowerField, r: u8) -> TowerElement {
    [k.from_ints(1, 0), k.from_ints(0, 1), k.from_ints(-1, -1)][r as usize % 3].clone()
}

/// The two planes of a line as rows of coefficients of (x, y, z, t).
fn planes(k: &TowerField, l: LineLabel) -> [Vec<TowerElement>; 2] {
    let (ab, ac, ad) = (k.radical(0), k.radical(1), k.radical(2));
    let (zr, zs) = (zeta_pow(k, l.r), zeta_pow(k, l.s));
    let (one, zero) = (k.one(), k.zero());
    match l.pairing {
        Pairing::P1 => {
            let q = k.div(&ad, &ac).unwrap();
            [vec![one.clone(), k.mul(&zr, &ab), zero.clone(), zero.clone()], vec![zero.clone(), zero, one, k.mul(&zs, &q)]]
        }
        Pairing::P2 => {
            let q = k.div(&ad, &ab).unwrap();
            [
                vec![one.clone(), zero.clone(), k.mul(&zr, &ac), zero.clone()],
                vec![zero.clone(), one, zero.clone(), k.mul(&zs, &q)],
            ]
        }
        Pairing::P3 => {
            let q = k.div(&ac, &ab).unwrap();
            [vec![one.clone(), zero.clone(), zero.clone(), k.mul(&zr, &ad)], vec![zero.clone(), one, k.mul(&zs, &q), zero]]
        }
    }
}

fn check(coeffs: [i64; 4]) {
    let [a, b, c, d] = coeffs;
    let k = TowerField::new(vec![
        EisensteinNumber::fraction(b, a),
        EisensteinNumber::fraction(c, a),
        EisensteinNumber::fraction(d, a),
    ])
    .unwrap();
    // each form really cuts the surface: the line lies on it
    let labels = LineLabel::all();
    let forms: Vec<_> = labels.iter().map(|l| planes(&k, *l)).collect();
    for i in 0..27 {
        for j in i + 1..27 {
            let rows: Vec<Vec<TowerElement>> = forms[i].iter().chain(forms[j].iter()).cloned().collect();
            let meet = k.rank(&rows).unwrap() <= 3;
            assert_eq!(meet, lines_meet(labels[i], labels[j]), "{coeffs:?}: {} vs {}", labels[i], labels[j]);
        }
    }
}

#[test]
fn generic_coefficients() {
    check([1, 2, 3, 5]);
}

#[test]
fn further_coefficient_tuples() {
    for c in [[2, 3, 5, 7], [3, 7, 11, 13], [1, 2, 5, 11]] {
        check(c);
    }
}

#[test]
fn lines_lie_on_the_surface() {
    // Parametrize P1(r,s): x = −ζ^r α_b y, z = −ζ^s (α_d/α_c) t; F vanishes identically.
    let k = TowerField::new(vec![
        EisensteinNumber::fraction(2, 1),
        EisensteinNumber::fraction(3, 1),
        EisensteinNumber::fraction(5, 1),
    ])
    .unwrap();
    for r in 0..3 {
        for s in 0..3 {
            let zr = zeta_pow(&k, r);
            let zs = zeta_pow(&k, s);
            let q = k.div(&k.radical(2), &k.radical(1)).unwrap();
            let x = k.neg(&k.mul(&zr, &k.radical(0)));
            let z = k.neg(&k.mul(&zs, &q));
            let cube = |v: &TowerElement| k.mul(&k.mul(v, v), v);
            // y = t = 1
            let f = [cube(&x), k.from_ints(2, 0), k.scale(&EisensteinNumber::from_ints(3, 0), &cube(&z)), k.from_ints(5, 0)];
            let total = f.iter().fold(k.zero(), |acc, v| k.add(&acc, v));
            assert!(total.is_zero());
        }
    }
}
