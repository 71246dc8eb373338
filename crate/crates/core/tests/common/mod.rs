#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;

use quasiperiod::fixtures;
use quasiperiod::{AffineUnimodularMap, MapMode, Point, RationalPolytope};

/// Random element of `GL_n(Z) ⋉ Z^n`: a product of elementary shears and
/// coordinate swaps whose matrix entries stay within `bound`, followed by a
/// small integer translation.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, bound: i64) -> AffineUnimodularMap {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let steps = rng.gen_range(1..=12);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if n == 1 || i == j {
            // a sign flip is the only nontrivial elementary move in dimension 1
            let mut next = m.clone();
            for x in next[i].iter_mut() {
                *x = -*x;
            }
            m = next;
            continue;
        }
        let mut next = m.clone();
        if rng.gen_bool(0.3) {
            next.swap(i, j);
        } else {
            let s = if rng.gen_bool(0.5) { 1 } else { -1 };
            for c in 0..n {
                next[i][c] += s * m[j][c];
            }
        }
        if next.iter().flatten().all(|x| x.abs() <= bound) {
            m = next;
        }
    }
    let t: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let matrix = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    AffineUnimodularMap::new(matrix, Point::from_ints(&t), MapMode::Strict).unwrap()
}

/// Named polytopes used across invariance and reciprocity checks.
pub fn fixture_polytopes() -> Vec<(String, RationalPolytope)> {
    let mut out = vec![
        ("unit square".to_string(), fixtures::unit_square()),
        ("stanley pyramid".to_string(), fixtures::stanley_pyramid()),
        ("stanley target".to_string(), fixtures::stanley_target()),
        ("Q(3)".to_string(), fixtures::quadrilateral_q(3).unwrap()),
        ("segment 1/2".to_string(), fixtures::segment(1, 2).unwrap()),
        ("segment 2/3".to_string(), fixtures::segment(2, 3).unwrap()),
    ];
    for d in 2..=5 {
        out.push((format!("T({d})"), fixtures::mw_triangle(d).unwrap()));
    }
    out
}
