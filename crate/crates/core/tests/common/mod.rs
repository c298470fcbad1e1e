#![allow(dead_code)]

use num_complex::Complex64;
use oraclemux::{AngleVector, UnitaryMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type M2 = [[Complex64; 2]; 2];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_angles(rng: &mut impl Rng, n_beta: usize) -> AngleVector {
    let v = (0..1 << n_beta)
        .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
        .collect();
    AngleVector::new(n_beta, v).unwrap()
}

pub fn max_diff(a: &UnitaryMatrix, b: &UnitaryMatrix) -> f64 {
    a.max_abs_diff(b).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli(axis: char) -> M2 {
    let (z, o, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match axis {
        'x' => [[z, o], [o, z]],
        'y' => [[z, -i], [i, z]],
        'z' => [[o, z], [z, -o]],
        _ => panic!("axis"),
    }
}

pub fn mul2(a: &M2, b: &M2) -> M2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// `exp(iθσ)` summed as a Taylor series of the 2×2 matrix. Accurate for
/// `|θ|` up to about 2π.
pub fn taylor_exp(theta: f64, axis: char) -> M2 {
    let s = pauli(axis);
    let gen = [
        [s[0][0] * c(0.0, theta), s[0][1] * c(0.0, theta)],
        [s[1][0] * c(0.0, theta), s[1][1] * c(0.0, theta)],
    ];
    let mut result = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    let mut term = result;
    for k in 1..80 {
        term = mul2(&term, &gen);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v /= k as f64;
            }
        }
        for i in 0..2 {
            for j in 0..2 {
                result[i][j] += term[i][j];
            }
        }
    }
    result
}

pub fn to_unitary(m: &M2) -> UnitaryMatrix {
    UnitaryMatrix::from_matrix(nalgebra::DMatrix::from_fn(2, 2, |i, j| m[i][j]))
}

/// Block-diagonal matrix with the given 2×2 blocks.
pub fn block_diag(blocks: &[M2]) -> UnitaryMatrix {
    let n = 2 * blocks.len();
    UnitaryMatrix::from_matrix(nalgebra::DMatrix::from_fn(n, n, |i, j| {
        if i / 2 == j / 2 {
            blocks[i / 2][i % 2][j % 2]
        } else {
            c(0.0, 0.0)
        }
    }))
}
