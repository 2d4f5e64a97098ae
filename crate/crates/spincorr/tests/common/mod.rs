//! Test-only oracles that deliberately avoid the library's analytic
//! shortcuts: the classical correlation is recomputed by raw matrix
//! mechanics (4x4 density matrix, explicit measurement projectors, partial
//! traces) and an exhaustive grid search over the full Bloch sphere.
//!
//! Shared by several test targets; not every target uses every helper.
#![allow(dead_code)]

use nalgebra::{Complex, Matrix2, Matrix4};
use spincorr::util::SplitMix64;
use spincorr::XState;

type C64 = Complex<f64>;

fn c(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

/// Dense 4x4 density matrix in the basis |00>, |01>, |10>, |11>
/// (first factor = spin A, second = spin B).
pub fn density_matrix(x: &XState) -> Matrix4<C64> {
    let mut rho = Matrix4::zeros();
    rho[(0, 0)] = c(x.a);
    rho[(1, 1)] = c(x.b1);
    rho[(2, 2)] = c(x.b2);
    rho[(3, 3)] = c(x.d);
    rho[(1, 2)] = c(x.z);
    rho[(2, 1)] = c(x.z);
    rho[(0, 3)] = c(x.f);
    rho[(3, 0)] = c(x.f);
    rho
}

fn xlog2(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Entropy of a 2x2 Hermitian positive matrix from trace and determinant.
fn entropy2(m: &Matrix2<C64>) -> f64 {
    let t = (m[(0, 0)] + m[(1, 1)]).re;
    let det = (m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]).re;
    let disc = (t * t - 4.0 * det).max(0.0).sqrt();
    let lo = (0.5 * (t - disc)).max(0.0);
    let hi = 0.5 * (t + disc);
    xlog2(lo) + xlog2(hi)
}

/// Reduced state of spin A.
pub fn reduce_a(rho: &Matrix4<C64>) -> Matrix2<C64> {
    Matrix2::new(
        rho[(0, 0)] + rho[(1, 1)],
        rho[(0, 2)] + rho[(1, 3)],
        rho[(2, 0)] + rho[(3, 1)],
        rho[(2, 2)] + rho[(3, 3)],
    )
}

/// Reduced state of spin B.
pub fn reduce_b(rho: &Matrix4<C64>) -> Matrix2<C64> {
    Matrix2::new(
        rho[(0, 0)] + rho[(2, 2)],
        rho[(0, 1)] + rho[(2, 3)],
        rho[(1, 0)] + rho[(3, 2)],
        rho[(1, 1)] + rho[(3, 3)],
    )
}

fn entropy4(rho: &Matrix4<C64>) -> f64 {
    let eig = rho.symmetric_eigen();
    eig.eigenvalues.iter().map(|&l| xlog2(l.max(0.0))).sum()
}

/// Mutual information straight from the three spectra.
pub fn mutual_information_oracle(x: &XState) -> f64 {
    let rho = density_matrix(x);
    entropy2(&reduce_a(&rho)) + entropy2(&reduce_b(&rho)) - entropy4(&rho)
}

/// Average conditional entropy of A after measuring B along (theta, phi).
fn conditional_entropy(rho: &Matrix4<C64>, theta: f64, phi: f64) -> f64 {
    let (st, ct) = theta.sin_cos();
    let n = [st * phi.cos(), st * phi.sin(), ct];
    // projector (I + n.sigma)/2 and its complement
    let proj = Matrix2::new(
        c(0.5 * (1.0 + n[2])),
        0.5 * Complex::new(n[0], -n[1]),
        0.5 * Complex::new(n[0], n[1]),
        c(0.5 * (1.0 - n[2])),
    );
    let mut total = 0.0;
    for pi in [proj, Matrix2::identity() - proj] {
        // sigma_k = Tr_B[rho (I (x) Pi_k)], with weight p_k = tr sigma_k
        let big = Matrix4::new(
            pi[(0, 0)],
            pi[(0, 1)],
            c(0.0),
            c(0.0),
            pi[(1, 0)],
            pi[(1, 1)],
            c(0.0),
            c(0.0),
            c(0.0),
            c(0.0),
            pi[(0, 0)],
            pi[(0, 1)],
            c(0.0),
            c(0.0),
            pi[(1, 0)],
            pi[(1, 1)],
        );
        let sigma = reduce_a(&(rho * big));
        let p = (sigma[(0, 0)] + sigma[(1, 1)]).re;
        if p > 1e-14 {
            total += p * entropy2(&(sigma / c(p)));
        }
    }
    total
}

/// Classical correlation by exhaustive search: a coarse full-sphere grid
/// followed by four rounds of local tenfold refinement. The final angular
/// resolution (~2e-6) puts the value error well below 1e-8.
pub fn classical_correlation_oracle(x: &XState) -> f64 {
    let rho = density_matrix(x);
    let s_a = entropy2(&reduce_a(&rho));
    let mut h_theta = std::f64::consts::PI / 180.0;
    let mut h_phi = 2.0 * std::f64::consts::PI / 360.0;
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..=180 {
        for j in 0..360 {
            let (t, p) = (i as f64 * h_theta, j as f64 * h_phi);
            let v = conditional_entropy(&rho, t, p);
            if v < best.0 {
                best = (v, t, p);
            }
        }
    }
    for _ in 0..4 {
        h_theta /= 10.0;
        h_phi /= 10.0;
        let center = best;
        for i in -10..=10 {
            for j in -10..=10 {
                let t = center.1 + i as f64 * h_theta;
                let p = center.2 + j as f64 * h_phi;
                let v = conditional_entropy(&rho, t, p);
                if v < best.0 {
                    best = (v, t, p);
                }
            }
        }
    }
    s_a - best.0
}

/// Draw a random valid X-state: populations from normalized uniforms, both
/// coherences uniform inside their positivity disks.
pub fn random_xstate(rng: &mut SplitMix64) -> XState {
    loop {
        let raw = [
            rng.next_f64(),
            rng.next_f64(),
            rng.next_f64(),
            rng.next_f64(),
        ];
        let norm: f64 = raw.iter().sum();
        let (a, b1, b2, d) = (raw[0] / norm, raw[1] / norm, raw[2] / norm, raw[3] / norm);
        let z = (b1 * b2).sqrt() * (2.0 * rng.next_f64() - 1.0);
        let f = (a * d).sqrt() * (2.0 * rng.next_f64() - 1.0);
        if let Ok(x) = XState::new(a, b1, b2, d, z, f) {
            return x;
        }
    }
}

/// Like `random_xstate` but constrained to c4 = c5 = 0 (a = d, b1 = b2),
/// the regime of the analytic classical-correlation formula.
pub fn random_symmetric_xstate(rng: &mut SplitMix64) -> XState {
    loop {
        let a = rng.next_f64();
        let b = rng.next_f64();
        let norm = 2.0 * (a + b);
        let (a, b) = (a / norm, b / norm);
        let z = b * (2.0 * rng.next_f64() - 1.0);
        let f = a * (2.0 * rng.next_f64() - 1.0);
        if let Ok(x) = XState::new(a, b, b, a, z, f) {
            return x;
        }
    }
}
