use alloc::vec::Vec;

use num_complex::Complex64;

use super::Matrix;
use crate::{Error, Result};

/// Roots closer than this are treated as one repeated root and replaced by
/// their mean, which is far more accurate than the individual roots. A
/// triple root splits by roughly the cube root of machine epsilon.
const CLUSTER_RADIUS: f64 = 1e-4;
const MAX_QR_SWEEPS_PER_EIGENVALUE: usize = 100;

/// Eigenvalues of a square complex matrix, with algebraic multiplicity.
///
/// Dimension 3 uses the closed-form roots of the characteristic cubic;
/// larger dimensions use shifted QR on the Hessenberg form.
pub fn eigenvalues(m: &Matrix) -> Result<Vec<Complex64>> {
    if !m.is_finite() {
        return Err(Error::Numerical("non-finite matrix entry"));
    }
    match m.dim() {
        0 => Ok(Vec::new()),
        1 => Ok(alloc::vec![m[(0, 0)]]),
        2 => {
            let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
            let (l1, l2) = quadratic_roots(a + d, a * d - b * c);
            Ok(cluster(alloc::vec![l1, l2]))
        }
        3 => Ok(cubic_eigenvalues(m)),
        _ => qr_eigenvalues(m),
    }
}

/// True iff the two multisets can be paired so each pair differs by less
/// than `tol`. Pairing is greedy nearest-first, which is exact whenever
/// `tol` is below half the smallest gap between distinct values.
pub fn eigenvalue_multisets_match(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut unused: Vec<Complex64> = b.to_vec();
    for x in a {
        let best = unused
            .iter()
            .enumerate()
            .min_by(|p, q| (p.1 - x).norm().total_cmp(&(q.1 - x).norm()));
        match best {
            Some((k, y)) if (y - x).norm() < tol => {
                unused.swap_remove(k);
            }
            _ => return false,
        }
    }
    true
}

/// Roots of `x^2 - trace x + det`.
fn quadratic_roots(trace: Complex64, det: Complex64) -> (Complex64, Complex64) {
    let half = trace / 2.0;
    let disc = (half * half - det).sqrt();
    (half + disc, half - disc)
}

fn cubic_eigenvalues(m: &Matrix) -> Vec<Complex64> {
    let a = |r: usize, c: usize| m[(r, c)];
    // Characteristic polynomial x^3 + c2 x^2 + c1 x + c0.
    let c2 = -(a(0, 0) + a(1, 1) + a(2, 2));
    let c1 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)
        + a(1, 1) * a(2, 2)
        - a(1, 2) * a(2, 1);
    let det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
        - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    let c0 = -det;

    // Depressed cubic t^3 + p t + q with x = t - c2/3.
    let shift = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = c2 * c2 * c2 * (2.0 / 27.0) - c2 * c1 / 3.0 + c0;
    let s = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let plus = -q / 2.0 + s;
    let minus = -q / 2.0 - s;
    let u3 = if plus.norm() >= minus.norm() { plus } else { minus };

    let roots: Vec<Complex64> = if u3.norm() < 1e-300 {
        alloc::vec![-shift; 3]
    } else {
        let u = u3.powf(1.0 / 3.0);
        let omega = Complex64::from_polar(1.0, 2.0 * core::f64::consts::PI / 3.0);
        (0..3)
            .map(|k| {
                let uk = u * omega.powu(k);
                uk - p / (3.0 * uk) - shift
            })
            .collect()
    };

    let poly = |x: Complex64| ((x + c2) * x + c1) * x + c0;
    let dpoly = |x: Complex64| (3.0 * x + 2.0 * c2) * x + c1;
    let clustered = cluster(roots);
    clustered
        .iter()
        .map(|&r| {
            let isolated = clustered
                .iter()
                .filter(|&&o| (o - r).norm() < CLUSTER_RADIUS)
                .count()
                == 1;
            if isolated { newton_polish(r, poly, dpoly) } else { r }
        })
        .collect()
}

fn newton_polish(
    mut x: Complex64,
    f: impl Fn(Complex64) -> Complex64,
    df: impl Fn(Complex64) -> Complex64,
) -> Complex64 {
    for _ in 0..4 {
        let d = df(x);
        if d.norm() == 0.0 {
            break;
        }
        let next = x - f(x) / d;
        if f(next).norm() >= f(x).norm() {
            break;
        }
        x = next;
    }
    x
}

/// Replaces every group of mutually close roots by its mean.
fn cluster(mut roots: Vec<Complex64>) -> Vec<Complex64> {
    let n = roots.len();
    let mut group: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < CLUSTER_RADIUS {
                let (gi, gj) = (group[i], group[j]);
                group.iter_mut().filter(|g| **g == gj).for_each(|g| *g = gi);
            }
        }
    }
    let original = roots.clone();
    for i in 0..n {
        let members: Vec<usize> = (0..n).filter(|&k| group[k] == group[i]).collect();
        roots[i] = members.iter().map(|&k| original[k]).sum::<Complex64>() / members.len() as f64;
    }
    roots
}

fn qr_eigenvalues(m: &Matrix) -> Result<Vec<Complex64>> {
    let n = m.dim();
    let mut h = hessenberg(m);
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let eps = f64::EPSILON;
    while hi > 0 {
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let scale = h[(l, l)].norm() + h[(l - 1, l - 1)].norm();
            if sub <= eps * scale.max(f64::MIN_POSITIVE) {
                break;
            }
            l -= 1;
        }
        if l == hi {
            h[(hi, hi - 1)] = Complex64::new(0.0, 0.0);
            hi -= 1;
            iter = 0;
            continue;
        }
        total += 1;
        if total > MAX_QR_SWEEPS_PER_EIGENVALUE * n {
            return Err(Error::Numerical("QR iteration did not converge"));
        }
        iter += 1;
        let mu = if iter % 11 == 10 {
            h[(hi, hi)] + h[(hi, hi - 1)].norm()
        } else {
            wilkinson_shift(&h, hi)
        };
        qr_step(&mut h, l, hi, mu);
    }
    Ok((0..n).map(|k| h[(k, k)]).collect())
}

fn wilkinson_shift(h: &Matrix, hi: usize) -> Complex64 {
    let (a, b, c, d) = (h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
    let (l1, l2) = quadratic_roots(a + d, a * d - b * c);
    if (l1 - d).norm() <= (l2 - d).norm() { l1 } else { l2 }
}

/// One explicit shifted QR step on the active block `lo..=hi`.
fn qr_step(h: &mut Matrix, lo: usize, hi: usize, mu: Complex64) {
    for k in lo..=hi {
        h[(k, k)] -= mu;
    }
    let mut rotations: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let x = h[(k, k)];
        let y = h[(k + 1, k)];
        let r = libm::sqrt(x.norm_sqr() + y.norm_sqr());
        let (c, s) = if r == 0.0 {
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        } else {
            (x / r, y / r)
        };
        // G = [[conj c, conj s], [-s, c]] maps (x, y) to (r, 0).
        for col in k..=hi {
            let top = h[(k, col)];
            let bot = h[(k + 1, col)];
            h[(k, col)] = c.conj() * top + s.conj() * bot;
            h[(k + 1, col)] = -s * top + c * bot;
        }
        rotations.push((c, s));
    }
    for (offset, &(c, s)) in rotations.iter().enumerate() {
        let k = lo + offset;
        // Right-multiply by G^dagger = [[c, -conj s], [s, conj c]].
        for row in lo..=(k + 2).min(hi) {
            let left = h[(row, k)];
            let right = h[(row, k + 1)];
            h[(row, k)] = left * c + right * s;
            h[(row, k + 1)] = -left * s.conj() + right * c.conj();
        }
    }
    for k in lo..=hi {
        h[(k, k)] += mu;
    }
}

/// Householder reduction to upper Hessenberg form (a similarity transform).
fn hessenberg(m: &Matrix) -> Matrix {
    let n = m.dim();
    let mut h = m.clone();
    for k in 0..n.saturating_sub(2) {
        let alpha_norm = libm::sqrt((k + 1..n).map(|r| h[(r, k)].norm_sqr()).sum());
        if alpha_norm == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let mut v: Vec<Complex64> = (k + 1..n).map(|r| h[(r, k)]).collect();
        v[0] += phase * alpha_norm;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr == 0.0 {
            continue;
        }
        // H <- (I - 2 v v^dagger / |v|^2) H (I - 2 v v^dagger / |v|^2)
        for col in 0..n {
            let dot: Complex64 =
                v.iter().enumerate().map(|(i, vi)| vi.conj() * h[(k + 1 + i, col)]).sum();
            let f = dot * 2.0 / vnorm_sqr;
            for (i, vi) in v.iter().enumerate() {
                h[(k + 1 + i, col)] -= vi * f;
            }
        }
        for row in 0..n {
            let dot: Complex64 =
                v.iter().enumerate().map(|(i, vi)| h[(row, k + 1 + i)] * vi).sum();
            let f = dot * 2.0 / vnorm_sqr;
            for (i, vi) in v.iter().enumerate() {
                h[(row, k + 1 + i)] -= f * vi.conj();
            }
        }
        for r in k + 2..n {
            h[(r, k)] = Complex64::new(0.0, 0.0);
        }
    }
    h
}
