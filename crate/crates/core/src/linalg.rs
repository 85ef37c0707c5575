//! Dense 3×3 complex matrices and the eigen-decomposition of small unitaries.

use num_complex::Complex;

use crate::scalar::{Real, Triple};

pub type Mat3<T> = [[Complex<T>; 3]; 3];

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

pub fn identity<T: Real>() -> Mat3<T> {
    let mut m = [[czero(); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex::new(T::one(), T::zero());
    }
    m
}

pub fn from_real<T: Real>(m: &[[T; 3]; 3]) -> Mat3<T> {
    m.map(|row| row.map(|v| Complex::new(v, T::zero())))
}

pub fn diag<T: Real>(d: [Complex<T>; 3]) -> Mat3<T> {
    let mut m = [[czero(); 3]; 3];
    for i in 0..3 {
        m[i][i] = d[i];
    }
    m
}

pub fn mul<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> Mat3<T> {
    let mut out = [[czero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
        }
    }
    out
}

pub fn mul_vec<T: Real>(a: &Mat3<T>, v: &Triple<T>) -> Triple<T> {
    let row = |i: usize| a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2];
    [row(0), row(1), row(2)]
}

pub fn adjoint<T: Real>(a: &Mat3<T>) -> Mat3<T> {
    let mut out = [[czero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn det<T: Real>(a: &Mat3<T>) -> Complex<T> {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn inverse<T: Real>(a: &Mat3<T>) -> Mat3<T> {
    let d = det(a);
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
    // Adjugate: transpose of the cofactor matrix.
    let adj = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    adj.map(|row| row.map(|z| z / d))
}

/// `max_ij |a_ij − b_ij|`.
pub fn max_abs_diff<T: Real>(a: &Mat3<T>, b: &Mat3<T>) -> T {
    let mut m = T::zero();
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

pub fn inner<T: Real>(u: &Triple<T>, v: &Triple<T>) -> Complex<T> {
    u[0].conj() * v[0] + u[1].conj() * v[1] + u[2].conj() * v[2]
}

/// Eigenpairs of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Returns eigenvalues and the matching orthonormal eigenvectors.
pub fn hermitian_eigen<T: Real>(h: &Mat3<T>) -> ([T; 3], [Triple<T>; 3]) {
    let mut a = *h;
    let mut v = identity::<T>();
    let scale = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .fold(T::zero(), |acc, (i, j)| acc + h[i][j].norm_sqr())
        .sqrt();
    let tiny = T::epsilon() * T::epsilon() * scale * scale;

    for _sweep in 0..64 {
        let off = a[0][1].norm_sqr() + a[0][2].norm_sqr() + a[1][2].norm_sqr();
        if off <= tiny || off == T::zero() {
            break;
        }
        for (p, q) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let apq = a[p][q];
            let mag = apq.norm();
            if mag == T::zero() {
                continue;
            }
            let phase = apq / mag;
            let tau = (a[q][q].re - a[p][p].re) / (T::lit(2.0) * mag);
            let t = if tau >= T::zero() {
                T::one() / (tau + (T::one() + tau * tau).sqrt())
            } else {
                -T::one() / (-tau + (T::one() + tau * tau).sqrt())
            };
            let c = T::one() / (T::one() + t * t).sqrt();
            let s = t * c;
            // J = diag-phase · real rotation, chosen so that (J† A J)_pq = 0.
            let mut j = identity::<T>();
            j[p][p] = Complex::new(c, T::zero());
            j[p][q] = Complex::new(s, T::zero());
            j[q][p] = -phase.conj() * s;
            j[q][q] = phase.conj() * c;
            a = mul(&adjoint(&j), &mul(&a, &j));
            a[p][q] = czero();
            a[q][p] = czero();
            for i in 0..3 {
                a[i][i] = Complex::new(a[i][i].re, T::zero());
            }
            v = mul(&v, &j);
        }
    }
    let vals = [a[0][0].re, a[1][1].re, a[2][2].re];
    let vecs = [0, 1, 2].map(|k| [v[0][k], v[1][k], v[2][k]]);
    (vals, vecs)
}

/// Eigenpairs of a unitary matrix.
///
/// The spectrum is first rotated by `e^{iφ}` so that `−1` sits well away from
/// it, then the Cayley transform `H = i(I − W)(I + W)⁻¹` of `W = e^{iφ}U`
/// gives a Hermitian matrix with the same eigenvectors and eigenvalues
/// `tan(ψ/2)`, which is injective in the eigenphase ψ. Eigenvalues of `U` are
/// the Rayleigh quotients of the resulting eigenvectors.
pub fn unitary_eigen<T: Real>(u: &Mat3<T>) -> ([Complex<T>; 3], [Triple<T>; 3]) {
    let id = identity::<T>();
    let shifted = |phi: T| {
        let w = Complex::from_polar(T::one(), phi);
        let mut p = id;
        for i in 0..3 {
            for j in 0..3 {
                p[i][j] = p[i][j] + u[i][j] * w;
            }
        }
        p
    };
    let candidates = 8;
    let best_phi = (0..candidates)
        .map(|k| T::TAU() * T::lit(k as f64) / T::lit(candidates as f64))
        .map(|phi| (phi, det(&shifted(phi)).norm()))
        .fold((T::zero(), -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best })
        .0;

    let plus = shifted(best_phi);
    let w = Complex::from_polar(T::one(), best_phi);
    let mut minus = id;
    for i in 0..3 {
        for j in 0..3 {
            minus[i][j] = minus[i][j] - u[i][j] * w;
        }
    }
    let i_unit = Complex::new(T::zero(), T::one());
    let mut h = mul(&minus, &inverse(&plus));
    for row in h.iter_mut() {
        for z in row.iter_mut() {
            *z = *z * i_unit;
        }
    }
    let half = T::lit(0.5);
    let hs = adjoint(&h);
    for i in 0..3 {
        for j in 0..3 {
            h[i][j] = (h[i][j] + hs[i][j]) * half;
        }
    }
    let (_, vecs) = hermitian_eigen(&h);
    let vals = vecs.map(|v| inner(&v, &mul_vec(u, &v)));
    (vals, vecs)
}
