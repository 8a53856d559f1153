use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Sylvester matrix of two binary forms given by dense coefficients
/// `[c₀, …, c_d]` (coefficient of s^{d−i} tⁱ). Leading zeros are kept, so
/// a shared root at (1:0) makes the determinant vanish.
pub fn sylvester_matrix(a: &[BigInt], b: &[BigInt]) -> Vec<Vec<BigInt>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        row[shift..shift + m + 1].clone_from_slice(a);
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        row[shift..shift + n + 1].clone_from_slice(b);
        rows.push(row);
    }
    rows
}

/// Fraction-free Gaussian elimination (Bareiss); exact over ℤ.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Resultant of two binary forms.
pub fn sylvester_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    if a.len() == 1 && b.len() == 1 {
        return BigInt::one();
    }
    bareiss_determinant(sylvester_matrix(a, b))
}
