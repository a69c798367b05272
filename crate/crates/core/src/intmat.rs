//! Internal Gaussian-integer matrices for the arithmetic-heavy kernels
//! (characteristic polynomials, matrix powers, fraction-free
//! elimination).  `Ratio<BigInt>` pays a gcd normalization on every
//! operation, which dominates once entries grow; plain `BigInt`
//! component arithmetic avoids that entirely.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrices::Matrix;
use crate::scalars::{CommScalar, GaussianRational, Rational, Scalar};

/// A Gaussian integer (`re + im·i`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn zero() -> Self {
        GaussInt {
            re: BigInt::ZERO,
            im: BigInt::ZERO,
        }
    }

    pub fn one() -> Self {
        GaussInt {
            re: BigInt::one(),
            im: BigInt::ZERO,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussInt {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn neg(&self) -> Self {
        GaussInt {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Exact division (`None` when not divisible componentwise).
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        let norm = &o.re * &o.re + &o.im * &o.im;
        if norm.is_zero() {
            return None;
        }
        let re_num = &self.re * &o.re + &self.im * &o.im;
        let im_num = &self.im * &o.re - &self.re * &o.im;
        let (rq, rr) = re_num.div_rem(&norm);
        let (iq, ir) = im_num.div_rem(&norm);
        (rr.is_zero() && ir.is_zero()).then_some(GaussInt { re: rq, im: iq })
    }

    /// Exact division by a rational integer.
    pub fn exact_div_int(&self, d: &BigInt) -> Option<Self> {
        let (rq, rr) = self.re.div_rem(d);
        let (iq, ir) = self.im.div_rem(d);
        (rr.is_zero() && ir.is_zero()).then_some(GaussInt { re: rq, im: iq })
    }

    fn to_scalar<S: Scalar>(&self) -> S {
        let g = GaussianRational::new(
            Rational::from(self.re.clone()),
            Rational::from(self.im.clone()),
        );
        S::from_gaussian(&g).expect("integral Gaussian value fits the scalar ring")
    }
}

/// Dense Gaussian-integer matrix, row-major.
#[derive(Clone, Debug)]
pub(crate) struct IntMatrix {
    rows: usize,
    cols: usize,
    e: Vec<GaussInt>,
}

impl IntMatrix {
    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &GaussInt {
        &self.e[r * self.cols + c]
    }

    #[inline]
    fn set(&mut self, r: usize, c: usize, v: GaussInt) {
        self.e[r * self.cols + c] = v;
    }

    pub fn identity(n: usize) -> Self {
        let mut e = vec![GaussInt::zero(); n * n];
        for k in 0..n {
            e[k * n + k] = GaussInt::one();
        }
        IntMatrix {
            rows: n,
            cols: n,
            e,
        }
    }

    /// Converts a commutative-scalar matrix: returns `(c·M, c)` with
    /// Gaussian-integer entries.
    pub fn from_scaled<S: Scalar>(m: &Matrix<S>) -> Result<(Self, BigInt)> {
        let mut lcm = BigInt::one();
        let mut gauss = Vec::with_capacity(m.rows() * m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let z = m
                    .at(r, c)
                    .to_gaussian()
                    .ok_or_else(|| Error::domain("integer kernels need a commutative ring"))?;
                lcm = lcm.lcm(z.re.denom()).lcm(z.im.denom());
                gauss.push(z);
            }
        }
        let e = gauss
            .into_iter()
            .map(|z| {
                let re = (z.re * Rational::from(lcm.clone())).to_integer();
                let im = (z.im * Rational::from(lcm.clone())).to_integer();
                GaussInt { re, im }
            })
            .collect();
        Ok((
            IntMatrix {
                rows: m.rows(),
                cols: m.cols(),
                e,
            },
            lcm,
        ))
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.cols, o.rows);
        let mut out = IntMatrix {
            rows: self.rows,
            cols: o.cols,
            e: vec![GaussInt::zero(); self.rows * o.cols],
        };
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add_scalar_diag(&self, s: &GaussInt) -> Self {
        let mut out = self.clone();
        for k in 0..self.rows.min(self.cols) {
            let v = out.at(k, k).add(s);
            out.set(k, k, v);
        }
        out
    }

    pub fn trace(&self) -> GaussInt {
        let mut t = GaussInt::zero();
        for k in 0..self.rows.min(self.cols) {
            t = t.add(self.at(k, k));
        }
        t
    }

    /// Fraction-free (Bareiss) forward elimination with row pivoting;
    /// returns the echelon matrix and pivot columns.
    pub fn bareiss(&self) -> (IntMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prev = GaussInt::one();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.e.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let pivot = m.at(row, col).clone();
            for r in row + 1..m.rows {
                let head = m.at(r, col).clone();
                for c in col..m.cols {
                    let num = pivot.mul(m.at(r, c)).sub(&head.mul(m.at(row, c)));
                    let v = num
                        .exact_div(&prev)
                        .expect("Bareiss division is exact over an integral domain");
                    m.set(r, c, v);
                }
            }
            prev = pivot;
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Rank and a right-kernel basis over the scalar ring, built from
    /// the Bareiss echelon by exact back-substitution.  Basis columns
    /// are primitive Gaussian-integer vectors.
    pub fn rank_kernel<S: Scalar>(&self) -> (usize, Matrix<S>) {
        let (ech, pivots) = self.bareiss();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::<S>::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            // integral back-substitution: scale the free entry so every
            // pivot solve stays in the Gaussian integers
            let mut x: Vec<GaussInt> = vec![GaussInt::zero(); self.cols];
            x[fc] = GaussInt::one();
            for prow in (0..rank).rev() {
                let pc = pivots[prow];
                let mut acc = GaussInt::zero();
                for (c, xc) in x.iter().enumerate().skip(pc + 1) {
                    if xc.is_zero() {
                        continue;
                    }
                    acc = acc.add(&ech.at(prow, c).mul(xc));
                }
                if acc.is_zero() {
                    continue;
                }
                let pivot = ech.at(prow, pc).clone();
                match acc.neg().exact_div(&pivot) {
                    Some(q) => x[pc] = q,
                    None => {
                        // rescale the whole vector by the pivot
                        for v in x.iter_mut() {
                            *v = v.mul(&pivot);
                        }
                        x[pc] = acc.neg();
                    }
                }
            }
            // divide out the content
            let mut content = BigInt::ZERO;
            for v in &x {
                content = content.gcd(&v.re).gcd(&v.im);
            }
            if content > BigInt::one() {
                for v in x.iter_mut() {
                    *v = v.exact_div_int(&content).expect("content divides");
                }
            }
            for (r, v) in x.into_iter().enumerate() {
                if !v.is_zero() {
                    basis.set(r, k, v.to_scalar());
                }
            }
        }
        (rank, basis)
    }

    /// Converts back dividing every entry by `den` (one reduction per
    /// entry).
    pub fn to_matrix_scaled<S: Scalar>(&self, den: &BigInt) -> Matrix<S> {
        Matrix::from_fn(self.rows, self.cols, |r, c| {
            let v = self.at(r, c);
            let z = GaussianRational::new(
                Rational::new(v.re.clone(), den.clone()),
                Rational::new(v.im.clone(), den.clone()),
            );
            S::from_gaussian(&z).expect("scaled entry fits the scalar ring")
        })
    }
}

/// Exact inverse of a square commutative-scalar matrix through
/// fraction-free elimination on `[c·M | I]` followed by rational
/// back-substitution.
pub(crate) fn inverse_int<S: Scalar>(m: &Matrix<S>) -> Result<Matrix<S>> {
    let n = m.rows();
    if n == 0 {
        return Ok(Matrix::empty());
    }
    let (b, scale) = IntMatrix::from_scaled(m)?;
    let mut aug = IntMatrix {
        rows: n,
        cols: 2 * n,
        e: vec![GaussInt::zero(); n * 2 * n],
    };
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, b.at(r, c).clone());
        }
        aug.set(r, n + r, GaussInt::one());
    }
    let (ech, pivots) = aug.bareiss();
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::singular("matrix is not invertible"));
    }
    // back-substitute each right-hand column over the rationals
    let to_g = |v: &GaussInt| {
        GaussianRational::new(Rational::from(v.re.clone()), Rational::from(v.im.clone()))
    };
    let mut out = Matrix::<S>::zero(n, n);
    let scale_g = GaussianRational::from_rational(Rational::from(scale));
    for j in 0..n {
        let mut x = vec![GaussianRational::new(Rational::ZERO.clone(), Rational::ZERO.clone()); n];
        for p in (0..n).rev() {
            let mut acc = to_g(ech.at(p, n + j));
            for (c, xc) in x.iter().enumerate().skip(p + 1) {
                if num_traits::Zero::is_zero(xc) {
                    continue;
                }
                acc = acc - to_g(ech.at(p, c)) * xc.clone();
            }
            x[p] = acc * to_g(ech.at(p, p)).inv()?;
        }
        for (r, v) in x.into_iter().enumerate() {
            // B^{-1} = X; M^{-1} = scale * X
            let val = v * scale_g.clone();
            out.set(
                r,
                j,
                S::from_gaussian(&val).expect("inverse fits the scalar ring"),
            );
        }
    }
    Ok(out)
}

/// Monic characteristic polynomial through the Faddeev-LeVerrier
/// recurrence over scaled Gaussian-integer entries.
pub(crate) fn charpoly_int<S: CommScalar>(m: &Matrix<S>) -> Result<crate::poly::Polynomial<S>> {
    let n = m.rows();
    if n == 0 {
        return Ok(crate::poly::Polynomial::one());
    }
    let (b, scale) = IntMatrix::from_scaled(m)?;
    // N_1 = B; c_k = -tr(N_k)/k; N_{k+1} = B(N_k + c_k I)
    let mut cur = b.clone();
    let mut coeffs: Vec<GaussInt> = Vec::with_capacity(n);
    for k in 1..=n {
        if k > 1 {
            cur = b.mul(&cur.add_scalar_diag(coeffs.last().unwrap()));
        }
        let ck = cur
            .trace()
            .neg()
            .exact_div_int(&BigInt::from(k as i64))
            .ok_or_else(|| Error::bug("Faddeev-LeVerrier trace division failed"))?;
        coeffs.push(ck);
    }
    // chi_M(x) = x^n + sum (c_k / scale^k) x^{n-k}
    let mut desc = Vec::with_capacity(n + 1);
    desc.push(S::one());
    let mut pow = Rational::one();
    let scale_rat = Rational::from(scale);
    for ck in coeffs {
        pow = &pow * &scale_rat;
        let z = GaussianRational::new(Rational::from(ck.re) / &pow, Rational::from(ck.im) / &pow);
        desc.push(S::from_gaussian(&z).expect("coefficient fits the scalar ring"));
    }
    Ok(crate::poly::Polynomial::from_descending(desc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat_i64;

    #[test]
    fn bareiss_kernel_matches_plain() {
        let m = Matrix::<Rational>::new(
            3,
            4,
            [2, 4, 1, 3, 0, 0, 2, 2, 4, 8, 4, 8]
                .iter()
                .map(|&v| rat_i64(v, 1))
                .collect(),
        )
        .unwrap();
        let (im, _) = IntMatrix::from_scaled(&m).unwrap();
        let (rank, kernel) = im.rank_kernel::<Rational>();
        assert_eq!(rank, 2);
        assert_eq!(kernel.cols(), 2);
        assert!(m.mul(&kernel).unwrap().is_zero());
    }

    #[test]
    fn charpoly_matches_direct() {
        let m = Matrix::<Rational>::new(
            3,
            3,
            [
                rat_i64(1, 2),
                rat_i64(0, 1),
                rat_i64(3, 1),
                rat_i64(1, 1),
                rat_i64(-2, 3),
                rat_i64(0, 1),
                rat_i64(0, 1),
                rat_i64(5, 1),
                rat_i64(1, 1),
            ]
            .to_vec(),
        )
        .unwrap();
        let chi = charpoly_int(&m).unwrap();
        // trace and determinant cross-checks
        assert_eq!(
            chi.coeff(2),
            -(rat_i64(1, 2) + rat_i64(-2, 3) + rat_i64(1, 1))
        );
        let det = m.det().unwrap();
        let sign = if 3 % 2 == 0 {
            det.clone()
        } else {
            -det.clone()
        };
        assert_eq!(chi.coeff(0), sign);
    }
}
