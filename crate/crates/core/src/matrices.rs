//! Dense exact matrices over a scalar ring, with the named constructors
//! and structural operations used by the canonical-form machinery.
//!
//! Convention: matrices act on coordinate columns and scalars multiply on
//! the right (right vector spaces).  All eliminations therefore use
//! left-multiplication row operations, which keeps them valid over the
//! quaternions.

use num_traits::Zero as NumZero;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalars::{
    CommScalar, GaussianRational, Involution, Quaternion, Rational, Ring, Scalar,
};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<S: Scalar> {
    rows: usize,
    cols: usize,
    e: Vec<S>,
}

impl<S: Scalar> std::fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            e: entries,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut e = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                e.push(f(r, c));
            }
        }
        Matrix { rows, cols, e }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }

    /// The 0×0 matrix, the identity of `direct_sum`.
    pub fn empty() -> Self {
        Matrix {
            rows: 0,
            cols: 0,
            e: vec![],
        }
    }

    pub fn scalar(n: usize, s: &S) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { s.clone() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &S {
        &self.e[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.e[r * self.cols + c] = v;
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Matrix<T>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            e: self.e.iter().map(f).collect::<Result<Vec<_>>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    /// Conjugate-transpose under the given involution: `M* = conj(M)ᵀ`.
    pub fn star(&self, inv: Involution) -> Result<Self> {
        if !S::supports_involution(inv) {
            return Err(Error::domain(format!(
                "involution {inv:?} is not defined on {}",
                S::RING
            )));
        }
        let mut out = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).conjugate(inv)?);
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::shape(format!(
                "add: {}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |r, c| {
            self.at(r, c).clone() + o.at(r, c).clone()
        }))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x.clone())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::shape(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        // big products run over scaled integer components, where the
        // per-operation gcd normalization of rational arithmetic is
        // avoided; small ones are cheaper naively
        if self.rows * self.cols * o.cols >= 160 {
            return self.mul_via_int(o);
        }
        let mut out = Matrix::<S>::zero(self.rows, o.cols);
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
                    let cur = out.at(r, c).clone();
                    out.set(r, c, cur + a.clone() * b.clone());
                }
            }
        }
        Ok(out)
    }

    fn mul_via_int(&self, o: &Self) -> Result<Self> {
        match S::RING {
            Ring::Quaternion => {
                let a = complex_embed(&self.map(|x| x.to_quaternion()));
                let b = complex_embed(&o.map(|x| x.to_quaternion()));
                let (ia, sa) = crate::intmat::IntMatrix::from_scaled(&a)?;
                let (ib, sb) = crate::intmat::IntMatrix::from_scaled(&b)?;
                let den = sa * sb;
                let prod: Matrix<GaussianRational> = ia.mul(&ib).to_matrix_scaled(&den);
                Ok(Matrix::from_fn(self.rows, o.cols, |r, c| {
                    let z = prod.at(2 * r, 2 * c);
                    let w = prod.at(2 * r, 2 * c + 1);
                    let h = Quaternion::from_complex_pair(z, w);
                    S::from_components(&[h.a, h.b, h.c, h.d])
                }))
            }
            _ => {
                let (ia, sa) = crate::intmat::IntMatrix::from_scaled(self)?;
                let (ib, sb) = crate::intmat::IntMatrix::from_scaled(o)?;
                let den = sa * sb;
                Ok(ia.mul(&ib).to_matrix_scaled(&den))
            }
        }
    }

    /// `s·M` (scalar on the left of every entry).
    pub fn scale_left(&self, s: &S) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    /// `M·s` (scalar on the right of every entry).
    pub fn scale_right(&self, s: &S) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::shape("pow needs a square matrix"));
        }
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Block-diagonal sum; the 0×0 matrix is a two-sided identity.
    pub fn direct_sum(&self, o: &Self) -> Self {
        let mut out = Matrix::zero(self.rows + o.rows, self.cols + o.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, o);
        out
    }

    /// Skew sum `M ⧹ N = [[0, N], [M, 0]]`.
    pub fn skew_sum(m: &Self, n: &Self) -> Self {
        let rows = n.rows + m.rows;
        let cols = m.cols + n.cols;
        let mut out = Matrix::zero(rows, cols);
        out.set_block(0, m.cols, n);
        out.set_block(n.rows, 0, m);
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.at(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, h: usize, w: usize) -> Self {
        Matrix::from_fn(h, w, |r, c| self.at(r0 + r, c0 + c).clone())
    }

    pub fn column(&self, c: usize) -> Self {
        self.block(0, c, self.rows, 1)
    }

    /// Horizontal concatenation of equal-height matrices.
    pub fn hconcat(parts: &[Matrix<S>]) -> Result<Self> {
        if parts.is_empty() {
            return Ok(Matrix::empty());
        }
        let rows = parts[0].rows;
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        if parts.iter().any(|m| m.rows != rows) {
            return Err(Error::shape("hconcat expects equal heights"));
        }
        let mut out = Matrix::zero(rows, cols);
        let mut c0 = 0;
        for m in parts {
            out.set_block(0, c0, m);
            c0 += m.cols;
        }
        Ok(out)
    }

    pub fn from_columns(cols: &[Matrix<S>]) -> Result<Self> {
        if cols.is_empty() {
            return Ok(Matrix::empty());
        }
        let rows = cols[0].rows;
        for m in cols {
            if m.rows != rows || m.cols != 1 {
                return Err(Error::shape("from_columns expects n x 1 columns"));
            }
        }
        Ok(Matrix::from_fn(rows, cols.len(), |r, c| {
            cols[c].at(r, 0).clone()
        }))
    }

    // -- elimination ------------------------------------------------------

    /// Reduced row echelon form via exact Gauss-Jordan with left row
    /// operations (valid over the quaternions).
    fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
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
            let inv = m.at(row, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = inv.clone() * m.at(row, c).clone();
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c).clone() - f.clone() * m.at(row, c).clone();
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        match S::RING {
            Ring::Quaternion => {
                let q = self.map(|x| x.to_quaternion());
                complex_embed(&q).rank() / 2
            }
            _ => match crate::intmat::IntMatrix::from_scaled(self) {
                Ok((im, _)) => im.bareiss().1.len(),
                Err(_) => self.rref().1.len(),
            },
        }
    }

    /// Exact rank and a basis of the right kernel `{x : Mx = 0}`,
    /// returned as the columns of an `n × nullity` matrix.
    pub fn rank_kernel(&self) -> (usize, Matrix<S>) {
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, S::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                basis.set(pc, k, -r.at(prow, fc).clone());
            }
        }
        (rank, basis)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Exact inverse.  Commutative rings run fraction-free elimination
    /// over scaled integer entries; quaternion matrices invert through
    /// the complex embedding (`embed(M)⁻¹ = embed(M⁻¹)`).
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::shape("inverse needs a square matrix"));
        }
        let n = self.rows;
        match S::RING {
            Ring::Quaternion => {
                let q = self.map(|x| x.to_quaternion());
                let inv_emb = complex_embed(&q).inverse()?;
                Ok(Matrix::from_fn(n, n, |r, c| {
                    let z = inv_emb.at(2 * r, 2 * c);
                    let w = inv_emb.at(2 * r, 2 * c + 1);
                    let h = Quaternion::from_complex_pair(z, w);
                    S::from_components(&[h.a, h.b, h.c, h.d])
                }))
            }
            _ => crate::intmat::inverse_int(self),
        }
    }

    /// Plain Gauss-Jordan inverse on `[M | I]`; the generic reference
    /// path, kept as an oracle for the fast routes.
    pub fn inverse_gauss_jordan(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::shape("inverse needs a square matrix"));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::singular("matrix is not invertible"));
        }
        Ok(r.block(0, n, n, n))
    }

    /// Evaluates `f(M) = Σ coeffs[k]·M^k` (coefficients ascending,
    /// multiplying from the left).
    pub fn poly_eval(&self, coeffs: &[S]) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::shape("poly_eval needs a square matrix"));
        }
        let n = self.rows;
        let mut acc = Matrix::zero(n, n);
        for c in coeffs.iter().rev() {
            acc = acc.mul(self)?;
            acc = acc.add(&Matrix::scalar(n, c))?;
        }
        Ok(acc)
    }

    /// Evaluates the Laurent polynomial `Σ_k coeffs[k]·M^(lo+k)`;
    /// negative powers require `M` invertible.
    pub fn laurent_eval(&self, lo: i64, coeffs: &[S]) -> Result<Self> {
        let body = self.poly_eval(coeffs)?;
        if lo == 0 {
            return Ok(body);
        }
        let shift = if lo > 0 {
            self.pow(lo as usize)?
        } else {
            self.inverse()?.pow((-lo) as usize)?
        };
        shift.mul(&body)
    }
}

// ---------------------------------------------------------------------------
// Commutative-ring extras: fraction-free elimination and charpoly
// ---------------------------------------------------------------------------

impl<S: CommScalar> Matrix<S> {
    /// Rank and right-kernel basis through fraction-free (Bareiss)
    /// elimination over scaled integer entries; much faster than plain
    /// Gauss for Q and Q(i) matrices.  Kernel basis columns come out as
    /// primitive integral vectors.
    pub fn rank_kernel_ff(&self) -> (usize, Matrix<S>) {
        match crate::intmat::IntMatrix::from_scaled(self) {
            Ok((im, _)) => im.rank_kernel::<S>(),
            Err(_) => self.rank_kernel(),
        }
    }

    /// Determinant via fraction-free elimination with denominator tracking.
    pub fn det(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::shape("det needs a square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(S::one());
        }
        // Plain exact Gauss with partial pivoting over the field.
        let mut m = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Ok(S::zero());
            };
            if p != col {
                for c in 0..n {
                    m.e.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = m.at(col, col).clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let f = m.at(r, col).clone() * inv.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = m.at(r, c).clone() - f.clone() * m.at(col, c).clone();
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    /// Scales the matrix by the least common multiple of all entry
    /// component denominators: returns `(c·M, c)` with integral entries.
    pub fn integerize(&self) -> (Matrix<S>, num_bigint::BigInt) {
        let mut lcm = num_bigint::BigInt::from(1);
        for e in &self.e {
            lcm = num_integer::lcm(lcm, scalar_denominator(e));
        }
        if lcm == num_bigint::BigInt::from(1) {
            return (self.clone(), lcm);
        }
        let f = S::from_rational(&Rational::from(lcm.clone()));
        (self.map(|x| x.clone() * f.clone()), lcm)
    }

    /// Rescales every column to a primitive integral vector (clears
    /// denominators, divides by the content).  Column scaling by nonzero
    /// rationals preserves spans, kernels and chain relations.
    pub fn primitive_columns(&self) -> Matrix<S> {
        let mut out = self.clone();
        for c in 0..self.cols {
            let mut lcm = num_bigint::BigInt::from(1);
            for r in 0..self.rows {
                lcm = num_integer::lcm(lcm, scalar_denominator(self.at(r, c)));
            }
            let mut gcd = num_bigint::BigInt::ZERO;
            let scale = S::from_rational(&Rational::from(lcm.clone()));
            let ints: Vec<S> = (0..self.rows)
                .map(|r| self.at(r, c).clone() * scale.clone())
                .collect();
            for v in &ints {
                gcd = num_integer::gcd(gcd, scalar_content(v));
            }
            if NumZero::is_zero(&gcd) || gcd == num_bigint::BigInt::from(1) {
                for (r, v) in ints.into_iter().enumerate() {
                    out.set(r, c, v);
                }
            } else {
                let div = S::from_rational(&Rational::new(num_bigint::BigInt::from(1), gcd));
                for (r, v) in ints.into_iter().enumerate() {
                    out.set(r, c, v * div.clone());
                }
            }
        }
        out
    }

    /// Monic characteristic polynomial, computed exactly by the
    /// Faddeev-LeVerrier recurrence over scaled Gaussian-integer entries
    /// (fraction-free; the coefficients are rescaled at the end).
    pub fn charpoly(&self) -> Result<Polynomial<S>> {
        if !self.is_square() {
            return Err(Error::shape("charpoly needs a square matrix"));
        }
        crate::intmat::charpoly_int(self)
    }
}

fn scalar_denominator<S: Scalar>(s: &S) -> num_bigint::BigInt {
    let mut lcm = num_bigint::BigInt::from(1);
    for part in scalar_parts(s) {
        lcm = num_integer::lcm(lcm, part.denom().clone());
    }
    lcm
}

/// Gcd of the integral components (0 for the zero scalar).
fn scalar_content<S: Scalar>(s: &S) -> num_bigint::BigInt {
    let mut gcd = num_bigint::BigInt::ZERO;
    for part in scalar_parts(s) {
        gcd = num_integer::gcd(gcd, part.numer().clone());
    }
    gcd
}

fn scalar_parts<S: Scalar>(s: &S) -> Vec<Rational> {
    if let Some(z) = s.to_gaussian() {
        vec![z.re, z.im]
    } else {
        let q = s.to_quaternion();
        vec![q.a, q.b, q.c, q.d]
    }
}

// ---------------------------------------------------------------------------
// Named matrices
// ---------------------------------------------------------------------------

/// Upper-bidiagonal Jordan block `J_n(λ)`.
pub fn jordan_block<S: Scalar>(n: usize, lambda: &S) -> Result<Matrix<S>> {
    check_size(n)?;
    Ok(Matrix::from_fn(n, n, |r, c| {
        if r == c {
            lambda.clone()
        } else if c == r + 1 {
            S::one()
        } else {
            S::zero()
        }
    }))
}

/// Unitriangular `Λ_n` with every strictly upper entry equal to 2.
pub fn lambda_matrix<S: Scalar>(n: usize) -> Result<Matrix<S>> {
    check_size(n)?;
    Ok(Matrix::from_fn(n, n, |r, c| {
        if r == c {
            S::one()
        } else if c > r {
            S::from_i64(2)
        } else {
            S::zero()
        }
    }))
}

/// Antidiagonal `F_n` with entries 1, −1, 1, … from the bottom-left corner.
pub fn f_matrix<S: Scalar>(n: usize) -> Result<Matrix<S>> {
    check_size(n)?;
    Ok(Matrix::from_fn(n, n, |r, c| {
        if r + c == n - 1 {
            S::from_i64(if (n - 1 - r).is_multiple_of(2) { 1 } else { -1 })
        } else {
            S::zero()
        }
    }))
}

/// Antidiagonal of ones `E_n`.
pub fn e_matrix<S: Scalar>(n: usize) -> Result<Matrix<S>> {
    check_size(n)?;
    Ok(Matrix::from_fn(n, n, |r, c| {
        if r + c == n - 1 {
            S::one()
        } else {
            S::zero()
        }
    }))
}

/// `Ω_n`: unitriangular with `(Ω_n)_{jk} = 2i^{k−j}` for `k > j`.
pub fn omega_matrix<S: Scalar>(n: usize) -> Result<Matrix<S>> {
    check_size(n)?;
    let i_unit = imaginary_unit::<S>()?;
    let mut out = Matrix::identity(n);
    for r in 0..n {
        let mut ipow = S::one();
        for c in r + 1..n {
            ipow = ipow * i_unit.clone();
            out.set(r, c, S::from_i64(2) * ipow.clone());
        }
    }
    Ok(out)
}

/// `S_n = diag(1, i, i², …, i^{n−1})`.
pub fn s_diag<S: Scalar>(n: usize) -> Result<Matrix<S>> {
    check_size(n)?;
    let i_unit = imaginary_unit::<S>()?;
    let mut out = Matrix::zero(n, n);
    let mut ipow = S::one();
    for k in 0..n {
        out.set(k, k, ipow.clone());
        ipow = ipow * i_unit.clone();
    }
    Ok(out)
}

/// Frobenius (companion) block with subdiagonal ones and last column
/// `(−c_n, …, −c_1)ᵀ`; its characteristic polynomial is
/// `x^n + c_1 x^{n−1} + … + c_n`.
pub fn frobenius_block<S: Scalar>(c: &[S]) -> Result<Matrix<S>> {
    let n = c.len();
    check_size(n)?;
    let mut out = Matrix::zero(n, n);
    for r in 1..n {
        out.set(r, r - 1, S::one());
    }
    for r in 0..n {
        out.set(r, n - 1, -c[n - 1 - r].clone());
    }
    Ok(out)
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::shape("matrix size must be at least 1"));
    }
    Ok(())
}

fn imaginary_unit<S: Scalar>() -> Result<S> {
    S::from_gaussian(&GaussianRational::i())
        .ok_or_else(|| Error::domain(format!("the ring {} has no imaginary unit", S::RING)))
}

// ---------------------------------------------------------------------------
// Realification and complex embedding
// ---------------------------------------------------------------------------

/// Entrywise realification: `a+bi ↦ [[a, −b], [b, a]]`, doubling both
/// dimensions.  Additive, multiplicative, and star-compatible
/// (`realify(M*) = realify(M)ᵀ` under complex conjugation).
pub fn realify(m: &Matrix<GaussianRational>) -> Matrix<Rational> {
    Matrix::from_fn(2 * m.rows(), 2 * m.cols(), |r, c| {
        let z = m.at(r / 2, c / 2);
        match (r % 2, c % 2) {
            (0, 0) => z.re.clone(),
            (0, 1) => -z.im.clone(),
            (1, 0) => z.im.clone(),
            _ => z.re.clone(),
        }
    })
}

/// Entrywise complex embedding of a quaternion matrix:
/// `z + wj ↦ [[z, w], [−conj(w), conj(z)]]`.  Additive and multiplicative.
pub fn complex_embed(m: &Matrix<Quaternion>) -> Matrix<GaussianRational> {
    Matrix::from_fn(2 * m.rows(), 2 * m.cols(), |r, c| {
        let (z, w) = m.at(r / 2, c / 2).complex_pair();
        match (r % 2, c % 2) {
            (0, 0) => z,
            (0, 1) => w,
            (1, 0) => -w.conj(),
            _ => z.conj(),
        }
    })
}

/// Downcasts a Gaussian matrix with vanishing imaginary parts to ℚ.
pub fn gaussian_to_rational(m: &Matrix<GaussianRational>) -> Result<Matrix<Rational>> {
    m.try_map(|z| {
        if z.is_real() {
            Ok(z.re.clone())
        } else {
            Err(Error::domain(format!("entry {z} is not real")))
        }
    })
}

/// Lifts a rational matrix into ℚ(i).
pub fn rational_to_gaussian(m: &Matrix<Rational>) -> Matrix<GaussianRational> {
    m.map(|r| GaussianRational::from_rational(r.clone()))
}
