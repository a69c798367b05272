//! General-field machinery for Frobenius blocks: self-reciprocal
//! polynomials, f-recurrent vectors, the Toeplitz construction of the
//! form matrix `Φ₍ε₎` with `Φ₍ε₎ = ε·Φ₍ε₎* = Φ*Φ₍ε₎Φ`, and the Laurent
//! representatives `q(x)` of the residue-field Hermitian elements.

use crate::error::{Error, Result};
use crate::matrices::{frobenius_block, Matrix};
use crate::pair_engine::{IsometricPair, Sign};
use crate::poly::Polynomial;
use crate::roots;
use crate::scalars::{CaseTag, CommScalar, GaussianRational, Involution, Ring, ScalarDomain};

/// A nonsingular Frobenius block, carried as its characteristic
/// polynomial `χ = p^s` with `p` irreducible and `p ≠ x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusBlock<S: CommScalar> {
    chi: Polynomial<S>,
    p: Polynomial<S>,
    s: usize,
}

impl<S: CommScalar + roots::FieldRoots> FrobeniusBlock<S> {
    /// From the irreducible factor and its power.  Irreducibility is
    /// verified up to degree 4; higher degrees need
    /// [`new_assume_irreducible`](Self::new_assume_irreducible).
    pub fn new(p: Polynomial<S>, s: usize) -> Result<Self> {
        if !roots::is_irreducible(&p)? {
            return Err(Error::domain(format!(
                "{p:?} is reducible over {}",
                S::RING
            )));
        }
        Self::new_unchecked(p, s)
    }

    /// From a factor the caller asserts to be irreducible (needed beyond
    /// degree 4, where no factorization is attempted).
    pub fn new_assume_irreducible(p: Polynomial<S>, s: usize) -> Result<Self> {
        if let Ok(false) = roots::is_irreducible(&p) {
            return Err(Error::domain(format!(
                "{p:?} is reducible over {}",
                S::RING
            )));
        }
        Self::new_unchecked(p, s)
    }

    fn new_unchecked(p: Polynomial<S>, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::domain("the power s must be at least 1"));
        }
        if !p.is_monic() {
            return Err(Error::domain("the irreducible factor must be monic"));
        }
        if p.degree().unwrap_or(0) < 1 || p.coeff(0).is_zero() {
            return Err(Error::domain(
                "the factor must be nonconstant with nonzero constant term (p != x)",
            ));
        }
        let chi = p.pow(s);
        Ok(FrobeniusBlock { chi, p, s })
    }

    /// Recognizes `χ = p^s` from the characteristic polynomial alone,
    /// preferring the largest valid power.
    pub fn from_chi(chi: Polynomial<S>) -> Result<Self> {
        let n = chi
            .degree()
            .ok_or_else(|| Error::domain("empty characteristic polynomial"))?;
        if n == 0 {
            return Err(Error::domain(
                "characteristic polynomial must be nonconstant",
            ));
        }
        if !chi.is_monic() {
            return Err(Error::domain("characteristic polynomial must be monic"));
        }
        if chi.coeff(0).is_zero() {
            return Err(Error::domain(
                "the Frobenius block must be nonsingular (nonzero constant term)",
            ));
        }
        for s in (1..=n).rev() {
            if n % s != 0 {
                continue;
            }
            if let Some(p) = chi.nth_root(s) {
                match roots::is_irreducible(&p) {
                    Ok(true) => return Self::new_unchecked(p, s),
                    Ok(false) => continue,
                    // degree > 4: accept the coarsest decomposition the
                    // caller gave us and trust it
                    Err(_) if s == 1 => return Self::new_unchecked(p, s),
                    Err(_) => continue,
                }
            }
        }
        Err(Error::domain(
            "characteristic polynomial is not a power of an irreducible factor",
        ))
    }
}

impl<S: CommScalar> FrobeniusBlock<S> {
    pub fn n(&self) -> usize {
        self.chi.degree().unwrap_or(0)
    }

    pub fn chi(&self) -> &Polynomial<S> {
        &self.chi
    }

    pub fn p(&self) -> &Polynomial<S> {
        &self.p
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `μ = p^{s−1}`.
    pub fn mu(&self) -> Polynomial<S> {
        self.p.pow(self.s - 1)
    }

    /// The companion matrix realizing `χ`.
    pub fn matrix(&self) -> Result<Matrix<S>> {
        let mut c = self.chi.descending();
        c.remove(0); // drop the monic leading 1: c_1 .. c_n remain
        frobenius_block(&c)
    }
}

/// `f^∨(x) := ā_n⁻¹(ā_n xⁿ + … + ā_1 x + ā_0)` — conjugated, reversed,
/// renormalized monic.  Requires `f(0) ≠ 0`.
pub fn poly_reciprocal<S: CommScalar>(f: &Polynomial<S>, inv: Involution) -> Result<Polynomial<S>> {
    if f.coeff(0).is_zero() {
        return Err(Error::domain("reciprocal needs a nonzero constant term"));
    }
    let conj = f.conj_coeffs(inv)?;
    let mut rev = conj.coeffs().to_vec();
    rev.reverse();
    Polynomial::new(rev).make_monic()
}

/// Whether `p = p^∨` under the involution.
pub fn is_self_reciprocal<S: CommScalar>(p: &Polynomial<S>, inv: Involution) -> Result<bool> {
    Ok(*p == poly_reciprocal(p, inv)?)
}

/// Existence of `Φ₍ε₎`: `p = p^∨`, and not (identity involution with
/// `ε = (−1)^n` and `deg p = 1`).
pub fn phi_epsilon_exists<S: CommScalar>(
    phi: &FrobeniusBlock<S>,
    epsilon: Sign,
    inv: Involution,
) -> Result<bool> {
    if !is_self_reciprocal(phi.p(), inv)? {
        return Ok(false);
    }
    let excluded = inv.is_identity()
        && epsilon == Sign::pow_of_minus_one(phi.n())
        && phi.p().degree() == Some(1);
    Ok(!excluded)
}

/// Whether the vector satisfies the `f`-recurrence in every window
/// (vectors no longer than `deg f` are trivially recurrent; nothing is
/// `f`-recurrent when `deg f = 0`).
pub fn is_recurrent<S: CommScalar>(v: &[S], f: &Polynomial<S>) -> bool {
    let Some(m) = f.degree() else {
        return false;
    };
    if m == 0 {
        return false;
    }
    if v.len() <= m {
        return true;
    }
    for l in 0..v.len() - m {
        // gamma_t = coefficient of x^(m-t); window sum over t = 0..=m
        let mut acc = S::zero();
        for t in 0..=m {
            acc = acc + f.coeff(m - t) * v[l + t].clone();
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

/// Extends `v` on both sides to `target_len` so that every window
/// satisfies the `f`-recurrence; the extension is unique.  The extra
/// entries are split evenly between the two ends (left gets the floor).
pub fn recurrent_extend<S: CommScalar>(
    v: &[S],
    f: &Polynomial<S>,
    target_len: usize,
) -> Result<Vec<S>> {
    let m = f
        .degree()
        .ok_or_else(|| Error::domain("recurrence by the zero polynomial"))?;
    if m == 0 {
        return Err(Error::domain("recurrence by a constant polynomial"));
    }
    if f.coeff(0).is_zero() {
        return Err(Error::domain("recurrence needs a nonzero constant term"));
    }
    if target_len <= v.len() {
        return Ok(v.to_vec());
    }
    if v.len() < m {
        return Err(Error::domain(format!(
            "a fragment of length at least deg f = {m} is needed to extend, got {}",
            v.len()
        )));
    }
    let extra = target_len - v.len();
    let left = extra / 2;
    let right = extra - left;
    let lead_inv = f.coeff(m).inv()?;
    let const_inv = f.coeff(0).inv()?;
    let mut out: std::collections::VecDeque<S> = v.iter().cloned().collect();
    for _ in 0..right {
        // gamma_m * a_{l+m} = -(sum of earlier terms), window ending at the new entry
        let l = out.len() - m;
        let mut acc = S::zero();
        for t in 0..m {
            acc = acc + f.coeff(m - t) * out[l + t].clone();
        }
        out.push_back(-(const_inv.clone() * acc));
    }
    for _ in 0..left {
        let mut acc = S::zero();
        for t in 1..=m {
            acc = acc + f.coeff(m - t) * out[t - 1].clone();
        }
        out.push_front(-(lead_inv.clone() * acc));
    }
    Ok(out.into_iter().collect())
}

/// The seed vector `v = (a_{−m}, …, a_m)` of the Toeplitz construction,
/// of length `n` (`n` odd) or `n + 1` (`n` even), picked by the four
/// case rules.  The free parameter of the nonidentity-involution case is
/// fixed to `a = i`.
pub fn seed_vector<S: CommScalar>(
    phi: &FrobeniusBlock<S>,
    epsilon: Sign,
    inv: Involution,
) -> Result<Vec<S>> {
    if !S::supports_involution(inv) {
        return Err(Error::domain(format!(
            "involution {inv:?} is undefined on {}",
            S::RING
        )));
    }
    if !inv.is_identity() && epsilon == Sign::Minus {
        return Err(Error::domain(
            "skew-Hermitian forms with a nonidentity involution: rescale to eps = +1 first",
        ));
    }
    let n = phi.n();
    let chi = phi.chi();
    let eps: S = epsilon.scalar();
    let c_n = chi.coeff(0); // constant term of chi
    if n.is_multiple_of(2) {
        if c_n != eps {
            // (i): (c_n − ε, 0, …, 0, ε·conj(c_n) − 1)
            let mut v = vec![S::zero(); n + 1];
            v[0] = c_n.clone() - eps.clone();
            v[n] = eps * c_n.conjugate(inv)? - S::one();
            Ok(v)
        } else if inv.is_identity() {
            // (ii): (c_1, −1, 0, …, 0, −1, c_1); (c_1, −2, c_1) for n = 2
            let c_1 = chi.coeff(n - 1);
            if n == 2 {
                Ok(vec![c_1.clone(), S::from_i64(-2), c_1])
            } else {
                let mut v = vec![S::zero(); n + 1];
                v[0] = c_1.clone();
                v[1] = -S::one();
                v[n - 1] = -S::one();
                v[n] = c_1;
                Ok(v)
            }
        } else {
            // (iii): (a − ā, 0, …, 0, ā − a) with a = i
            let a = S::from_gaussian(&GaussianRational::i())
                .ok_or_else(|| Error::domain("no element with conj(a) != a in this ring"))?;
            let diff = a.clone() - a.conjugate(inv)?;
            let mut v = vec![S::zero(); n + 1];
            v[0] = diff.clone();
            v[n] = -diff;
            Ok(v)
        }
    } else {
        let linear_special = phi.p().degree() == Some(1) && {
            // p = x + c with c^{n−1} = −1
            let c = phi.p().coeff(0);
            let mut pow = S::one();
            for _ in 0..n - 1 {
                pow = pow * c.clone();
            }
            pow == -S::one()
        };
        if linear_special {
            // (iii), odd-length variant
            let a = S::from_gaussian(&GaussianRational::i())
                .ok_or_else(|| Error::domain("no element with conj(a) != a in this ring"))?;
            let diff = a.clone() - a.conjugate(inv)?;
            let mut v = vec![S::zero(); n];
            v[0] = diff.clone();
            if n > 1 {
                v[n - 1] = -diff;
            } else {
                return Err(Error::bug("odd special case cannot occur at n = 1"));
            }
            Ok(v)
        } else {
            // (iv): (1, 0, …, 0, ε)
            if n == 1 {
                if epsilon == Sign::Minus {
                    return Err(Error::Existence(
                        "no 1x1 skew form matrix exists here".into(),
                    ));
                }
                return Ok(vec![S::one()]);
            }
            let mut v = vec![S::zero(); n];
            v[0] = S::one();
            v[n - 1] = eps;
            Ok(v)
        }
    }
}

/// Builds the Toeplitz matrix `Φ₍ε₎ = [a_{i−j}]` from the χ-recurrent
/// extension of the seed vector, and verifies nonsingularity together
/// with `Φ₍ε₎ = ε·Φ₍ε₎* = Φ*Φ₍ε₎Φ` before returning it.
pub fn build_toeplitz<S: CommScalar + roots::FieldRoots>(
    phi: &FrobeniusBlock<S>,
    epsilon: Sign,
    inv: Involution,
) -> Result<Matrix<S>> {
    if !phi_epsilon_exists(phi, epsilon, inv)? {
        return Err(Error::Existence(format!(
            "no form matrix exists for chi = {:?} with eps = {epsilon} under {inv:?}",
            phi.chi()
        )));
    }
    let n = phi.n();
    let seed = seed_vector(phi, epsilon, inv)?;
    let full = recurrent_extend(&seed, phi.chi(), 2 * n - 1)?;
    debug_assert_eq!(full.len(), 2 * n - 1);
    // full[k] = a_{k-(n-1)}; entry (i, j) is a_{i-j}
    let m = Matrix::from_fn(n, n, |i, j| full[i + (n - 1) - j].clone());

    if !is_recurrent(&full, phi.chi()) {
        return Err(Error::bug("extension lost the chi-recurrence"));
    }
    if phi.s() > 1 && is_recurrent(&full, &phi.mu()) {
        return Err(Error::bug(
            "entry vector is mu-recurrent; the form matrix would be singular",
        ));
    }
    if !m.is_invertible() {
        return Err(Error::bug("form matrix came out singular"));
    }
    let star = m.star(inv)?.scale_left(&epsilon.scalar::<S>());
    if m != star {
        return Err(Error::bug("form matrix is not eps-Hermitian"));
    }
    let f = phi.matrix()?;
    let fs = f.star(inv)?;
    if fs.mul(&m)?.mul(&f)? != m {
        return Err(Error::bug("form matrix does not satisfy Phi* M Phi = M"));
    }
    Ok(m)
}

/// A Hermitian residue representative
/// `q(x) = a_r x^r + … + a_1 x + a_0 + ā_1 x^{−1} + … + ā_r x^{−r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFunction<S: CommScalar> {
    a: Vec<S>, // a_0 ..= a_r
}

impl<S: CommScalar> QFunction<S> {
    /// From the coefficients `a_0, …, a_r`.
    pub fn new(a: Vec<S>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::domain("q needs at least the constant coefficient"));
        }
        Ok(QFunction { a })
    }

    pub fn one() -> Self {
        QFunction { a: vec![S::one()] }
    }

    pub fn constant(c: S) -> Self {
        QFunction { a: vec![c] }
    }

    pub fn r(&self) -> usize {
        self.a.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|c| c.is_zero())
    }

    /// Checks the structural side conditions against a block: `ā_0 = a_0`,
    /// `r ≤ ⌊deg p / 2⌋`, and when `deg p = 2r` the top-coefficient rule
    /// (zero for the identity involution; `ā_r = ±a_r` by `p(0) = 1` or
    /// not, otherwise).
    pub fn validate(&self, phi: &FrobeniusBlock<S>, inv: Involution) -> Result<()> {
        if self.a[0] != self.a[0].conjugate(inv)? {
            return Err(Error::domain(
                "the constant coefficient must satisfy conj(a0) = a0",
            ));
        }
        let half = phi.p().degree().unwrap_or(0) / 2;
        if self.r() > half {
            return Err(Error::domain(format!(
                "q degree r = {} exceeds floor(deg p / 2) = {half}",
                self.r()
            )));
        }
        if phi.p().degree() == Some(2 * self.r()) && self.r() > 0 {
            let a_r = &self.a[self.r()];
            let conj_r = a_r.conjugate(inv)?;
            if inv.is_identity() {
                if !a_r.is_zero() {
                    return Err(Error::domain(
                        "identity involution with deg p = 2r forces a_r = 0",
                    ));
                }
            } else if phi.p().coeff(0).is_one() {
                if *a_r != -conj_r {
                    return Err(Error::domain("p(0) = 1 forces a_r = -conj(a_r)"));
                }
            } else if *a_r != conj_r {
                return Err(Error::domain("p(0) != 1 forces a_r = conj(a_r)"));
            }
        }
        Ok(())
    }

    /// Laurent evaluation `Σ a_k M^k + Σ ā_k M^{−k}`.
    pub fn eval(&self, m: &Matrix<S>, inv: Involution) -> Result<Matrix<S>> {
        let r = self.r();
        let mut coeffs = Vec::with_capacity(2 * r + 1);
        for k in (1..=r).rev() {
            coeffs.push(self.a[k].conjugate(inv)?);
        }
        coeffs.extend(self.a.iter().cloned());
        m.laurent_eval(-(r as i64), &coeffs)
    }
}

/// The domain tag the general-field machinery validates pairs under.
fn field_domain(ring: Ring, inv: Involution) -> Result<ScalarDomain> {
    match (ring, inv) {
        (Ring::Rational, Involution::Identity) => ScalarDomain::for_case(CaseTag::C, None),
        (Ring::Gaussian, Involution::Identity) => ScalarDomain::for_case(CaseTag::A, None),
        (Ring::Gaussian, Involution::ComplexConjugation) => {
            ScalarDomain::for_case(CaseTag::B, None)
        }
        other => Err(Error::domain(format!(
            "no field domain for {other:?}; quaternions are not a field"
        ))),
    }
}

/// One summand of the general-field direct sum: the hyperbolic pair
/// `(Φ ⊕ Φ^{-*}, I ⧹ εI)` when no form matrix exists for `Φ`, or
/// `(Φ, Φ₍ε₎·q(Φ))` when one does (`q ≠ 0`).
pub fn build_frobenius_summand<S: CommScalar + roots::FieldRoots>(
    phi: &FrobeniusBlock<S>,
    epsilon: Sign,
    inv: Involution,
    q: Option<&QFunction<S>>,
) -> Result<IsometricPair<S>> {
    let domain = field_domain(S::RING, inv)?;
    let f = phi.matrix()?;
    match q {
        None => {
            if phi_epsilon_exists(phi, epsilon, inv)? {
                return Err(Error::Existence(format!(
                    "a form matrix exists for chi = {:?}; the hyperbolic summand is reserved \
                     for blocks without one",
                    phi.chi()
                )));
            }
            let partner = f.inverse()?.star(inv)?;
            let a = f.direct_sum(&partner);
            let n = phi.n();
            let b = Matrix::skew_sum(
                &Matrix::identity(n),
                &Matrix::scalar(n, &epsilon.scalar::<S>()),
            );
            IsometricPair::validate(domain, epsilon, a, b)
        }
        Some(q) => {
            if q.is_zero() {
                return Err(Error::domain("q must be nonzero"));
            }
            q.validate(phi, inv)?;
            let toeplitz = build_toeplitz(phi, epsilon, inv)?;
            let b = toeplitz.mul(&q.eval(&f, inv)?)?;
            IsometricPair::validate(domain, epsilon, f, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat_i64, Rational};

    fn rp(desc: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_descending(desc.iter().map(|&n| rat_i64(n, 1)).collect())
    }

    fn rm(n: usize, v: &[i64]) -> Matrix<Rational> {
        Matrix::new(n, n, v.iter().map(|&x| rat_i64(x, 1)).collect()).unwrap()
    }

    #[test]
    fn reciprocal_examples() {
        // palindromic real: fixed
        let f = rp(&[1, -1, 1]);
        assert_eq!(poly_reciprocal(&f, Involution::Identity).unwrap(), f);
        // (x - 2)^∨ = x - 1/2
        let g = rp(&[1, -2]);
        let gr = poly_reciprocal(&g, Involution::Identity).unwrap();
        assert_eq!(gr.descending(), vec![rat_i64(1, 1), rat_i64(-1, 2)]);
        // unimodular Gaussian root is fixed under conjugation
        let lam = GaussianRational::new(rat_i64(3, 5), rat_i64(4, 5));
        let h = Polynomial::linear(lam);
        assert_eq!(
            poly_reciprocal(&h, Involution::ComplexConjugation).unwrap(),
            h
        );
        assert!(poly_reciprocal(&rp(&[1, 0]), Involution::Identity).is_err());
    }

    #[test]
    fn exists_parity() {
        // p = x−1, s = 2: identity involution excludes eps = (−1)^2 = +1
        let phi = FrobeniusBlock::new(rp(&[1, -1]), 2).unwrap();
        assert!(!phi_epsilon_exists(&phi, Sign::Plus, Involution::Identity).unwrap());
        assert!(phi_epsilon_exists(&phi, Sign::Minus, Involution::Identity).unwrap());
        // deg p > 1: both signs fine
        let phi = FrobeniusBlock::new(rp(&[1, -3, 1]), 1).unwrap();
        assert!(phi_epsilon_exists(&phi, Sign::Plus, Involution::Identity).unwrap());
        assert!(phi_epsilon_exists(&phi, Sign::Minus, Involution::Identity).unwrap());
        // not self-reciprocal
        let phi = FrobeniusBlock::new(rp(&[1, -2]), 1).unwrap();
        assert!(!phi_epsilon_exists(&phi, Sign::Plus, Involution::Identity).unwrap());
    }

    #[test]
    fn recurrent_extend_examples() {
        let v = [rat_i64(1, 1), rat_i64(1, 1)];
        let ext = recurrent_extend(&v, &rp(&[1, -1]), 4).unwrap();
        assert_eq!(ext, vec![rat_i64(1, 1); 4]);

        let v = [rat_i64(2, 1), rat_i64(0, 1), rat_i64(-2, 1)];
        let f = rp(&[1, -3, 1]);
        let ext = recurrent_extend(&v, &f, 5).unwrap();
        assert!(is_recurrent(&ext, &f));
        assert_eq!(ext[1..4], v);

        // window check of the n = 2, eps = +1 seed
        let v = [rat_i64(-1, 1), rat_i64(-2, 1), rat_i64(-1, 1)];
        assert!(is_recurrent(&v, &rp(&[1, -1, 1])));
        assert!(recurrent_extend(&v[..1], &rp(&[1, -1, 1]), 5).is_err());
    }

    #[test]
    fn seed_examples() {
        // chi = x^2 − 3x + 1, eps = −1: case (i)
        let phi = FrobeniusBlock::new(rp(&[1, -3, 1]), 1).unwrap();
        let v = seed_vector(&phi, Sign::Minus, Involution::Identity).unwrap();
        assert_eq!(v, vec![rat_i64(2, 1), rat_i64(0, 1), rat_i64(-2, 1)]);
        // chi = x^2 − x + 1, eps = +1: case (ii) with the n = 2 form
        let phi = FrobeniusBlock::new(rp(&[1, -1, 1]), 1).unwrap();
        let v = seed_vector(&phi, Sign::Plus, Involution::Identity).unwrap();
        assert_eq!(v, vec![rat_i64(-1, 1), rat_i64(-2, 1), rat_i64(-1, 1)]);
        // p = x − 1, eps = +1: case (iv) degenerate length 1
        let phi = FrobeniusBlock::new(rp(&[1, -1]), 1).unwrap();
        let v = seed_vector(&phi, Sign::Plus, Involution::Identity).unwrap();
        assert_eq!(v, vec![rat_i64(1, 1)]);
    }

    #[test]
    fn toeplitz_examples() {
        let phi = FrobeniusBlock::new(rp(&[1, -1, 1]), 1).unwrap();
        let m = build_toeplitz(&phi, Sign::Plus, Involution::Identity).unwrap();
        assert_eq!(m, rm(2, &[-2, -1, -1, -2]));

        let phi = FrobeniusBlock::new(rp(&[1, -3, 1]), 1).unwrap();
        let m = build_toeplitz(&phi, Sign::Minus, Involution::Identity).unwrap();
        assert_eq!(m, rm(2, &[0, 2, -2, 0]));

        let phi = FrobeniusBlock::new(rp(&[1, -1]), 1).unwrap();
        let m = build_toeplitz(&phi, Sign::Plus, Involution::Identity).unwrap();
        assert_eq!(m, rm(1, &[1]));
    }

    #[test]
    fn q_eval_examples() {
        let q = QFunction::<Rational>::one();
        assert_eq!(
            q.eval(&Matrix::identity(3), Involution::Identity).unwrap(),
            Matrix::identity(3)
        );
        // q = x + x^{-1} on diag(2, 1/2)
        let q = QFunction::new(vec![rat_i64(0, 1), rat_i64(1, 1)]).unwrap();
        let d = Matrix::new(
            2,
            2,
            vec![rat_i64(2, 1), rat_i64(0, 1), rat_i64(0, 1), rat_i64(1, 2)],
        )
        .unwrap();
        let out = q.eval(&d, Involution::Identity).unwrap();
        assert_eq!(
            out,
            Matrix::new(
                2,
                2,
                vec![rat_i64(5, 2), rat_i64(0, 1), rat_i64(0, 1), rat_i64(5, 2)]
            )
            .unwrap()
        );
    }

    #[test]
    fn summand_examples() {
        // type (ii): chi = x^2 − x + 1, eps = 1, q = 1
        let phi = FrobeniusBlock::new(rp(&[1, -1, 1]), 1).unwrap();
        let p = build_frobenius_summand(
            &phi,
            Sign::Plus,
            Involution::Identity,
            Some(&QFunction::one()),
        )
        .unwrap();
        assert_eq!(p.a(), &rm(2, &[0, -1, 1, 1]));
        assert_eq!(p.b(), &rm(2, &[-2, -1, -1, -2]));

        // q = −1 flips the form
        let q = QFunction::constant(rat_i64(-1, 1));
        let pm = build_frobenius_summand(&phi, Sign::Plus, Involution::Identity, Some(&q)).unwrap();
        assert_eq!(pm.b(), &rm(2, &[2, 1, 1, 2]));

        // type (i): p = x − 2 is not self-reciprocal, so the hyperbolic pair
        let phi = FrobeniusBlock::new(rp(&[1, -2]), 1).unwrap();
        let p = build_frobenius_summand(&phi, Sign::Plus, Involution::Identity, None).unwrap();
        assert_eq!(p.a().at(0, 0), &rat_i64(2, 1));
        assert_eq!(p.a().at(1, 1), &rat_i64(1, 2));
        // and it refuses type (i) when the form matrix exists
        let phi = FrobeniusBlock::new(rp(&[1, -1, 1]), 1).unwrap();
        assert!(build_frobenius_summand(&phi, Sign::Plus, Involution::Identity, None).is_err());
    }

    #[test]
    fn odd_linear_special_seed_case() {
        // chi = (x − i)^3 over Q(i) with conjugation: p = x + c with
        // c = −i and c^{n−1} = −1, the odd variant of the nonidentity
        // seed case
        let p = Polynomial::linear(GaussianRational::i());
        let phi = FrobeniusBlock::new(p, 3).unwrap();
        assert!(phi_epsilon_exists(&phi, Sign::Plus, Involution::ComplexConjugation).unwrap());
        let v = seed_vector(&phi, Sign::Plus, Involution::ComplexConjugation).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(v[0], GaussianRational::from_i64(0, 2));
        assert_eq!(v[2], GaussianRational::from_i64(0, -2));
        let m = build_toeplitz(&phi, Sign::Plus, Involution::ComplexConjugation).unwrap();
        assert!(m.is_invertible());
    }

    #[test]
    fn q_eval_commutes_with_phi() {
        let phi = FrobeniusBlock::new(rp(&[1, -1, 1]), 2).unwrap();
        let f = phi.matrix().unwrap();
        for coeffs in [
            vec![rat_i64(1, 1)],
            vec![rat_i64(2, 1), rat_i64(-1, 3)],
            vec![rat_i64(0, 1), rat_i64(1, 2), rat_i64(5, 1)],
        ] {
            let q = QFunction::new(coeffs).unwrap();
            let qf = q.eval(&f, Involution::Identity).unwrap();
            assert_eq!(qf.mul(&f).unwrap(), f.mul(&qf).unwrap());
        }
    }

    #[test]
    fn from_chi_recognizes_powers() {
        let base = rp(&[1, -1, 1]);
        let phi = FrobeniusBlock::from_chi(base.pow(2)).unwrap();
        assert_eq!(phi.s(), 2);
        assert_eq!(phi.p(), &base);
        let phi = FrobeniusBlock::from_chi(rp(&[1, -2, 1])).unwrap();
        assert_eq!(phi.s(), 2);
        assert_eq!(phi.p(), &rp(&[1, -1]));
        assert!(FrobeniusBlock::from_chi(rp(&[1, -1, 0])).is_err());
    }
}
