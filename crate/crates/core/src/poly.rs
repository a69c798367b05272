//! Dense univariate polynomials over the commutative scalar rings.
//!
//! Coefficients are stored in ascending degree order with no trailing
//! zeros; the zero polynomial has an empty coefficient vector.

use crate::error::{Error, Result};
use crate::scalars::{CommScalar, Involution};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<S: CommScalar> {
    coeffs: Vec<S>,
}

impl<S: CommScalar> std::fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<S: CommScalar> Polynomial<S> {
    /// From ascending coefficients; trailing zeros are trimmed.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// From descending coefficients (the CLI text form is highest-first).
    pub fn from_descending(coeffs: Vec<S>) -> Self {
        let mut c = coeffs;
        c.reverse();
        Polynomial::new(c)
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![S::one()],
        }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Polynomial::new(vec![S::zero(), S::one()])
    }

    /// `x - a`.
    pub fn linear(a: S) -> Self {
        Polynomial::new(vec![-a, S::one()])
    }

    pub fn constant(c: S) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, s: &S) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + o.coeff(k));
        }
        Polynomial::new(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.coeffs.iter().enumerate() {
                out[j + k] = out[j + k].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; requires a nonzero divisor (field coefficients).
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::domain("polynomial division by zero"));
        }
        let dl = d.leading().unwrap().clone();
        let dl_inv = dl.inv()?;
        let dd = d.degree().unwrap();
        let mut rem = self.clone();
        let mut quo = vec![S::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap().clone() * dl_inv.clone();
            let shift = rd - dd;
            quo[shift] = factor.clone();
            let mut sub = vec![S::zero(); shift];
            sub.extend(d.coeffs.iter().map(|c| c.clone() * factor.clone()));
            rem = rem.sub(&Polynomial::new(sub));
        }
        Ok((Polynomial::new(quo), rem))
    }

    /// Exact division; errors when the remainder is nonzero.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(d)?;
        if !r.is_zero() {
            return Err(Error::domain("polynomial division is not exact"));
        }
        Ok(q)
    }

    pub fn make_monic(&self) -> Result<Self> {
        let l = self
            .leading()
            .ok_or_else(|| Error::domain("cannot normalize the zero polynomial"))?;
        Ok(self.scale(&l.inv()?))
    }

    /// Applies the involution to every coefficient (the map `f ↦ f̄`).
    pub fn conj_coeffs(&self, inv: Involution) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.conjugate(inv))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(coeffs))
    }

    /// Exact `s`-th root of a monic polynomial, when one exists.
    ///
    /// Coefficients of the candidate root are determined degree-by-degree
    /// from the top; the result is verified by repowering.
    pub fn nth_root(&self, s: usize) -> Option<Self> {
        if s == 0 {
            return None;
        }
        if s == 1 {
            return Some(self.clone());
        }
        let n = self.degree()?;
        if n % s != 0 || !self.is_monic() {
            return None;
        }
        let m = n / s;
        // root = x^m + r_{m-1} x^{m-1} + ... ; match coefficients of
        // self from degree n-1 downwards.
        let mut root = vec![S::zero(); m + 1];
        root[m] = S::one();
        let s_scalar = S::from_i64(s as i64);
        let s_inv = s_scalar.inv().ok()?;
        for k in (0..m).rev() {
            // Coefficient of x^(n - (m - k)) in root^s equals
            // s * root_k + (terms from already-known coefficients).
            let partial = Polynomial::new(root.clone()).pow(s);
            let target_deg = n - (m - k);
            let diff = self.coeff(target_deg) - partial.coeff(target_deg);
            root[k] = diff * s_inv.clone();
        }
        let candidate = Polynomial::new(root);
        (candidate.pow(s) == *self).then_some(candidate)
    }

    /// Maps coefficients into another scalar ring.
    pub fn map<T: CommScalar>(&self, f: impl Fn(&S) -> T) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Descending coefficient vector including leading coefficient
    /// (the CLI text form).
    pub fn descending(&self) -> Vec<S> {
        let mut v = self.coeffs.clone();
        v.reverse();
        v
    }
}
