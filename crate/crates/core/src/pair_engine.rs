//! The isometric pair `(A, B)`, its axioms, congruence-similarity
//! transformations, direct sums, and the seeded scrambler used by the
//! round-trip oracle.
//!
//! A valid pair satisfies `B = ε·B*`, `A*BA = B`, with `A` and `B`
//! nonsingular.  Pairs with singular `B` are rejected outright:
//! classification with degenerate forms contains the problem of matrix
//! pairs up to simultaneous similarity and is wild.

use std::fmt;

use crate::error::{AxiomKind, Error, Result};
use crate::matrices::Matrix;
use crate::scalars::{rat_i64, CaseTag, Rational, Scalar, ScalarDomain};

/// `+1` or `−1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i64(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::parse(format!("sign must be 1 or -1, got {other}"))),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `(−1)^n`.
    pub fn pow_of_minus_one(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn scalar<S: Scalar>(self) -> S {
        S::from_i64(self.to_i64())
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, o: Sign) -> Sign {
        if self == o {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.to_i64())
    }
}

/// A validated pair `(A, B)` over a scalar domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsometricPair<S: Scalar> {
    domain: ScalarDomain,
    epsilon: Sign,
    a: Matrix<S>,
    b: Matrix<S>,
}

impl<S: Scalar> IsometricPair<S> {
    /// Validates the axioms and wraps the pair; the error names the first
    /// failed axiom.
    pub fn validate(
        domain: ScalarDomain,
        epsilon: Sign,
        a: Matrix<S>,
        b: Matrix<S>,
    ) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::shape(format!(
                "pair needs equal square matrices, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if !S::supports_involution(domain.involution) {
            return Err(Error::domain(format!(
                "involution {:?} is undefined on {}",
                domain.involution,
                S::RING
            )));
        }
        if domain.case == CaseTag::B && epsilon != Sign::Plus {
            return Err(Error::domain(
                "case B assumes eps = +1; rescale the form to Hermitian first",
            ));
        }
        let bs = b.star(domain.involution)?;
        if b != bs.scale_left(&epsilon.scalar::<S>()) {
            return Err(Error::Axiom(AxiomKind::Symmetry));
        }
        if !b.is_invertible() {
            return Err(Error::Axiom(AxiomKind::SingularB));
        }
        if !a.is_invertible() {
            return Err(Error::Axiom(AxiomKind::SingularA));
        }
        let asba = a.star(domain.involution)?.mul(&b)?.mul(&a)?;
        if asba != b {
            return Err(Error::Axiom(AxiomKind::Isometry));
        }
        Ok(IsometricPair {
            domain,
            epsilon,
            a,
            b,
        })
    }

    /// Wraps without re-checking; for outputs that are valid by
    /// construction.
    pub(crate) fn new_unchecked(
        domain: ScalarDomain,
        epsilon: Sign,
        a: Matrix<S>,
        b: Matrix<S>,
    ) -> Self {
        IsometricPair {
            domain,
            epsilon,
            a,
            b,
        }
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn epsilon(&self) -> Sign {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &Matrix<S> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<S> {
        &self.b
    }

    /// Re-checks `B = ε·B*` and `A*BA = B` (not the invertibility).
    pub fn check_equations(&self) -> Result<()> {
        let inv = self.domain.involution;
        if self.b != self.b.star(inv)?.scale_left(&self.epsilon.scalar::<S>()) {
            return Err(Error::Axiom(AxiomKind::Symmetry));
        }
        if self.a.star(inv)?.mul(&self.b)?.mul(&self.a)? != self.b {
            return Err(Error::Axiom(AxiomKind::Isometry));
        }
        Ok(())
    }

    /// Congruence-similarity `(A, B) ↦ (S⁻¹AS, S*BS)`; the axioms are
    /// re-validated afterwards (they are preserved, but re-checking
    /// catches convention bugs early).
    pub fn apply_transform(&self, s: &Matrix<S>) -> Result<Self> {
        self.apply_transform_impl(s, true)
    }

    /// As [`apply_transform`](Self::apply_transform) without the
    /// re-validation, for bulk benchmarking.
    pub fn apply_transform_unchecked(&self, s: &Matrix<S>) -> Result<Self> {
        self.apply_transform_impl(s, false)
    }

    fn apply_transform_impl(&self, s: &Matrix<S>, revalidate: bool) -> Result<Self> {
        if !s.is_square() || s.rows() != self.dim() {
            return Err(Error::shape(format!(
                "transform must be {0}x{0}",
                self.dim()
            )));
        }
        let s_inv = s
            .inverse()
            .map_err(|_| Error::singular("transform matrix is singular"))?;
        let a = s_inv.mul(&self.a)?.mul(s)?;
        let b = s.star(self.domain.involution)?.mul(&self.b)?.mul(s)?;
        let out = IsometricPair::new_unchecked(self.domain, self.epsilon, a, b);
        if revalidate {
            // invertibility of A and B is preserved by any congruence-
            // similarity with invertible S; the two matrix identities are
            // what catches convention bugs, so those are re-checked
            out.check_equations()?;
        }
        Ok(out)
    }
}

/// Blockwise direct sum of pairs sharing a domain and ε.
pub fn direct_sum_pairs<S: Scalar>(pairs: &[IsometricPair<S>]) -> Result<IsometricPair<S>> {
    let first = pairs
        .first()
        .ok_or_else(|| Error::domain("direct sum of no pairs"))?;
    let mut a = Matrix::empty();
    let mut b = Matrix::empty();
    for p in pairs {
        if p.domain != first.domain || p.epsilon != first.epsilon {
            return Err(Error::domain(
                "direct sum requires matching domain and epsilon",
            ));
        }
        a = a.direct_sum(&p.a);
        b = b.direct_sum(&p.b);
    }
    Ok(IsometricPair::new_unchecked(
        first.domain,
        first.epsilon,
        a,
        b,
    ))
}

/// Runtime-dispatched pair: the case tag of a file or block descriptor
/// decides the coefficient ring only when it is read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyPair {
    Rational(IsometricPair<Rational>),
    Gaussian(IsometricPair<crate::scalars::GaussianRational>),
    Quaternion(IsometricPair<crate::scalars::Quaternion>),
}

impl AnyPair {
    pub fn domain(&self) -> ScalarDomain {
        match self {
            AnyPair::Rational(p) => p.domain(),
            AnyPair::Gaussian(p) => p.domain(),
            AnyPair::Quaternion(p) => p.domain(),
        }
    }

    pub fn epsilon(&self) -> Sign {
        match self {
            AnyPair::Rational(p) => p.epsilon(),
            AnyPair::Gaussian(p) => p.epsilon(),
            AnyPair::Quaternion(p) => p.epsilon(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyPair::Rational(p) => p.dim(),
            AnyPair::Gaussian(p) => p.dim(),
            AnyPair::Quaternion(p) => p.dim(),
        }
    }

    /// Scrambles by a seeded random congruence-similarity.
    pub fn scramble(&self, seed: u64, entry_bound: u32) -> Result<AnyPair> {
        let ts = TransformSeed {
            seed,
            entry_bound,
            size: self.dim(),
        };
        Ok(match self {
            AnyPair::Rational(p) => AnyPair::Rational(p.apply_transform(&random_transform(ts))?),
            AnyPair::Gaussian(p) => AnyPair::Gaussian(p.apply_transform(&random_transform(ts))?),
            AnyPair::Quaternion(p) => {
                AnyPair::Quaternion(p.apply_transform(&random_transform(ts))?)
            }
        })
    }
}

/// Direct sum at the [`AnyPair`] level; all summands must share a ring.
pub fn direct_sum_any(pairs: &[AnyPair]) -> Result<AnyPair> {
    let first = pairs
        .first()
        .ok_or_else(|| Error::domain("direct sum of no pairs"))?;
    match first {
        AnyPair::Rational(_) => {
            let elems = pairs
                .iter()
                .map(|p| match p {
                    AnyPair::Rational(q) => Ok(q.clone()),
                    _ => Err(Error::domain("mixed rings in direct sum")),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyPair::Rational(direct_sum_pairs(&elems)?))
        }
        AnyPair::Gaussian(_) => {
            let elems = pairs
                .iter()
                .map(|p| match p {
                    AnyPair::Gaussian(q) => Ok(q.clone()),
                    _ => Err(Error::domain("mixed rings in direct sum")),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyPair::Gaussian(direct_sum_pairs(&elems)?))
        }
        AnyPair::Quaternion(_) => {
            let elems = pairs
                .iter()
                .map(|p| match p {
                    AnyPair::Quaternion(q) => Ok(q.clone()),
                    _ => Err(Error::domain("mixed rings in direct sum")),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyPair::Quaternion(direct_sum_pairs(&elems)?))
        }
    }
}

// ---------------------------------------------------------------------------
// Deterministic scrambling
// ---------------------------------------------------------------------------

/// Deterministic seed for [`random_transform`]: the same seed always
/// produces the same matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransformSeed {
    pub seed: u64,
    pub entry_bound: u32,
    pub size: usize,
}

/// Counter-based splittable generator (splitmix64); a value, not shared
/// mutable state.
#[derive(Debug, Clone, Copy)]
pub struct SplitMix {
    state: u64,
}

impl SplitMix {
    pub fn new(seed: u64) -> Self {
        SplitMix { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Independent child generator.
    pub fn split(&mut self) -> SplitMix {
        SplitMix::new(self.next_u64() ^ 0x5851f42d4c957f2d)
    }

    /// Uniform in `[-bound, bound]`.
    pub fn int_in(&mut self, bound: u32) -> i64 {
        let span = 2 * bound as u64 + 1;
        (self.next_u64() % span) as i64 - bound as i64
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        (self.next_u64() % n.max(1) as u64) as usize
    }

    pub fn bool(&mut self) -> bool {
        self.next_u64().is_multiple_of(2)
    }
}

/// One random scalar with integer components in `[-bound, bound]`.
pub fn random_scalar<S: Scalar>(rng: &mut SplitMix, bound: u32) -> S {
    let parts: Vec<Rational> = (0..S::COMPONENTS)
        .map(|_| rat_i64(rng.int_in(bound), 1))
        .collect();
    S::from_components(&parts)
}

/// Deterministic invertible matrix with small integer components.  The
/// bound widens when the retry budget is exhausted (degenerate inputs
/// such as `entry_bound = 0`).
pub fn random_transform<S: Scalar>(ts: TransformSeed) -> Matrix<S> {
    let mut rng = SplitMix::new(ts.seed);
    let mut bound = ts.entry_bound;
    loop {
        for _ in 0..8 {
            let m = Matrix::from_fn(ts.size, ts.size, |_, _| random_scalar::<S>(&mut rng, bound));
            if m.is_invertible() {
                return m;
            }
        }
        bound += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrices::{f_matrix, lambda_matrix};
    use crate::scalars::{GaussianRational, Quaternion};

    fn rm(n: usize, v: &[i64]) -> Matrix<Rational> {
        Matrix::new(n, n, v.iter().map(|&x| rat_i64(x, 1)).collect()).unwrap()
    }

    #[test]
    fn lambda_f_pair_is_valid() {
        // (Λ₂, F₂) with ε = −1
        let dom = ScalarDomain::for_case(CaseTag::C, None).unwrap();
        let p = IsometricPair::validate(
            dom,
            Sign::Minus,
            lambda_matrix::<Rational>(2).unwrap(),
            f_matrix::<Rational>(2).unwrap(),
        );
        assert!(p.is_ok());
    }

    #[test]
    fn singular_b_rejected_citing_wildness() {
        let dom = ScalarDomain::for_case(CaseTag::C, None).unwrap();
        let err =
            IsometricPair::validate(dom, Sign::Plus, Matrix::identity(2), rm(2, &[1, 0, 0, 0]))
                .unwrap_err();
        assert!(matches!(err, Error::Axiom(AxiomKind::SingularB)));
        assert!(err.to_string().contains("wild"));
    }

    #[test]
    fn isometry_axiom_failure_named() {
        let dom = ScalarDomain::for_case(CaseTag::C, None).unwrap();
        let err = IsometricPair::validate(dom, Sign::Plus, rm(1, &[2]), rm(1, &[1])).unwrap_err();
        assert!(matches!(err, Error::Axiom(AxiomKind::Isometry)));
    }

    #[test]
    fn transform_example() {
        let dom = ScalarDomain::for_case(CaseTag::C, None).unwrap();
        let p = IsometricPair::validate(
            dom,
            Sign::Minus,
            lambda_matrix::<Rational>(2).unwrap(),
            f_matrix::<Rational>(2).unwrap(),
        )
        .unwrap();
        let s = rm(2, &[1, 0, 0, -1]);
        let q = p.apply_transform(&s).unwrap();
        assert_eq!(q.a(), &rm(2, &[1, -2, 0, 1]));
        assert_eq!(q.b(), &rm(2, &[0, 1, -1, 0]));
        // functoriality: transform by S then T == transform by S*T
        let t = rm(2, &[1, 1, 0, 1]);
        let via_two = p.apply_transform(&s).unwrap().apply_transform(&t).unwrap();
        let via_one = p.apply_transform(&s.mul(&t).unwrap()).unwrap();
        assert_eq!(via_two, via_one);
    }

    #[test]
    fn seeded_transform_deterministic() {
        let ts = TransformSeed {
            seed: 42,
            entry_bound: 2,
            size: 4,
        };
        let m1: Matrix<Quaternion> = random_transform(ts);
        let m2: Matrix<Quaternion> = random_transform(ts);
        assert_eq!(m1, m2);
        assert_eq!(m1.rank(), 4);
    }

    #[test]
    fn zero_bound_widens() {
        let ts = TransformSeed {
            seed: 7,
            entry_bound: 0,
            size: 3,
        };
        let m: Matrix<Rational> = random_transform(ts);
        assert!(m.is_invertible());
    }

    #[test]
    fn direct_sum_shapes() {
        let dom = ScalarDomain::for_case(CaseTag::A, None).unwrap();
        let plus = IsometricPair::validate(
            dom,
            Sign::Plus,
            Matrix::<GaussianRational>::identity(1),
            Matrix::identity(1),
        )
        .unwrap();
        let minus = IsometricPair::validate(
            dom,
            Sign::Plus,
            Matrix::identity(1),
            Matrix::identity(1).neg(),
        )
        .unwrap();
        let sum = direct_sum_pairs(&[plus.clone(), minus]).unwrap();
        assert_eq!(sum.dim(), 2);
        assert_eq!(direct_sum_pairs(std::slice::from_ref(&plus)).unwrap(), plus);
    }

    #[test]
    fn direct_sum_commutes_with_blockdiag_transform() {
        let dom = ScalarDomain::for_case(CaseTag::C, None).unwrap();
        let p1 = IsometricPair::validate(
            dom,
            Sign::Minus,
            lambda_matrix::<Rational>(2).unwrap(),
            f_matrix::<Rational>(2).unwrap(),
        )
        .unwrap();
        let p2 = IsometricPair::validate(
            dom,
            Sign::Minus,
            lambda_matrix::<Rational>(2).unwrap().neg(),
            f_matrix::<Rational>(2).unwrap(),
        )
        .unwrap();
        let s1 = rm(2, &[1, 1, 0, 1]);
        let s2 = rm(2, &[2, 1, 1, 1]);
        let lhs = direct_sum_pairs(&[
            p1.apply_transform(&s1).unwrap(),
            p2.apply_transform(&s2).unwrap(),
        ])
        .unwrap();
        let rhs = direct_sum_pairs(&[p1, p2])
            .unwrap()
            .apply_transform(&s1.direct_sum(&s2))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn transform_preserves_axioms_randomly() {
        let dom = ScalarDomain::for_case(CaseTag::C, None).unwrap();
        let p = IsometricPair::validate(
            dom,
            Sign::Minus,
            lambda_matrix::<Rational>(2).unwrap(),
            f_matrix::<Rational>(2).unwrap(),
        )
        .unwrap();
        for seed in 0..24 {
            let s: Matrix<Rational> = random_transform(TransformSeed {
                seed,
                entry_bound: 3,
                size: 2,
            });
            // apply_transform re-validates internally; Ok means preserved.
            assert!(p.apply_transform(&s).is_ok());
        }
    }
}
