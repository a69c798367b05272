//! Constructors, existence predicates and parameter normalization for
//! the indecomposable canonical summands.
//!
//! A block is either *paired hyperbolic* — `(J ⊕ J^{-*}, I ⧹ εI)` with a
//! Jordan block `J = J_n(λ)` — or *unimodular* — `(λΛ_n, σ·Ψ_ε)` with
//! `Ψ_ε` an antidiagonal form matrix.  Case C additionally realifies the
//! blocks whose parameter is not rational.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrices::{
    e_matrix, f_matrix, jordan_block, lambda_matrix, omega_matrix, realify, Matrix,
};
use crate::pair_engine::{AnyPair, IsometricPair, Sign};
use crate::scalars::{
    CaseTag, GaussianRational, Involution, Quaternion, Rational, Scalar, ScalarDomain,
};

/// Which of the two indecomposable shapes a block has.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockSubtype {
    /// `(J_n(λ) ⊕ J_n(λ)^{-*}, I_n ⧹ εI_n)`
    PairedHyperbolic,
    /// `(λΛ_n, σ·Ψ_ε)` at a self-paired (unimodular) parameter
    Unimodular,
}

impl BlockSubtype {
    pub fn as_str(self) -> &'static str {
        match self {
            BlockSubtype::PairedHyperbolic => "hyp",
            BlockSubtype::Unimodular => "uni",
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyp" | "hyperbolic" | "paired" => Ok(BlockSubtype::PairedHyperbolic),
            "uni" | "unimodular" => Ok(BlockSubtype::Unimodular),
            other => Err(Error::parse(format!("unknown block subtype {other:?}"))),
        }
    }
}

/// One indecomposable canonical summand.
///
/// `lambda` is always stored as the normalized representative of its
/// replacement orbit; `realified` is set exactly for case C blocks with
/// non-rational parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBlock {
    pub case: CaseTag,
    pub involution: Involution,
    pub subtype: BlockSubtype,
    pub n: usize,
    pub lambda: GaussianRational,
    pub sign: Sign,
    pub epsilon: Sign,
    pub realified: bool,
}

impl CanonicalBlock {
    /// Validates the block data and normalizes the parameter.
    pub fn new(
        case: CaseTag,
        involution: Option<Involution>,
        subtype: BlockSubtype,
        n: usize,
        lambda: GaussianRational,
        sign: Sign,
        epsilon: Sign,
    ) -> Result<Self> {
        let domain = ScalarDomain::for_case(case, involution)?;
        if lambda.is_zero() {
            return Err(Error::domain("block parameter must be nonzero"));
        }
        if n == 0 {
            return Err(Error::shape("block size must be at least 1"));
        }
        let realified = case == CaseTag::C && !lambda.is_real();
        let lambda = normalize_lambda(&lambda, case, realified)?;
        let block = CanonicalBlock {
            case,
            involution: domain.involution,
            subtype,
            n,
            lambda,
            sign,
            epsilon,
            realified,
        };
        block.check()?;
        Ok(block)
    }

    /// The existence predicate as a plain boolean.
    pub fn exists(
        case: CaseTag,
        involution: Option<Involution>,
        subtype: BlockSubtype,
        n: usize,
        lambda: &GaussianRational,
        sign: Sign,
        epsilon: Sign,
    ) -> bool {
        CanonicalBlock::new(case, involution, subtype, n, lambda.clone(), sign, epsilon).is_ok()
    }

    /// Checks the admissibility clauses, with a reason on failure.
    fn check(&self) -> Result<()> {
        let unimodular = self.lambda.abs_sq().is_one();
        let plus_minus_one = self.lambda.is_real() && self.lambda.re.abs().is_one();
        let parity_eps = Sign::pow_of_minus_one(self.n + 1); // (−1)^{n+1}
        match (self.case, self.realified) {
            (CaseTag::A, _) | (CaseTag::C, false) => {
                let uni_admissible = plus_minus_one && self.epsilon == parity_eps;
                match self.subtype {
                    BlockSubtype::Unimodular => {
                        if !uni_admissible {
                            return Err(Error::Existence(format!(
                                "unimodular block needs lambda = +-1 and eps = (-1)^(n+1); \
                                 got lambda = {}, n = {}, eps = {}",
                                self.lambda, self.n, self.epsilon
                            )));
                        }
                        if self.case == CaseTag::A && self.sign == Sign::Minus {
                            return Err(Error::Existence(
                                "case A unimodular blocks carry no sign (signs are absorbed)"
                                    .into(),
                            ));
                        }
                    }
                    BlockSubtype::PairedHyperbolic => {
                        if uni_admissible {
                            return Err(Error::Existence(format!(
                                "lambda = {} with eps = {} at n = {} is the unimodular case; \
                                 the hyperbolic block is excluded there",
                                self.lambda, self.epsilon, self.n
                            )));
                        }
                        self.check_hyp_sign()?;
                    }
                }
            }
            (CaseTag::B, _) => {
                if self.epsilon != Sign::Plus {
                    return Err(Error::domain(
                        "case B assumes eps = +1; rescale the form to Hermitian first",
                    ));
                }
                match self.subtype {
                    BlockSubtype::Unimodular => {
                        if !unimodular {
                            return Err(Error::Existence(format!(
                                "case B unimodular block needs |lambda|^2 = 1, got {}",
                                self.lambda
                            )));
                        }
                    }
                    BlockSubtype::PairedHyperbolic => {
                        if unimodular {
                            return Err(Error::Existence(format!(
                                "case B hyperbolic block needs |lambda|^2 != 1, got {}",
                                self.lambda
                            )));
                        }
                        self.check_hyp_sign()?;
                    }
                }
            }
            (CaseTag::C, true) => match self.subtype {
                BlockSubtype::Unimodular => {
                    if !unimodular {
                        return Err(Error::Existence(format!(
                            "realified unimodular block needs |lambda|^2 = 1, got {}",
                            self.lambda
                        )));
                    }
                }
                BlockSubtype::PairedHyperbolic => {
                    if unimodular {
                        return Err(Error::Existence(format!(
                            "realified hyperbolic block needs |lambda|^2 != 1, got {}",
                            self.lambda
                        )));
                    }
                    self.check_hyp_sign()?;
                }
            },
            (CaseTag::D, _) => match self.subtype {
                BlockSubtype::Unimodular => {
                    if !unimodular {
                        return Err(Error::Existence(format!(
                            "case D unimodular block needs |lambda|^2 = 1, got {}",
                            self.lambda
                        )));
                    }
                    if self.sign == Sign::Minus && self.delta_forced() {
                        return Err(Error::Existence(format!(
                            "delta is forced to +1 at lambda = {}, n = {}, eps = {} under {:?}",
                            self.lambda, self.n, self.epsilon, self.involution
                        )));
                    }
                }
                BlockSubtype::PairedHyperbolic => {
                    if unimodular {
                        return Err(Error::Existence(format!(
                            "case D hyperbolic block needs |lambda|^2 != 1, got {}",
                            self.lambda
                        )));
                    }
                    self.check_hyp_sign()?;
                }
            },
        }
        Ok(())
    }

    fn check_hyp_sign(&self) -> Result<()> {
        if self.sign == Sign::Minus {
            return Err(Error::Existence(
                "paired hyperbolic blocks carry no sign".into(),
            ));
        }
        Ok(())
    }

    /// The δ table: `true` when the sign is forced to `+1`.
    ///
    /// Forced exactly at `λ = ±1` with conjugation and `ε = (−1)^n`, or
    /// with semiconjugation and `ε = (−1)^{n+1}`.
    pub fn delta_forced(&self) -> bool {
        if self.case != CaseTag::D {
            return false;
        }
        let plus_minus_one = self.lambda.is_real() && self.lambda.re.abs().is_one();
        if !plus_minus_one {
            return false;
        }
        let parity_n = Sign::pow_of_minus_one(self.n);
        match self.involution {
            Involution::QuaternionConjugation => self.epsilon == parity_n,
            Involution::QuaternionSemiconjugation => self.epsilon == parity_n.flip(),
            _ => false,
        }
    }

    /// Dimension of the built pair.
    pub fn dim(&self) -> usize {
        let base = match self.subtype {
            BlockSubtype::PairedHyperbolic => 2 * self.n,
            BlockSubtype::Unimodular => self.n,
        };
        if self.realified {
            2 * base
        } else {
            base
        }
    }

    /// Builds the exact matrix pair of the block; the result is validated
    /// against the pair axioms before being returned.
    pub fn build(&self) -> Result<AnyPair> {
        let domain = ScalarDomain::for_case(self.case, Some(self.involution))?;
        match self.case {
            CaseTag::A | CaseTag::B => {
                let (a, b) = self.build_in::<GaussianRational>()?;
                Ok(AnyPair::Gaussian(IsometricPair::validate(
                    domain,
                    self.epsilon,
                    a,
                    b,
                )?))
            }
            CaseTag::C => {
                let (a, b) = if self.realified {
                    self.build_realified()?
                } else {
                    self.build_in::<Rational>()?
                };
                Ok(AnyPair::Rational(IsometricPair::validate(
                    domain,
                    self.epsilon,
                    a,
                    b,
                )?))
            }
            CaseTag::D => {
                let (a, b) = self.build_in::<Quaternion>()?;
                Ok(AnyPair::Quaternion(IsometricPair::validate(
                    domain,
                    self.epsilon,
                    a,
                    b,
                )?))
            }
        }
    }

    /// The non-realified construction over a concrete ring.
    fn build_in<S: Scalar>(&self) -> Result<(Matrix<S>, Matrix<S>)> {
        let lam = S::from_gaussian(&self.lambda).ok_or_else(|| {
            Error::domain(format!(
                "parameter {} does not fit in {}",
                self.lambda,
                S::RING
            ))
        })?;
        let inv = ScalarDomain::for_case(self.case, Some(self.involution))?.involution;
        match self.subtype {
            BlockSubtype::PairedHyperbolic => hyperbolic_pair(self.n, &lam, self.epsilon, inv),
            BlockSubtype::Unimodular => {
                let a = lambda_matrix::<S>(self.n)?.scale_left(&lam);
                let psi = unimodular_form::<S>(self.case, self.epsilon, self.n)?;
                Ok((a, psi.scale_left(&self.sign.scalar::<S>())))
            }
        }
    }

    /// Case C with non-rational parameter: entrywise realification.
    fn build_realified(&self) -> Result<(Matrix<Rational>, Matrix<Rational>)> {
        match self.subtype {
            BlockSubtype::Unimodular => {
                let a =
                    realify(&lambda_matrix::<GaussianRational>(self.n)?.scale_left(&self.lambda));
                let psi = realify(&f_matrix::<GaussianRational>(self.n)?.scale_left(
                    &GaussianRational::i_pow(epsilon_exponent(self.n, self.epsilon)),
                ));
                Ok((a, psi.scale_left(&self.sign.scalar::<Rational>())))
            }
            BlockSubtype::PairedHyperbolic => {
                // (J^P ⊕ (J^P)^{-T}, I_{2n} ⧹ εI_{2n})
                let jp = realify(&jordan_block::<GaussianRational>(self.n, &self.lambda)?);
                let partner = jp.inverse()?.transpose();
                let a = jp.direct_sum(&partner);
                let b = Matrix::skew_sum(
                    &Matrix::identity(2 * self.n),
                    &Matrix::scalar(2 * self.n, &self.epsilon.scalar::<Rational>()),
                );
                Ok((a, b))
            }
        }
    }

    /// The Ω/E-shaped alternate of the unimodular blocks with complex
    /// involutions; congruence-similar to [`build`](Self::build) through
    /// `S_n = diag(1, i, …, i^{n−1})` (realified for case C).
    pub fn build_alternate(&self) -> Result<AnyPair> {
        if self.subtype != BlockSubtype::Unimodular {
            return Err(Error::domain(
                "alternate forms exist for unimodular blocks only",
            ));
        }
        let domain = ScalarDomain::for_case(self.case, Some(self.involution))?;
        match self.case {
            CaseTag::A => Err(Error::domain(
                "case A has no omega/E alternate: the S_n congruence needs a nonidentity \
                 involution",
            )),
            CaseTag::C if !self.realified => Err(Error::domain(
                "case C blocks with rational parameter have no omega/E alternate",
            )),
            CaseTag::B => {
                let (a, b) = self.alternate_complex()?;
                Ok(AnyPair::Gaussian(IsometricPair::validate(
                    domain,
                    self.epsilon,
                    a,
                    b,
                )?))
            }
            CaseTag::C => {
                let (a, b) = self.alternate_complex()?;
                Ok(AnyPair::Rational(IsometricPair::validate(
                    domain,
                    self.epsilon,
                    realify(&a),
                    realify(&b),
                )?))
            }
            CaseTag::D => {
                let (a, b) = self.alternate_complex()?;
                let lift = |m: &Matrix<GaussianRational>| m.map(Quaternion::from_gaussian);
                Ok(AnyPair::Quaternion(IsometricPair::validate(
                    domain,
                    self.epsilon,
                    lift(&a),
                    lift(&b),
                )?))
            }
        }
    }

    /// `(λΩ_n, σ·√ε·E_n)` over ℚ(i), where `√1 = 1` and `√−1 = i`.
    fn alternate_complex(&self) -> Result<(Matrix<GaussianRational>, Matrix<GaussianRational>)> {
        let a = omega_matrix::<GaussianRational>(self.n)?.scale_left(&self.lambda);
        let sqrt_eps = match self.epsilon {
            Sign::Plus => GaussianRational::one(),
            Sign::Minus => GaussianRational::i(),
        };
        let b = e_matrix::<GaussianRational>(self.n)?
            .scale_left(&sqrt_eps)
            .scale_left(&self.sign.scalar());
        Ok((a, b))
    }
}

/// `i` exponent of the unimodular form matrix: `n − (ε+1)/2`.
pub(crate) fn epsilon_exponent(n: usize, epsilon: Sign) -> i64 {
    match epsilon {
        Sign::Plus => n as i64 - 1,
        Sign::Minus => n as i64,
    }
}

/// The sign-free form matrix `Ψ_ε` of a unimodular block over the block's
/// own ring: `F_n` for the identity-involution cases, `i^{n−(ε+1)/2}F_n`
/// otherwise.
pub(crate) fn unimodular_form<S: Scalar>(
    case: CaseTag,
    epsilon: Sign,
    n: usize,
) -> Result<Matrix<S>> {
    let f = f_matrix::<S>(n)?;
    match case {
        CaseTag::A | CaseTag::C => Ok(f),
        CaseTag::B | CaseTag::D => {
            let ipow = GaussianRational::i_pow(epsilon_exponent(n, epsilon));
            let s = S::from_gaussian(&ipow)
                .ok_or_else(|| Error::domain("ring has no imaginary unit"))?;
            Ok(f.scale_left(&s))
        }
    }
}

/// `(J_n(λ) ⊕ J_n(λ)^{-*}, I_n ⧹ εI_n)`.
pub fn hyperbolic_pair<S: Scalar>(
    n: usize,
    lambda: &S,
    epsilon: Sign,
    inv: Involution,
) -> Result<(Matrix<S>, Matrix<S>)> {
    let j = jordan_block::<S>(n, lambda)?;
    let partner = j.inverse()?.star(inv)?;
    let a = j.direct_sum(&partner);
    let b = Matrix::skew_sum(
        &Matrix::identity(n),
        &Matrix::scalar(n, &epsilon.scalar::<S>()),
    );
    Ok((a, b))
}

/// Picks the unique representative of the parameter's replacement orbit:
/// prefer `|λ|² > 1`, then `Im λ ≥ 0`, then `Re λ ≥ 0`, lexicographically
/// largest after that.  Idempotent and constant on the orbit.
pub fn normalize_lambda(
    lambda: &GaussianRational,
    case: CaseTag,
    realified: bool,
) -> Result<GaussianRational> {
    let orbit = lambda_orbit(lambda, case, realified)?;
    Ok(pick_representative(&orbit))
}

/// The replacement orbit: `λ ↦ λ^{-1}` in case A (and case C with
/// rational parameter), `λ ↦ conj(λ)^{-1}` in case B, and the full
/// `{λ, conj(λ), λ^{-1}, conj(λ)^{-1}}` in cases C (realified) and D.
pub fn lambda_orbit(
    lambda: &GaussianRational,
    case: CaseTag,
    realified: bool,
) -> Result<Vec<GaussianRational>> {
    if lambda.is_zero() {
        return Err(Error::domain("block parameter must be nonzero"));
    }
    let inv = lambda.inv()?;
    let mut orbit = match case {
        CaseTag::A => vec![lambda.clone(), inv],
        CaseTag::B => vec![lambda.clone(), inv.conj()],
        CaseTag::C if !realified && lambda.is_real() => vec![lambda.clone(), inv],
        CaseTag::C | CaseTag::D => {
            vec![lambda.clone(), lambda.conj(), inv.conj(), inv]
        }
    };
    orbit.sort_by(cmp_gaussian);
    orbit.dedup();
    Ok(orbit)
}

fn cmp_gaussian(a: &GaussianRational, b: &GaussianRational) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

fn pick_representative(orbit: &[GaussianRational]) -> GaussianRational {
    let one = Rational::one();
    let zero = Rational::zero();
    let key = |z: &GaussianRational| (z.abs_sq() > one, z.im >= zero, z.re >= zero);
    let mut best: Option<&GaussianRational> = None;
    for z in orbit {
        best = Some(match best {
            None => z,
            Some(cur) => match key(z).cmp(&key(cur)).then_with(|| cmp_gaussian(z, cur)) {
                std::cmp::Ordering::Greater => z,
                _ => cur,
            },
        });
    }
    best.expect("orbit is nonempty").clone()
}

/// Equality of blocks as canonical-multiset members (parameters compare
/// through their normalized representatives, which `new` enforces).
pub fn blocks_equal(a: &CanonicalBlock, b: &CanonicalBlock) -> bool {
    a == b
}
