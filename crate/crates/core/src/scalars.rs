//! Exact arithmetic for the three coefficient rings — rationals, Gaussian
//! rationals and rational quaternions — together with their involutions.
//!
//! Absolute values are never materialized as square roots: everything that
//! would use `|k|` in the theory is expressed through `|k|² = absSq(k)`,
//! which stays inside the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use crate::roots::FieldRoots;

/// Arbitrary-precision rational number, always normalized (positive
/// denominator, reduced).
pub type Rational = num_rational::Ratio<BigInt>;

/// Shorthand for small rational constants.
pub fn rat_i64(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The coefficient ring a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ring {
    /// ℚ
    Rational,
    /// ℚ(i)
    Gaussian,
    /// Rational quaternions ℚ + ℚi + ℚj + ℚk
    Quaternion,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rational => write!(f, "Q"),
            Ring::Gaussian => write!(f, "Q(i)"),
            Ring::Quaternion => write!(f, "quaternions over Q"),
        }
    }
}

/// An involution on one of the scalar rings.
///
/// `QuaternionConjugation` is `a+bi+cj+dk ↦ a−bi−cj−dk`;
/// `QuaternionSemiconjugation` is `a+bi+cj+dk ↦ a−bi+cj+dk`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Involution {
    Identity,
    ComplexConjugation,
    QuaternionConjugation,
    QuaternionSemiconjugation,
}

impl Involution {
    pub fn is_identity(self) -> bool {
        self == Involution::Identity
    }

    /// Canonical text form used by the CLI formats.
    pub fn as_str(self) -> &'static str {
        match self {
            Involution::Identity => "identity",
            Involution::ComplexConjugation => "conjugation",
            Involution::QuaternionConjugation => "conjugation",
            Involution::QuaternionSemiconjugation => "semiconjugation",
        }
    }
}

/// Which canonical-form case a computation lives in.
///
/// * `A` — algebraically closed stand-in ℚ(i) with the identity involution;
/// * `B` — ℚ(i) with complex conjugation (ε = +1 forced);
/// * `C` — real closed stand-in ℚ (closure arithmetic delegated to ℚ(i));
/// * `D` — rational quaternions with conjugation or semiconjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CaseTag {
    A,
    B,
    C,
    D,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::A => "A",
            CaseTag::B => "B",
            CaseTag::C => "C",
            CaseTag::D => "D",
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(CaseTag::A),
            "B" | "b" => Ok(CaseTag::B),
            "C" | "c" => Ok(CaseTag::C),
            "D" | "d" => Ok(CaseTag::D),
            other => Err(Error::parse(format!("unknown case tag {other:?}"))),
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// Coefficient ring + involution + canonical-form case for a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScalarDomain {
    pub ring: Ring,
    pub involution: Involution,
    pub case: CaseTag,
}

impl ScalarDomain {
    /// Builds the unique domain for the given case (for case D the
    /// involution must be supplied).
    pub fn for_case(case: CaseTag, involution: Option<Involution>) -> Result<Self> {
        let dom = match case {
            CaseTag::A => ScalarDomain {
                ring: Ring::Gaussian,
                involution: Involution::Identity,
                case,
            },
            CaseTag::B => ScalarDomain {
                ring: Ring::Gaussian,
                involution: Involution::ComplexConjugation,
                case,
            },
            CaseTag::C => ScalarDomain {
                ring: Ring::Rational,
                involution: Involution::Identity,
                case,
            },
            CaseTag::D => {
                let inv = involution.unwrap_or(Involution::QuaternionConjugation);
                if !matches!(
                    inv,
                    Involution::QuaternionConjugation | Involution::QuaternionSemiconjugation
                ) {
                    return Err(Error::domain(format!(
                        "case D requires a quaternion involution, got {inv:?}"
                    )));
                }
                ScalarDomain {
                    ring: Ring::Quaternion,
                    involution: inv,
                    case,
                }
            }
        };
        if let Some(inv) = involution {
            if case != CaseTag::D && inv != dom.involution {
                return Err(Error::domain(format!(
                    "case {case} forces involution {:?}, got {inv:?}",
                    dom.involution
                )));
            }
        }
        Ok(dom)
    }
}

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// Element of ℚ(i), componentwise-normalized.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussianRational::new(rat_i64(re, 1), rat_i64(im, 1))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational::from_i64(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `a² + b²` for `a + bi`.
    pub fn abs_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.abs_sq();
        if n.is_zero() {
            return Err(Error::domain("division by zero in Q(i)"));
        }
        Ok(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    /// `i^k` for any integer exponent.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussianRational::from_i64(1, 0),
            1 => GaussianRational::from_i64(0, 1),
            2 => GaussianRational::from_i64(-1, 0),
            _ => GaussianRational::from_i64(0, -1),
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Lexicographic (re, im) ordering: a deterministic data order for sorting
// and map keys, not a field order.
impl PartialOrd for GaussianRational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GaussianRational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        GaussianRational { re, im }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::from_i64(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_i64(1, 0)
    }
}

// ---------------------------------------------------------------------------
// Quaternions
// ---------------------------------------------------------------------------

/// Rational quaternion `a + bi + cj + dk` with
/// `i² = j² = k² = −1`, `ij = k = −ji`, `jk = i = −kj`, `ki = j = −ik`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quaternion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Quaternion {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quaternion { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Quaternion::new(rat_i64(a, 1), rat_i64(b, 1), rat_i64(c, 1), rat_i64(d, 1))
    }

    pub fn from_rational(a: Rational) -> Self {
        Quaternion::new(a, Rational::zero(), Rational::zero(), Rational::zero())
    }

    /// `z + wj` for Gaussian `z = a+bi`, `w = c+di`.
    pub fn from_complex_pair(z: &GaussianRational, w: &GaussianRational) -> Self {
        Quaternion::new(z.re.clone(), z.im.clone(), w.re.clone(), w.im.clone())
    }

    /// The complex pair `(z, w)` with `self = z + wj`.
    pub fn complex_pair(&self) -> (GaussianRational, GaussianRational) {
        (
            GaussianRational::new(self.a.clone(), self.b.clone()),
            GaussianRational::new(self.c.clone(), self.d.clone()),
        )
    }

    pub fn from_gaussian(z: &GaussianRational) -> Self {
        Quaternion::new(
            z.re.clone(),
            z.im.clone(),
            Rational::zero(),
            Rational::zero(),
        )
    }

    /// Returns `Some(a+bi)` when the j- and k-parts vanish.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        if self.c.is_zero() && self.d.is_zero() {
            Some(GaussianRational::new(self.a.clone(), self.b.clone()))
        } else {
            None
        }
    }

    pub fn i() -> Self {
        Quaternion::from_i64(0, 1, 0, 0)
    }
    pub fn j() -> Self {
        Quaternion::from_i64(0, 0, 1, 0)
    }
    pub fn k() -> Self {
        Quaternion::from_i64(0, 0, 0, 1)
    }

    /// Quaternionic conjugate `a − bi − cj − dk`.
    pub fn conj(&self) -> Self {
        Quaternion::new(
            self.a.clone(),
            -self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }

    /// Semiconjugate `a − bi + cj + dk`.
    pub fn semiconj(&self) -> Self {
        Quaternion::new(
            self.a.clone(),
            -self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        )
    }

    /// `a² + b² + c² + d² = h·h̄`.
    pub fn abs_sq(&self) -> Rational {
        &self.a * &self.a + &self.b * &self.b + &self.c * &self.c + &self.d * &self.d
    }

    /// `h⁻¹ = |h|⁻² h̄`.
    pub fn inv(&self) -> Result<Self> {
        let n = self.abs_sq();
        if n.is_zero() {
            return Err(Error::domain("division by zero in the quaternions"));
        }
        let c = self.conj();
        Ok(Quaternion::new(c.a / &n, c.b / &n, c.c / &n, c.d / &n))
    }

    pub fn is_real(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl fmt::Debug for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a1, b1, c1, d1) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Zero for Quaternion {
    fn zero() -> Self {
        Quaternion::from_i64(0, 0, 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }
}

impl One for Quaternion {
    fn one() -> Self {
        Quaternion::from_i64(1, 0, 0, 0)
    }
}

// ---------------------------------------------------------------------------
// The scalar trait
// ---------------------------------------------------------------------------

/// An exact scalar ring the matrix layer can be instantiated with.
///
/// Values are immutable; all operations are pure.  Matrices act on column
/// vectors with scalars multiplying on the right (right vector spaces), so
/// multiplication order matters for `Quaternion`.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    const RING: Ring;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&rat_i64(n, 1))
    }

    fn from_rational(r: &Rational) -> Self;

    /// Number of rational components (1, 2 or 4).
    const COMPONENTS: usize;

    /// Builds a value from its rational components (length
    /// [`COMPONENTS`](Self::COMPONENTS)).
    fn from_components(parts: &[Rational]) -> Self;

    /// Embeds a Gaussian rational if the ring contains it.
    fn from_gaussian(z: &GaussianRational) -> Option<Self>;

    /// Extracts a Gaussian rational if the value lies in ℚ(i) ⊆ ring.
    fn to_gaussian(&self) -> Option<GaussianRational>;

    /// The value as a quaternion (every scalar ring embeds).
    fn to_quaternion(&self) -> Quaternion;

    /// Multiplicative inverse; `DomainError` on zero.
    fn inv(&self) -> Result<Self>;

    /// Whether the involution is defined on this ring.
    fn supports_involution(inv: Involution) -> bool;

    /// Applies the involution; `DomainError` when incompatible.
    fn conjugate(&self, inv: Involution) -> Result<Self>;

    /// `|x|²` (Gaussian: `a²+b²`; quaternion: `a²+b²+c²+d²`; rational: `x²`).
    fn abs_sq(&self) -> Rational;

    /// Parses the text form of this ring's scalars.
    fn parse(s: &str) -> Result<Self>;
}

/// Marker for the commutative scalar rings (polynomials, characteristic
/// polynomials and fraction-free elimination are only available here).
pub trait CommScalar: Scalar {}

impl Scalar for Rational {
    const RING: Ring = Ring::Rational;
    const COMPONENTS: usize = 1;

    fn from_components(parts: &[Rational]) -> Self {
        parts[0].clone()
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_gaussian(z: &GaussianRational) -> Option<Self> {
        z.is_real().then(|| z.re.clone())
    }

    fn to_gaussian(&self) -> Option<GaussianRational> {
        Some(GaussianRational::from_rational(self.clone()))
    }

    fn to_quaternion(&self) -> Quaternion {
        Quaternion::from_rational(self.clone())
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("division by zero in Q"));
        }
        Ok(self.recip())
    }

    fn supports_involution(inv: Involution) -> bool {
        inv == Involution::Identity
    }

    fn conjugate(&self, inv: Involution) -> Result<Self> {
        match inv {
            Involution::Identity => Ok(self.clone()),
            other => Err(Error::domain(format!(
                "involution {other:?} is not defined on Q"
            ))),
        }
    }

    fn abs_sq(&self) -> Rational {
        self * self
    }

    fn parse(s: &str) -> Result<Self> {
        parse::rational(s)
    }
}

impl CommScalar for Rational {}

impl Scalar for GaussianRational {
    const RING: Ring = Ring::Gaussian;
    const COMPONENTS: usize = 2;

    fn from_components(parts: &[Rational]) -> Self {
        GaussianRational::new(parts[0].clone(), parts[1].clone())
    }

    fn from_rational(r: &Rational) -> Self {
        GaussianRational::from_rational(r.clone())
    }

    fn from_gaussian(z: &GaussianRational) -> Option<Self> {
        Some(z.clone())
    }

    fn to_gaussian(&self) -> Option<GaussianRational> {
        Some(self.clone())
    }

    fn to_quaternion(&self) -> Quaternion {
        Quaternion::from_gaussian(self)
    }

    fn inv(&self) -> Result<Self> {
        GaussianRational::inv(self)
    }

    fn supports_involution(inv: Involution) -> bool {
        matches!(inv, Involution::Identity | Involution::ComplexConjugation)
    }

    fn conjugate(&self, inv: Involution) -> Result<Self> {
        match inv {
            Involution::Identity => Ok(self.clone()),
            Involution::ComplexConjugation => Ok(self.conj()),
            other => Err(Error::domain(format!(
                "involution {other:?} is not defined on Q(i)"
            ))),
        }
    }

    fn abs_sq(&self) -> Rational {
        GaussianRational::abs_sq(self)
    }

    fn parse(s: &str) -> Result<Self> {
        parse::gaussian(s)
    }
}

impl CommScalar for GaussianRational {}

impl Scalar for Quaternion {
    const RING: Ring = Ring::Quaternion;
    const COMPONENTS: usize = 4;

    fn from_components(parts: &[Rational]) -> Self {
        Quaternion::new(
            parts[0].clone(),
            parts[1].clone(),
            parts[2].clone(),
            parts[3].clone(),
        )
    }

    fn from_rational(r: &Rational) -> Self {
        Quaternion::from_rational(r.clone())
    }

    fn from_gaussian(z: &GaussianRational) -> Option<Self> {
        Some(Quaternion::from_gaussian(z))
    }

    fn to_gaussian(&self) -> Option<GaussianRational> {
        self.as_gaussian()
    }

    fn to_quaternion(&self) -> Quaternion {
        self.clone()
    }

    fn inv(&self) -> Result<Self> {
        Quaternion::inv(self)
    }

    fn supports_involution(inv: Involution) -> bool {
        matches!(
            inv,
            Involution::QuaternionConjugation | Involution::QuaternionSemiconjugation
        )
    }

    fn conjugate(&self, inv: Involution) -> Result<Self> {
        match inv {
            Involution::QuaternionConjugation => Ok(self.conj()),
            Involution::QuaternionSemiconjugation => Ok(self.semiconj()),
            other => Err(Error::domain(format!(
                "involution {other:?} is not defined on the quaternions"
            ))),
        }
    }

    fn abs_sq(&self) -> Rational {
        Quaternion::abs_sq(self)
    }

    fn parse(s: &str) -> Result<Self> {
        parse::quaternion(s)
    }
}

/// `a + bi ↦ [[a, −b], [b, a]]`, returned row-major as four rationals.
pub fn realify_scalar(z: &GaussianRational) -> [Rational; 4] {
    [z.re.clone(), -z.im.clone(), z.im.clone(), z.re.clone()]
}

// ---------------------------------------------------------------------------
// Text forms
// ---------------------------------------------------------------------------

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        push_term(&mut s, &self.re, "");
        push_term(&mut s, &self.im, "i");
        if s.is_empty() {
            s.push('0');
        }
        write!(f, "{s}")
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        push_term(&mut s, &self.a, "");
        push_term(&mut s, &self.b, "i");
        push_term(&mut s, &self.c, "j");
        push_term(&mut s, &self.d, "k");
        if s.is_empty() {
            s.push('0');
        }
        write!(f, "{s}")
    }
}

fn push_term(out: &mut String, coeff: &Rational, unit: &str) {
    if coeff.is_zero() {
        return;
    }
    if !out.is_empty() && coeff.is_positive() {
        out.push('+');
    }
    if unit.is_empty() {
        out.push_str(&coeff.to_string());
    } else if coeff.is_negative() {
        out.push('-');
        out.push_str(&render_unit_coeff(&-coeff.clone(), unit));
    } else {
        out.push_str(&render_unit_coeff(coeff, unit));
    }
}

fn render_unit_coeff(coeff: &Rational, unit: &str) -> String {
    if coeff.is_one() {
        unit.to_string()
    } else {
        format!("{coeff}*{unit}")
    }
}

mod parse {
    use super::*;

    pub fn rational(s: &str) -> Result<Rational> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = num
            .parse()
            .map_err(|_| Error::parse(format!("bad integer {num:?} in {s:?}")))?;
        let d: BigInt = den
            .parse()
            .map_err(|_| Error::parse(format!("bad integer {den:?} in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::new(n, d))
    }

    /// Splits `"1/2-3*i+j"` into signed terms `["1/2", "-3*i", "+j"]`.
    fn split_terms(s: &str) -> Result<Vec<&str>> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse("empty scalar"));
        }
        let bytes = s.as_bytes();
        let mut cuts = vec![0usize];
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'+' | b'-' | b'*' | b'/') {
                cuts.push(idx);
            }
        }
        cuts.push(s.len());
        Ok(cuts.windows(2).map(|w| s[w[0]..w[1]].trim()).collect())
    }

    /// Parses one signed term into (component index, coefficient):
    /// 0 = real, 1 = i, 2 = j, 3 = k.
    fn term(t: &str) -> Result<(usize, Rational)> {
        let (sign, body) = match t.as_bytes().first() {
            Some(b'-') => (-1, &t[1..]),
            Some(b'+') => (1, &t[1..]),
            _ => (1, t),
        };
        let body = body.trim();
        let (unit, coeff_src) = match body.as_bytes().last() {
            Some(b'i') => (1, &body[..body.len() - 1]),
            Some(b'j') => (2, &body[..body.len() - 1]),
            Some(b'k') => (3, &body[..body.len() - 1]),
            _ => (0, body),
        };
        let coeff_src = coeff_src.trim().trim_end_matches('*').trim();
        let coeff = if unit != 0 && coeff_src.is_empty() {
            Rational::one()
        } else {
            rational(coeff_src)?
        };
        Ok((unit, coeff * Rational::from(BigInt::from(sign))))
    }

    fn components(s: &str, max_unit: usize) -> Result<[Rational; 4]> {
        let mut comp = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        for t in split_terms(s)? {
            let (unit, coeff) = term(t)?;
            if unit > max_unit {
                return Err(Error::parse(format!(
                    "component {:?} not allowed in this ring: {s:?}",
                    ["1", "i", "j", "k"][unit]
                )));
            }
            comp[unit] = &comp[unit] + coeff;
        }
        Ok(comp)
    }

    pub fn gaussian(s: &str) -> Result<GaussianRational> {
        let c = components(s, 1)?;
        let [re, im, _, _] = c;
        Ok(GaussianRational::new(re, im))
    }

    pub fn quaternion(s: &str) -> Result<Quaternion> {
        let [a, b, c, d] = components(s, 3)?;
        Ok(Quaternion::new(a, b, c, d))
    }
}
