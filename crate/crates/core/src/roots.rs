//! Root extraction in ℚ and ℚ(i) and small-degree irreducibility tests.
//!
//! Roots are found by the rational-root theorem over the Gaussian
//! integers: clear denominators, factor the norms of the constant and
//! leading coefficients, and test divisor quotients ordered by norm.
//! Everything stays exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalars::{CommScalar, GaussianRational, Rational};

/// Trial-division factorization.  Large leftover cofactors are accepted
/// as prime only when small enough for that to be certain; anything
/// beyond that is reported as unresolvable rather than silently wrong.
fn factor_int(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return Err(Error::domain("cannot factor zero"));
    }
    let mut p = BigInt::from(2);
    let cap = BigInt::from(1u64 << 20);
    while &p * &p <= n && p <= cap {
        if n.is_multiple_of(&p) {
            let mut e = 0u32;
            while n.is_multiple_of(&p) {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        if n > BigInt::from(1u64 << 40) * BigInt::from(1u64 << 40) {
            return Err(Error::UnresolvedFactor(format!(
                "coefficient norm {n} is too large to factor"
            )));
        }
        out.push((n, 1));
    }
    Ok(out)
}

fn is_gaussian_integer(z: &GaussianRational) -> bool {
    z.re.is_integer() && z.im.is_integer()
}

fn gaussian_exact_div(a: &GaussianRational, b: &GaussianRational) -> Option<GaussianRational> {
    let q = a.clone() * b.inv().ok()?;
    is_gaussian_integer(&q).then_some(q)
}

/// Finds `a + bi` with `a² + b² = p` for a prime `p ≡ 1 (mod 4)` (or 2).
fn two_squares(p: &BigInt) -> Option<(BigInt, BigInt)> {
    let mut a = BigInt::one();
    loop {
        let rem = p - &a * &a;
        if rem < BigInt::zero() {
            return None;
        }
        let b = rem.sqrt();
        if &b * &b == rem {
            return Some((a, b));
        }
        a += 1;
    }
}

/// Gaussian prime factorization of a nonzero Gaussian integer, as
/// `(unit, [(prime, exponent)])`.
fn gaussian_factor(
    z: &GaussianRational,
) -> Result<(GaussianRational, Vec<(GaussianRational, u32)>)> {
    debug_assert!(is_gaussian_integer(z) && !num_traits::Zero::is_zero(z));
    let norm = z.abs_sq().to_integer();
    let rational_primes = factor_int(&norm)?;
    let mut rest = z.clone();
    let mut out = Vec::new();
    for (p, _) in rational_primes {
        let candidates: Vec<GaussianRational> = if p == BigInt::from(2) {
            vec![GaussianRational::new(Rational::one(), Rational::one())]
        } else if (&p % BigInt::from(4u8)) == BigInt::from(1) {
            let (a, b) = two_squares(&p)
                .ok_or_else(|| Error::bug(format!("no two-square split for {p}")))?;
            vec![
                GaussianRational::new(Rational::from(a.clone()), Rational::from(b.clone())),
                GaussianRational::new(Rational::from(a), Rational::from(-b)),
            ]
        } else {
            vec![GaussianRational::from_rational(Rational::from(p.clone()))]
        };
        for pi in candidates {
            let mut e = 0u32;
            while let Some(q) = gaussian_exact_div(&rest, &pi) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((pi, e));
            }
        }
    }
    if !rest.abs_sq().is_one() {
        return Err(Error::bug(format!(
            "leftover non-unit {rest} in factorization"
        )));
    }
    Ok((rest, out))
}

/// All divisors of aAussian integer up to units, sorted by norm.
fn divisors_by_norm(z: &GaussianRational) -> Result<Vec<GaussianRational>> {
    let (_, factors) = gaussian_factor(z)?;
    let mut divs = vec![GaussianRational::one()];
    for (p, e) in &factors {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc * p.clone();
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    divs.sort_by_key(|d| d.abs_sq().to_integer());
    divs.dedup();
    Ok(divs)
}

/// Roots with multiplicities, plus the unresolved monic cofactor
/// (degree 0 when the polynomial splits).
pub type RootSplit<S> = (Vec<(S, usize)>, Polynomial<S>);

/// Roots of `f` lying in ℚ(i), with multiplicities, plus the unresolved
/// cofactor (monic; degree 0 when `f` splits).
pub fn gaussian_roots(f: &Polynomial<GaussianRational>) -> Result<RootSplit<GaussianRational>> {
    if f.is_zero() {
        return Err(Error::domain("root search on the zero polynomial"));
    }
    let mut roots: Vec<(GaussianRational, usize)> = Vec::new();
    let mut rem = f.make_monic()?;

    // Strip x^k.
    let mut zero_mult = 0usize;
    while rem.degree().unwrap_or(0) >= 1 && rem.coeff(0).is_zero() {
        rem = rem.exact_div(&Polynomial::x())?;
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((GaussianRational::zero(), zero_mult));
    }
    if rem.degree().unwrap_or(0) == 0 {
        return Ok((roots, Polynomial::one()));
    }

    // Clear denominators: g(x) = lead * x^n + ... with Gaussian-integer
    // coefficients and the same roots.
    let mut den_lcm = BigInt::one();
    for c in rem.coeffs() {
        den_lcm = den_lcm.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let scaled = rem.scale(&GaussianRational::from_rational(Rational::from(den_lcm)));
    let constant = scaled.coeff(0);
    let leading = scaled.leading().expect("nonzero").clone();

    let num_divs = divisors_by_norm(&constant)?;
    let den_divs = divisors_by_norm(&leading)?;

    // cheap divisibility filters: a root p/q forces (p − q) | g(1) and
    // (p + q) | g(−1) over the Gaussian integers
    let at_one = scaled.eval(&GaussianRational::one());
    let at_minus_one = scaled.eval(&-GaussianRational::one());
    let admits = |p: &GaussianRational, q: &GaussianRational| -> bool {
        let d1 = p.clone() - q.clone();
        if !d1.is_zero() && !at_one.is_zero() && gaussian_exact_div(&at_one, &d1).is_none() {
            return false;
        }
        let d2 = p.clone() + q.clone();
        if !d2.is_zero()
            && !at_minus_one.is_zero()
            && gaussian_exact_div(&at_minus_one, &d2).is_none()
        {
            return false;
        }
        true
    };

    // denominators ordered by norm: true roots have small denominators,
    // and the sweep exits as soon as the polynomial is exhausted
    let units = [
        GaussianRational::from_i64(1, 0),
        GaussianRational::from_i64(-1, 0),
        GaussianRational::from_i64(0, 1),
        GaussianRational::from_i64(0, -1),
    ];
    'sweep: for q in &den_divs {
        let qi = q.inv().expect("divisor nonzero");
        for p in &num_divs {
            for u in &units {
                if rem.degree().unwrap_or(0) == 0 {
                    break 'sweep;
                }
                let num = p.clone() * u.clone();
                if !admits(&num, q) {
                    continue;
                }
                let cand = num * qi.clone();
                let mut mult = 0usize;
                while rem.eval(&cand).is_zero() {
                    rem = rem.exact_div(&Polynomial::linear(cand.clone()))?;
                    mult += 1;
                    if rem.degree().unwrap_or(0) == 0 {
                        break;
                    }
                }
                if mult > 0 {
                    roots.push((cand, mult));
                }
            }
        }
    }
    Ok((roots, rem))
}

/// Exact square root in ℚ, if one exists (nonnegative root).
pub fn sqrt_rational(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    (&sn * &sn == *r.numer() && &sd * &sd == *r.denom()).then(|| Rational::new(sn, sd))
}

/// Exact square root in ℚ(i), if one exists.
pub fn gaussian_sqrt(z: &GaussianRational) -> Option<GaussianRational> {
    if z.is_zero() {
        return Some(GaussianRational::zero());
    }
    let t = sqrt_rational(&z.abs_sq())?;
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let x2 = (&z.re + &t) * &half;
    if let Some(x) = sqrt_rational(&x2) {
        if !x.is_zero() {
            let y = &z.im / (&x * Rational::from(BigInt::from(2)));
            let w = GaussianRational::new(x, y);
            if w.clone() * w.clone() == *z {
                return Some(w);
            }
        }
    }
    // Purely imaginary square: z = -y^2
    if z.im.is_zero() && z.re.is_negative() {
        let y = sqrt_rational(&-z.re.clone())?;
        let w = GaussianRational::new(Rational::zero(), y);
        if w.clone() * w.clone() == *z {
            return Some(w);
        }
    }
    None
}

/// Field hooks for the two commutative coefficient fields.
pub trait FieldRoots: CommScalar {
    /// Roots of `f` in this field, with multiplicities, plus the
    /// unresolved cofactor.
    fn poly_roots(f: &Polynomial<Self>) -> Result<RootSplit<Self>>;

    fn sqrt_in_field(x: &Self) -> Option<Self>;
}

impl FieldRoots for GaussianRational {
    fn poly_roots(f: &Polynomial<Self>) -> Result<RootSplit<Self>> {
        gaussian_roots(f)
    }

    fn sqrt_in_field(x: &Self) -> Option<Self> {
        gaussian_sqrt(x)
    }
}

impl FieldRoots for Rational {
    fn poly_roots(f: &Polynomial<Self>) -> Result<RootSplit<Self>> {
        let lifted = f.map(|c| GaussianRational::from_rational(c.clone()));
        let (roots, _) = gaussian_roots(&lifted)?;
        let mut rem = f.make_monic()?;
        let mut real_roots = Vec::new();
        for (z, mult) in roots {
            if z.is_real() {
                real_roots.push((z.re.clone(), mult));
                for _ in 0..mult {
                    rem = rem.exact_div(&Polynomial::linear(z.re.clone()))?;
                }
            }
        }
        Ok((real_roots, rem))
    }

    fn sqrt_in_field(x: &Self) -> Option<Self> {
        sqrt_rational(x)
    }
}

/// Irreducibility over the coefficient field, complete for degrees ≤ 4.
/// Degrees 5 and up cannot be decided here and return an error telling
/// the caller to assert irreducibility explicitly.
pub fn is_irreducible<S: FieldRoots>(f: &Polynomial<S>) -> Result<bool> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::domain("irreducibility of the zero polynomial"))?;
    match deg {
        0 => Ok(false),
        1 => Ok(true),
        2 | 3 => {
            let (roots, _) = S::poly_roots(f)?;
            Ok(roots.is_empty())
        }
        4 => {
            let (roots, _) = S::poly_roots(f)?;
            if !roots.is_empty() {
                return Ok(false);
            }
            Ok(!has_quadratic_split(&f.make_monic()?)?)
        }
        _ => Err(Error::domain(format!(
            "irreducibility testing is implemented up to degree 4; degree {deg} requires the \
             caller to assert irreducibility"
        ))),
    }
}

/// Whether a monic quartic splits into two monic quadratics over the
/// field, decided through its resolvent cubic.
fn has_quadratic_split<S: FieldRoots>(f: &Polynomial<S>) -> Result<bool> {
    let a = f.coeff(3);
    let b = f.coeff(2);
    let c = f.coeff(1);
    let d = f.coeff(0);
    // y^3 - b y^2 + (ac - 4d) y - (c^2 + a^2 d - 4bd) = 0 with y = r + t
    let four = S::from_i64(4);
    let resolvent = Polynomial::new(vec![
        -(c.clone() * c.clone() + a.clone() * a.clone() * d.clone()
            - four.clone() * b.clone() * d.clone()),
        a.clone() * c.clone() - four.clone() * d.clone(),
        -b.clone(),
        S::one(),
    ]);
    let (ys, _) = S::poly_roots(&resolvent)?;
    for (y, _) in ys {
        // p, q roots of z^2 - a z + (b - y); r, t roots of z^2 - y z + d
        let disc1 = a.clone() * a.clone() - four.clone() * (b.clone() - y.clone());
        let disc2 = y.clone() * y.clone() - four.clone() * d.clone();
        let (Some(s1), Some(s2)) = (S::sqrt_in_field(&disc1), S::sqrt_in_field(&disc2)) else {
            continue;
        };
        let half = S::from_i64(2).inv()?;
        let p = (a.clone() + s1.clone()) * half.clone();
        let q = (a.clone() - s1) * half.clone();
        let r = (y.clone() + s2.clone()) * half.clone();
        let t = (y.clone() - s2) * half.clone();
        for (r0, t0) in [(r.clone(), t.clone()), (t, r)] {
            let left = Polynomial::new(vec![r0, p.clone(), S::one()]);
            let right = Polynomial::new(vec![t0, q.clone(), S::one()]);
            if left.mul(&right) == *f {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat_i64;

    fn gp(desc: &[(i64, i64)]) -> Polynomial<GaussianRational> {
        Polynomial::from_descending(
            desc.iter()
                .map(|&(re, im)| GaussianRational::from_i64(re, im))
                .collect(),
        )
    }

    fn rp(desc: &[i64]) -> Polynomial<Rational> {
        Polynomial::from_descending(desc.iter().map(|&n| rat_i64(n, 1)).collect())
    }

    #[test]
    fn unresolved_quadratic() {
        // x^2 - x + 1 has roots (1 ± i√3)/2, not in Q(i)
        let (roots, rem) = gaussian_roots(&gp(&[(1, 0), (-1, 0), (1, 0)])).unwrap();
        assert!(roots.is_empty());
        assert_eq!(rem.degree(), Some(2));
    }

    #[test]
    fn conjugate_pair_found() {
        // (x - (3/5 + 4/5 i))(x - (3/5 - 4/5 i)) = x^2 - 6/5 x + 1
        let lam = GaussianRational::new(rat_i64(3, 5), rat_i64(4, 5));
        let f = Polynomial::linear(lam.clone()).mul(&Polynomial::linear(lam.conj()));
        let (roots, rem) = gaussian_roots(&f).unwrap();
        assert_eq!(rem.degree(), Some(0));
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|(_, m)| *m == 1));
        assert!(roots.iter().any(|(z, _)| *z == lam));
    }

    #[test]
    fn cubed_rational_root() {
        let (roots, rem) = gaussian_roots(&gp(&[(1, 0), (-6, 0), (12, 0), (-8, 0)])).unwrap();
        assert_eq!(rem.degree(), Some(0));
        assert_eq!(roots, vec![(GaussianRational::from_i64(2, 0), 3)]);
    }

    #[test]
    fn gaussian_integer_roots() {
        // (x - i)^2 (x + 2i)
        let f = Polynomial::linear(GaussianRational::i())
            .pow(2)
            .mul(&Polynomial::linear(GaussianRational::from_i64(0, -2)));
        let (roots, rem) = gaussian_roots(&f).unwrap();
        assert_eq!(rem.degree(), Some(0));
        assert!(roots.contains(&(GaussianRational::i(), 2)));
        assert!(roots.contains(&(GaussianRational::from_i64(0, -2), 1)));
    }

    #[test]
    fn sqrt_tests() {
        assert_eq!(sqrt_rational(&rat_i64(9, 4)), Some(rat_i64(3, 2)));
        assert_eq!(sqrt_rational(&rat_i64(2, 1)), None);
        assert_eq!(
            gaussian_sqrt(&GaussianRational::from_i64(0, 2)),
            Some(GaussianRational::from_i64(1, 1))
        );
        assert_eq!(
            gaussian_sqrt(&GaussianRational::from_i64(-1, 0)),
            Some(GaussianRational::i())
        );
        assert_eq!(gaussian_sqrt(&GaussianRational::from_i64(2, 0)), None);
    }

    #[test]
    fn irreducibility_over_both_fields() {
        // x^2 + 1: irreducible over Q, splits over Q(i)
        assert!(is_irreducible(&rp(&[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&gp(&[(1, 0), (0, 0), (1, 0)])).unwrap());
        // x^2 - x + 1 irreducible over both
        assert!(is_irreducible(&rp(&[1, -1, 1])).unwrap());
        assert!(is_irreducible(&gp(&[(1, 0), (-1, 0), (1, 0)])).unwrap());
        // cyclotomic quintic factor x^4+x^3+x^2+x+1: irreducible over both
        assert!(is_irreducible(&rp(&[1, 1, 1, 1, 1])).unwrap());
        assert!(is_irreducible(&gp(&[(1, 0), (1, 0), (1, 0), (1, 0), (1, 0)])).unwrap());
        // (x^2+1)^2 = x^4 + 2x^2 + 1: reducible over Q by quadratic split
        assert!(!is_irreducible(&rp(&[1, 0, 2, 0, 1])).unwrap());
        // x^4 + 1 factors over Q(i) into quadratics but not over Q... over Q
        // it splits as (x^2 + √2x + 1)(x^2 - √2x + 1) which is NOT rational;
        // over Q it is irreducible.
        assert!(is_irreducible(&rp(&[1, 0, 0, 0, 1])).unwrap());
        assert!(!is_irreducible(&gp(&[(1, 0), (0, 0), (0, 0), (0, 0), (1, 0)])).unwrap());
        // degree 5 needs an assertion
        assert!(is_irreducible(&rp(&[1, 0, 0, 0, 0, 1])).is_err());
    }
}
