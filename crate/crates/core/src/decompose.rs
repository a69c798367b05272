//! Recovery of the canonical block multiset from a valid pair whose
//! eigenvalue data lies in the desk-scale fields.
//!
//! The pipeline per self-paired (unimodular) eigenvalue λ:
//!
//! 1. build Jordan chains of `A` at λ and convert each chain to the
//!    model operator `λΛ_n` (realified for case C, quaternionic for
//!    case D) through an exact cyclic-vector similarity;
//! 2. restrict the form to the generalized eigenspace in that basis;
//! 3. decouple distinct Jordan sizes, largest first, by congruences
//!    commuting with the operator;
//! 4. read off the residue Gram matrix of every same-size group — each
//!    block of the restricted form is `Ψ_ε·f(Ψ)` and the residue is the
//!    constant diagonal of `Ψ_ε⁻¹·H`;
//! 5. take the exact signature of the residue Gram over the residue
//!    field (fraction-free LDL* with symmetric and hyperbolic pivots),
//!    or collapse the signs where the residue involution forces it.
//!
//! Eigenvalues that are not self-paired contribute hyperbolically paired
//! blocks, with the multiset symmetry checked rather than assumed.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::canonical_blocks::{normalize_lambda, unimodular_form, BlockSubtype, CanonicalBlock};
use crate::error::{Error, Result};
use crate::matrices::{
    complex_embed, gaussian_to_rational, jordan_block, lambda_matrix, rational_to_gaussian,
    realify, Matrix,
};
use crate::pair_engine::{AnyPair, IsometricPair, Sign, SplitMix};
use crate::poly::Polynomial;
use crate::roots;
use crate::scalars::{
    CaseTag, CommScalar, GaussianRational, Involution, Quaternion, Rational, Scalar,
};

// ---------------------------------------------------------------------------
// Jordan data
// ---------------------------------------------------------------------------

/// Eigenvalues with their Jordan size multisets (sizes descending).
/// Quaternion eigenvalues appear once per class, represented with
/// `Im λ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanData {
    pub eigenvalues: Vec<(GaussianRational, Vec<usize>)>,
}

impl JordanData {
    pub fn total_dim(&self) -> usize {
        self.eigenvalues
            .iter()
            .map(|(_, sizes)| sizes.iter().sum::<usize>())
            .sum()
    }

    pub fn sizes_at(&self, lambda: &GaussianRational) -> Option<&[usize]> {
        self.eigenvalues
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, s)| s.as_slice())
    }
}

/// Jordan data together with an explicit Jordan basis.
#[derive(Debug, Clone)]
pub struct JordanStructure<S: Scalar> {
    pub data: JordanData,
    /// `T` with `T⁻¹AT` equal to [`jordan_form`](Self::jordan_form).
    pub basis: Matrix<S>,
    pub jordan_form: Matrix<S>,
}

/// All roots of a monic polynomial lying in ℚ(i), with multiplicities.
/// A nontrivial unresolved cofactor is an error: the input's eigenvalues
/// leave the desk-scale fields.
pub fn gaussian_eigenvalues(
    chi: &Polynomial<GaussianRational>,
) -> Result<Vec<(GaussianRational, usize)>> {
    if !chi.is_monic() {
        return Err(Error::domain(
            "eigenvalue search expects a monic polynomial",
        ));
    }
    let (roots, rem) = roots::gaussian_roots(chi)?;
    if rem.degree().unwrap_or(0) > 0 {
        return Err(Error::UnresolvedFactor(format!(
            "factor {rem:?} has no roots in Q(i)"
        )));
    }
    Ok(roots)
}

// ---------------------------------------------------------------------------
// Chain computation over a commutative field
// ---------------------------------------------------------------------------

/// Jordan chains of `a` at `lambda` (algebraic multiplicity `mult`).
/// Each chain is returned bottom-up: `c_1` is the eigenvector and
/// `A·c_k = λ·c_k + c_{k−1}`.  Chains are sorted by descending length.
fn comm_chains_at<S: CommScalar>(
    a: &Matrix<S>,
    lambda: &S,
    mult: usize,
) -> Result<Vec<Vec<Matrix<S>>>> {
    let n = a.rows();
    let nilpotent = a.sub(&Matrix::scalar(n, lambda))?;
    // Kernels of powers until the dimension saturates at mult.  The
    // powers are taken of the integer-scaled shift: kernels agree and
    // the arithmetic stays fraction-free; kernel bases are normalized
    // to primitive integral columns to keep later products small.
    let (nilpotent_int, _) = crate::intmat::IntMatrix::from_scaled(&nilpotent)?;
    let mut power = crate::intmat::IntMatrix::identity(n);
    let mut kernels: Vec<Matrix<S>> = vec![Matrix::zero(n, 0)];
    loop {
        power = power.mul(&nilpotent_int);
        let (_, ker) = power.rank_kernel::<S>();
        let dim = ker.cols();
        kernels.push(ker);
        if dim >= mult {
            break;
        }
        if kernels.len() > n + 1 {
            return Err(Error::bug("kernel chain failed to saturate"));
        }
    }
    let height = kernels.len() - 1;
    let dims: Vec<usize> = kernels.iter().map(|k| k.cols()).collect();
    if dims[height] != mult {
        return Err(Error::bug(format!(
            "generalized eigenspace dimension {} does not match multiplicity {mult}",
            dims[height]
        )));
    }
    // w_j = number of chains of height >= j
    let weyr: Vec<usize> = (1..=height).map(|j| dims[j] - dims[j - 1]).collect();

    let mut chains: Vec<Vec<Matrix<S>>> = Vec::new();
    for j in (1..=height).rev() {
        let taller = if j < height { weyr[j] } else { 0 };
        let need_new = weyr[j - 1] - taller;
        if need_new == 0 {
            continue;
        }
        // blockers: K_{j-1} plus the level-j vectors of taller chains and
        // of the new chains accepted in this round
        let mut blocker_cols: Vec<Matrix<S>> = Vec::new();
        for c in 0..kernels[j - 1].cols() {
            blocker_cols.push(kernels[j - 1].column(c));
        }
        for chain in &chains {
            if chain.len() >= j {
                blocker_cols.push(chain[j - 1].clone());
            }
        }
        let mut accepted = 0;
        for c in 0..kernels[j].cols() {
            if accepted == need_new {
                break;
            }
            let cand = kernels[j].column(c);
            let mut test_cols = blocker_cols.clone();
            test_cols.push(cand.clone());
            let test = Matrix::hconcat(&test_cols)?;
            if test.rank_kernel_ff().0 == test.cols() {
                // new chain with top at height j
                let mut chain = Vec::with_capacity(j);
                let mut v = cand.clone();
                chain.push(v.clone());
                for _ in 1..j {
                    v = nilpotent.mul(&v)?;
                    chain.push(v.clone());
                }
                chain.reverse();
                blocker_cols.push(cand);
                chains.push(chain);
                accepted += 1;
            }
        }
        if accepted != need_new {
            return Err(Error::bug(format!(
                "chain lifting found {accepted} of {need_new} chains at height {j}"
            )));
        }
    }
    chains.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let total: usize = chains.iter().map(|c| c.len()).sum();
    if total != mult {
        return Err(Error::bug("chain lengths do not sum to the multiplicity"));
    }
    Ok(chains)
}

/// Columns `[v, Mv, …, M^{n−1}v]`.
fn krylov<S: CommScalar>(m: &Matrix<S>, v: &Matrix<S>) -> Result<Matrix<S>> {
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    let mut cur = v.clone();
    for _ in 0..n {
        cols.push(cur.clone());
        cur = m.mul(&cur)?;
    }
    Matrix::hconcat(&cols)
}

/// Exact similarity `C` with `C⁻¹·from·C = to` for two similar
/// nonderogatory matrices, found through cyclic Krylov bases.
fn cyclic_converter<S: CommScalar>(from: &Matrix<S>, to: &Matrix<S>) -> Result<Matrix<S>> {
    let n = from.rows();
    let find_cyclic = |m: &Matrix<S>| -> Result<Matrix<S>> {
        let mut candidates: Vec<Matrix<S>> = Vec::new();
        let mut e = Matrix::zero(n, 1);
        e.set(n - 1, 0, S::one());
        candidates.push(e);
        let mut e = Matrix::zero(n, 1);
        e.set(0, 0, S::one());
        candidates.push(e);
        let ones = Matrix::from_fn(n, 1, |_, _| S::one());
        candidates.push(ones);
        for v in candidates {
            let k = krylov(m, &v)?;
            if k.is_invertible() {
                return Ok(k);
            }
        }
        Err(Error::bug("no cyclic vector among the standard candidates"))
    };
    let kf = find_cyclic(from)?;
    let kt = find_cyclic(to)?;
    kf.mul(&kt.inverse()?)
}

// ---------------------------------------------------------------------------
// Model restriction at a self-paired eigenvalue
// ---------------------------------------------------------------------------

/// One Jordan block of the restriction, in model coordinates.
struct ModelBlock<S: Scalar> {
    /// Canonical block size (the `n` of `λΛ_n`).
    n: usize,
    /// Dimension occupied in the matrices (`n`, or `2n` realified).
    dim: usize,
    /// Basis columns with `A·basis = basis·psi`.
    basis: Matrix<S>,
    /// Model operator `λΛ_n` (realified/lifted as the case requires).
    psi: Matrix<S>,
    /// Sign-free model form `Ψ_ε`.
    psi_eps: Matrix<S>,
    /// Whether a form matrix exists at this size (sign-carrying group).
    live: bool,
}

struct LambdaRestriction<S: Scalar> {
    blocks: Vec<ModelBlock<S>>,
    /// Gram matrix of the form on the eigenspace, in model coordinates.
    h: Matrix<S>,
    /// Block-diagonal model operator.
    d: Matrix<S>,
    offsets: Vec<usize>,
}

fn build_restriction<S: Scalar>(
    pair: &IsometricPair<S>,
    blocks: Vec<ModelBlock<S>>,
) -> Result<LambdaRestriction<S>> {
    let inv = pair.domain().involution;
    let t = Matrix::hconcat(&blocks.iter().map(|b| b.basis.clone()).collect::<Vec<_>>())?;
    let mut d = Matrix::empty();
    for b in &blocks {
        d = d.direct_sum(&b.psi);
    }
    if pair.a().mul(&t)? != t.mul(&d)? {
        return Err(Error::bug("model basis does not intertwine the operator"));
    }
    let h = t.star(inv)?.mul(pair.b())?.mul(&t)?;
    if !h.is_invertible() {
        return Err(Error::bug("form is degenerate on a self-paired eigenspace"));
    }
    let eps = pair.epsilon().scalar::<S>();
    if h != h.star(inv)?.scale_left(&eps) {
        return Err(Error::bug("restricted form lost eps-symmetry"));
    }
    if d.star(inv)?.mul(&h)?.mul(&d)? != h {
        return Err(Error::bug("restricted form is not model-invariant"));
    }
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut off = 0;
    for b in &blocks {
        offsets.push(off);
        off += b.dim;
    }
    Ok(LambdaRestriction {
        blocks,
        h,
        d,
        offsets,
    })
}

/// Contiguous runs of equal-size blocks (sizes are already descending).
fn size_groups<S: Scalar>(blocks: &[ModelBlock<S>]) -> Vec<(usize, usize)> {
    let mut groups = Vec::new();
    let mut start = 0;
    while start < blocks.len() {
        let mut end = start + 1;
        while end < blocks.len() && blocks[end].n == blocks[start].n {
            end += 1;
        }
        groups.push((start, end));
        start = end;
    }
    groups
}

/// Decouples distinct sizes, largest first: the cross block `H_{gk}` is
/// eliminated by the congruence `I + X`, `X = −H_gg⁻¹·H_{gk}`, which
/// stays inside the intertwiner space; when the pivot group is singular
/// a bounded sequence of seeded unit-intertwiner mixes is tried first.
fn decouple<S: Scalar>(r: &mut LambdaRestriction<S>, inv: Involution) -> Result<()> {
    let groups = size_groups(&r.blocks);
    let total = r.h.rows();
    let mut rng = SplitMix::new(0x6a09e667f3bcc908);
    for (gi, &(gs, ge)) in groups.iter().enumerate() {
        let off = r.offsets[gs];
        let width: usize = (gs..ge).map(|i| r.blocks[i].dim).sum();
        // pivot group must be invertible
        let mut tries = 0;
        while !r.h.block(off, off, width, width).is_invertible() {
            if tries >= 16 {
                return Err(Error::bug(
                    "size-group pivot stayed singular after unit-intertwiner mixing",
                ));
            }
            if ge - gs < 2 {
                return Err(Error::bug("singular single-block pivot group"));
            }
            let j = gs + rng.usize_below(ge - gs);
            let mut k = gs + rng.usize_below(ge - gs);
            while k == j {
                k = gs + rng.usize_below(ge - gs);
            }
            let c = S::from_i64(1 + rng.int_in(2).abs());
            let mut s = Matrix::identity(total);
            let unit = Matrix::scalar(r.blocks[j].dim, &c);
            s.set_block(r.offsets[j], r.offsets[k], &unit);
            apply_congruence(r, &s, inv)?;
            tries += 1;
        }
        if gi + 1 == groups.len() {
            continue;
        }
        let pivot_inv = r.h.block(off, off, width, width).inverse()?;
        let mut s = Matrix::identity(total);
        let rest_off = off + width;
        if rest_off < total {
            let cross = r.h.block(off, rest_off, width, total - rest_off);
            let x = pivot_inv.mul(&cross)?.neg();
            s.set_block(off, rest_off, &x);
        }
        apply_congruence(r, &s, inv)?;
        let cleared = r.h.block(off, rest_off, width, total - rest_off);
        if !cleared.is_zero() {
            return Err(Error::bug("cross block survived elimination"));
        }
    }
    Ok(())
}

fn apply_congruence<S: Scalar>(
    r: &mut LambdaRestriction<S>,
    s: &Matrix<S>,
    inv: Involution,
) -> Result<()> {
    if s.mul(&r.d)? != r.d.mul(s)? {
        return Err(Error::bug("congruence does not commute with the model"));
    }
    r.h = s.star(inv)?.mul(&r.h)?.mul(s)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Residue fields, Gram extraction, signatures
// ---------------------------------------------------------------------------

/// The residue (skew) field a unimodular eigenvalue's sign data lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueFieldKind {
    /// ℚ with the identity involution (real closed stand-in): signs live.
    Rational,
    /// ℚ(i) with conjugation: signs live.
    GaussianConj,
    /// ℚ(i) with the identity involution (algebraically closed stand-in):
    /// signs collapse.
    GaussianId,
    /// Quaternions with conjugation: signs live.
    QuatConj,
    /// Quaternions with semiconjugation: signs collapse.
    QuatSemi,
}

impl ResidueFieldKind {
    pub fn collapses(self) -> bool {
        matches!(
            self,
            ResidueFieldKind::GaussianId | ResidueFieldKind::QuatSemi
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ResidueFieldKind::Rational => "rational",
            ResidueFieldKind::GaussianConj => "gaussian-conjugation",
            ResidueFieldKind::GaussianId => "gaussian-identity",
            ResidueFieldKind::QuatConj => "quaternion-conjugation",
            ResidueFieldKind::QuatSemi => "quaternion-semiconjugation",
        }
    }
}

/// Which residue field governs the signs at `(case, involution, ε, n, λ)`.
pub fn residue_field_kind(
    case: CaseTag,
    involution: Involution,
    epsilon: Sign,
    n: usize,
    lambda: &GaussianRational,
) -> ResidueFieldKind {
    let plus_minus_one = lambda.is_real() && lambda.re.clone().abs().is_one();
    match case {
        CaseTag::A => ResidueFieldKind::GaussianId,
        CaseTag::B => ResidueFieldKind::GaussianConj,
        CaseTag::C => {
            if lambda.is_real() {
                ResidueFieldKind::Rational
            } else {
                ResidueFieldKind::GaussianConj
            }
        }
        CaseTag::D => {
            if !plus_minus_one {
                ResidueFieldKind::GaussianConj
            } else {
                let same = epsilon == Sign::pow_of_minus_one(n + 1);
                let conj_here = involution == Involution::QuaternionConjugation;
                // the residue involution is the domain involution when
                // ε = (−1)^{n+1} and the other one when ε = (−1)^n
                if same == conj_here {
                    ResidueFieldKind::QuatConj
                } else {
                    ResidueFieldKind::QuatSemi
                }
            }
        }
    }
}

/// Per-size sign counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCounts {
    pub plus: usize,
    pub minus: usize,
}

/// Evidence retained for one `(λ, n)` sign computation.
#[derive(Debug, Clone)]
pub struct SignEvidence {
    pub lambda: GaussianRational,
    pub size: usize,
    pub residue_field: ResidueFieldKind,
    /// Residue Gram matrix, rendered entrywise (exact scalar strings).
    pub gram: Vec<Vec<String>>,
    pub counts: SignCounts,
}

/// Exact signature of a nonsingular Hermitian matrix over a residue
/// (skew) field, by symmetric elimination with hyperbolic 2×2 pivots
/// for the zero-diagonal situation (each contributes `(+1, −1)`).
fn hermitian_signature<S: Scalar>(
    g: &Matrix<S>,
    inv: Involution,
    sign_of: impl Fn(&S) -> Result<Sign>,
) -> Result<SignCounts> {
    let mut m = g.clone();
    let mut active: Vec<usize> = (0..g.rows()).collect();
    let mut counts = SignCounts { plus: 0, minus: 0 };
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&j| !m.at(j, j).is_zero()) {
            let j = active[pos];
            let d = m.at(j, j).clone();
            match sign_of(&d)? {
                Sign::Plus => counts.plus += 1,
                Sign::Minus => counts.minus += 1,
            }
            let d_inv = d.inv()?;
            active.remove(pos);
            for &k in &active {
                for &l in &active {
                    let upd = m.at(k, j).clone() * d_inv.clone() * m.at(j, l).clone();
                    let v = m.at(k, l).clone() - upd;
                    m.set(k, l, v);
                }
            }
        } else {
            // hyperbolic pivot
            let mut found = None;
            'outer: for (pj, &j) in active.iter().enumerate() {
                for (pk, &k) in active.iter().enumerate().skip(pj + 1) {
                    if !m.at(j, k).is_zero() {
                        found = Some((pj, pk, j, k));
                        break 'outer;
                    }
                }
            }
            let Some((pj, pk, j, k)) = found else {
                return Err(Error::bug("residue Gram matrix is singular"));
            };
            counts.plus += 1;
            counts.minus += 1;
            let p = m.at(j, k).clone();
            let q = m.at(k, j).clone(); // = conj(p)
            let p_inv = p.inv()?;
            let q_inv = q.inv()?;
            active.remove(pk);
            active.remove(pj);
            for &r in &active {
                for &l in &active {
                    // subtract [G_rj, G_rk]·P⁻¹·[G_jl; G_kl] with
                    // P = [[0, p],[q, 0]], P⁻¹ = [[0, q⁻¹],[p⁻¹, 0]]
                    let upd = m.at(r, j).clone() * q_inv.clone() * m.at(k, l).clone()
                        + m.at(r, k).clone() * p_inv.clone() * m.at(j, l).clone();
                    let v = m.at(r, l).clone() - upd;
                    m.set(r, l, v);
                }
            }
        }
        let _ = inv;
    }
    Ok(counts)
}

fn sign_of_rational_part(r: &Rational) -> Result<Sign> {
    if r.is_positive() {
        Ok(Sign::Plus)
    } else if r.is_negative() {
        Ok(Sign::Minus)
    } else {
        Err(Error::bug("zero pivot escaped the elimination"))
    }
}

// ---------------------------------------------------------------------------
// Per-ring sign drivers
// ---------------------------------------------------------------------------

/// Outcome of the restriction workflow at one eigenvalue: per size,
/// either sign counts (live groups) or the folded multiplicity
/// (sizes whose blocks must pair hyperbolically).
struct LambdaOutcome {
    /// (size, counts, evidence) for sign-carrying sizes
    live: Vec<(usize, SignCounts, SignEvidence)>,
    /// (size, multiplicity) for sizes without a form matrix
    folded: Vec<(usize, usize)>,
}

fn group_live<S: Scalar>(r: &LambdaRestriction<S>, gs: usize, ge: usize) -> (usize, usize, bool) {
    let n = r.blocks[gs].n;
    (n, ge - gs, r.blocks[gs].live)
}

/// Shared driver: restriction, decoupling, residue extraction.
/// `extract` reads the residue of one commutant block `Ψ_ε⁻¹·H_{jk}`;
/// `signature` turns a residue Gram into counts (None = collapse).
fn lambda_outcome<S: Scalar, R: Scalar>(
    pair: &IsometricPair<S>,
    blocks: Vec<ModelBlock<S>>,
    extract: impl Fn(&Matrix<S>, &ModelBlock<S>) -> Result<R>,
    residue_inv: impl Fn(usize) -> Involution,
    signature: impl Fn(usize, &Matrix<R>) -> Result<Option<SignCounts>>,
    lambda: &GaussianRational,
) -> Result<LambdaOutcome> {
    let mut r = build_restriction(pair, blocks)?;
    decouple(&mut r, pair.domain().involution)?;
    let mut out = LambdaOutcome {
        live: Vec::new(),
        folded: Vec::new(),
    };
    for (gs, ge) in size_groups(&r.blocks) {
        let (n, s, live) = group_live(&r, gs, ge);
        if !live {
            out.folded.push((n, s));
            continue;
        }
        let mut gram = Matrix::<R>::zero(s, s);
        for j in 0..s {
            for k in 0..s {
                let bj = &r.blocks[gs + j];
                let hjk = r.h.block(
                    r.offsets[gs + j],
                    r.offsets[gs + k],
                    bj.dim,
                    r.blocks[gs + k].dim,
                );
                let commutant = bj.psi_eps.inverse()?.mul(&hjk)?;
                if commutant.mul(&bj.psi)? != bj.psi.mul(&commutant)? {
                    return Err(Error::bug(
                        "form block is not an intertwiner times the model form",
                    ));
                }
                gram.set(j, k, extract(&commutant, bj)?);
            }
        }
        let rinv = residue_inv(n);
        if gram != gram.star(rinv)? {
            return Err(Error::bug("residue Gram is not Hermitian"));
        }
        let counts = match signature(n, &gram)? {
            Some(c) => c,
            None => SignCounts { plus: s, minus: 0 },
        };
        if counts.plus + counts.minus != s {
            return Err(Error::bug("signature does not exhaust the group"));
        }
        let evidence = SignEvidence {
            lambda: lambda.clone(),
            size: n,
            residue_field: residue_field_kind(
                pair.domain().case,
                pair.domain().involution,
                pair.epsilon(),
                n,
                lambda,
            ),
            gram: render_matrix(&gram),
            counts,
        };
        out.live.push((n, counts, evidence));
    }
    Ok(out)
}

fn render_matrix<R: Scalar>(m: &Matrix<R>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.at(r, c).to_string()).collect())
        .collect()
}

/// Model blocks for the Gaussian cases (A and B) at eigenvalue λ.
fn gaussian_model_blocks(
    pair: &IsometricPair<GaussianRational>,
    lambda: &GaussianRational,
    chains: &[Vec<Matrix<GaussianRational>>],
) -> Result<Vec<ModelBlock<GaussianRational>>> {
    let case = pair.domain().case;
    let eps = pair.epsilon();
    let mut converters: BTreeMap<usize, Matrix<GaussianRational>> = BTreeMap::new();
    let mut blocks = Vec::new();
    for chain in chains {
        let n = chain.len();
        let conv = match converters.get(&n) {
            Some(c) => c.clone(),
            None => {
                let j = jordan_block::<GaussianRational>(n, lambda)?;
                let psi = lambda_matrix::<GaussianRational>(n)?.scale_left(lambda);
                let c = cyclic_converter(&j, &psi)?;
                converters.insert(n, c.clone());
                c
            }
        };
        let live = match case {
            CaseTag::A => eps == Sign::pow_of_minus_one(n + 1),
            _ => true,
        };
        blocks.push(ModelBlock {
            n,
            dim: n,
            basis: Matrix::hconcat(chain)?.mul(&conv)?,
            psi: lambda_matrix::<GaussianRational>(n)?.scale_left(lambda),
            psi_eps: unimodular_form::<GaussianRational>(case, eps, n)?,
            live,
        });
    }
    blocks.sort_by_key(|b| std::cmp::Reverse(b.n));
    Ok(blocks)
}

/// Residue of a commutant matrix for the straight (non-realified)
/// models: upper triangular with constant diagonal.
fn diagonal_residue<S: Scalar>(commutant: &Matrix<S>) -> Result<S> {
    let g = commutant.at(0, 0).clone();
    for k in 1..commutant.rows() {
        if commutant.at(k, k) != &g {
            return Err(Error::bug("commutant diagonal is not constant"));
        }
        for l in 0..k {
            if !commutant.at(k, l).is_zero() {
                return Err(Error::bug("commutant is not upper triangular"));
            }
        }
    }
    Ok(g)
}

/// Residue for the realified case C models, read off the top-left 2×2
/// block `[[a, −b], [b, a]]`.
fn realified_residue(commutant: &Matrix<Rational>) -> Result<GaussianRational> {
    let g = GaussianRational::new(commutant.at(0, 0).clone(), commutant.at(1, 0).clone());
    let n2 = commutant.rows();
    for k in (0..n2).step_by(2) {
        let block_ok = commutant.at(k, k) == &g.re
            && commutant.at(k + 1, k + 1) == &g.re
            && commutant.at(k + 1, k) == &g.im
            && *commutant.at(k, k + 1) == -g.im.clone();
        if !block_ok {
            return Err(Error::bug("realified commutant diagonal is not constant"));
        }
    }
    Ok(g)
}

fn gaussian_sign(z: &GaussianRational) -> Result<Sign> {
    if !z.im.is_zero() {
        return Err(Error::bug("residue pivot is not in the fixed field"));
    }
    sign_of_rational_part(&z.re)
}

fn quaternion_sign(h: &Quaternion) -> Result<Sign> {
    if !h.is_real() {
        return Err(Error::bug("residue pivot is not in the fixed field"));
    }
    sign_of_rational_part(&h.a)
}

// ---------------------------------------------------------------------------
// Eigen analysis per ring
// ---------------------------------------------------------------------------

struct EigenRep<S: Scalar> {
    lambda: GaussianRational,
    sizes: Vec<usize>,
    chains: Vec<Vec<Matrix<S>>>,
}

/// Gaussian-matrix analysis: chains at every eigenvalue.
fn analyze_gaussian(a: &Matrix<GaussianRational>) -> Result<Vec<EigenRep<GaussianRational>>> {
    let chi = a.charpoly()?;
    let roots = gaussian_eigenvalues(&chi)?;
    let mut reps = Vec::new();
    for (lambda, mult) in roots {
        let chains = comm_chains_at(a, &lambda, mult)?;
        let sizes = chains.iter().map(|c| c.len()).collect();
        reps.push(EigenRep {
            lambda,
            sizes,
            chains,
        });
    }
    reps.sort_by(|x, y| x.lambda.cmp(&y.lambda));
    Ok(reps)
}

/// Quaternion analysis through the complex embedding: one entry per
/// eigenvalue class, represented with `Im λ ≥ 0`, carrying quaternion
/// chains.
fn analyze_quaternion(a: &Matrix<Quaternion>) -> Result<Vec<EigenRep<Quaternion>>> {
    let emb = complex_embed(a);
    let chi = emb.charpoly()?;
    let roots = gaussian_eigenvalues(&chi)?;
    let mut reps = Vec::new();
    for (lambda, mult) in roots {
        if lambda.im.is_negative() {
            continue;
        }
        let comm = comm_chains_at(&emb, &lambda, mult)?;
        let chains = pull_back_chains(a, &lambda, &comm)?;
        let expected: usize = if lambda.is_real() { mult / 2 } else { mult };
        if lambda.is_real() && mult % 2 == 1 {
            return Err(Error::bug(
                "odd real multiplicity in a quaternion embedding",
            ));
        }
        let got: usize = chains.iter().map(|c| c.len()).sum();
        if got != expected {
            return Err(Error::bug(format!(
                "quaternion chain extraction found dimension {got}, expected {expected}"
            )));
        }
        let sizes = chains.iter().map(|c| c.len()).collect();
        reps.push(EigenRep {
            lambda,
            sizes,
            chains,
        });
    }
    reps.sort_by(|x, y| x.lambda.cmp(&y.lambda));
    Ok(reps)
}

/// Pulls embedded chains back to quaternion chains, keeping a greedy
/// right-independent subset (at real eigenvalues exactly half of the
/// embedded chains survive; the rest are their `j`-shadows).
fn pull_back_chains(
    a: &Matrix<Quaternion>,
    lambda: &GaussianRational,
    comm: &[Vec<Matrix<GaussianRational>>],
) -> Result<Vec<Vec<Matrix<Quaternion>>>> {
    let n = a.rows();
    let lam_q = Quaternion::from_gaussian(lambda);
    let mut kept: Vec<Vec<Matrix<Quaternion>>> = Vec::new();
    let mut kept_cols: Vec<Matrix<Quaternion>> = Vec::new();
    for chain in comm {
        let pulled: Vec<Matrix<Quaternion>> = chain
            .iter()
            .map(|w| pull_back_vector(n, w))
            .collect::<Result<_>>()?;
        // exactness of the chain relations
        for (k, v) in pulled.iter().enumerate() {
            let av = a.mul(v)?;
            let expect = if k == 0 {
                v.scale_right(&lam_q)
            } else {
                v.scale_right(&lam_q).add(&pulled[k - 1])?
            };
            if av != expect {
                return Err(Error::bug("pulled-back chain lost the Jordan relation"));
            }
        }
        let mut test = kept_cols.clone();
        test.extend(pulled.iter().cloned());
        let m = Matrix::hconcat(&test)?;
        let rank2 = complex_embed(&m).rank_kernel_ff().0;
        if rank2 == 2 * m.cols() {
            kept_cols.extend(pulled.iter().cloned());
            kept.push(pulled);
        }
    }
    kept.sort_by_key(|c| std::cmp::Reverse(c.len()));
    Ok(kept)
}

/// Embedded column at quaternion row r: `(u_r, −conj(v_r))` for the
/// entry `u_r + v_r·j`.
fn pull_back_vector(n: usize, w: &Matrix<GaussianRational>) -> Result<Matrix<Quaternion>> {
    if w.rows() != 2 * n || w.cols() != 1 {
        return Err(Error::shape("embedded vector has the wrong height"));
    }
    Ok(Matrix::from_fn(n, 1, |r, _| {
        let u = w.at(2 * r, 0).clone();
        let v = -w.at(2 * r + 1, 0).conj();
        Quaternion::from_complex_pair(&u, &v)
    }))
}

// ---------------------------------------------------------------------------
// Public Jordan structure
// ---------------------------------------------------------------------------

/// Jordan structure over ℚ(i) (cases A and B): data plus an explicit
/// basis with `T⁻¹AT` in Jordan form.
pub fn jordan_structure_gaussian(
    a: &Matrix<GaussianRational>,
) -> Result<JordanStructure<GaussianRational>> {
    if !a.is_invertible() {
        return Err(Error::singular(
            "Jordan analysis expects an invertible operator",
        ));
    }
    let reps = analyze_gaussian(a)?;
    let mut basis_cols = Vec::new();
    let mut form = Matrix::empty();
    let mut data = Vec::new();
    for rep in &reps {
        for chain in &rep.chains {
            basis_cols.extend(chain.iter().cloned());
            form = form.direct_sum(&jordan_block(chain.len(), &rep.lambda)?);
        }
        data.push((rep.lambda.clone(), rep.sizes.clone()));
    }
    let basis = Matrix::hconcat(&basis_cols)?;
    if !basis.is_invertible() {
        return Err(Error::bug("Jordan basis is singular"));
    }
    Ok(JordanStructure {
        data: JordanData { eigenvalues: data },
        basis,
        jordan_form: form,
    })
}

/// Jordan structure over ℚ (case C): rational eigenvalues contribute
/// plain Jordan blocks, conjugate pairs contribute realified blocks
/// `J_n(λ)^P` at their `Im λ > 0` representative.
pub fn jordan_structure_rational(a: &Matrix<Rational>) -> Result<JordanStructure<Rational>> {
    if !a.is_invertible() {
        return Err(Error::singular(
            "Jordan analysis expects an invertible operator",
        ));
    }
    let lifted = rational_to_gaussian(a);
    let reps = analyze_gaussian(&lifted)?;
    let mut basis_cols: Vec<Matrix<Rational>> = Vec::new();
    let mut form = Matrix::empty();
    let mut data = Vec::new();
    for rep in &reps {
        if rep.lambda.im.is_negative() {
            data.push((rep.lambda.clone(), rep.sizes.clone()));
            continue;
        }
        if rep.lambda.is_real() {
            for chain in &rep.chains {
                for v in chain {
                    basis_cols.push(gaussian_to_rational(v)?);
                }
                form = form.direct_sum(&jordan_block(chain.len(), &rep.lambda.re)?);
            }
        } else {
            for chain in &rep.chains {
                for v in chain {
                    let (u, w) = split_real_imag(v);
                    basis_cols.push(u);
                    basis_cols.push(w.neg());
                }
                form = form.direct_sum(&realify(&jordan_block(chain.len(), &rep.lambda)?));
            }
        }
        data.push((rep.lambda.clone(), rep.sizes.clone()));
    }
    let basis = Matrix::hconcat(&basis_cols)?;
    if !basis.is_invertible() {
        return Err(Error::bug("Jordan basis is singular"));
    }
    Ok(JordanStructure {
        data: JordanData { eigenvalues: data },
        basis,
        jordan_form: form,
    })
}

/// Jordan structure over the quaternions (case D): one `J_n(λ)` per
/// class with `Im λ ≥ 0`.
pub fn jordan_structure_quaternion(a: &Matrix<Quaternion>) -> Result<JordanStructure<Quaternion>> {
    if !a.is_invertible() {
        return Err(Error::singular(
            "Jordan analysis expects an invertible operator",
        ));
    }
    let reps = analyze_quaternion(a)?;
    let mut basis_cols = Vec::new();
    let mut form = Matrix::empty();
    let mut data = Vec::new();
    for rep in &reps {
        let lam_q = Quaternion::from_gaussian(&rep.lambda);
        for chain in &rep.chains {
            basis_cols.extend(chain.iter().cloned());
            form = form.direct_sum(&jordan_block(chain.len(), &lam_q)?);
        }
        data.push((rep.lambda.clone(), rep.sizes.clone()));
    }
    let basis = Matrix::hconcat(&basis_cols)?;
    if complex_embed(&basis).rank_kernel_ff().0 != 2 * basis.rows() {
        return Err(Error::bug("quaternion Jordan basis is singular"));
    }
    Ok(JordanStructure {
        data: JordanData { eigenvalues: data },
        basis,
        jordan_form: form,
    })
}

fn split_real_imag(v: &Matrix<GaussianRational>) -> (Matrix<Rational>, Matrix<Rational>) {
    (v.map(|z| z.re.clone()), v.map(|z| z.im.clone()))
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

/// Canonical multiset plus per-invariant evidence.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub blocks: Vec<CanonicalBlock>,
    pub jordan: JordanData,
    pub sign_evidence: Vec<SignEvidence>,
}

impl Decomposition {
    /// Multiset equality of the recovered blocks.
    pub fn same_blocks(&self, other: &[CanonicalBlock]) -> bool {
        let mut a = self.blocks.clone();
        let mut b = other.to_vec();
        sort_blocks(&mut a);
        sort_blocks(&mut b);
        a == b
    }
}

pub fn sort_blocks(blocks: &mut [CanonicalBlock]) {
    blocks.sort_by(|x, y| {
        (x.subtype, x.n, &x.lambda, x.sign).cmp(&(y.subtype, y.n, &y.lambda, y.sign))
    });
}

/// Whether λ is fixed by the relevant orbit map (hence carries
/// unimodular blocks rather than hyperbolic pairing).
fn self_paired(case: CaseTag, lambda: &GaussianRational) -> bool {
    match case {
        CaseTag::A => lambda.is_real() && lambda.re.clone().abs().is_one(),
        CaseTag::B | CaseTag::C | CaseTag::D => lambda.abs_sq().is_one(),
    }
}

/// The partner eigenvalue (representative) a non-self-paired λ must be
/// matched with.
fn partner_rep(case: CaseTag, lambda: &GaussianRational) -> Result<GaussianRational> {
    let inv = lambda.inv()?;
    Ok(match case {
        CaseTag::A => inv,
        CaseTag::B => inv.conj(),
        CaseTag::C | CaseTag::D => {
            // class representative with Im >= 0
            if inv.im.is_negative() {
                inv.conj()
            } else {
                inv
            }
        }
    })
}

/// Whether a form matrix exists at `(n, λ)` — i.e. whether the size-n
/// group at a self-paired λ carries signs rather than folding into
/// hyperbolic pairs.
fn size_is_live(case: CaseTag, epsilon: Sign, n: usize) -> bool {
    match case {
        CaseTag::A | CaseTag::C => epsilon == Sign::pow_of_minus_one(n + 1),
        CaseTag::B | CaseTag::D => true,
    }
}

/// Verifies that every `(λ, n)` without a form matrix has even Jordan
/// multiplicity; returns human-readable violations.
pub fn multiplicity_parity_check(jd: &JordanData, case: CaseTag, epsilon: Sign) -> Vec<String> {
    let mut violations = Vec::new();
    for (lambda, sizes) in &jd.eigenvalues {
        if !self_paired(case, lambda) {
            continue;
        }
        let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
        for &n in sizes {
            *by_size.entry(n).or_default() += 1;
        }
        for (&n, &mult) in &by_size {
            // case C with a real parameter behaves like case A; nonreal
            // unimodular parameters always carry a form matrix
            let live = if case == CaseTag::C && !lambda.is_real() {
                true
            } else {
                size_is_live(case, epsilon, n)
            };
            if !live && mult % 2 == 1 {
                violations.push(format!(
                    "lambda = {lambda}, size {n}: no form matrix exists for eps = {epsilon} \
                     but the Jordan multiplicity {mult} is odd"
                ));
            }
        }
    }
    violations
}

/// Full decomposition driver.
pub fn canonical_decomposition(pair: &AnyPair) -> Result<Decomposition> {
    match pair {
        AnyPair::Gaussian(p) => decompose_gaussian(p),
        AnyPair::Rational(p) => decompose_rational(p),
        AnyPair::Quaternion(p) => decompose_quaternion(p),
    }
}

/// The sign characteristic at one unimodular eigenvalue: per size,
/// (plus, minus) counts.
pub fn sign_characteristic(
    pair: &AnyPair,
    lambda: &GaussianRational,
) -> Result<Vec<(usize, SignCounts)>> {
    let d = canonical_decomposition(pair)?;
    let mut out: BTreeMap<usize, SignCounts> = BTreeMap::new();
    let case = pair.domain().case;
    // compare at the normalized representative
    let target = normalize_lambda(lambda, case, case == CaseTag::C && !lambda.is_real())?;
    for ev in &d.sign_evidence {
        if normalize_lambda(&ev.lambda, case, case == CaseTag::C && !ev.lambda.is_real())? == target
        {
            out.insert(ev.size, ev.counts);
        }
    }
    if out.is_empty() {
        return Err(Error::domain(format!(
            "no unimodular sign data at lambda = {lambda}"
        )));
    }
    Ok(out.into_iter().collect())
}

fn decompose_gaussian(pair: &IsometricPair<GaussianRational>) -> Result<Decomposition> {
    let case = pair.domain().case;
    let eps = pair.epsilon();
    let reps = analyze_gaussian(pair.a())?;
    let jordan = JordanData {
        eigenvalues: reps
            .iter()
            .map(|r| (r.lambda.clone(), r.sizes.clone()))
            .collect(),
    };
    let mut blocks = Vec::new();
    let mut evidence = Vec::new();
    let mut visited = vec![false; reps.len()];
    for i in 0..reps.len() {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let lambda = reps[i].lambda.clone();
        if self_paired(case, &lambda) {
            let model = gaussian_model_blocks(pair, &lambda, &reps[i].chains)?;
            let outcome = lambda_outcome(
                pair,
                model,
                |c, _| diagonal_residue(c),
                |_| match case {
                    CaseTag::A => Involution::Identity,
                    _ => Involution::ComplexConjugation,
                },
                |n, g| {
                    if residue_field_kind(case, pair.domain().involution, eps, n, &lambda)
                        .collapses()
                    {
                        Ok(None)
                    } else {
                        hermitian_signature(g, Involution::ComplexConjugation, gaussian_sign)
                            .map(Some)
                    }
                },
                &lambda,
            )?;
            emit_self_paired(
                case,
                None,
                eps,
                &lambda,
                outcome,
                &mut blocks,
                &mut evidence,
            )?;
        } else {
            let partner = partner_rep(case, &lambda)?;
            let j = reps
                .iter()
                .position(|r| r.lambda == partner)
                .ok_or_else(|| {
                    Error::PairingViolation(format!("eigenvalue {lambda} has no partner {partner}"))
                })?;
            if visited[j] && j != i {
                return Err(Error::bug("partner visited twice"));
            }
            visited[j] = true;
            if reps[i].sizes != reps[j].sizes {
                return Err(Error::PairingViolation(format!(
                    "size multisets differ at {lambda} and {partner}"
                )));
            }
            for &n in &reps[i].sizes {
                blocks.push(CanonicalBlock::new(
                    case,
                    Some(pair.domain().involution),
                    BlockSubtype::PairedHyperbolic,
                    n,
                    lambda.clone(),
                    Sign::Plus,
                    eps,
                )?);
            }
        }
    }
    finish(pair.dim(), blocks, jordan, evidence)
}

fn decompose_rational(pair: &IsometricPair<Rational>) -> Result<Decomposition> {
    let case = pair.domain().case;
    let eps = pair.epsilon();
    let lifted = rational_to_gaussian(pair.a());
    let reps = analyze_gaussian(&lifted)?;
    let jordan = JordanData {
        eigenvalues: reps
            .iter()
            .map(|r| (r.lambda.clone(), r.sizes.clone()))
            .collect(),
    };
    let mut blocks = Vec::new();
    let mut evidence = Vec::new();
    let mut visited = vec![false; reps.len()];
    for i in 0..reps.len() {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let lambda = reps[i].lambda.clone();
        if lambda.im.is_negative() {
            // conjugate data travels with the Im > 0 representative
            let rep = lambda.conj();
            let j = reps.iter().position(|r| r.lambda == rep).ok_or_else(|| {
                Error::PairingViolation(format!("conjugate {rep} of {lambda} is missing"))
            })?;
            if reps[i].sizes != reps[j].sizes {
                return Err(Error::PairingViolation(format!(
                    "size multisets differ at {lambda} and its conjugate"
                )));
            }
            continue;
        }
        if self_paired(case, &lambda) {
            let outcome = if lambda.is_real() {
                let chains: Vec<Vec<Matrix<Rational>>> = reps[i]
                    .chains
                    .iter()
                    .map(|ch| ch.iter().map(gaussian_to_rational).collect())
                    .collect::<Result<_>>()?;
                let model = rational_model_blocks(pair, &lambda.re, &chains, eps)?;
                lambda_outcome(
                    pair,
                    model,
                    |c, _| diagonal_residue(c),
                    |_| Involution::Identity,
                    |_, g| {
                        hermitian_signature(g, Involution::Identity, sign_of_rational_part)
                            .map(Some)
                    },
                    &lambda,
                )?
            } else {
                let model = realified_model_blocks(&lambda, &reps[i].chains, eps)?;
                lambda_outcome(
                    pair,
                    model,
                    |c, _| realified_residue(c),
                    |_| Involution::ComplexConjugation,
                    |_, g| {
                        hermitian_signature(g, Involution::ComplexConjugation, gaussian_sign)
                            .map(Some)
                    },
                    &lambda,
                )?
            };
            emit_self_paired(
                case,
                None,
                eps,
                &lambda,
                outcome,
                &mut blocks,
                &mut evidence,
            )?;
        } else {
            let partner = partner_rep(case, &lambda)?;
            let j = reps
                .iter()
                .position(|r| r.lambda == partner)
                .ok_or_else(|| {
                    Error::PairingViolation(format!("eigenvalue {lambda} has no partner {partner}"))
                })?;
            visited[j] = true;
            if reps[i].sizes != reps[j].sizes {
                return Err(Error::PairingViolation(format!(
                    "size multisets differ at {lambda} and {partner}"
                )));
            }
            for &n in &reps[i].sizes {
                blocks.push(CanonicalBlock::new(
                    case,
                    None,
                    BlockSubtype::PairedHyperbolic,
                    n,
                    lambda.clone(),
                    Sign::Plus,
                    eps,
                )?);
            }
        }
    }
    finish(pair.dim(), blocks, jordan, evidence)
}

fn decompose_quaternion(pair: &IsometricPair<Quaternion>) -> Result<Decomposition> {
    let case = pair.domain().case;
    let inv = pair.domain().involution;
    let eps = pair.epsilon();
    let reps = analyze_quaternion(pair.a())?;
    let jordan = JordanData {
        eigenvalues: reps
            .iter()
            .map(|r| (r.lambda.clone(), r.sizes.clone()))
            .collect(),
    };
    let mut blocks = Vec::new();
    let mut evidence = Vec::new();
    let mut visited = vec![false; reps.len()];
    for i in 0..reps.len() {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let lambda = reps[i].lambda.clone();
        if self_paired(case, &lambda) {
            let model = quaternion_model_blocks(&lambda, &reps[i].chains, eps)?;
            let plus_minus_one = lambda.is_real() && lambda.re.clone().abs().is_one();
            let outcome = lambda_outcome(
                pair,
                model,
                |c, _| diagonal_residue(c),
                |n| residue_involution_quat(inv, eps, n, plus_minus_one),
                |n, g| {
                    let kind = residue_field_kind(case, inv, eps, n, &lambda);
                    if kind.collapses() {
                        Ok(None)
                    } else {
                        let rinv = residue_involution_quat(inv, eps, n, plus_minus_one);
                        hermitian_signature(g, rinv, quaternion_sign).map(Some)
                    }
                },
                &lambda,
            )?;
            emit_self_paired(
                case,
                Some(inv),
                eps,
                &lambda,
                outcome,
                &mut blocks,
                &mut evidence,
            )?;
        } else {
            let partner = partner_rep(case, &lambda)?;
            let j = reps
                .iter()
                .position(|r| r.lambda == partner)
                .ok_or_else(|| {
                    Error::PairingViolation(format!(
                        "eigenvalue class {lambda} has no partner class {partner}"
                    ))
                })?;
            visited[j] = true;
            if reps[i].sizes != reps[j].sizes {
                return Err(Error::PairingViolation(format!(
                    "size multisets differ at {lambda} and {partner}"
                )));
            }
            for &n in &reps[i].sizes {
                blocks.push(CanonicalBlock::new(
                    case,
                    Some(inv),
                    BlockSubtype::PairedHyperbolic,
                    n,
                    lambda.clone(),
                    Sign::Plus,
                    eps,
                )?);
            }
        }
    }
    finish(pair.dim(), blocks, jordan, evidence)
}

/// The involution acting on the quaternion residue field: the domain
/// involution when `ε = (−1)^{n+1}`, the other one when `ε = (−1)^n`;
/// at nonreal λ the residue lives in ℚ(i) where both act as complex
/// conjugation.
fn residue_involution_quat(
    inv: Involution,
    epsilon: Sign,
    n: usize,
    plus_minus_one: bool,
) -> Involution {
    if !plus_minus_one {
        return Involution::QuaternionConjugation;
    }
    let same = epsilon == Sign::pow_of_minus_one(n + 1);
    match (inv, same) {
        (Involution::QuaternionConjugation, true) => Involution::QuaternionConjugation,
        (Involution::QuaternionConjugation, false) => Involution::QuaternionSemiconjugation,
        (Involution::QuaternionSemiconjugation, true) => Involution::QuaternionSemiconjugation,
        (Involution::QuaternionSemiconjugation, false) => Involution::QuaternionConjugation,
        (other, _) => other,
    }
}

fn rational_model_blocks(
    pair: &IsometricPair<Rational>,
    lambda: &Rational,
    chains: &[Vec<Matrix<Rational>>],
    eps: Sign,
) -> Result<Vec<ModelBlock<Rational>>> {
    let mut converters: BTreeMap<usize, Matrix<Rational>> = BTreeMap::new();
    let mut blocks = Vec::new();
    for chain in chains {
        let n = chain.len();
        let conv = match converters.get(&n) {
            Some(c) => c.clone(),
            None => {
                let j = jordan_block::<Rational>(n, lambda)?;
                let psi = lambda_matrix::<Rational>(n)?.scale_left(lambda);
                let c = cyclic_converter(&j, &psi)?;
                converters.insert(n, c.clone());
                c
            }
        };
        blocks.push(ModelBlock {
            n,
            dim: n,
            basis: Matrix::hconcat(chain)?.mul(&conv)?,
            psi: lambda_matrix::<Rational>(n)?.scale_left(lambda),
            psi_eps: unimodular_form::<Rational>(pair.domain().case, eps, n)?,
            live: size_is_live(CaseTag::C, eps, n),
        });
    }
    blocks.sort_by_key(|b| std::cmp::Reverse(b.n));
    Ok(blocks)
}

fn realified_model_blocks(
    lambda: &GaussianRational,
    chains: &[Vec<Matrix<GaussianRational>>],
    eps: Sign,
) -> Result<Vec<ModelBlock<Rational>>> {
    let mut converters: BTreeMap<usize, Matrix<Rational>> = BTreeMap::new();
    let mut blocks = Vec::new();
    for chain in chains {
        let n = chain.len();
        let conv = match converters.get(&n) {
            Some(c) => c.clone(),
            None => {
                let j = jordan_block::<GaussianRational>(n, lambda)?;
                let psi = lambda_matrix::<GaussianRational>(n)?.scale_left(lambda);
                let c = realify(&cyclic_converter(&j, &psi)?);
                converters.insert(n, c.clone());
                c
            }
        };
        // complex chain -> real columns (u, -w) per vector
        let mut cols = Vec::with_capacity(2 * n);
        for v in chain {
            let (u, w) = split_real_imag(v);
            cols.push(u);
            cols.push(w.neg());
        }
        let real_chain = Matrix::hconcat(&cols)?;
        let psi = realify(&lambda_matrix::<GaussianRational>(n)?.scale_left(lambda));
        let psi_eps = realify(
            &crate::matrices::f_matrix::<GaussianRational>(n)?.scale_left(
                &GaussianRational::i_pow(crate::canonical_blocks::epsilon_exponent(n, eps)),
            ),
        );
        blocks.push(ModelBlock {
            n,
            dim: 2 * n,
            basis: real_chain.mul(&conv)?,
            psi,
            psi_eps,
            live: true,
        });
    }
    blocks.sort_by_key(|b| std::cmp::Reverse(b.n));
    Ok(blocks)
}

fn quaternion_model_blocks(
    lambda: &GaussianRational,
    chains: &[Vec<Matrix<Quaternion>>],
    eps: Sign,
) -> Result<Vec<ModelBlock<Quaternion>>> {
    let mut converters: BTreeMap<usize, Matrix<Quaternion>> = BTreeMap::new();
    let mut blocks = Vec::new();
    for chain in chains {
        let n = chain.len();
        let conv = match converters.get(&n) {
            Some(c) => c.clone(),
            None => {
                let j = jordan_block::<GaussianRational>(n, lambda)?;
                let psi = lambda_matrix::<GaussianRational>(n)?.scale_left(lambda);
                let c = cyclic_converter(&j, &psi)?.map(Quaternion::from_gaussian);
                converters.insert(n, c.clone());
                c
            }
        };
        let lam_q = Quaternion::from_gaussian(lambda);
        blocks.push(ModelBlock {
            n,
            dim: n,
            basis: Matrix::hconcat(chain)?.mul(&conv)?,
            psi: lambda_matrix::<Quaternion>(n)?.scale_left(&lam_q),
            psi_eps: unimodular_form::<Quaternion>(CaseTag::D, eps, n)?,
            live: true,
        });
    }
    blocks.sort_by_key(|b| std::cmp::Reverse(b.n));
    Ok(blocks)
}

fn emit_self_paired(
    case: CaseTag,
    involution: Option<Involution>,
    eps: Sign,
    lambda: &GaussianRational,
    outcome: LambdaOutcome,
    blocks: &mut Vec<CanonicalBlock>,
    evidence: &mut Vec<SignEvidence>,
) -> Result<()> {
    for (n, counts, ev) in outcome.live {
        evidence.push(ev);
        for _ in 0..counts.plus {
            blocks.push(CanonicalBlock::new(
                case,
                involution,
                BlockSubtype::Unimodular,
                n,
                lambda.clone(),
                Sign::Plus,
                eps,
            )?);
        }
        for _ in 0..counts.minus {
            blocks.push(CanonicalBlock::new(
                case,
                involution,
                BlockSubtype::Unimodular,
                n,
                lambda.clone(),
                Sign::Minus,
                eps,
            )?);
        }
    }
    for (n, mult) in outcome.folded {
        if mult % 2 == 1 {
            return Err(Error::PairingViolation(format!(
                "lambda = {lambda}, size {n}: no form matrix exists and the multiplicity \
                 {mult} is odd"
            )));
        }
        for _ in 0..mult / 2 {
            blocks.push(CanonicalBlock::new(
                case,
                involution,
                BlockSubtype::PairedHyperbolic,
                n,
                lambda.clone(),
                Sign::Plus,
                eps,
            )?);
        }
    }
    Ok(())
}

fn finish(
    dim: usize,
    mut blocks: Vec<CanonicalBlock>,
    jordan: JordanData,
    evidence: Vec<SignEvidence>,
) -> Result<Decomposition> {
    let total: usize = blocks.iter().map(|b| b.dim()).sum();
    if total != dim {
        return Err(Error::bug(format!(
            "block dimensions sum to {total}, expected {dim}"
        )));
    }
    sort_blocks(&mut blocks);
    Ok(Decomposition {
        blocks,
        jordan,
        sign_evidence: evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair_engine::{direct_sum_any, random_transform, TransformSeed};
    use crate::scalars::rat_i64;

    fn gr(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(rat_i64(re.0, re.1), rat_i64(im.0, im.1))
    }

    fn block(
        case: CaseTag,
        inv: Option<Involution>,
        subtype: BlockSubtype,
        n: usize,
        lambda: GaussianRational,
        sign: Sign,
        eps: Sign,
    ) -> CanonicalBlock {
        CanonicalBlock::new(case, inv, subtype, n, lambda, sign, eps).unwrap()
    }

    fn scrambled(pair: &AnyPair, seed: u64) -> AnyPair {
        pair.scramble(seed, 2).unwrap()
    }

    fn roundtrip(blocks: &[CanonicalBlock], seed: u64) {
        let built: Vec<AnyPair> = blocks.iter().map(|b| b.build().unwrap()).collect();
        let sum = direct_sum_any(&built).unwrap();
        let scr = scrambled(&sum, seed);
        let dec = canonical_decomposition(&scr).unwrap();
        assert!(
            dec.same_blocks(blocks),
            "expected {blocks:?}\ngot {:?}",
            dec.blocks
        );
    }

    #[test]
    fn eigenvalue_examples() {
        // (x−2)^3
        let chi = Polynomial::linear(gr((2, 1), (0, 1))).pow(3);
        let roots = gaussian_eigenvalues(&chi).unwrap();
        assert_eq!(roots, vec![(gr((2, 1), (0, 1)), 3)]);
        // x^2 − x + 1 unresolved
        let chi = Polynomial::from_descending(vec![
            gr((1, 1), (0, 1)),
            gr((-1, 1), (0, 1)),
            gr((1, 1), (0, 1)),
        ]);
        assert!(matches!(
            gaussian_eigenvalues(&chi),
            Err(Error::UnresolvedFactor(_))
        ));
    }

    #[test]
    fn jordan_of_lambda_matrix() {
        let l3 = lambda_matrix::<GaussianRational>(3).unwrap();
        let js = jordan_structure_gaussian(&l3).unwrap();
        assert_eq!(
            js.data.eigenvalues,
            vec![(GaussianRational::one(), vec![3])]
        );
        let t_inv = js.basis.inverse().unwrap();
        assert_eq!(
            t_inv.mul(&l3).unwrap().mul(&js.basis).unwrap(),
            js.jordan_form
        );
    }

    #[test]
    fn jordan_recovers_scrambled_pair_sizes() {
        // J_2(i) ⊕ J_2(−i), scrambled
        let j2i = jordan_block::<GaussianRational>(2, &GaussianRational::i()).unwrap();
        let j2mi = jordan_block::<GaussianRational>(2, &-GaussianRational::i()).unwrap();
        let a = j2i.direct_sum(&j2mi);
        let s: Matrix<GaussianRational> = random_transform(TransformSeed {
            seed: 5,
            entry_bound: 2,
            size: 4,
        });
        let scr = s.inverse().unwrap().mul(&a).unwrap().mul(&s).unwrap();
        let js = jordan_structure_gaussian(&scr).unwrap();
        let mut eigs = js.data.eigenvalues.clone();
        eigs.sort();
        assert_eq!(
            eigs,
            vec![
                (-GaussianRational::i(), vec![2]),
                (GaussianRational::i(), vec![2])
            ]
        );
    }

    #[test]
    fn jordan_structure_rational_realifies_complex_pairs() {
        // A = realify(J_2(i)) scrambled by a rational transform
        let a = crate::matrices::realify(
            &jordan_block::<GaussianRational>(2, &GaussianRational::i()).unwrap(),
        );
        let s: Matrix<Rational> = random_transform(TransformSeed {
            seed: 17,
            entry_bound: 2,
            size: 4,
        });
        let scr = s.inverse().unwrap().mul(&a).unwrap().mul(&s).unwrap();
        let js = jordan_structure_rational(&scr).unwrap();
        // eigenvalues ±i, sizes {2} each; basis conjugates A into the
        // realified Jordan form
        assert_eq!(js.data.sizes_at(&GaussianRational::i()), Some(&[2][..]));
        assert_eq!(js.data.sizes_at(&-GaussianRational::i()), Some(&[2][..]));
        assert_eq!(
            scr.mul(&js.basis).unwrap(),
            js.basis.mul(&js.jordan_form).unwrap()
        );
        assert_eq!(js.jordan_form, a);
    }

    #[test]
    fn jordan_structure_quaternion_classes() {
        // J_2(i) over the quaternions, scrambled by a quaternion transform
        let lam = Quaternion::from_gaussian(&GaussianRational::i());
        let a = jordan_block::<Quaternion>(2, &lam).unwrap();
        let s: Matrix<Quaternion> = random_transform(TransformSeed {
            seed: 23,
            entry_bound: 1,
            size: 2,
        });
        let scr = s.inverse().unwrap().mul(&a).unwrap().mul(&s).unwrap();
        let js = jordan_structure_quaternion(&scr).unwrap();
        // one class at Im >= 0 with a single size-2 chain
        assert_eq!(js.data.eigenvalues.len(), 1);
        assert_eq!(js.data.eigenvalues[0].0, GaussianRational::i());
        assert_eq!(js.data.eigenvalues[0].1, vec![2]);
        assert_eq!(
            scr.mul(&js.basis).unwrap(),
            js.basis.mul(&js.jordan_form).unwrap()
        );
    }

    #[test]
    fn multiplicity_parity_examples() {
        // case A, eps = +1: J_2(1) twice passes, once fails
        let ok = JordanData {
            eigenvalues: vec![(GaussianRational::one(), vec![2, 2])],
        };
        assert!(multiplicity_parity_check(&ok, CaseTag::A, Sign::Plus).is_empty());
        let bad = JordanData {
            eigenvalues: vec![(GaussianRational::one(), vec![2])],
        };
        assert_eq!(
            multiplicity_parity_check(&bad, CaseTag::A, Sign::Plus).len(),
            1
        );
        // case B never triggers
        let b = JordanData {
            eigenvalues: vec![(gr((3, 5), (4, 5)), vec![2])],
        };
        assert!(multiplicity_parity_check(&b, CaseTag::B, Sign::Plus).is_empty());
    }

    #[test]
    fn simple_case_b_signs() {
        // (I_1, [1]) ⊕ (I_1, [−1]): signature (1, 1) at λ = 1
        let plus = block(
            CaseTag::B,
            None,
            BlockSubtype::Unimodular,
            1,
            GaussianRational::one(),
            Sign::Plus,
            Sign::Plus,
        );
        let minus = block(
            CaseTag::B,
            None,
            BlockSubtype::Unimodular,
            1,
            GaussianRational::one(),
            Sign::Minus,
            Sign::Plus,
        );
        let sum = direct_sum_any(&[plus.build().unwrap(), minus.build().unwrap()]).unwrap();
        let sc = sign_characteristic(&sum, &GaussianRational::one()).unwrap();
        assert_eq!(sc, vec![(1, SignCounts { plus: 1, minus: 1 })]);
    }

    #[test]
    fn case_a_signs_collapse() {
        // (Λ₂, F₂) ⊕ (Λ₂, −F₂) over case A, eps = −1: both count as plus
        let b1 = block(
            CaseTag::A,
            None,
            BlockSubtype::Unimodular,
            2,
            GaussianRational::one(),
            Sign::Plus,
            Sign::Minus,
        );
        let AnyPair::Gaussian(p1) = b1.build().unwrap() else {
            panic!()
        };
        let p2 = IsometricPair::validate(p1.domain(), Sign::Minus, p1.a().clone(), p1.b().neg())
            .unwrap();
        let sum = direct_sum_any(&[AnyPair::Gaussian(p1), AnyPair::Gaussian(p2)]).unwrap();
        let scr = scrambled(&sum, 11);
        let dec = canonical_decomposition(&scr).unwrap();
        assert!(dec.same_blocks(&[b1.clone(), b1.clone()]));
        let sc = sign_characteristic(&scr, &GaussianRational::one()).unwrap();
        assert_eq!(sc, vec![(2, SignCounts { plus: 2, minus: 0 })]);
    }

    #[test]
    fn roundtrip_simple_cases() {
        // case B hyperbolic λ = 2
        roundtrip(
            &[block(
                CaseTag::B,
                None,
                BlockSubtype::PairedHyperbolic,
                1,
                gr((2, 1), (0, 1)),
                Sign::Plus,
                Sign::Plus,
            )],
            101,
        );
        // case A eps = −1: (Λ₂, F₂) ⊕ hyperbolic λ = 3
        roundtrip(
            &[
                block(
                    CaseTag::A,
                    None,
                    BlockSubtype::Unimodular,
                    2,
                    GaussianRational::one(),
                    Sign::Plus,
                    Sign::Minus,
                ),
                block(
                    CaseTag::A,
                    None,
                    BlockSubtype::PairedHyperbolic,
                    1,
                    gr((3, 1), (0, 1)),
                    Sign::Plus,
                    Sign::Minus,
                ),
            ],
            102,
        );
        // case B unimodular with a sign and a nonreal λ
        roundtrip(
            &[
                block(
                    CaseTag::B,
                    None,
                    BlockSubtype::Unimodular,
                    1,
                    gr((3, 5), (4, 5)),
                    Sign::Minus,
                    Sign::Plus,
                ),
                block(
                    CaseTag::B,
                    None,
                    BlockSubtype::Unimodular,
                    2,
                    GaussianRational::one(),
                    Sign::Plus,
                    Sign::Plus,
                ),
            ],
            103,
        );
    }

    #[test]
    fn roundtrip_case_c() {
        // rational unimodular pair with signs
        roundtrip(
            &[
                block(
                    CaseTag::C,
                    None,
                    BlockSubtype::Unimodular,
                    1,
                    GaussianRational::one(),
                    Sign::Plus,
                    Sign::Plus,
                ),
                block(
                    CaseTag::C,
                    None,
                    BlockSubtype::Unimodular,
                    1,
                    GaussianRational::one(),
                    Sign::Minus,
                    Sign::Plus,
                ),
                block(
                    CaseTag::C,
                    None,
                    BlockSubtype::PairedHyperbolic,
                    1,
                    gr((2, 1), (0, 1)),
                    Sign::Plus,
                    Sign::Plus,
                ),
            ],
            104,
        );
        // realified unimodular λ = i and realified hyperbolic λ = 1+i
        roundtrip(
            &[
                block(
                    CaseTag::C,
                    None,
                    BlockSubtype::Unimodular,
                    1,
                    GaussianRational::i(),
                    Sign::Plus,
                    Sign::Plus,
                ),
                block(
                    CaseTag::C,
                    None,
                    BlockSubtype::PairedHyperbolic,
                    1,
                    gr((1, 1), (1, 1)),
                    Sign::Plus,
                    Sign::Plus,
                ),
            ],
            105,
        );
    }

    #[test]
    fn roundtrip_case_d() {
        for inv in [
            Involution::QuaternionConjugation,
            Involution::QuaternionSemiconjugation,
        ] {
            roundtrip(
                &[
                    block(
                        CaseTag::D,
                        Some(inv),
                        BlockSubtype::Unimodular,
                        1,
                        gr((3, 5), (4, 5)),
                        Sign::Plus,
                        Sign::Plus,
                    ),
                    block(
                        CaseTag::D,
                        Some(inv),
                        BlockSubtype::PairedHyperbolic,
                        1,
                        gr((2, 1), (0, 1)),
                        Sign::Plus,
                        Sign::Plus,
                    ),
                ],
                106,
            );
        }
    }

    #[test]
    fn case_a_wrong_parity_folds_hyperbolically() {
        // case A, eps = +1, two J_2(1) blocks must reappear as one
        // hyperbolic pair at λ = 1
        let hyp = block(
            CaseTag::A,
            None,
            BlockSubtype::PairedHyperbolic,
            2,
            GaussianRational::one(),
            Sign::Plus,
            Sign::Plus,
        );
        roundtrip(&[hyp], 107);
    }
}
