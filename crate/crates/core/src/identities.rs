//! Both sides of the local and global identities, and of the specializations
//! `F(i, j, c)` (`k - i = 2`) and `FF(i, j, r)` (`k - c = 2`), as exact sums of
//! quotients.
//!
//! Every side is a signed sum of terms `± t^e · ∏ numer / ∏ denom` whose
//! factors are `h_α`, `P_α` or Gaussian binomials. A side is brought over the
//! formal least common multiple of its term denominators (as an [`HProduct`]),
//! and two sides are compared by cross-multiplying numerators with the other
//! side's denominator. Zero factors (negative subscripts) annihilate their term
//! before any division happens; a vanishing denominator is rejected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::qfactor::HProduct;
use crate::strata::{ParamClass, SchubertParams, StratumPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IdentityKind {
    Local,
    Global,
    AppendixKi2,
    AppendixKc2,
}

impl IdentityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityKind::Local => "LOCAL",
            IdentityKind::Global => "GLOBAL",
            IdentityKind::AppendixKi2 => "APPENDIX_KI2",
            IdentityKind::AppendixKc2 => "APPENDIX_KC2",
        }
    }
}

/// The parameters a verdict was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VerdictParams {
    Schubert(SchubertParams),
    /// `F(i, j, c)`, the `k - i = 2` specialization.
    Ki2 { i: i64, j: i64, c: i64 },
    /// `FF(i, j, r)`, the `k - c = 2` specialization.
    Kc2 { i: i64, j: i64, r: i64 },
}

impl VerdictParams {
    /// The Schubert tuple the verdict speaks about; appendix triples map to
    /// `k = i + 2, l = j + c` and `k = r + i, l = j + r + i - 2` respectively.
    pub fn schubert(&self) -> SchubertParams {
        match *self {
            VerdictParams::Schubert(s) => s,
            VerdictParams::Ki2 { i, j, c } => ki2_params(i, j, c),
            VerdictParams::Kc2 { i, j, r } => kc2_params(i, j, r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityVerdict {
    pub kind: IdentityKind,
    pub params: VerdictParams,
    pub pair: Option<StratumPair>,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub holds: bool,
}

/// Global tuple whose identity the `F(i, j, c)` specialization rewrites.
pub fn ki2_params(i: i64, j: i64, c: i64) -> SchubertParams {
    SchubertParams::new(i, j, i + 2, j + c)
}

/// Global tuple whose identity the `FF(i, j, r)` specialization rewrites.
pub fn kc2_params(i: i64, j: i64, r: i64) -> SchubertParams {
    SchubertParams::new(i, j, r + i, j + r + i - 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Factor {
    H(i64),
    P(i64),
    /// `P_n / (P_a P_{n-a})`, zero outside `0 ≤ a ≤ n`.
    Gauss(i64, i64),
}

#[derive(Debug, Clone)]
struct Term {
    negative: bool,
    t_exp: i64,
    numer: Vec<Factor>,
    denom: Vec<Factor>,
}

impl Term {
    fn new(numer: Vec<Factor>, denom: Vec<Factor>) -> Self {
        Self { negative: false, t_exp: 0, numer, denom }
    }

    fn shifted(mut self, t_exp: i64) -> Self {
        self.t_exp = t_exp;
        self
    }

    fn negated(mut self) -> Self {
        self.negative = !self.negative;
        self
    }
}

/// Returns the factor as `numer / denom` products.
fn factor_parts(f: Factor) -> (HProduct, HProduct) {
    match f {
        Factor::H(a) => {
            let mut numer = HProduct::one();
            numer.push(if a < 0 { -1 } else { a });
            (numer, HProduct::one())
        }
        Factor::P(a) => (HProduct::big_p(a), HProduct::one()),
        Factor::Gauss(a, n) if 0 <= a && a <= n => HProduct::gauss(a, n),
        Factor::Gauss(..) => (HProduct::big_p(-1), HProduct::one()),
    }
}

/// A term reduced to `± t^e · numer / denom`, or zero.
struct ReducedTerm {
    negative: bool,
    t_exp: usize,
    numer: HProduct,
    denom: HProduct,
}

fn reduce(term: &Term) -> Result<Option<ReducedTerm>> {
    let mut numer = HProduct::one();
    let mut denom = HProduct::one();
    for &f in &term.numer {
        let (n, d) = factor_parts(f);
        numer.mul(&n);
        denom.mul(&d);
    }
    for &f in &term.denom {
        let (n, d) = factor_parts(f);
        if n.is_zero() {
            return Err(Error::InvalidParams(format!("denominator factor {f:?} vanishes")));
        }
        numer.mul(&d);
        denom.mul(&n);
    }
    if numer.is_zero() {
        return Ok(None);
    }
    let t_exp = usize::try_from(term.t_exp)
        .map_err(|_| Error::InvalidParams(format!("negative power t^{}", term.t_exp)))?;
    numer.cancel(&mut denom);
    Ok(Some(ReducedTerm { negative: term.negative, t_exp, numer, denom }))
}

/// A side of an identity over its own common denominator.
#[derive(Debug, Clone)]
struct Fraction {
    numer: Polynomial,
    denom: HProduct,
}

fn combine(terms: &[Term]) -> Result<Fraction> {
    let mut reduced = Vec::with_capacity(terms.len());
    for t in terms {
        if let Some(r) = reduce(t)? {
            reduced.push(r);
        }
    }
    let mut denom = reduced
        .iter()
        .fold(HProduct::one(), |acc, r| acc.lcm(&r.denom));
    let mut scaled: Vec<(bool, usize, HProduct)> = reduced
        .into_iter()
        .map(|r| {
            let mut n = r.numer;
            n.mul(&denom.quotient(&r.denom).expect("lcm is a multiple"));
            (r.negative, r.t_exp, n)
        })
        .collect();
    // Drop factors shared by the denominator and every scaled numerator.
    if let Some((_, _, first)) = scaled.first() {
        let mut common = first.clone();
        for (_, _, n) in &scaled[1..] {
            common = intersect(&common, n);
        }
        common = intersect(&common, &denom);
        if !common.is_one() {
            for (_, _, n) in &mut scaled {
                *n = n.quotient(&common).expect("common factor");
            }
            denom = denom.quotient(&common).expect("common factor");
        }
    }
    let mut numer = Polynomial::zero();
    for (negative, t_exp, n) in scaled {
        let term = n.expand().shift(t_exp);
        if negative {
            numer -= &term;
        } else {
            numer += &term;
        }
    }
    Ok(Fraction { numer, denom })
}

fn intersect(a: &HProduct, b: &HProduct) -> HProduct {
    let mut out = HProduct::one();
    for (alpha, e) in a.factors() {
        let theirs = b.factors().find(|&(x, _)| x == alpha).map_or(0, |(_, e)| e);
        out.push_n(alpha, e.min(theirs));
    }
    out
}

impl Fraction {
    fn to_polynomial(&self) -> Result<Polynomial> {
        Ok(self.denom.divide(self.numer.clone())?)
    }
}

/// `lhs.numer · rhs.denom` and `rhs.numer · lhs.denom`, after dropping the
/// denominator factors the two sides share.
fn cross_multiply(lhs: &Fraction, rhs: &Fraction) -> (Polynomial, Polynomial) {
    let mut ld = lhs.denom.clone();
    let mut rd = rhs.denom.clone();
    ld.cancel(&mut rd);
    (rd.apply(lhs.numer.clone()), ld.apply(rhs.numer.clone()))
}

fn require_symbolic(params: &SchubertParams) -> Result<ParamClass> {
    let class = params.classify();
    if class == ParamClass::Invalid {
        return Err(Error::InvalidParams(format!("{params} is outside the symbolic range")));
    }
    Ok(class)
}

fn require_local(params: &SchubertParams, pair: StratumPair) -> Result<()> {
    require_symbolic(params)?;
    params.pair(pair.p(), pair.q()).map(|_| ())
}

fn local_lhs_terms(s: &SchubertParams, pair: StratumPair) -> Vec<Term> {
    let (p, q, k) = (pair.p(), pair.q(), s.k);
    vec![Term::new(vec![Factor::Gauss(k - p + 1, k - q + 1)], vec![])]
}

fn local_rhs_terms(s: &SchubertParams, pair: StratumPair) -> Vec<Term> {
    let (p, q, k, c) = (pair.p(), pair.q(), s.k, s.c());
    let d = |a: i64, b: i64| (a - b) * (c + 1 - b);
    let mut terms: Vec<Term> = (q + 1..p)
        .map(|u| {
            Term::new(vec![Factor::Gauss(p - u, k - c), Factor::Gauss(u - q, c - q + 1)], vec![])
                .shifted(2 * d(p, u))
        })
        .collect();
    terms.push(Term::new(vec![Factor::Gauss(p - q, k - c)], vec![]).shifted(2 * d(p, q)));
    terms.push(Term::new(vec![Factor::Gauss(p - q, c - q + 1)], vec![]));
    terms
}

fn global_lhs_terms(s: &SchubertParams) -> Vec<Term> {
    let (i, j, k, l) = (s.i, s.j, s.k, s.l);
    use Factor::P;
    vec![Term::new(vec![P(j), P(l - i)], vec![P(i), P(j - i), P(k - i), P(l - k)])]
}

fn global_rhs_terms(s: &SchubertParams) -> Vec<Term> {
    let (i, j, k, l) = (s.i, s.j, s.k, s.l);
    let (r, c) = (s.r(), s.c());
    use Factor::P;
    let mut terms = vec![Term::new(
        vec![P(l - j), P(k + j - i)],
        vec![P(k - i), P(l + i - j - k), P(k), P(j - i)],
    )];
    for sidx in 1..=(k - i).min(k - c) {
        terms.push(
            Term::new(
                vec![P(k - c), P(l - j), P(k + j - i - sidx)],
                vec![
                    P(sidx),
                    P(k - c - sidx),
                    P(k - i - sidx),
                    P(l + i - j - k + sidx),
                    P(k),
                    P(j - i - sidx),
                ],
            )
            .shifted(2 * sidx * (c - r + sidx)),
        );
    }
    terms
}

fn ki2_terms(i: i64, j: i64, c: i64) -> Vec<Term> {
    use Factor::H;
    vec![
        Term::new(
            vec![H(j + c - i - 2), H(j + c - i - 1), H(i), H(i + 1)],
            vec![H(j), H(j + 1), H(c - 2), H(c - 1)],
        ),
        Term::new(vec![H(1), H(i - c + 1), H(j - i - 1)], vec![H(j + 1), H(c - 2)])
            .shifted(2 * (c - 1))
            .negated(),
        Term::new(
            vec![H(i - c), H(i - c + 1), H(j - i - 2), H(j - i - 1)],
            vec![H(c - 2), H(c - 1), H(j), H(j + 1)],
        )
        .shifted(4 * c)
        .negated(),
    ]
}

fn kc2_terms(i: i64, j: i64, r: i64) -> Vec<Term> {
    use Factor::H;
    vec![
        Term::new(
            vec![H(j - 1), H(j - 2), H(r + i - 1), H(r + i - 2)],
            vec![H(i - 1), H(i - 2), H(r + j - 1), H(r + j - 2)],
        ),
        Term::new(
            vec![H(r - 1), H(1), H(j - i - 1), H(i - 1), H(r + j - 2)],
            vec![H(r + j - 1), H(i - 2), H(i - 1), H(r + j - 2)],
        )
        .shifted(2 * (i - 1))
        .negated(),
        Term::new(
            vec![H(r - 2), H(r - 1), H(j - i - 2), H(j - i - 1)],
            vec![H(r + j - 2), H(r + j - 1), H(i - 2), H(i - 1)],
        )
        .shifted(4 * i)
        .negated(),
    ]
}

fn one_term() -> Vec<Term> {
    vec![Term::new(vec![], vec![])]
}

/// Compares two sides known to be polynomials: `holds` comes
/// from cross-multiplication and the reported sides are the exact quotients.
fn polynomial_verdict(
    kind: IdentityKind,
    params: VerdictParams,
    pair: Option<StratumPair>,
    lhs: &[Term],
    rhs: &[Term],
) -> Result<IdentityVerdict> {
    let (lf, rf) = (combine(lhs)?, combine(rhs)?);
    let (lx, rx) = cross_multiply(&lf, &rf);
    let holds = lx == rx;
    let (lhs, rhs) = (lf.to_polynomial()?, rf.to_polynomial()?);
    if holds != (lhs == rhs) {
        return Err(Error::InternalInconsistency(format!(
            "cross-multiplied and reduced comparisons disagree for {kind:?} {params:?}"
        )));
    }
    Ok(IdentityVerdict { kind, params, pair, lhs, rhs, holds })
}

/// Checks a rational expression against 1: the reported sides are its
/// numerator and its common denominator.
fn unit_verdict(kind: IdentityKind, params: VerdictParams, terms: &[Term]) -> Result<IdentityVerdict> {
    let (lhs, rhs) = cross_multiply(&combine(terms)?, &combine(&one_term())?);
    let holds = lhs == rhs;
    Ok(IdentityVerdict { kind, params, pair: None, lhs, rhs, holds })
}

/// `P_{k-q+1} / (P_{k-p+1} P_{p-q})`, the Poincaré polynomial of `F_pq`.
pub fn local_lhs(params: &SchubertParams, pair: StratumPair) -> Result<Polynomial> {
    require_local(params, pair)?;
    combine(&local_lhs_terms(params, pair))?.to_polynomial()
}

/// `Σ_{u=q+1}^{p-1} f_pu · H(G_uq) · t^{2d_pu} + f_pq · t^{2d_pq} + H(G_pq)`.
pub fn local_rhs(params: &SchubertParams, pair: StratumPair) -> Result<Polynomial> {
    require_local(params, pair)?;
    combine(&local_rhs_terms(params, pair))?.to_polynomial()
}

pub fn global_lhs(params: &SchubertParams) -> Result<Polynomial> {
    require_symbolic(params)?;
    combine(&global_lhs_terms(params))?.to_polynomial()
}

pub fn global_rhs(params: &SchubertParams) -> Result<Polynomial> {
    require_symbolic(params)?;
    combine(&global_rhs_terms(params))?.to_polynomial()
}

pub fn check_local(params: &SchubertParams, pair: StratumPair) -> Result<IdentityVerdict> {
    require_local(params, pair)?;
    polynomial_verdict(
        IdentityKind::Local,
        VerdictParams::Schubert(*params),
        Some(pair),
        &local_lhs_terms(params, pair),
        &local_rhs_terms(params, pair),
    )
}

pub fn check_global(params: &SchubertParams) -> Result<IdentityVerdict> {
    require_symbolic(params)?;
    polynomial_verdict(
        IdentityKind::Global,
        VerdictParams::Schubert(*params),
        None,
        &global_lhs_terms(params),
        &global_rhs_terms(params),
    )
}

/// Checks `F(i, j, c) = 1` (the global identity with `k - i = 2`).
pub fn appendix_f(i: i64, j: i64, c: i64) -> Result<IdentityVerdict> {
    if c < 2 || i < 1 || j < 1 {
        return Err(Error::InvalidParams(format!(
            "F(i,j,c) needs c >= 2 and positive i, j; got ({i},{j},{c})"
        )));
    }
    unit_verdict(IdentityKind::AppendixKi2, VerdictParams::Ki2 { i, j, c }, &ki2_terms(i, j, c))
}

/// Checks `FF(i, j, r) = 1` (the global identity with `k - c = 2`).
pub fn appendix_ff(i: i64, j: i64, r: i64) -> Result<IdentityVerdict> {
    if !(j >= i && i >= 2 && r >= 0) {
        return Err(Error::InvalidParams(format!(
            "FF(i,j,r) needs j >= i >= 2 and r >= 0; got ({i},{j},{r})"
        )));
    }
    unit_verdict(IdentityKind::AppendixKc2, VerdictParams::Kc2 { i, j, r }, &kc2_terms(i, j, r))
}
