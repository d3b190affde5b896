//! The q-building blocks: `h_α = 1 + t^2 + … + t^{2α}`, `P_α = h_0 ⋯ h_{α-1}`,
//! and Grassmannian Poincaré polynomials `P_l / (P_k P_{l-k})`.
//!
//! Negative subscripts follow the zero convention: `h_α = 0` and `P_α = 0`
//! for every `α < 0`.
//!
//! Besides the closed polynomials this module provides [`HProduct`], a formal
//! product of `h` factors. Multiplying or dividing by a single `h_α` costs a
//! linear pass over the coefficients (`h_α = (1 - t^{2α+2}) / (1 - t^2)`), so
//! quotients of long `P` products never need a general long division.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::polyring::{PolyError, Polynomial};

/// Subscript of `h_α` or `P_α`. Negative values are legal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QIndex(pub i64);

impl From<i64> for QIndex {
    fn from(v: i64) -> Self {
        QIndex(v)
    }
}

/// `h_α = Σ_{i=0}^{α} t^{2i}`; zero for `α < 0`.
pub fn h(alpha: impl Into<QIndex>) -> Polynomial {
    let QIndex(alpha) = alpha.into();
    if alpha < 0 {
        return Polynomial::zero();
    }
    let alpha = alpha as usize;
    let coeffs = (0..=2 * alpha)
        .map(|d| if d % 2 == 0 { BigInt::from(1) } else { BigInt::zero() })
        .collect();
    Polynomial::from_coeffs(coeffs)
}

type Memo<K> = RwLock<HashMap<K, Arc<Polynomial>>>;

fn memoized<K: std::hash::Hash + Eq + Copy>(
    cache: &'static OnceLock<Memo<K>>,
    key: K,
    compute: impl FnOnce() -> Polynomial,
) -> Arc<Polynomial> {
    let cache = cache.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("memo lock poisoned").get(&key) {
        return Arc::clone(p);
    }
    let value = Arc::new(compute());
    let mut guard = cache.write().expect("memo lock poisoned");
    Arc::clone(guard.entry(key).or_insert(value))
}

static BIG_P: OnceLock<Memo<i64>> = OnceLock::new();
static GAUSS: OnceLock<Memo<(i64, i64)>> = OnceLock::new();

/// `P_α = h_0 ⋯ h_{α-1}` with `P_0 = 1` and `P_α = 0` for `α < 0`.
pub fn big_p(alpha: impl Into<QIndex>) -> Polynomial {
    big_p_shared(alpha.into().0).as_ref().clone()
}

pub(crate) fn big_p_shared(alpha: i64) -> Arc<Polynomial> {
    memoized(&BIG_P, alpha, || {
        if alpha < 0 {
            return Polynomial::zero();
        }
        HProduct::big_p(alpha).expand()
    })
}

/// Poincaré polynomial of the Grassmannian `G_k(C^l)`, the Gaussian binomial
/// `P_l / (P_k P_{l-k})` in `t^2`. Empty Grassmannians (`k < 0` or `k > l`)
/// give the zero polynomial.
pub fn gauss(k: i64, l: i64) -> Polynomial {
    gauss_shared(k, l).as_ref().clone()
}

pub(crate) fn gauss_shared(k: i64, l: i64) -> Arc<Polynomial> {
    if k < 0 || k > l {
        return Arc::new(Polynomial::zero());
    }
    let k = k.min(l - k);
    memoized(&GAUSS, (k, l), || {
        let (numer, denom) = HProduct::gauss(k, l);
        denom
            .divide(numer.expand())
            .expect("Gaussian binomial quotient is always exact")
    })
}

/// Checks `t^{2α} h_β = h_{α+β} - h_{α-1}`.
pub fn check_shift_identity(alpha: u32, beta: u32) -> bool {
    let (alpha, beta) = (i64::from(alpha), i64::from(beta));
    let lhs = h(beta).shift(2 * alpha as usize);
    let rhs = &h(alpha + beta) - &h(alpha - 1);
    lhs == rhs
}

/// Multiplies `p` by `h_α` in place.
pub fn mul_by_h(p: &mut Polynomial, alpha: i64) {
    if alpha < 0 {
        *p = Polynomial::zero();
        return;
    }
    if alpha == 0 || p.is_zero() {
        return;
    }
    let m = 2 * alpha as usize + 2;
    let c = p.coeffs_mut();
    let n = c.len();
    c.resize(n + m, BigInt::zero());
    // times (1 - t^m), top down
    for d in (m..n + m).rev() {
        let (lo, hi) = c.split_at_mut(d);
        hi[0] -= &lo[d - m];
    }
    // divided by (1 - t^2), bottom up
    for d in 2..n + m {
        let (lo, hi) = c.split_at_mut(d);
        hi[0] += &lo[d - 2];
    }
    p.normalize();
}

/// Divides `p` by `h_α` in place, failing on a nonzero remainder or `α < 0`.
pub fn div_by_h(p: &mut Polynomial, alpha: i64) -> Result<(), PolyError> {
    if alpha < 0 {
        return Err(PolyError::DivisionByZero);
    }
    if alpha == 0 || p.is_zero() {
        return Ok(());
    }
    let m = 2 * alpha as usize + 2;
    let c = p.coeffs_mut();
    let n = c.len();
    c.resize(n + 2, BigInt::zero());
    // times (1 - t^2), top down
    for d in (2..n + 2).rev() {
        let (lo, hi) = c.split_at_mut(d);
        hi[0] -= &lo[d - 2];
    }
    // divided by (1 - t^m), bottom up
    for d in m..n + 2 {
        let (lo, hi) = c.split_at_mut(d);
        hi[0] += &lo[d - m];
    }
    let len = n + 2;
    if len < m || c[len - m..].iter().any(|x| !x.is_zero()) {
        return Err(PolyError::InexactDivision);
    }
    c.truncate(len - m);
    p.normalize();
    Ok(())
}

/// A formal product `∏ h_α^{e_α}`. Any negative subscript makes the product
/// the zero polynomial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HProduct {
    factors: BTreeMap<i64, u32>,
}

impl HProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// `P_α` as the product `h_0 ⋯ h_{α-1}`; a negative `α` yields the
    /// single factor `h_{-1}` (i.e. zero).
    pub fn big_p(alpha: i64) -> Self {
        let mut prod = Self::one();
        if alpha < 0 {
            prod.push(-1);
        } else {
            for a in 1..alpha {
                prod.push(a);
            }
        }
        prod
    }

    /// Reduced numerator and denominator of `P_l / (P_k P_{l-k})` for
    /// `0 <= k <= l`.
    pub fn gauss(k: i64, l: i64) -> (Self, Self) {
        debug_assert!(0 <= k && k <= l);
        let k = k.min(l - k);
        let mut numer = Self::one();
        let mut denom = Self::one();
        for a in 0..k {
            numer.push(l - k + a);
            denom.push(a);
        }
        numer.cancel(&mut denom);
        (numer, denom)
    }

    pub fn push(&mut self, alpha: i64) {
        self.push_n(alpha, 1);
    }

    pub fn push_n(&mut self, alpha: i64, times: u32) {
        // h_0 = 1
        if alpha != 0 && times > 0 {
            *self.factors.entry(alpha).or_default() += times;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.factors.keys().next().is_some_and(|&a| a < 0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.factors.iter().map(|(&a, &e)| (a, e))
    }

    /// Degree in `t` of the expanded product (`None` when zero).
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        Some(self.factors().map(|(a, e)| 2 * a as usize * e as usize).sum())
    }

    pub fn mul(&mut self, other: &HProduct) {
        for (a, e) in other.factors() {
            self.push_n(a, e);
        }
    }

    /// Removes the factors common to `self` and `other` from both.
    pub fn cancel(&mut self, other: &mut HProduct) {
        let keys: Vec<i64> = self.factors.keys().copied().collect();
        for a in keys {
            let Some(&theirs) = other.factors.get(&a) else {
                continue;
            };
            let ours = self.factors[&a];
            let common = ours.min(theirs);
            decrement(&mut self.factors, a, common);
            decrement(&mut other.factors, a, common);
        }
    }

    /// Least common multiple in the formal sense: the maximum multiplicity of
    /// each factor.
    pub fn lcm(&self, other: &HProduct) -> HProduct {
        let mut out = self.clone();
        for (a, e) in other.factors() {
            let slot = out.factors.entry(a).or_default();
            *slot = (*slot).max(e);
        }
        out
    }

    /// `self / other` as a formal product, provided `other` divides `self`
    /// factor by factor.
    pub fn quotient(&self, other: &HProduct) -> Option<HProduct> {
        let mut out = self.clone();
        for (a, e) in other.factors() {
            let have = out.factors.get(&a).copied().unwrap_or(0);
            if have < e {
                return None;
            }
            decrement(&mut out.factors, a, e);
        }
        Some(out)
    }

    /// Multiplies `p` by this product.
    pub fn apply(&self, mut p: Polynomial) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        for (a, e) in self.factors() {
            for _ in 0..e {
                mul_by_h(&mut p, a);
            }
        }
        p
    }

    /// Divides `p` by this product, failing if any step leaves a remainder.
    pub fn divide(&self, mut p: Polynomial) -> Result<Polynomial, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        for (a, e) in self.factors() {
            for _ in 0..e {
                div_by_h(&mut p, a)?;
            }
        }
        Ok(p)
    }

    pub fn expand(&self) -> Polynomial {
        self.apply(Polynomial::one())
    }
}

fn decrement(map: &mut BTreeMap<i64, u32>, key: i64, by: u32) {
    if by == 0 {
        return;
    }
    let slot = map.get_mut(&key).expect("factor present");
    *slot -= by;
    if *slot == 0 {
        map.remove(&key);
    }
}
