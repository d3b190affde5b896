//! Parameters of a special Schubert variety and the numeric and polynomial
//! data attached to its strata `Δ_1 ⊂ … ⊂ Δ_{r+1}`.
//!
//! For `S = {V ∈ G_k(C^l) : dim(V ∩ F) ≥ i}` with `dim F = j`, the stratum
//! `Δ_p` is cut out by `dim(V ∩ F) ≥ i_p = k - p + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::qfactor::gauss;

/// The tuple `(i, j, k, l)`; `r = k - i` and `c = l - j` are always derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SchubertParams {
    pub i: i64,
    pub j: i64,
    pub k: i64,
    pub l: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ParamClass {
    /// `0 < i < k ≤ j < l` and `0 < r < c < k`.
    Geometric,
    /// The identity is symbolically meaningful but has no geometric reading.
    SymbolicOnly,
    /// Symbolic boundary case (`r = 0`, `c = r + i`, `i = 0` or `i = j`)
    /// where the global identity collapses.
    TrivialEdge,
    Invalid,
}

impl ParamClass {
    /// Every class under which the global identity makes sense.
    pub fn is_symbolic(self) -> bool {
        !matches!(self, ParamClass::Invalid)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ParamClass::Geometric => "GEOMETRIC",
            ParamClass::SymbolicOnly => "SYMBOLIC_ONLY",
            ParamClass::TrivialEdge => "TRIVIAL_EDGE",
            ParamClass::Invalid => "INVALID",
        }
    }
}

impl fmt::Display for ParamClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A stratum index pair with `0 < q < p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StratumPair {
    p: i64,
    q: i64,
}

impl StratumPair {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if !(0 < q && q < p) {
            return Err(Error::InvalidParams(format!(
                "stratum pair (p, q) = ({p}, {q}) must satisfy 0 < q < p"
            )));
        }
        Ok(Self { p, q })
    }

    pub fn p(self) -> i64 {
        self.p
    }

    pub fn q(self) -> i64 {
        self.q
    }
}

impl SchubertParams {
    pub const fn new(i: i64, j: i64, k: i64, l: i64) -> Self {
        Self { i, j, k, l }
    }

    /// Builds the tuple from the sweep coordinates `(i, r, j, c)`.
    pub const fn from_irjc(i: i64, r: i64, j: i64, c: i64) -> Self {
        Self { i, j, k: i + r, l: j + c }
    }

    pub const fn r(&self) -> i64 {
        self.k - self.i
    }

    pub const fn c(&self) -> i64 {
        self.l - self.j
    }

    pub fn classify(&self) -> ParamClass {
        let (i, j, k, l) = (self.i, self.j, self.k, self.l);
        let (r, c) = (self.r(), self.c());
        if 0 < i && i < k && k <= j && j < l && 0 < r && r < c && c < k {
            ParamClass::Geometric
        } else if 0 <= i && i <= k && k <= j && 0 <= r && r <= c && c <= k {
            if r == 0 || c == r + i || i == 0 || i == j {
                ParamClass::TrivialEdge
            } else {
                ParamClass::SymbolicOnly
            }
        } else {
            ParamClass::Invalid
        }
    }

    /// `i_p = k - p + 1`, the intersection dimension defining `Δ_p`.
    pub const fn i_p(&self, p: i64) -> i64 {
        self.k - p + 1
    }

    fn check_stratum(&self, p: i64) -> Result<()> {
        let hi = self.r() + 1;
        if p < 1 || p > hi {
            return Err(Error::IndexOutOfRange { what: "p", index: p, lo: 1, hi });
        }
        Ok(())
    }

    /// Validates `0 < q < p ≤ r + 1`.
    pub fn pair(&self, p: i64, q: i64) -> Result<StratumPair> {
        self.check_stratum(p)?;
        StratumPair::new(p, q)
    }

    /// All pairs `0 < q < p ≤ r + 1`, ordered by `p` then `q`.
    pub fn pairs(&self) -> impl Iterator<Item = StratumPair> {
        let top = self.r() + 1;
        (2..=top).flat_map(|p| (1..p).map(move |q| StratumPair { p, q }))
    }

    /// `m_p = dim Δ_p = (k + 1 - p)(j + p - k - 1) + (p - 1)(l - k)`.
    pub fn dim_stratum(&self, p: i64) -> Result<i64> {
        self.check_stratum(p)?;
        let (j, k, l) = (self.j, self.k, self.l);
        Ok((k + 1 - p) * (j + p - k - 1) + (p - 1) * (l - k))
    }

    /// `δ_pq = dim G_{p-q}(C^{k-c}) = (p - q)(k - c + q - p)`; negative when
    /// that Grassmannian is empty.
    pub fn delta(&self, pair: StratumPair) -> i64 {
        let s = pair.p - pair.q;
        s * (self.k - self.c() - s)
    }

    /// `d_pq = (p - q)(c + 1 - q)`, half the shift exponent.
    pub fn small_d(&self, pair: StratumPair) -> i64 {
        (pair.p - pair.q) * (self.c() + 1 - pair.q)
    }

    /// `f_pq`: Poincaré polynomial of `T_pq = G_{p-q}(C^{k-c})`.
    pub fn fibre_poly_t(&self, pair: StratumPair) -> Polynomial {
        gauss(pair.p - pair.q, self.k - self.c())
    }

    /// Poincaré polynomial of `F_pq = G_{i_p}(C^{i_q})`.
    pub fn fibre_poly_f(&self, pair: StratumPair) -> Polynomial {
        gauss(self.i_p(pair.p), self.i_p(pair.q))
    }

    /// Poincaré polynomial of `G_pq = G_{p-q}(C^{c-q+1})`.
    pub fn fibre_poly_g(&self, pair: StratumPair) -> Polynomial {
        gauss(pair.p - pair.q, self.c() - pair.q + 1)
    }

    /// `H_p`, the Poincaré polynomial of the resolution of `Δ_p`, which has
    /// the cohomology of `G_{i_p}(C^j) × G_{k-i_p}(C^{l-i_p})`.
    pub fn resolution_poincare(&self, p: i64) -> Result<Polynomial> {
        self.check_stratum(p)?;
        let ip = self.i_p(p);
        Ok(&gauss(ip, self.j) * &gauss(self.k - ip, self.l - ip))
    }

    /// `I_p` read off the small resolution:
    /// `G_{k-i_p}(C^{l-j}) × G_k(C^{k+j-i_p})`.
    pub fn ih_closed_form(&self, p: i64) -> Result<Polynomial> {
        self.check_stratum(p)?;
        let ip = self.i_p(p);
        Ok(&gauss(self.k - ip, self.c()) * &gauss(self.k, self.k + self.j - ip))
    }
}

impl fmt::Display for SchubertParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(i,j,k,l)=({},{},{},{})", self.i, self.j, self.k, self.l)
    }
}
