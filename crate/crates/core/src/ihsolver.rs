//! Intersection-cohomology Poincaré polynomials `I_1, …, I_{r+1}` of the
//! strata, computed by back-substitution and by the equivalent truncated
//! Neumann series.
//!
//! Both solve `H_p = I_p + Σ_{q<p} g_pq · I_q` with `g_pq = t^{2 d_pq} f_pq`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::Polynomial;
use crate::strata::{ParamClass, SchubertParams, StratumPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IHTable {
    pub params: SchubertParams,
    /// `entries[p - 1] = I_p`.
    pub entries: Vec<Polynomial>,
}

impl IHTable {
    /// `I_p` for `1 ≤ p ≤ r + 1`.
    pub fn get(&self, p: i64) -> Result<&Polynomial> {
        let hi = self.entries.len() as i64;
        if p < 1 || p > hi {
            return Err(Error::IndexOutOfRange { what: "p", index: p, lo: 1, hi });
        }
        Ok(&self.entries[(p - 1) as usize])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn require_geometric(params: &SchubertParams) -> Result<()> {
    match params.classify() {
        ParamClass::Geometric => Ok(()),
        class => Err(Error::InvalidParams(format!("{params} is {class}, not GEOMETRIC"))),
    }
}

/// `g_pq = t^{2 d_pq} f_pq`.
pub fn coupling(params: &SchubertParams, pair: StratumPair) -> Polynomial {
    params.fibre_poly_t(pair).shift(2 * params.small_d(pair) as usize)
}

/// The `(r+1) × (r+1)` coupling matrix in ascending stratum order:
/// `n[p-1][q-1] = g_pq` for `q < p`, zero elsewhere.
pub fn coupling_matrix(params: &SchubertParams) -> Result<Vec<Vec<Polynomial>>> {
    require_geometric(params)?;
    let n = (params.r() + 1) as usize;
    let mut m = vec![vec![Polynomial::zero(); n]; n];
    for pair in params.pairs() {
        m[(pair.p() - 1) as usize][(pair.q() - 1) as usize] = coupling(params, pair);
    }
    Ok(m)
}

fn resolution_vector(params: &SchubertParams) -> Result<Vec<Polynomial>> {
    (1..=params.r() + 1).map(|p| params.resolution_poincare(p)).collect()
}

fn check_nonnegative(params: &SchubertParams, p: usize, poly: &Polynomial) -> Result<()> {
    if !poly.is_nonnegative() {
        return Err(Error::InternalInconsistency(format!(
            "I_{} of {params} has a negative coefficient: {poly}",
            p + 1
        )));
    }
    Ok(())
}

/// `I_1 = H_1`, `I_p = H_p - Σ_{q<p} g_pq I_q`.
pub fn solve_backsub(params: &SchubertParams) -> Result<IHTable> {
    require_geometric(params)?;
    let h = resolution_vector(params)?;
    let mut entries: Vec<Polynomial> = Vec::with_capacity(h.len());
    for (idx, hp) in h.into_iter().enumerate() {
        let p = idx as i64 + 1;
        let mut ip = hp;
        for q in 1..p {
            let g = coupling(params, StratumPair::new(p, q)?);
            if !g.is_zero() {
                ip -= &(&g * &entries[(q - 1) as usize]);
            }
        }
        check_nonnegative(params, idx, &ip)?;
        entries.push(ip);
    }
    Ok(IHTable { params: *params, entries })
}

/// `I = Σ_{n=0}^{r} (-1)^n N^n H`, accumulated as `v_n = N v_{n-1}`.
pub fn solve_neumann(params: &SchubertParams) -> Result<IHTable> {
    let n = coupling_matrix(params)?;
    let mut v = resolution_vector(params)?;
    let mut acc = v.clone();
    for power in 1..=params.r() {
        v = n
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v)
                    .filter(|(g, x)| !g.is_zero() && !x.is_zero())
                    .map(|(g, x)| g * x)
                    .sum()
            })
            .collect();
        for (a, x) in acc.iter_mut().zip(&v) {
            if power % 2 == 1 {
                *a -= x;
            } else {
                *a += x;
            }
        }
    }
    for (idx, ip) in acc.iter().enumerate() {
        check_nonnegative(params, idx, ip)?;
    }
    Ok(IHTable { params: *params, entries: acc })
}
