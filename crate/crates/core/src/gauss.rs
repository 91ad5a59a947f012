//! Gauss-sum gamma factors
//!
//! `gamma(nu_i x omega_j, psi) = q^{-1} nu_i(-1) sum_t nu_i(t) omega_j(t tbar)^{-1} psi(t + tbar)`
//! over `t` in `F_{q^2}^×`.
//!
//! Writing `t = w^K`, the summand is `zeta_{m'}^{(i - j m'/n') K} psi(tr t)`,
//! so the whole table is `nu_i(-1) G(i - j m'/n')` for the `m'` sums
//! `G(e) = q^{-1} sum_K zeta_{m'}^{e K} psi(tr w^K)`, and `nu_i(-1)` is a sign.

use serde::Serialize;

use crate::characters::{AddChar, MultChar};
use crate::field::Fe;
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    GaussSum,
    FunctionalEquation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaValue {
    pub value: Fe,
    pub provenance: Provenance,
    pub i: u64,
    pub j: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GammaError {
    #[error("exponent i = {i} out of range [0, {m_prime})")]
    BadI { i: u64, m_prime: u64 },
    #[error("exponent j = {j} out of range [0, {n_prime})")]
    BadJ { j: u64, n_prime: u64 },
    #[error("gamma factor vanished for i = {i}, j = {j}")]
    Vanished { i: u64, j: u64 },
}

/// `ell`-regular exponent of `zeta_{m'}` equal to `m'/n'`, the factor turning
/// `omega_j` into a character of `F_{q^2}^×` through the norm.
pub fn omega_scale(inst: &Instance) -> u64 {
    inst.m_prime() / inst.n_prime()
}

/// Whether `nu_i(-1) = -1`.
pub fn nu_minus_one_is_neg(inst: &Instance, i: u64) -> bool {
    if inst.q() % 2 == 0 {
        return false;
    }
    let nu = MultChar::nu(inst, i);
    nu.exp_at_w_power(inst, inst.m() / 2) != 0
}

/// The `m'` sums `G(e)` in zeta-chart coordinates, `q^{-1}` included.
#[derive(Debug)]
pub struct GaussTable {
    sums: Vec<Vec<u32>>,
    scale: u64,
    m_prime: u64,
    n_prime: u64,
}

impl GaussTable {
    pub fn new(inst: &Instance) -> GaussTable {
        let chart = inst.chart();
        let mp = inst.m_prime();
        let m = inst.m();
        let tower = inst.tower();
        // log_w(t) mod m' and the psi exponent of tr(t), for t = w^k
        let k_log: Vec<u64> = (0..m).map(|k| inst.w_log(k) % mp).collect();
        let psi_exp: Vec<u64> = (0..m)
            .map(|k| AddChar::PSI.exp(inst, tower.trace_of_power(k)))
            .collect();
        let qinv = inst.q_inv();
        let p = chart.ell();
        let sums = (0..mp)
            .map(|e| {
                let mut acc = chart.zero();
                for (&kl, &pe) in k_log.iter().zip(&psi_exp) {
                    chart.add_power(&mut acc, inst.exp_m(e * kl % mp) + pe, 1);
                }
                acc.iter().map(|&c| (c as u64 * qinv as u64 % p as u64) as u32).collect()
            })
            .collect();
        GaussTable {
            sums,
            scale: omega_scale(inst),
            m_prime: mp,
            n_prime: inst.n_prime(),
        }
    }

    /// `gamma(i, j)` in chart coordinates.
    pub fn gamma_chart(&self, inst: &Instance, i: u64, j: u64) -> Vec<u32> {
        let mp = self.m_prime;
        let e = (i % mp + mp - j % self.n_prime * self.scale % mp) % mp;
        let g = &self.sums[e as usize];
        if nu_minus_one_is_neg(inst, i) {
            let p = inst.chart().ell();
            g.iter().map(|&c| (p - c) % p).collect()
        } else {
            g.clone()
        }
    }

    /// The gamma row of `nu_i` over all `j`, in chart coordinates.
    pub fn row_chart(&self, inst: &Instance, i: u64) -> Vec<Vec<u32>> {
        (0..self.n_prime).map(|j| self.gamma_chart(inst, i, j)).collect()
    }

    pub fn gamma(&self, inst: &Instance, i: u64, j: u64) -> Fe {
        inst.chart().to_field(&self.gamma_chart(inst, i, j))
    }
}

fn check_range(inst: &Instance, i: u64, j: u64) -> Result<(), GammaError> {
    if i >= inst.m_prime() {
        return Err(GammaError::BadI {
            i,
            m_prime: inst.m_prime(),
        });
    }
    if j >= inst.n_prime() {
        return Err(GammaError::BadJ {
            j,
            n_prime: inst.n_prime(),
        });
    }
    Ok(())
}

/// A single gamma value by one pass over `F_{q^2}^×`.
pub fn gauss_sum_gamma(inst: &Instance, i: u64, j: u64) -> Result<GammaValue, GammaError> {
    check_range(inst, i, j)?;
    let chart = inst.chart();
    let mp = inst.m_prime();
    let e = (i + mp - j * omega_scale(inst) % mp) % mp;
    let mut acc = chart.zero();
    for k in 0..inst.m() {
        let c = inst.exp_m(e * (inst.w_log(k) % mp) % mp)
            + AddChar::PSI.exp(inst, inst.tower().trace_of_power(k));
        chart.add_power(&mut acc, c, 1);
    }
    let f = inst.field();
    let mut value = f.scale(&chart.to_field(&acc), inst.q_inv());
    if nu_minus_one_is_neg(inst, i) {
        value = f.neg(&value);
    }
    if f.is_zero(&value) {
        return Err(GammaError::Vanished { i, j });
    }
    Ok(GammaValue {
        value,
        provenance: Provenance::GaussSum,
        i,
        j,
    })
}

/// The defining sum evaluated literally with canonical field arithmetic,
/// element by element of `F_{q^2}^×`. Used to validate the fast paths.
pub fn gauss_sum_reference(inst: &Instance, i: u64, j: u64) -> Fe {
    let f = inst.field();
    let tower = inst.tower();
    let ext = tower.ext();
    let nu = MultChar::nu(inst, i);
    let om_inv = MultChar::omega(inst, j).inverse();
    let minus_one = ext.from_int(-1);
    let mut acc = f.zero();
    for k in 0..inst.m() {
        let t = ext.exp(k).expect("tower has tables");
        let norm = tower.label(&tower.norm(&t)).expect("norm lies in F_q");
        let tr = tower.label(&tower.trace(&t)).expect("trace lies in F_q");
        let term = f.mul(
            &f.mul(&nu.eval(inst, &t).unwrap(), &om_inv.eval_label(inst, norm).unwrap()),
            &AddChar::PSI.eval(inst, tr),
        );
        acc = f.add(&acc, &term);
    }
    let sign = nu.eval(inst, &minus_one).unwrap();
    f.scale(&f.mul(&acc, &sign), inst.q_inv())
}

/// `j(x) = q^{-1} nu(-1) sum_{N(t) = x} nu(t) psi(tr t)`, the Bessel function
/// of `nu` on the big cell, for every nonzero label `x`. Index 0 is unused
/// and holds zero.
pub fn bessel_j(inst: &Instance, i: u64) -> Vec<Fe> {
    bessel_j_with(inst, i, AddChar::PSI)
}

pub fn bessel_j_with(inst: &Instance, i: u64, psi: AddChar) -> Vec<Fe> {
    let chart = inst.chart();
    let tower = inst.tower();
    let q = inst.q();
    let f = inst.field();
    let nu = MultChar::nu(inst, i);
    let neg = nu_minus_one_is_neg(inst, i);
    let mut out = vec![f.zero(); q as usize];
    for x in tower.units() {
        let base = tower.log1(x) as u64;
        let mut acc = chart.zero();
        for s in 0..q + 1 {
            let k = base + (q - 1) * s;
            let c = inst.exp_m(nu.exp_at_w_power(inst, k)) + psi.exp(inst, tower.trace_of_power(k));
            chart.add_power(&mut acc, c, 1);
        }
        let mut v = f.scale(&chart.to_field(&acc), inst.q_inv());
        if neg {
            v = f.neg(&v);
        }
        out[x as usize] = v;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Choices;

    #[test]
    fn ell3_q2_trivial_characters() {
        let inst = Instance::new(3, 2).unwrap();
        let g = gauss_sum_gamma(&inst, 0, 0).unwrap();
        assert!(inst.field().is_one(&g.value));
    }

    #[test]
    fn fast_paths_match_reference() {
        for (ell, q) in [(3, 2), (2, 3), (2, 5), (3, 5), (5, 3), (3, 7), (3, 4), (2, 9)] {
            for inst in [Instance::new(ell, q).unwrap(), Instance::alternate(ell, q).unwrap()] {
                let table = GaussTable::new(&inst);
                for i in 0..inst.m_prime() {
                    for j in 0..inst.n_prime() {
                        let r = gauss_sum_reference(&inst, i, j);
                        assert_eq!(gauss_sum_gamma(&inst, i, j).unwrap().value, r, "({ell},{q}) i={i} j={j}");
                        assert_eq!(table.gamma(&inst, i, j), r);
                    }
                }
            }
        }
    }

    #[test]
    fn conjugate_exponents_give_equal_gammas() {
        for (ell, q) in [(2, 5), (3, 7), (5, 11), (2, 13)] {
            let inst = Instance::new(ell, q).unwrap();
            let table = GaussTable::new(&inst);
            let mp = inst.m_prime();
            for i in 0..mp {
                let ic = crate::characters::conjugate_exponent(i, q, mp);
                assert_eq!(table.row_chart(&inst, i), table.row_chart(&inst, ic));
            }
        }
    }

    #[test]
    fn bessel_regrouping() {
        for (ell, q) in [(3, 2), (2, 3), (2, 5), (3, 5), (3, 7), (5, 7)] {
            let inst = Instance::new(ell, q).unwrap();
            let f = inst.field();
            for i in 0..inst.m_prime() {
                let jx = bessel_j(&inst, i);
                for jj in 0..inst.n_prime() {
                    let om_inv = MultChar::omega(&inst, jj).inverse();
                    let mut s = f.zero();
                    for x in inst.tower().units() {
                        s = f.add(&s, &f.mul(&jx[x as usize], &om_inv.eval_label(&inst, x).unwrap()));
                    }
                    assert_eq!(s, gauss_sum_gamma(&inst, i, jj).unwrap().value);
                }
            }
        }
        let inst = Instance::new(3, 2).unwrap();
        assert_eq!(bessel_j(&inst, 0)[1], gauss_sum_gamma(&inst, 0, 0).unwrap().value);
    }

    #[test]
    fn range_errors() {
        let inst = Instance::new(2, 5).unwrap();
        assert!(matches!(gauss_sum_gamma(&inst, 3, 0), Err(GammaError::BadI { .. })));
        assert!(matches!(gauss_sum_gamma(&inst, 0, 1), Err(GammaError::BadJ { .. })));
    }

    #[test]
    fn choices_are_respected() {
        let a = Instance::with_choices(2, 5, Choices { w_exp: 7, zeta_exp: 1, psi_exp: 1 }).unwrap();
        let b = Instance::new(2, 5).unwrap();
        // replacing w by w^7 relabels nu_i as nu_{7^{-1} i}
        let inv7 = crate::arith::inv_mod(7, 3).unwrap();
        for i in 0..3 {
            assert_eq!(
                gauss_sum_reference(&a, i, 0),
                gauss_sum_reference(&b, i * inv7 % 3, 0)
            );
        }
    }
}
