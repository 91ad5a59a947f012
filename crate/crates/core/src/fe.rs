//! Functional equations on explicit Whittaker models: the `GL_2 x GL_1`
//! pairing and the gamma factor it defines, invariant bilinear forms and
//! exceptional pairs, and the equal-rank equation with Fourier transforms.
//!
//! Pairings follow the displayed convention for `GL_2 x GL_1`:
//! `gamma(rho x omega) sum_x W(diag(x,1)) omega^{-1}(x) = sum_x W((0 1; x 0)) omega^{-1}(x)`,
//! i.e. `W' = omega^{-1}`.

use serde::Serialize;

use crate::characters::{AddChar, MultChar};
use crate::field::{Embedding, Fe, FieldCtx};
use crate::gauss::{self, GammaValue, Provenance};
use crate::gl2::{
    self, diag, gl2_generators, tilde_gl1, tilde_table, whittaker_space, CuspidalModel, FunctionModule, InducedModule,
    MatGroup, ModelError, SmallRep,
};
use crate::instance::{Instance, InstanceError};
use crate::linalg::{self, Matrix};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FeError {
    #[error("pairing index j = {j} out of range [0, {max}]")]
    PairingIndex { j: usize, max: usize },
    #[error("every pairing vanishes: the pair is exceptional")]
    Exceptional,
    #[error("functional equation fails at test pair {index}")]
    Inconsistent { index: usize },
    #[error("no cuspidal model: {0}")]
    NoModel(#[from] ModelError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// `I(W, W'; j)` for `(n, m) = (2, 1)`: `sum_{x in F_q^×} W(diag(x, 1)) W'(x)`.
/// Only `j = 0` is in range since `n - m - 1 = 0`.
pub fn pairing_i<R: Ring>(r: &R, group: &MatGroup, w: &[R::Elem], wp: &[R::Elem], j: usize) -> Result<R::Elem, FeError> {
    if j != 0 {
        return Err(FeError::PairingIndex { j, max: 0 });
    }
    let t = group.tower();
    Ok(r.sum(t.units().map(|x| {
        let g = group.index_of(diag(x, 1)).expect("diagonal is invertible");
        r.mul(&w[g], &wp[x as usize])
    })))
}

/// The unique `gamma` with `gamma * lhs_k = rhs_k` for every `k`, read off
/// the first unit `lhs_k`.
pub fn solve_scalar<R: Ring>(r: &R, pairs: &[(R::Elem, R::Elem)]) -> Result<R::Elem, FeError> {
    let (k, inv) = pairs
        .iter()
        .enumerate()
        .find_map(|(k, (l, _))| r.inv(l).map(|i| (k, i)))
        .ok_or(FeError::Exceptional)?;
    let gamma = r.mul(&pairs[k].1, &inv);
    for (index, (l, rhs)) in pairs.iter().enumerate() {
        if r.mul(&gamma, l) != *rhs {
            return Err(FeError::Inconsistent { index });
        }
    }
    Ok(gamma)
}

/// Solves `I(W, W'; 0) gamma = I(w_{2,1} W~, W~'; 0)` over all pairs drawn
/// from `ws` and `wps`; `w_{2,1}` is the identity.
pub fn solve_gamma_21<R: Ring>(r: &R, group: &MatGroup, ws: &[Vec<R::Elem>], wps: &[Vec<R::Elem>]) -> Result<R::Elem, FeError> {
    let t = group.tower();
    let mut pairs = Vec::with_capacity(ws.len() * wps.len());
    for w in ws {
        let wt = tilde_table(group, w);
        for wp in wps {
            let wpt = tilde_gl1(t, wp);
            pairs.push((pairing_i(r, group, w, wp, 0)?, pairing_i(r, group, &wt, &wpt, 0)?));
        }
    }
    solve_scalar(r, &pairs)
}

/// `gamma(rho x omega_j, psi)` from the functional equation on the model,
/// normalized by the Bessel pair and checked on every basis vector.
pub fn fe_gamma_oracle(inst: &Instance, model: &CuspidalModel, j: u64) -> Result<GammaValue, FeError> {
    let f = inst.field();
    let group = model.module.ind.group;
    let wp = gl2::whittaker_of_character(inst, MultChar::omega(inst, j).inverse());
    let mut ws = vec![model.table.clone()];
    ws.extend(model.module.basis_tables());
    let value = solve_gamma_21(f, group, &ws, &[wp])?;
    assert!(!f.is_zero(&value), "gamma factors are units");
    Ok(GammaValue {
        value,
        provenance: Provenance::FunctionalEquation,
        i: model.i,
        j,
    })
}

/// `omega_j(-1) nu_i(-1)`, a sign.
pub fn central_sign(inst: &Instance, i: u64, j: u64) -> Fe {
    let t = inst.tower();
    let m1 = t.neg(1);
    let a = MultChar::omega(inst, j).eval_label(inst, m1).unwrap();
    let b = MultChar::nu(inst, i).eval(inst, &t.embed(m1)).unwrap();
    inst.field().mul(&a, &b)
}

/// The value the model predicts from the Gauss-sum table:
/// `-omega_j(-1) nu_i(-1) gauss(-i, -j)`.
pub fn gauss_dual_prediction(inst: &Instance, table: &gauss::GaussTable, i: u64, j: u64) -> Fe {
    let (mp, np) = (inst.m_prime(), inst.n_prime());
    let g = table.gamma(inst, (mp - i % mp) % mp, (np - j % np) % np);
    let f = inst.field();
    f.neg(&f.mul(&central_sign(inst, i, j), &g))
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    pub i: u64,
    pub j: u64,
    pub gauss: Fe,
    pub oracle: Option<Fe>,
    pub agrees: bool,
    /// `oracle = -omega_j(-1) nu_i(-1) gauss(-i, -j)`
    pub dual_identity: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub ell: u64,
    pub q: u64,
    pub entries: Vec<OracleEntry>,
    /// Exponents `i` without a cuspidal model.
    pub no_model: Vec<u64>,
}

impl OracleReport {
    pub fn compared(&self) -> usize {
        self.entries.iter().filter(|e| e.oracle.is_some()).count()
    }

    pub fn agreements(&self) -> usize {
        self.entries.iter().filter(|e| e.agrees).count()
    }

    pub fn dual_identity_holds(&self) -> bool {
        self.entries.iter().filter(|e| e.oracle.is_some()).all(|e| e.dual_identity)
    }

    pub fn all_agree(&self) -> bool {
        self.no_model.is_empty() && self.entries.iter().all(|e| e.agrees)
    }
}

/// Cuspidal models of every class with a cuspidal lift, keyed by class
/// representative.
pub fn class_models<'a>(inst: &'a Instance, ind: &'a InducedModule<'a>, psi: AddChar) -> Vec<(u64, Result<CuspidalModel<'a>, ModelError>)> {
    crate::characters::class_representatives(inst.q(), inst.m_prime())
        .into_iter()
        .map(|i| (i, gl2::cuspidal_whittaker(inst, ind, i, psi)))
        .collect()
}

/// Compares the functional-equation oracle with the Gauss sum on every
/// `(i, j)`.
pub fn oracle_grid(inst: &Instance) -> OracleReport {
    let group = MatGroup::gl2(inst.tower());
    let ind = whittaker_space(inst, &group, AddChar::PSI);
    let models = class_models(inst, &ind, AddChar::PSI);
    let table = gauss::GaussTable::new(inst);
    let (q, mp) = (inst.q(), inst.m_prime());
    let mut entries = Vec::new();
    let mut no_model = Vec::new();
    for i in 0..mp {
        let rep = crate::characters::class_representative(i, q, mp);
        let model = models.iter().find(|(r, _)| *r == rep).and_then(|(_, m)| m.as_ref().ok());
        if model.is_none() {
            no_model.push(i);
        }
        for j in 0..inst.n_prime() {
            let g = table.gamma(inst, i, j);
            let o = model.map(|m| fe_gamma_oracle(inst, m, j).expect("cuspidal pairs are not exceptional").value);
            let dual = o.as_ref().is_some_and(|o| *o == gauss_dual_prediction(inst, &table, i, j));
            entries.push(OracleEntry {
                i,
                j,
                agrees: o.as_ref() == Some(&g),
                gauss: g,
                oracle: o,
                dual_identity: dual,
            });
        }
    }
    OracleReport {
        ell: inst.ell(),
        q,
        entries,
        no_model,
    }
}

/// Dimension of `{B : B(a(g) v, b(g) v') = chi(g) B(v, v')}` for the listed
/// generators, as the nullspace of `a(g)^T B b(g) - chi(g) B`.
pub fn bil_space_dim(f: &FieldCtx, a: &SmallRep, b: &SmallRep, chi: &[Fe]) -> usize {
    let (d1, d2) = (a.dim, b.dim);
    let n = d1 * d2;
    if n == 0 {
        return 0;
    }
    let mut rows: Matrix = Vec::new();
    for ((ga, gb), c) in a.gens.iter().zip(&b.gens).zip(chi) {
        for x in 0..d1 {
            for y in 0..d2 {
                // entry (x, y) of a^T B b - c B
                let mut row = vec![f.zero(); n];
                for u in 0..d1 {
                    for v in 0..d2 {
                        let coeff = f.mul(&ga[u][x], &gb[v][y]);
                        f.add_assign(&mut row[u * d2 + v], &coeff);
                    }
                }
                let k = x * d2 + y;
                row[k] = f.sub(&row[k], c);
                rows.push(row);
            }
        }
    }
    n - linalg::rank(f, &rows)
}

/// `dim Bil_{G_1}(rho, omega)` for the pairing `I(., .; 0)`: `G_1` acts on
/// `rho` through `diag(x, 1)` and on `W' = omega^{-1}` by translation.
pub fn bil_dim_21(inst: &Instance, module: &FunctionModule, j: u64) -> usize {
    let g1 = inst.tower().exp1(1);
    let a = module.small_rep(&[diag(g1, 1)]);
    let om = MultChar::omega(inst, j).inverse().eval_label(inst, g1).unwrap();
    bil_space_dim(inst.field(), &a, &SmallRep::scalar(&[om]), &[inst.field().one()])
}

/// The `t` for which `Bil_{G_t}(V^{(n-t)}, V'^{(m-t)}, 1)` is nonzero, given
/// the derivative pairs level by level.
pub fn detect_exceptional(f: &FieldCtx, levels: &[(usize, SmallRep, SmallRep)]) -> Vec<usize> {
    levels
        .iter()
        .filter(|(_, a, b)| bil_space_dim(f, a, b, &vec![f.one(); a.gens.len()]) > 0)
        .map(|(t, _, _)| *t)
        .collect()
}

/// Exceptional levels of `(V, omega_j)` for `GL_2 x GL_1`.
pub fn detect_exceptional_21(inst: &Instance, module: &FunctionModule, j: u64) -> Vec<usize> {
    let d = gl2::derivatives(inst, module);
    let g1 = inst.tower().exp1(1);
    let om = MultChar::omega(inst, j).inverse().eval_label(inst, g1).unwrap();
    detect_exceptional(inst.field(), &[(1, d.first, SmallRep::scalar(&[om]))])
}

/// Exceptional levels of `(chi_1, chi_2)` for `GL_1 x GL_1`.
pub fn detect_exceptional_11(inst: &Instance, chi1: MultChar, chi2: MultChar) -> Vec<usize> {
    let g1 = inst.tower().exp1(1);
    let a = SmallRep::scalar(&[chi1.eval_label(inst, g1).unwrap()]);
    let b = SmallRep::scalar(&[chi2.eval_label(inst, g1).unwrap()]);
    detect_exceptional(inst.field(), &[(1, a, b)])
}

/// Exceptional levels of `(V, V')` for `GL_2 x GL_2`.
pub fn detect_exceptional_22(inst: &Instance, v: &FunctionModule, vp: &FunctionModule) -> Vec<usize> {
    let (d, dp) = (gl2::derivatives(inst, v), gl2::derivatives(inst, vp));
    let gens = gl2_generators(inst.tower());
    detect_exceptional(
        inst.field(),
        &[(1, d.first, dp.first), (2, v.small_rep(&gens), vp.small_rep(&gens))],
    )
}

/// Index of a vector of `F_q^n` given by labels.
pub fn vector_index(q: u64, x: &[u32]) -> usize {
    x.iter().rev().fold(0, |acc, &c| acc * q as usize + c as usize)
}

fn vector_of(q: u64, n: usize, mut idx: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let c = (idx % q as usize) as u32;
            idx /= q as usize;
            c
        })
        .collect()
}

/// `Phi^(a) = sum_x Phi(x) psi(a . x)` on `F_q^n`.
pub fn fourier_transform(inst: &Instance, n: usize, phi: &[Fe], psi: AddChar) -> Vec<Fe> {
    let t = inst.tower();
    let f = inst.field();
    let q = inst.q();
    let size = (q as usize).pow(n as u32);
    let psi_tab = psi.table(inst);
    (0..size)
        .map(|ai| {
            let a = vector_of(q, n, ai);
            let mut acc = f.zero();
            for (xi, v) in phi.iter().enumerate() {
                if f.is_zero(v) {
                    continue;
                }
                let x = vector_of(q, n, xi);
                let dot = a.iter().zip(&x).fold(0, |s, (&u, &w)| t.add(s, t.mul(u, w)));
                f.add_assign(&mut acc, &f.mul(v, &psi_tab[dot as usize]));
            }
            acc
        })
        .collect()
}

/// Point masses `delta_a` on `F_q^n`.
pub fn delta_basis(inst: &Instance, n: usize) -> Vec<Vec<Fe>> {
    let f = inst.field();
    let size = (inst.q() as usize).pow(n as u32);
    (0..size)
        .map(|a| {
            let mut v = vec![f.zero(); size];
            v[a] = f.one();
            v
        })
        .collect()
}

/// `gamma(chi_1 x chi_2, psi)` for `GL_1 x GL_1` from
/// `I(W, W', Phi) gamma = I(W~, W~', Phi^)`, `I(W, W', Phi) = sum_x W(x) W'(x) Phi(x)`,
/// over every point mass `Phi`.
pub fn equal_rank_gamma_11(inst: &Instance, chi1: MultChar, chi2: MultChar) -> Result<Fe, FeError> {
    let f = inst.field();
    let t = inst.tower();
    let w = gl2::whittaker_of_character(inst, chi1);
    let wp = gl2::whittaker_of_character(inst, chi2);
    let (wt, wpt) = (tilde_gl1(t, &w), tilde_gl1(t, &wp));
    let pair = |a: &[Fe], b: &[Fe], phi: &[Fe]| {
        f.sum(t.units().map(|x| f.mul(&f.mul(&a[x as usize], &b[x as usize]), &phi[x as usize])))
    };
    // delta_1 first: it carries the normalization I = 1
    let mut phis = delta_basis(inst, 1);
    phis.swap(0, 1);
    let pairs: Vec<(Fe, Fe)> = phis
        .iter()
        .map(|phi| {
            let hat = fourier_transform(inst, 1, phi, AddChar::PSI);
            (pair(&w, &wp, phi), pair(&wt, &wpt, &hat))
        })
        .collect();
    solve_scalar(f, &pairs)
}

/// `sum_{x in F_q^×} chi(x) psi(x)`.
pub fn abelian_gauss_sum(inst: &Instance, chi: MultChar, psi: AddChar) -> Fe {
    let f = inst.field();
    f.sum(inst.tower().units().map(|x| f.mul(&chi.eval_label(inst, x).unwrap(), &psi.eval(inst, x))))
}

/// `gamma(rho x rho', psi)` for `GL_2 x GL_2` with `rho` in its
/// `psi`-Whittaker model and `rho'` in its `psi^{-1}`-model, from
/// `I(W, W', Phi) = sum_{N \ G} W(g) W'(g) Phi(eta g)`, `eta = (0, 1)`,
/// over bases of both models and every point mass on `F_q^2`.
pub fn equal_rank_gamma_22(inst: &Instance, rho: &CuspidalModel, rho2: &CuspidalModel) -> Result<Fe, FeError> {
    let f = inst.field();
    let q = inst.q();
    let ind = rho.module.ind;
    let group = ind.group;
    let reps = ind.reps();
    let rep_idx: Vec<usize> = reps.iter().map(|&r| group.index_of(r).unwrap()).collect();
    let eta: Vec<usize> = reps.iter().map(|r| vector_index(q, &[r[2], r[3]])).collect();
    let mut ws = vec![rho.table.clone()];
    ws.extend(rho.module.basis_tables());
    let mut wps = vec![rho2.table.clone()];
    wps.extend(rho2.module.basis_tables());
    let wts: Vec<Vec<Fe>> = ws.iter().map(|w| tilde_table(group, w)).collect();
    let wpts: Vec<Vec<Fe>> = wps.iter().map(|w| tilde_table(group, w)).collect();
    let mut phis = delta_basis(inst, 2);
    let first = vector_index(q, &[0, 1]);
    phis.swap(0, first);
    let hats: Vec<Vec<Fe>> = phis.iter().map(|p| fourier_transform(inst, 2, p, AddChar::PSI)).collect();
    let pair = |a: &[Fe], b: &[Fe], phi: &[Fe]| {
        f.sum(
            rep_idx
                .iter()
                .zip(&eta)
                .map(|(&g, &e)| f.mul(&f.mul(&a[g], &b[g]), &phi[e])),
        )
    };
    let mut pairs = Vec::new();
    for (w, wt) in ws.iter().zip(&wts) {
        for (wp, wpt) in wps.iter().zip(&wpts) {
            for (phi, hat) in phis.iter().zip(&hats) {
                pairs.push((pair(w, wp, phi), pair(wt, wpt, hat)));
            }
        }
    }
    solve_scalar(f, &pairs)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub ell: u64,
    pub q: u64,
    pub checked: usize,
    pub failures: Vec<(u64, u64)>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

/// `gamma(rho x omega, psi) gamma(^i rho x ^i omega, psi^{-1}) = 1` with both
/// factors from the functional equation; `^i rho` is built independently as
/// the `psi^{-1}`-model of `nu^{-1}` and `^i omega = omega^{-1}`.
pub fn duality_check(inst: &Instance) -> IdentityReport {
    let f = inst.field();
    let group = MatGroup::gl2(inst.tower());
    let ind = whittaker_space(inst, &group, AddChar::PSI);
    let ind_inv = whittaker_space(inst, &group, AddChar::PSI.inverse());
    let (mp, np) = (inst.m_prime(), inst.n_prime());
    let mut checked = 0;
    let mut failures = Vec::new();
    for (i, model) in class_models(inst, &ind, AddChar::PSI) {
        let Ok(model) = model else { continue };
        let dual = gl2::cuspidal_whittaker(inst, &ind_inv, (mp - i) % mp, AddChar::PSI.inverse())
            .expect("the contragredient of a cuspidal is cuspidal");
        for j in 0..np {
            let a = fe_gamma_oracle(inst, &model, j).map(|g| g.value);
            let b = fe_gamma_oracle(inst, &dual, (np - j) % np).map(|g| g.value);
            checked += 1;
            match (a, b) {
                (Ok(a), Ok(b)) if f.is_one(&f.mul(&a, &b)) => {}
                _ => failures.push((i, j)),
            }
        }
    }
    IdentityReport {
        ell: inst.ell(),
        q: inst.q(),
        checked,
        failures,
    }
}

/// The Gauss-sum counterpart of [`duality_check`]: `gauss(i, j; psi)` times
/// `gauss(-i, -j; psi^{-1})` on classes with a cuspidal lift.
pub fn gauss_duality_check(inst: &Instance) -> Result<IdentityReport, FeError> {
    let f = inst.field();
    let p = inst.p();
    let inv = Instance::with_choices(
        inst.ell(),
        inst.q(),
        crate::instance::Choices {
            psi_exp: inst.choices().psi_exp * (p - 1) % p,
            ..inst.choices()
        },
    )?;
    let (a, b) = (gauss::GaussTable::new(inst), gauss::GaussTable::new(&inv));
    let (q, mp, np) = (inst.q(), inst.m_prime(), inst.n_prime());
    let mut checked = 0;
    let mut failures = Vec::new();
    for i in (0..mp).filter(|&i| crate::characters::has_cuspidal_lift(i, q, mp, inst.ell())) {
        for j in 0..np {
            checked += 1;
            let x = f.mul(&a.gamma(inst, i, j), &b.gamma(&inv, (mp - i) % mp, (np - j) % np));
            if !f.is_one(&x) {
                failures.push((i, j));
            }
        }
    }
    Ok(IdentityReport {
        ell: inst.ell(),
        q,
        checked,
        failures,
    })
}

/// Smallest prime `r` with `r` coprime to `l L` that enlarges the
/// coefficient field.
pub fn enlarging_order(inst: &Instance) -> u64 {
    let ell = inst.ell();
    let l = inst.big_l();
    let d = inst.field().degree() as u64;
    (2u64..)
        .filter(|&r| crate::arith::is_prime(r) && r != ell && l % r != 0)
        .find(|&r| crate::arith::multiplicative_order(ell, crate::arith::lcm(l, r)).unwrap() > d)
        .expect("some prime enlarges the field")
}

/// Computes the oracle and the Gauss sum over the coefficient field and over
/// an extension; both must commute with the embedding.
pub fn base_change_check(inst: &Instance) -> Result<IdentityReport, FeError> {
    let (big, emb): (Instance, Embedding) = inst.extended(enlarging_order(inst))?;
    let phi = |a: &Fe| emb.apply(inst.field(), big.field(), a);
    let (small_g, big_g) = (gauss::GaussTable::new(inst), gauss::GaussTable::new(&big));
    let group = MatGroup::gl2(inst.tower());
    let ind_s = whittaker_space(inst, &group, AddChar::PSI);
    let group_b = MatGroup::gl2(big.tower());
    let ind_b = whittaker_space(&big, &group_b, AddChar::PSI);
    let models_b = class_models(&big, &ind_b, AddChar::PSI);
    let mut checked = 0;
    let mut failures = Vec::new();
    for (i, model) in class_models(inst, &ind_s, AddChar::PSI) {
        let model_b = &models_b.iter().find(|(r, _)| *r == i).expect("same classes").1;
        for j in 0..inst.n_prime() {
            checked += 1;
            let g_ok = phi(&small_g.gamma(inst, i, j)) == big_g.gamma(&big, i, j);
            let o_ok = match (&model, model_b) {
                (Ok(a), Ok(b)) => {
                    let x = fe_gamma_oracle(inst, a, j)?.value;
                    let y = fe_gamma_oracle(&big, b, j)?.value;
                    phi(&x) == y
                }
                (Err(_), Err(_)) => true,
                _ => false,
            };
            if !(g_ok && o_ok) {
                failures.push((i, j));
            }
        }
    }
    Ok(IdentityReport {
        ell: inst.ell(),
        q: inst.q(),
        checked,
        failures,
    })
}

/// `Phi^^ = q^n Phi(-.)` on every point mass.
pub fn fourier_involution_holds(inst: &Instance, n: usize) -> bool {
    let f = inst.field();
    let t = inst.tower();
    let q = inst.q();
    let qn = f.from_int(q.pow(n as u32) as i64);
    delta_basis(inst, n).iter().all(|phi| {
        let hh = fourier_transform(inst, n, &fourier_transform(inst, n, phi, AddChar::PSI), AddChar::PSI);
        (0..phi.len()).all(|a| {
            let neg: Vec<u32> = vector_of(q, n, a).into_iter().map(|c| t.neg(c)).collect();
            hh[a] == f.mul(&qn, &phi[vector_index(q, &neg)])
        })
    })
}
