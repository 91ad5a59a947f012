//! The block of `k[F_q^×]` through a character, its endomorphism ring
//! `R(omega) = k[u]/(u^{l^a})`, `R(omega)`-valued Whittaker functions over
//! `GL_1` and the gamma factor with coefficients in `R(omega)`.
//!
//! `F_q^× = C × S` with `C` of order `n'` and `S` the `l`-Sylow subgroup,
//! generated by `g_l = g^{n'}` for the fixed generator `g`. The chart
//! `u = e (g_l - 1)` identifies `R(omega)` with truncated polynomials.

use serde::Serialize;

use crate::arith;
use crate::characters::{AddChar, MultChar};
use crate::fe::{self, FeError};
use crate::field::{Fe, FieldCtx};
use crate::gauss::{self, GaussTable};
use crate::gl2::{self, whittaker_space, CuspidalModel, MatGroup};
use crate::instance::Instance;
use crate::linalg::{self, Matrix, Subspace};
use crate::ring::Ring;
use crate::search;

/// An element of `k[u]/(u^n)` in the basis `1, u, ..., u^{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockElem(pub Vec<Fe>);

#[derive(Debug, Clone, Copy)]
pub struct BlockRing<'a> {
    field: &'a FieldCtx,
    len: usize,
}

impl<'a> BlockRing<'a> {
    /// `k[u]/(u^len)`.
    pub fn new(field: &'a FieldCtx, len: usize) -> BlockRing<'a> {
        assert!(len > 0);
        BlockRing { field, len }
    }

    pub fn for_instance(inst: &'a Instance) -> BlockRing<'a> {
        BlockRing::new(inst.field(), inst.ell_part() as usize)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn field(&self) -> &'a FieldCtx {
        self.field
    }

    pub fn u(&self) -> BlockElem {
        let mut v = vec![self.field.zero(); self.len];
        if self.len > 1 {
            v[1] = self.field.one();
        }
        BlockElem(v)
    }

    /// `u -> 0`.
    pub fn augmentation(&self, a: &BlockElem) -> Fe {
        a.0[0].clone()
    }

    pub fn is_unit(&self, a: &BlockElem) -> bool {
        !self.field.is_zero(&a.0[0])
    }

    pub fn scale(&self, a: &BlockElem, s: &Fe) -> BlockElem {
        BlockElem(a.0.iter().map(|c| self.field.mul(c, s)).collect())
    }

    pub fn pow(&self, a: &BlockElem, mut e: u64) -> BlockElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn format(&self, a: &BlockElem) -> Vec<String> {
        a.0.iter().map(|c| self.field.format(c)).collect()
    }
}

impl Ring for BlockRing<'_> {
    type Elem = BlockElem;

    fn zero(&self) -> BlockElem {
        BlockElem(vec![self.field.zero(); self.len])
    }

    fn one(&self) -> BlockElem {
        self.from_base(&self.field.one())
    }

    fn add(&self, a: &BlockElem, b: &BlockElem) -> BlockElem {
        BlockElem(a.0.iter().zip(&b.0).map(|(x, y)| self.field.add(x, y)).collect())
    }

    fn neg(&self, a: &BlockElem) -> BlockElem {
        BlockElem(a.0.iter().map(|x| self.field.neg(x)).collect())
    }

    fn mul(&self, a: &BlockElem, b: &BlockElem) -> BlockElem {
        let f = self.field;
        let mut out = vec![f.zero(); self.len];
        for (i, x) in a.0.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (j, y) in b.0.iter().take(self.len - i).enumerate() {
                f.add_assign(&mut out[i + j], &f.mul(x, y));
            }
        }
        BlockElem(out)
    }

    fn inv(&self, a: &BlockElem) -> Option<BlockElem> {
        let f = self.field;
        let c = f.inv(&a.0[0]).ok()?;
        let mut b = vec![f.zero(); self.len];
        b[0] = c.clone();
        for k in 1..self.len {
            let mut s = f.zero();
            for i in 1..=k {
                f.add_assign(&mut s, &f.mul(&a.0[i], &b[k - i]));
            }
            b[k] = f.neg(&f.mul(&c, &s));
        }
        Some(BlockElem(b))
    }

    fn from_base(&self, a: &Fe) -> BlockElem {
        let mut v = vec![self.field.zero(); self.len];
        v[0] = a.clone();
        BlockElem(v)
    }

    fn is_zero(&self, a: &BlockElem) -> bool {
        a.0.iter().all(|c| self.field.is_zero(c))
    }
}

/// A `BlockElem` with its chart: `a = v_l(q - 1)` and the label of `g_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockValue {
    pub a: u32,
    pub g_ell: u32,
    pub coeffs: Vec<Fe>,
}

impl BlockValue {
    pub fn new(inst: &Instance, x: &BlockElem) -> BlockValue {
        BlockValue {
            a: arith::valuation(inst.q() - 1, inst.ell()),
            g_ell: g_ell(inst),
            coeffs: x.0.clone(),
        }
    }
}

/// The generator `g^{n'}` of the `l`-Sylow subgroup of `F_q^×`.
pub fn g_ell(inst: &Instance) -> u32 {
    inst.tower().exp1(inst.n_prime())
}

/// `beta` with `x = s g_l^beta`, `s` of order prime to `l`.
pub fn ell_exponent(inst: &Instance, x: u32) -> u64 {
    let la = inst.ell_part();
    if la == 1 {
        return 0;
    }
    let k = inst.tower().log1(x) as u64;
    let inv = arith::inv_mod(inst.n_prime() % la, la).expect("n' is prime to l");
    k % la * inv % la
}

/// Elements of the `l`-regular subgroup `C` of `F_q^×`, as labels.
pub fn ell_regular_units(inst: &Instance) -> Vec<u32> {
    let t = inst.tower();
    let la = inst.ell_part();
    (0..inst.n_prime()).map(|s| t.exp1(s * la)).collect()
}

/// The `R(omega)`-valued Whittaker function of `P(omega)` on `F_q^×`:
/// `W'(s g_l^beta) = omega(s) (1 + u)^beta`, indexed by label.
pub fn whittaker_p(inst: &Instance, ring: &BlockRing, omega: MultChar) -> Vec<BlockElem> {
    let one_u = ring.add(&ring.one(), &ring.u());
    let powers: Vec<BlockElem> = (0..inst.ell_part()).map(|b| ring.pow(&one_u, b)).collect();
    let mut out = vec![ring.zero(); inst.q() as usize];
    for x in inst.tower().units() {
        // omega is trivial on the l-Sylow subgroup, so omega(s) = omega(x)
        let w = omega.eval_label(inst, x).unwrap();
        out[x as usize] = ring.scale(&powers[ell_exponent(inst, x) as usize], &w);
    }
    out
}

/// `gamma~(rho x omega_j) = sum_x J(x) W'(x)` with `W'` the Whittaker
/// function of `P(omega_j^{-1})`, for a Bessel function `J` indexed by label.
pub fn gamma_tilde_closed(inst: &Instance, ring: &BlockRing, bessel: &[Fe], j: u64) -> BlockElem {
    let wp = whittaker_p(inst, ring, MultChar::omega(inst, j).inverse());
    ring.sum(inst.tower().units().map(|x| ring.scale(&wp[x as usize], &bessel[x as usize])))
}

/// `gamma~` from the functional equation over `R(omega)`: `rho` tensored up
/// to `R(omega)` against `W'` and its `G_1`-translates.
pub fn gamma_tilde_fe(inst: &Instance, ring: &BlockRing, model: &CuspidalModel, j: u64) -> Result<BlockElem, FeError> {
    let t = inst.tower();
    let group = model.module.ind.group;
    let lift = |tab: &[Fe]| tab.iter().map(|c| ring.from_base(c)).collect::<Vec<_>>();
    let mut ws = vec![lift(&model.table)];
    ws.extend(model.module.basis_tables().iter().map(|tab| lift(tab)));
    let wp = whittaker_p(inst, ring, MultChar::omega(inst, j).inverse());
    let g1 = t.exp1(1);
    let shifted: Vec<BlockElem> = (0..inst.q() as u32)
        .map(|x| if x == 0 { ring.zero() } else { wp[t.mul(x, g1) as usize].clone() })
        .collect();
    let gamma = fe::solve_gamma_21(ring, group, &ws, &[wp, shifted])?;
    Ok(gamma)
}

/// The block idempotent `e = n'^{-1} sum_{s in C} omega(s)^{-1} s` in
/// `k[F_q^×]`, indexed by `log_g`.
pub fn block_idempotent(inst: &Instance, omega: MultChar) -> Vec<Fe> {
    let f = inst.field();
    let t = inst.tower();
    let n = (inst.q() - 1) as usize;
    let la = inst.ell_part();
    let inv_np = f.inv(&f.from_int(inst.n_prime() as i64)).expect("n' is prime to l");
    let mut e = vec![f.zero(); n];
    for s in 0..inst.n_prime() {
        let k = s * la;
        let v = omega.inverse().eval_label(inst, t.exp1(k)).unwrap();
        e[k as usize] = f.mul(&v, &inv_np);
    }
    e
}

fn convolve(f: &FieldCtx, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len();
    let mut out = vec![f.zero(); n];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
            f.add_assign(&mut out[(i + j) % n], &f.mul(x, y));
        }
    }
    out
}

fn shift(v: &[Fe], k: usize) -> Vec<Fe> {
    let n = v.len();
    (0..n).map(|i| v[(i + n - k % n) % n].clone()).collect()
}

/// `P(omega) = e k[F_q^×]` and the structure checks on it.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub omega: u64,
    pub dim: usize,
    pub expected_dim: u64,
    pub idempotent: bool,
    /// `u^{l^a}` kills `P(omega)`.
    pub nilpotent: bool,
    /// `r -> r e` is a bijection `R(omega) -> P(omega)^{(1)} = P(omega)`.
    pub free_rank_one: bool,
    /// Dimensions of the `omega`-parts of the socle and cosocle.
    pub socle_dim: usize,
    pub cosocle_dim: usize,
    /// No other character occurs in socle or cosocle.
    pub socle_is_omega: bool,
}

impl Envelope {
    pub fn holds(&self) -> bool {
        self.dim as u64 == self.expected_dim
            && self.idempotent
            && self.nilpotent
            && self.free_rank_one
            && self.socle_dim == 1
            && self.cosocle_dim == 1
            && self.socle_is_omega
    }
}

pub fn projective_envelope(inst: &Instance, j: u64) -> Envelope {
    let f = inst.field();
    let n = (inst.q() - 1) as usize;
    let omega = MultChar::omega(inst, j);
    let e = block_idempotent(inst, omega);
    let idempotent = convolve(f, &e, &e) == e;
    let mut p = Subspace::new(n);
    for k in 0..n {
        p.insert(f, &shift(&e, k));
    }
    let dim = p.dim();
    // g_l - 1 as a group-algebra element
    let mut gm1 = vec![f.zero(); n];
    gm1[0] = f.neg(&f.one());
    let np = inst.n_prime() as usize;
    gm1[np % n] = f.add(&gm1[np % n], &f.one());
    let la = inst.ell_part() as usize;
    let mut powers = vec![e.clone()];
    for _ in 1..=la {
        let next = convolve(f, powers.last().unwrap(), &gm1);
        powers.push(next);
    }
    let nilpotent = linalg::is_zero_vec(f, &powers[la]);
    let mut span = Subspace::new(n);
    let independent = powers[..la].iter().all(|v| span.insert(f, v));
    let free_rank_one = independent && span.dim() == dim && powers[..la].iter().all(|v| p.contains(f, v));
    // g acting on P by convolution with the generator
    let basis = p.basis().to_vec();
    let g_mat: Matrix = {
        let cols: Vec<Vec<Fe>> = basis.iter().map(|b| p.coords(f, &shift(b, 1)).expect("P is stable")).collect();
        linalg::transpose(&cols)
    };
    let t = inst.tower();
    let g1 = t.exp1(1);
    let eigen_dim = |c: &Fe| {
        let mut m = g_mat.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = f.sub(&row[i], c);
        }
        (dim - linalg::rank(f, &m), dim - linalg::rank(f, &linalg::transpose(&m)))
    };
    let (socle_dim, cosocle_dim) = eigen_dim(&omega.eval_label(inst, g1).unwrap());
    let socle_is_omega = (0..inst.n_prime())
        .filter(|&k| k != j)
        .all(|k| eigen_dim(&MultChar::omega(inst, k).eval_label(inst, g1).unwrap()) == (0, 0));
    Envelope {
        omega: j,
        dim,
        expected_dim: inst.ell_part(),
        idempotent,
        nilpotent,
        free_rank_one,
        socle_dim,
        cosocle_dim,
        socle_is_omega,
    }
}

/// The coordinate functions `x -> [u^k] W'(x)` for `W'` in the Whittaker
/// models of all `P(omega)` with respect to `psi^{-1}` span every function
/// on `F_q^×`.
pub fn completeness_check_g1(inst: &Instance) -> bool {
    let ring = BlockRing::for_instance(inst);
    let f = inst.field();
    let units: Vec<u32> = inst.tower().units().collect();
    let mut rows: Matrix = Vec::new();
    for j in 0..inst.n_prime() {
        let wp = whittaker_p(inst, &ring, MultChar::omega(inst, j));
        for k in 0..ring.len() {
            rows.push(units.iter().map(|&x| wp[x as usize].0[k].clone()).collect());
        }
    }
    rows.len() == units.len() && linalg::rank(f, &rows) == units.len()
}

/// Pairs of classes whose rows agree.
pub fn collisions<T: PartialEq>(classes: &[u64], rows: &[Vec<T>]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            if rows[a] == rows[b] {
                out.push((classes[a], classes[b]));
            }
        }
    }
    out
}

/// Which Bessel function the closed forms use: the norm-fiber sum or the
/// one read off the validated Whittaker model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BesselSource {
    NormFiber,
    Model,
}

#[derive(Debug, Clone, Serialize)]
pub struct TildeRow {
    pub i: u64,
    pub values: Vec<BlockValue>,
}

/// Separation of cuspidal classes by `gamma~` under one Bessel convention.
#[derive(Debug, Clone, Serialize)]
pub struct TildeSide {
    pub source: BesselSource,
    pub rows: Vec<TildeRow>,
    /// Pairs of cuspidal classes with equal naive rows.
    pub naive_collisions: Vec<(u64, u64)>,
    /// Pairs of cuspidal classes with equal `gamma~` rows.
    pub unseparated: Vec<(u64, u64)>,
    /// Augmentation equals the naive gamma factor of the same convention.
    pub augmentation_ok: bool,
    pub units_ok: bool,
    /// Unseparated pairs after rescaling each column by a unit.
    pub rescaled_unseparated: Vec<(u64, u64)>,
    /// The closed form equals the functional-equation solve over `R(omega)`.
    pub fe_ok: Option<bool>,
}

impl TildeSide {
    pub fn holds(&self) -> bool {
        self.unseparated.is_empty()
            && self.augmentation_ok
            && self.units_ok
            && self.rescaled_unseparated == self.unseparated
            && self.fe_ok != Some(false)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TildeReport {
    pub ell: u64,
    pub q: u64,
    pub ell_part: u64,
    pub cuspidal_classes: Vec<u64>,
    pub norm_fiber: TildeSide,
    pub model: Option<TildeSide>,
}

fn rescaled_collisions(ring: &BlockRing, classes: &[u64], rows: &[Vec<BlockElem>]) -> Vec<(u64, u64)> {
    let one_u = ring.add(&ring.one(), &ring.u());
    let scaled: Vec<Vec<BlockElem>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(j, v)| ring.mul(v, &ring.pow(&one_u, j as u64 + 1)))
                .collect()
        })
        .collect();
    collisions(classes, &scaled)
}

fn side(
    inst: &Instance,
    ring: &BlockRing,
    source: BesselSource,
    classes: &[u64],
    rows: Vec<Vec<BlockElem>>,
    naive: &[Vec<Fe>],
    fe_ok: Option<bool>,
) -> TildeSide {
    let augmentation_ok = rows
        .iter()
        .zip(naive)
        .all(|(r, n)| r.iter().zip(n).all(|(v, g)| ring.augmentation(v) == *g));
    let units_ok = rows.iter().flatten().all(|v| ring.is_unit(v));
    TildeSide {
        source,
        naive_collisions: collisions(classes, naive),
        unseparated: collisions(classes, &rows),
        rescaled_unseparated: rescaled_collisions(ring, classes, &rows),
        rows: classes
            .iter()
            .zip(&rows)
            .map(|(&i, r)| TildeRow {
                i,
                values: r.iter().map(|v| BlockValue::new(inst, v)).collect(),
            })
            .collect(),
        augmentation_ok,
        units_ok,
        fe_ok,
    }
}

pub fn cuspidal_classes(inst: &Instance) -> Vec<u64> {
    search::classes(inst).into_iter().filter(|c| c.cuspidal).map(|c| c.rep).collect()
}

/// `gamma~` for every cuspidal class and every `omega_j`, with the
/// norm-fiber Bessel function and, when `with_model`, the model's Bessel
/// function re-verified by the functional equation over `R(omega)`.
pub fn verify_converse_tilde(inst: &Instance, with_model: bool) -> Result<TildeReport, FeError> {
    let ring = BlockRing::for_instance(inst);
    let classes = cuspidal_classes(inst);
    let np = inst.n_prime();
    let gt = GaussTable::new(inst);
    let naive: Vec<Vec<Fe>> = classes.iter().map(|&i| (0..np).map(|j| gt.gamma(inst, i, j)).collect()).collect();
    let rows: Vec<Vec<BlockElem>> = classes
        .iter()
        .map(|&i| {
            let jt = gauss::bessel_j(inst, i);
            (0..np).map(|j| gamma_tilde_closed(inst, &ring, &jt, j)).collect()
        })
        .collect();
    let norm_fiber = side(inst, &ring, BesselSource::NormFiber, &classes, rows, &naive, None);
    let model = if with_model {
        let group = MatGroup::gl2(inst.tower());
        let ind = whittaker_space(inst, &group, AddChar::PSI);
        let mut rows = Vec::new();
        let mut naive = Vec::new();
        let mut fe_ok = true;
        for &i in &classes {
            let m = gl2::cuspidal_whittaker(inst, &ind, i, AddChar::PSI)?;
            let jt = gl2::model_bessel_j(inst, i, AddChar::PSI);
            let mut row = Vec::new();
            let mut nrow = Vec::new();
            for j in 0..np {
                let closed = gamma_tilde_closed(inst, &ring, &jt, j);
                fe_ok &= gamma_tilde_fe(inst, &ring, &m, j)? == closed;
                nrow.push(fe::fe_gamma_oracle(inst, &m, j)?.value);
                row.push(closed);
            }
            rows.push(row);
            naive.push(nrow);
        }
        Some(side(inst, &ring, BesselSource::Model, &classes, rows, &naive, Some(fe_ok)))
    } else {
        None
    };
    Ok(TildeReport {
        ell: inst.ell(),
        q: inst.q(),
        ell_part: inst.ell_part(),
        cuspidal_classes: classes,
        norm_fiber,
        model,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring_elem(f: &FieldCtx, v: &[i64]) -> BlockElem {
        BlockElem(v.iter().map(|&c| f.from_int(c)).collect())
    }

    proptest! {
        #[test]
        fn block_ring_axioms(a in proptest::collection::vec(0i64..5, 4), b in proptest::collection::vec(0i64..5, 4), c in proptest::collection::vec(0i64..5, 4)) {
            let f = FieldCtx::new(5, 1).unwrap();
            let r = BlockRing::new(&f, 4);
            let (a, b, c) = (ring_elem(&f, &a), ring_elem(&f, &b), ring_elem(&f, &c));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
            match r.inv(&a) {
                Some(ai) => prop_assert!(f.is_one(&r.mul(&a, &ai).0[0]) && r.mul(&a, &ai) == r.one()),
                None => prop_assert!(!r.is_unit(&a)),
            }
            prop_assert_eq!(r.augmentation(&r.mul(&a, &b)), f.mul(&r.augmentation(&a), &r.augmentation(&b)));
        }
    }

    #[test]
    fn u_is_nilpotent_of_exact_order() {
        let f = FieldCtx::new(3, 1).unwrap();
        let r = BlockRing::new(&f, 3);
        assert!(!r.is_zero(&r.pow(&r.u(), 2)));
        assert!(r.is_zero(&r.pow(&r.u(), 3)));
        // (1+u)^3 = 1 in characteristic 3
        let one_u = r.add(&r.one(), &r.u());
        assert_eq!(r.pow(&one_u, 3), r.one());
    }

    #[test]
    fn envelopes() {
        for (ell, q) in [(2, 5), (3, 7), (2, 3), (5, 11), (2, 17), (3, 5), (2, 7)] {
            let inst = Instance::new(ell, q).unwrap();
            for j in 0..inst.n_prime() {
                let p = projective_envelope(&inst, j);
                assert!(p.holds(), "({ell},{q}) {p:?}");
            }
        }
    }

    #[test]
    fn whittaker_p_reduces_to_the_character() {
        for (ell, q) in [(2, 5), (3, 7), (5, 11), (3, 5)] {
            let inst = Instance::new(ell, q).unwrap();
            let ring = BlockRing::for_instance(&inst);
            for j in 0..inst.n_prime() {
                let om = MultChar::omega(&inst, j);
                let wp = whittaker_p(&inst, &ring, om);
                assert_eq!(wp[1], ring.one());
                for x in inst.tower().units() {
                    assert_eq!(ring.augmentation(&wp[x as usize]), om.eval_label(&inst, x).unwrap());
                }
            }
        }
    }

    #[test]
    fn completeness() {
        for (ell, q) in [(2, 5), (3, 7), (2, 17), (3, 19), (5, 11), (3, 5)] {
            assert!(completeness_check_g1(&Instance::new(ell, q).unwrap()), "({ell},{q})");
        }
    }

    #[test]
    fn trivial_block_gives_the_naive_gamma() {
        let inst = Instance::new(5, 7).unwrap();
        let r = verify_converse_tilde(&inst, false).unwrap();
        assert_eq!(r.ell_part, 1);
        assert!(r.norm_fiber.holds());
    }

    #[test]
    fn separates_the_counterexamples() {
        for (ell, q) in [(2, 5), (3, 7)] {
            let inst = Instance::new(ell, q).unwrap();
            let r = verify_converse_tilde(&inst, true).unwrap();
            assert!(!r.norm_fiber.naive_collisions.is_empty());
            assert!(r.norm_fiber.holds(), "({ell},{q}) {:?}", r.norm_fiber.unseparated);
            let m = r.model.unwrap();
            assert!(m.holds(), "({ell},{q}) {:?}", m.unseparated);
            assert_eq!(m.fe_ok, Some(true));
        }
    }
}
