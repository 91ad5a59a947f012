//! The `l`-regular gamma factor: sums over the `l`-regular subgroup
//! `G_1^l` of `F_q^×`, the `l`-regular Whittaker model on
//! `G_2^l = det^{-1}(G_1^l)` and separation of cuspidal classes.

use serde::Serialize;

use crate::block::{self, collisions, cuspidal_classes, BesselSource};
use crate::characters::{AddChar, MultChar};
use crate::fe::{self, FeError};
use crate::field::Fe;
use crate::gauss::{self, GaussTable};
use crate::gl2::{self, diag, unipotent, whittaker_space, Mat, MatGroup, SmallRep};
use crate::instance::Instance;
use crate::linalg::{Subspace, Vector};
use crate::ring::Ring;

#[derive(Debug, Clone, Serialize)]
pub struct EllRegularContext {
    pub ell: u64,
    pub q: u64,
    /// `G_1^l` as labels, starting at 1.
    pub elements: Vec<u32>,
    /// `[P_2 : P_2^l]`, the `l`-part of `q - 1`.
    pub r: u64,
}

impl EllRegularContext {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

pub fn ell_regular_subgroup(inst: &Instance) -> EllRegularContext {
    EllRegularContext {
        ell: inst.ell(),
        q: inst.q(),
        elements: block::ell_regular_units(inst),
        r: inst.ell_part(),
    }
}

/// `gamma^l(rho x omega_j) = sum_{x in G_1^l} J(x) omega_j^{-1}(x)` for a
/// Bessel function `J` indexed by label.
pub fn gamma_ell_regular(inst: &Instance, bessel: &[Fe], j: u64) -> Fe {
    let f = inst.field();
    let om = MultChar::omega(inst, j).inverse();
    f.sum(
        block::ell_regular_units(inst)
            .into_iter()
            .map(|x| f.mul(&bessel[x as usize], &om.eval_label(inst, x).unwrap())),
    )
}

/// `G_2^l`.
pub fn ell_regular_group<'a>(inst: &'a Instance) -> MatGroup<'a> {
    MatGroup::filtered(inst.tower(), |g| in_ell_regular_group(inst, g))
}

/// Upper and lower unipotents over a prime basis and `diag(c, 1)` for a
/// generator `c` of `G_1^l`.
pub fn ell_regular_generators(inst: &Instance) -> Vec<Mat> {
    let t = inst.tower();
    let mut gens: Vec<Mat> = t.prime_basis().into_iter().flat_map(|x| [unipotent(x), [1, 0, x, 1]]).collect();
    gens.push(diag(t.exp1(inst.ell_part()), 1));
    gens
}

/// The `G_2^l`-span of a Whittaker function, as functions on `G_2`. The
/// dual integral evaluates at `(0 1; x 0)`, whose determinant `-x` need not
/// be `l`-regular, so the functions are kept on all of `G_2`;
/// `restricted_dim` records that restriction to `G_2^l` is injective.
pub struct EllRegularModel<'a> {
    pub group: &'a MatGroup<'a>,
    pub bessel: Vec<Fe>,
    pub span: Subspace,
    pub restricted_dim: usize,
}

impl EllRegularModel<'_> {
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// Right translation by `g`.
    pub fn translate(&self, v: &[Fe], g: Mat) -> Vector {
        self.group
            .elems()
            .iter()
            .map(|&h| v[self.group.index_of(self.group.mul(h, g)).unwrap()].clone())
            .collect()
    }

    pub fn small_rep(&self, inst: &Instance, gens: &[Mat]) -> SmallRep {
        let f = inst.field();
        let mats = gens
            .iter()
            .map(|&g| {
                let cols: Vec<Vector> = self
                    .span
                    .basis()
                    .iter()
                    .map(|b| self.span.coords(f, &self.translate(b, g)).expect("span is stable"))
                    .collect();
                crate::linalg::transpose(&cols)
            })
            .collect();
        SmallRep {
            dim: self.dim(),
            gens: mats,
        }
    }
}

pub fn ell_regular_model<'a>(inst: &Instance, group: &'a MatGroup<'a>, table: &[Fe]) -> EllRegularModel<'a> {
    let f = inst.field();
    let mut model = EllRegularModel {
        group,
        bessel: table.to_vec(),
        span: Subspace::new(group.len()),
        restricted_dim: 0,
    };
    model.span.insert(f, table);
    let gens = ell_regular_generators(inst);
    let mut queue = vec![table.to_vec()];
    while let Some(v) = queue.pop() {
        for &g in &gens {
            let w = model.translate(&v, g);
            if model.span.insert(f, &w) {
                queue.push(w);
            }
        }
    }
    let sub: Vec<usize> = (0..group.len()).filter(|&k| in_ell_regular_group(inst, group.elems()[k])).collect();
    let mut restricted = Subspace::new(sub.len());
    for b in model.span.basis() {
        restricted.insert(f, &sub.iter().map(|&k| b[k].clone()).collect::<Vec<_>>());
    }
    model.restricted_dim = restricted.dim();
    model
}

/// `gamma^l` from `I^l(W, omega) gamma = I~^l(W, omega)`,
/// `I^l = sum_{x in G_1^l} W(diag(x, 1)) omega^{-1}(x)` and
/// `I~^l = sum_{x in G_1^l} W((0 1; x 0)) omega^{-1}(x)`, over the Bessel
/// vector and a basis of the model.
pub fn gamma_ell_regular_fe(inst: &Instance, model: &EllRegularModel, j: u64) -> Result<Fe, FeError> {
    let f = inst.field();
    let om = MultChar::omega(inst, j).inverse();
    let units = block::ell_regular_units(inst);
    let pairing = |w: &[Fe], at: &dyn Fn(u32) -> Mat| {
        f.sum(units.iter().map(|&x| {
            let g = model.group.index_of(at(x)).unwrap();
            f.mul(&w[g], &om.eval_label(inst, x).unwrap())
        }))
    };
    let mut ws = vec![model.bessel.clone()];
    ws.extend(model.span.basis().iter().cloned());
    let pairs: Vec<(Fe, Fe)> = ws
        .iter()
        .map(|w| (pairing(w, &|x| diag(x, 1)), pairing(w, &|x| [0, 1, x, 0])))
        .collect();
    fe::solve_scalar(f, &pairs)
}

/// `dim bil_{G_1^l}(W^l ⊗ omega_j, 1)`.
pub fn bil_dim_ell(inst: &Instance, model: &EllRegularModel, j: u64) -> usize {
    let c = inst.tower().exp1(inst.ell_part());
    let a = model.small_rep(inst, &[diag(c, 1)]);
    let om = MultChar::omega(inst, j).inverse().eval_label(inst, c).unwrap();
    fe::bil_space_dim(inst.field(), &a, &SmallRep::scalar(&[om]), &[inst.field().one()])
}

#[derive(Debug, Clone, Serialize)]
pub struct CliffordData {
    /// `[P_2 : P_2^l]`, the `l`-part of `q - 1`.
    pub r: u64,
    /// `(q - 1) / dim W^l`, the number of constituents of `rho|G_2^l`
    /// implied by the observed model.
    pub observed_constituents: u64,
    /// `a` with `psi_a(x) = psi(a x)` occurring in `W^l` as an `N_2`-character.
    pub characters: Vec<u32>,
    /// No `N_2`-character occurs twice and the trivial one does not occur.
    pub multiplicity_free: bool,
    /// The characters are exactly the `G_1^l`-orbit of `psi`.
    pub matches_orbit: bool,
}

/// `N_2`-isotypic decomposition of the model.
pub fn clifford_data(inst: &Instance, model: &EllRegularModel) -> CliffordData {
    let f = inst.field();
    let t = inst.tower();
    let basis = t.prime_basis();
    let gens: Vec<Mat> = basis.iter().map(|&x| unipotent(x)).collect();
    let rep = model.small_rep(inst, &gens);
    let mut characters = Vec::new();
    let mut total = 0;
    let mut multiplicity_free = true;
    for a in 0..inst.q() as u32 {
        // joint eigenspace of n(x) with eigenvalue psi(a x)
        let mut rows = Vec::new();
        for (m, &x) in rep.gens.iter().zip(&basis) {
            let c = AddChar::PSI.eval(inst, t.mul(a, x));
            for (i, row) in m.iter().enumerate() {
                let mut r = row.clone();
                r[i] = f.sub(&r[i], &c);
                rows.push(r);
            }
        }
        let mult = rep.dim - crate::linalg::rank(f, &rows);
        if mult > 0 {
            characters.push(a);
            total += mult;
            multiplicity_free &= mult == 1 && a != 0;
        }
    }
    multiplicity_free &= total == rep.dim;
    let mut orbit = block::ell_regular_units(inst);
    orbit.sort_unstable();
    CliffordData {
        r: inst.ell_part(),
        observed_constituents: (inst.q() - 1) / rep.dim.max(1) as u64,
        matches_orbit: characters == orbit,
        characters,
        multiplicity_free,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EllRegSide {
    pub source: BesselSource,
    pub rows: Vec<(u64, Vec<Fe>)>,
    pub unseparated: Vec<(u64, u64)>,
    pub nonzero: bool,
    /// With `l ∤ q - 1`: equality with the naive gamma of the same convention.
    pub matches_naive: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EllRegModelChecks {
    /// Dimensions of the restricted models, expected `n'`.
    pub dims: Vec<usize>,
    /// Dimensions after restriction to `G_2^l`, expected `n'`.
    pub restricted_dims: Vec<usize>,
    pub bil_dims: Vec<usize>,
    pub fe_ok: bool,
    pub clifford: Vec<CliffordData>,
}

impl EllRegModelChecks {
    pub fn holds(&self, n_prime: u64) -> bool {
        self.dims.iter().chain(&self.restricted_dims).all(|&d| d as u64 == n_prime)
            && self.bil_dims.iter().all(|&d| d == 1)
            && self.fe_ok
            && self.clifford.iter().all(|c| c.multiplicity_free && c.matches_orbit)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EllRegReport {
    pub ell: u64,
    pub q: u64,
    pub context: EllRegularContext,
    pub cuspidal_classes: Vec<u64>,
    pub naive_collisions: Vec<(u64, u64)>,
    pub norm_fiber: EllRegSide,
    pub model: Option<EllRegSide>,
    pub checks: Option<EllRegModelChecks>,
}

impl EllRegReport {
    /// Nonzero values, separation, and agreement with the naive factor when
    /// `l ∤ q - 1`, under both Bessel conventions.
    pub fn separates(&self) -> bool {
        let side_ok = |s: &EllRegSide| s.unseparated.is_empty() && s.nonzero && s.matches_naive != Some(false);
        side_ok(&self.norm_fiber) && self.model.as_ref().is_none_or(side_ok)
    }

    pub fn holds(&self) -> bool {
        self.separates() && self.checks.as_ref().is_none_or(|c| c.holds(self.context.order()))
    }
}

fn side(inst: &Instance, source: BesselSource, classes: &[u64], rows: Vec<Vec<Fe>>, naive: &[Vec<Fe>]) -> EllRegSide {
    let f = inst.field();
    EllRegSide {
        source,
        unseparated: collisions(classes, &rows),
        nonzero: rows.iter().flatten().all(|v| !f.is_zero(v)),
        matches_naive: ((inst.q() - 1) % inst.ell() != 0).then(|| rows == naive),
        rows: classes
            .iter()
            .zip(&rows)
            .map(|(&i, r)| (i, r.clone()))
            .collect(),
    }
}

pub fn verify_converse_ellreg(inst: &Instance, with_model: bool) -> Result<EllRegReport, FeError> {
    let classes = cuspidal_classes(inst);
    let np = inst.n_prime();
    let gt = GaussTable::new(inst);
    let naive: Vec<Vec<Fe>> = classes.iter().map(|&i| (0..np).map(|j| gt.gamma(inst, i, j)).collect()).collect();
    let rows: Vec<Vec<Fe>> = classes
        .iter()
        .map(|&i| {
            let jt = gauss::bessel_j(inst, i);
            (0..np).map(|j| gamma_ell_regular(inst, &jt, j)).collect()
        })
        .collect();
    let norm_fiber = side(inst, BesselSource::NormFiber, &classes, rows, &naive);
    let (model, checks) = if with_model {
        let full = MatGroup::gl2(inst.tower());
        let ind = whittaker_space(inst, &full, AddChar::PSI);
        let mut rows = Vec::new();
        let mut naive = Vec::new();
        let mut checks = EllRegModelChecks {
            dims: Vec::new(),
            restricted_dims: Vec::new(),
            bil_dims: Vec::new(),
            fe_ok: true,
            clifford: Vec::new(),
        };
        for &i in &classes {
            let m = gl2::cuspidal_whittaker(inst, &ind, i, AddChar::PSI)?;
            let jt = gl2::model_bessel_j(inst, i, AddChar::PSI);
            let reg = ell_regular_model(inst, &full, &m.table);
            checks.dims.push(reg.dim());
            checks.restricted_dims.push(reg.restricted_dim);
            checks.clifford.push(clifford_data(inst, &reg));
            let mut row = Vec::new();
            let mut nrow = Vec::new();
            for j in 0..np {
                let closed = gamma_ell_regular(inst, &jt, j);
                checks.fe_ok &= gamma_ell_regular_fe(inst, &reg, j).is_ok_and(|g| g == closed);
                checks.bil_dims.push(bil_dim_ell(inst, &reg, j));
                nrow.push(fe::fe_gamma_oracle(inst, &m, j)?.value);
                row.push(closed);
            }
            rows.push(row);
            naive.push(nrow);
        }
        (Some(side(inst, BesselSource::Model, &classes, rows, &naive)), Some(checks))
    } else {
        (None, None)
    };
    let gt_rows = collisions(&classes, &naive);
    Ok(EllRegReport {
        ell: inst.ell(),
        q: inst.q(),
        context: ell_regular_subgroup(inst),
        cuspidal_classes: classes,
        naive_collisions: gt_rows,
        norm_fiber,
        model,
        checks,
    })
}

/// Whether `g` lies in `G_2^l`.
pub fn in_ell_regular_group(inst: &Instance, g: Mat) -> bool {
    let t = inst.tower();
    let d = gl2::det(t, g);
    t.log1(d) as u64 % inst.ell_part() == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl2::mat_mul;

    #[test]
    fn subgroup_orders() {
        for (ell, q, order, r) in [(2, 5, 1, 4), (3, 7, 2, 3), (5, 7, 6, 1), (2, 17, 1, 16), (5, 11, 2, 5)] {
            let c = ell_regular_subgroup(&Instance::new(ell, q).unwrap());
            assert_eq!((c.order(), c.r), (order, r));
            assert_eq!(c.order() * c.r, q - 1);
            assert_eq!(c.elements[0], 1);
        }
        let c = ell_regular_subgroup(&Instance::new(3, 7).unwrap());
        let t = crate::tower::FqTower::new(7).unwrap();
        assert_eq!(c.elements, vec![1, t.neg(1)]);
    }

    #[test]
    fn group_is_the_determinant_preimage() {
        for (ell, q) in [(2, 5), (3, 7), (2, 3)] {
            let inst = Instance::new(ell, q).unwrap();
            let g = ell_regular_group(&inst);
            assert_eq!(g.len() as u64 * inst.ell_part(), (q * q - 1) * (q * q - q));
            assert!(g.elems().iter().all(|&h| in_ell_regular_group(&inst, h)));
            for &a in &ell_regular_generators(&inst) {
                assert!(g.contains(a));
                assert!(g.elems().iter().take(20).all(|&h| g.contains(mat_mul(inst.tower(), h, a))));
            }
        }
    }

    #[test]
    fn trivial_l_part_gives_the_naive_gamma() {
        for (ell, q) in [(5, 7), (3, 5), (5, 3), (3, 2)] {
            let inst = Instance::new(ell, q).unwrap();
            let r = verify_converse_ellreg(&inst, true).unwrap();
            assert_eq!(r.norm_fiber.matches_naive, Some(true));
            assert_eq!(r.model.as_ref().unwrap().matches_naive, Some(true));
            assert!(r.holds(), "({ell},{q})");
        }
    }

    #[test]
    fn single_term_at_2_5() {
        let inst = Instance::new(2, 5).unwrap();
        for i in [0, 1] {
            let jt = gauss::bessel_j(&inst, i);
            assert_eq!(gamma_ell_regular(&inst, &jt, 0), jt[1]);
        }
    }

    #[test]
    fn separates_the_counterexamples() {
        for (ell, q) in [(2, 5), (3, 7)] {
            let inst = Instance::new(ell, q).unwrap();
            let r = verify_converse_ellreg(&inst, true).unwrap();
            assert!(!r.naive_collisions.is_empty());
            assert!(r.separates(), "({ell},{q})");
        }
    }

    #[test]
    fn ell_regular_span_of_the_bessel_vector() {
        // SL_2(F_q) is perfect for q > 3 and lies in G_2^l, so it cannot act
        // on a line through the psi-eigenvector: the span exceeds n'
        let inst = Instance::new(2, 5).unwrap();
        let c = verify_converse_ellreg(&inst, true).unwrap().checks.unwrap();
        assert_eq!(c.dims, vec![2, 4]);
        assert_eq!(c.restricted_dims, vec![2, 4]);
        assert_eq!(c.bil_dims, vec![2, 4]);
        assert!(!c.fe_ok);
        assert!(c.clifford.iter().all(|d| d.multiplicity_free && !d.matches_orbit));
        let inst = Instance::new(3, 7).unwrap();
        let c = verify_converse_ellreg(&inst, true).unwrap().checks.unwrap();
        assert!(c.dims.iter().all(|&d| d == 6));
        assert!(c.bil_dims.iter().all(|&d| d == 3));
        assert!(!c.fe_ok);
        assert!(!c.holds(inst.n_prime()));
    }
}
