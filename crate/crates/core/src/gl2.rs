//! Brute-force models of representations of `GL_1` and `GL_2` over `F_q`.
//!
//! Groups are enumerated explicitly. Representations are subspaces of
//! induced modules `Ind_H^G chi`, written in the basis of functions supported
//! on single cosets `H r`. Everything here is independent of the Gauss-sum
//! formula and serves as the oracle for it.

use crate::characters::{AddChar, MultChar};
use crate::field::{Fe, FieldCtx};
use crate::gauss;
use crate::instance::Instance;
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::tower::FqTower;

/// `[a, b, c, d]` for the matrix `(a b; c d)`, entries as `F_q` labels.
pub type Mat = [u32; 4];

pub fn mat_mul(t: &FqTower, x: Mat, y: Mat) -> Mat {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    [
        t.add(t.mul(a, e), t.mul(b, g)),
        t.add(t.mul(a, f), t.mul(b, h)),
        t.add(t.mul(c, e), t.mul(d, g)),
        t.add(t.mul(c, f), t.mul(d, h)),
    ]
}

pub fn det(t: &FqTower, x: Mat) -> u32 {
    t.sub(t.mul(x[0], x[3]), t.mul(x[1], x[2]))
}

pub fn mat_inv(t: &FqTower, x: Mat) -> Mat {
    let di = t.inv(det(t, x));
    let [a, b, c, d] = x;
    [t.mul(d, di), t.mul(t.neg(b), di), t.mul(t.neg(c), di), t.mul(a, di)]
}

pub fn transpose(x: Mat) -> Mat {
    [x[0], x[2], x[1], x[3]]
}

pub fn unipotent(x: u32) -> Mat {
    [1, x, 0, 1]
}

pub fn diag(a: u32, d: u32) -> Mat {
    [a, 0, 0, d]
}

/// The long Weyl element `(0 1; 1 0)`.
pub const W2: Mat = [0, 1, 1, 0];

/// Bruhat data: `g = n(x) diag(a, d)` or `g = n(x) (0 s; t 0) n(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bruhat {
    Upper { x: u32, a: u32, d: u32 },
    Big { x: u32, s: u32, t: u32, y: u32 },
}

pub fn bruhat(t: &FqTower, g: Mat) -> Bruhat {
    let [a, b, c, d] = g;
    if c == 0 {
        Bruhat::Upper {
            x: t.mul(b, t.inv(d)),
            a,
            d,
        }
    } else {
        let ci = t.inv(c);
        Bruhat::Big {
            x: t.mul(a, ci),
            s: t.neg(t.mul(det(t, g), ci)),
            t: c,
            y: t.mul(d, ci),
        }
    }
}

pub fn bruhat_compose(t: &FqTower, b: Bruhat) -> Mat {
    match b {
        Bruhat::Upper { x, a, d } => mat_mul(t, unipotent(x), diag(a, d)),
        Bruhat::Big { x, s, t: tt, y } => {
            mat_mul(t, mat_mul(t, unipotent(x), [0, s, tt, 0]), unipotent(y))
        }
    }
}

/// A finite subgroup of `GL_2(F_q)` listed element by element.
#[derive(Debug)]
pub struct MatGroup<'a> {
    t: &'a FqTower,
    elems: Vec<Mat>,
    index: Vec<u32>,
}

impl<'a> MatGroup<'a> {
    /// All invertible matrices satisfying `keep`.
    pub fn filtered(t: &'a FqTower, keep: impl Fn(Mat) -> bool) -> MatGroup<'a> {
        let q = t.q();
        let mut elems = Vec::new();
        let mut index = vec![u32::MAX; (q as usize).pow(4)];
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let g = [a, b, c, d];
                        if det(t, g) != 0 && keep(g) {
                            index[Self::key(q, g)] = elems.len() as u32;
                            elems.push(g);
                        }
                    }
                }
            }
        }
        MatGroup { t, elems, index }
    }

    pub fn gl2(t: &'a FqTower) -> MatGroup<'a> {
        Self::filtered(t, |_| true)
    }

    /// The mirabolic subgroup `P_2`: bottom row `(0, 1)`.
    pub fn mirabolic(t: &'a FqTower) -> MatGroup<'a> {
        Self::filtered(t, |g| g[2] == 0 && g[3] == 1)
    }

    /// Upper unipotent `N_2`.
    pub fn unipotent_radical(t: &'a FqTower) -> MatGroup<'a> {
        Self::filtered(t, |g| g[0] == 1 && g[2] == 0 && g[3] == 1)
    }

    fn key(q: u32, g: Mat) -> usize {
        let q = q as usize;
        ((g[0] as usize * q + g[1] as usize) * q + g[2] as usize) * q + g[3] as usize
    }

    pub fn tower(&self) -> &'a FqTower {
        self.t
    }

    pub fn elems(&self) -> &[Mat] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, g: Mat) -> Option<usize> {
        let i = self.index[Self::key(self.t.q(), g)];
        (i != u32::MAX).then_some(i as usize)
    }

    pub fn contains(&self, g: Mat) -> bool {
        self.index_of(g).is_some()
    }

    pub fn mul(&self, x: Mat, y: Mat) -> Mat {
        mat_mul(self.t, x, y)
    }
}

/// Generators of `GL_2(F_q)`.
pub fn gl2_generators(t: &FqTower) -> Vec<Mat> {
    let g1 = t.exp1(1);
    let mut gens = vec![diag(g1, 1), diag(1, g1), W2];
    gens.extend(t.prime_basis().into_iter().map(unipotent));
    gens
}

/// Generators of the mirabolic subgroup `P_2`.
pub fn mirabolic_generators(t: &FqTower) -> Vec<Mat> {
    let mut gens = vec![diag(t.exp1(1), 1)];
    gens.extend(t.prime_basis().into_iter().map(unipotent));
    gens
}

/// Right translation by `g` on `Ind_H^G chi`, as a monomial matrix.
#[derive(Debug, Clone)]
pub struct Monomial {
    target: Vec<usize>,
    scale: Vec<Fe>,
}

impl Monomial {
    pub fn apply(&self, f: &FieldCtx, v: &[Fe]) -> Vector {
        let mut out = vec![f.zero(); v.len()];
        for (r, x) in v.iter().enumerate() {
            if !f.is_zero(x) {
                out[self.target[r]] = f.mul(x, &self.scale[r]);
            }
        }
        out
    }
}

/// `Ind_H^G chi = {f : f(h g) = chi(h) f(g)}` with right translation.
pub struct InducedModule<'a> {
    pub group: &'a MatGroup<'a>,
    field: &'a FieldCtx,
    reps: Vec<Mat>,
    /// for each element g = h r: (index of r, chi(h))
    decomp: Vec<(usize, Fe)>,
}

impl<'a> InducedModule<'a> {
    /// `chi` must be a character of the subgroup cut out by `in_sub`.
    pub fn new(
        group: &'a MatGroup<'a>,
        field: &'a FieldCtx,
        in_sub: impl Fn(Mat) -> bool,
        chi: impl Fn(Mat) -> Fe,
    ) -> InducedModule<'a> {
        let sub: Vec<(Mat, Fe)> = group
            .elems()
            .iter()
            .filter(|&&h| in_sub(h))
            .map(|&h| (h, chi(h)))
            .collect();
        let mut decomp: Vec<Option<(usize, Fe)>> = vec![None; group.len()];
        let mut reps = Vec::new();
        for (gi, &g) in group.elems().iter().enumerate() {
            if decomp[gi].is_some() {
                continue;
            }
            let r = reps.len();
            reps.push(g);
            for (h, c) in &sub {
                let hg = group.index_of(group.mul(*h, g)).expect("subgroup of the group");
                decomp[hg] = Some((r, c.clone()));
            }
        }
        InducedModule {
            group,
            field,
            reps,
            decomp: decomp.into_iter().map(|d| d.expect("cosets cover")).collect(),
        }
    }

    pub fn field(&self) -> &'a FieldCtx {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Mat] {
        &self.reps
    }

    /// `(r, chi(h))` with `g = h reps[r]`.
    pub fn decompose(&self, g: Mat) -> &(usize, Fe) {
        &self.decomp[self.group.index_of(g).expect("element of the group")]
    }

    pub fn translation(&self, g: Mat) -> Monomial {
        let f = self.field;
        let ginv = mat_inv(self.group.tower(), g);
        let mut target = Vec::with_capacity(self.dim());
        let mut scale = Vec::with_capacity(self.dim());
        for &r in &self.reps {
            let (r2, c) = self.decompose(self.group.mul(r, ginv));
            target.push(*r2);
            scale.push(f.inv(c).expect("character values are units"));
        }
        Monomial { target, scale }
    }

    /// Evaluates the function with coordinates `v` at `g`.
    pub fn eval(&self, v: &[Fe], g: Mat) -> Fe {
        let (r, c) = self.decompose(g);
        self.field.mul(c, &v[*r])
    }

    /// Full table over the group from coordinates.
    pub fn table(&self, v: &[Fe]) -> Vec<Fe> {
        self.group.elems().iter().map(|&g| self.eval(v, g)).collect()
    }

    /// Coordinates of a table; `None` if the table is not in the module.
    pub fn coords(&self, table: &[Fe]) -> Option<Vector> {
        let v: Vector = self
            .reps
            .iter()
            .map(|&r| table[self.group.index_of(r).unwrap()].clone())
            .collect();
        (self.table(&v) == table).then_some(v)
    }
}

/// A subrepresentation of an induced module.
pub struct FunctionModule<'a> {
    pub ind: &'a InducedModule<'a>,
    pub space: Subspace,
}

impl<'a> FunctionModule<'a> {
    /// The span of the translates of `seeds` under `gens`.
    pub fn generated(ind: &'a InducedModule<'a>, seeds: &[Vector], gens: &[Mat]) -> FunctionModule<'a> {
        let f = ind.field();
        let mons: Vec<Monomial> = gens.iter().map(|&g| ind.translation(g)).collect();
        let maps: Vec<_> = mons.iter().map(|m| move |v: &[Fe]| m.apply(f, v)).collect();
        let mut space = Subspace::new(ind.dim());
        for s in seeds {
            space.insert(f, s);
        }
        space.spin(f, &maps);
        FunctionModule { ind, space }
    }

    /// The whole induced module.
    pub fn full(ind: &'a InducedModule<'a>) -> FunctionModule<'a> {
        let f = ind.field();
        let mut space = Subspace::new(ind.dim());
        for r in 0..ind.dim() {
            let mut v = vec![f.zero(); ind.dim()];
            v[r] = f.one();
            space.insert(f, &v);
        }
        FunctionModule { ind, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Matrix of `g` in the echelon basis, acting on column vectors.
    pub fn matrix_of(&self, g: Mat) -> Matrix {
        let f = self.ind.field();
        let mon = self.ind.translation(g);
        let cols: Vec<Vector> = self
            .space
            .basis()
            .iter()
            .map(|b| {
                self.space
                    .coords(f, &mon.apply(f, b))
                    .expect("module is stable under the group")
            })
            .collect();
        linalg::transpose(&cols)
    }

    /// Matrices of `gens` in the echelon basis.
    pub fn small_rep(&self, gens: &[Mat]) -> SmallRep {
        SmallRep {
            dim: self.dim(),
            gens: gens.iter().map(|&g| self.matrix_of(g)).collect(),
        }
    }

    /// Full tables of the echelon basis vectors.
    pub fn basis_tables(&self) -> Vec<Vec<Fe>> {
        self.space.basis().iter().map(|b| self.ind.table(b)).collect()
    }

    /// Function with the given coordinates in the echelon basis.
    pub fn vector(&self, coords: &[Fe]) -> Vector {
        let f = self.ind.field();
        let mut v = vec![f.zero(); self.ind.dim()];
        for (c, b) in coords.iter().zip(self.space.basis()) {
            linalg::axpy(f, &mut v, c, b);
        }
        v
    }

    /// Whether the action of `gens` has no proper nonzero invariant
    /// subspace containing `v`'s orbit-closure other than the whole space.
    pub fn spins_to_whole(&self, v: &[Fe], gens: &[Mat]) -> bool {
        FunctionModule::generated(self.ind, &[v.to_vec()], gens).dim() == self.dim()
    }
}

/// `|U|^{-1} sum_u chi(u)^{-1} rho(u)` for `U` listed with its character
/// values, as a matrix on the module. Requires `|U|` invertible.
pub fn coinvariant_projector(module: &FunctionModule, sub: &[(Mat, Fe)]) -> Option<Matrix> {
    let f = module.ind.field();
    let n = module.dim();
    let ord = f.from_int(sub.len() as i64);
    let ord_inv = f.inv(&ord).ok()?;
    let mut p = linalg::zeros(f, n, n);
    for (u, c) in sub {
        let m = module.matrix_of(*u);
        let s = f.mul(&ord_inv, &f.inv(c).ok()?);
        for (prow, mrow) in p.iter_mut().zip(&m) {
            linalg::axpy(f, prow, &s, mrow);
        }
    }
    Some(p)
}

/// A representation given by matrices of a list of generators.
#[derive(Debug, Clone)]
pub struct SmallRep {
    pub dim: usize,
    pub gens: Vec<Matrix>,
}

impl SmallRep {
    /// The one-dimensional representation with the given generator values.
    pub fn scalar(values: &[Fe]) -> SmallRep {
        SmallRep {
            dim: 1,
            gens: values.iter().map(|v| vec![vec![v.clone()]]).collect(),
        }
    }

    /// Eigenvalues of the first generator on a cyclic group, counted with
    /// multiplicity among the candidate values.
    pub fn character_multiplicities(&self, f: &FieldCtx, candidates: &[Fe]) -> Vec<usize> {
        candidates
            .iter()
            .map(|c| {
                let mut m = self.gens[0].clone();
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = f.sub(&row[i], c);
                }
                self.dim - linalg::rank(f, &m)
            })
            .collect()
    }
}

/// The image of a projector, with the action of `gens` restricted to it.
/// The projector must commute with `gens`.
pub fn restrict_to_image(module: &FunctionModule, proj: &Matrix, gens: &[Mat]) -> SmallRep {
    let f = module.ind.field();
    let mut img = Subspace::new(module.dim());
    for c in linalg::transpose(proj) {
        img.insert(f, &c);
    }
    let mats = gens
        .iter()
        .map(|&g| {
            let m = module.matrix_of(g);
            let cols: Vec<Vector> = img
                .basis()
                .iter()
                .map(|b| {
                    img.coords(f, &linalg::mat_vec(f, &m, b))
                        .expect("image is stable")
                })
                .collect();
            linalg::transpose(&cols)
        })
        .collect();
    SmallRep {
        dim: img.dim(),
        gens: mats,
    }
}

/// Character `n(x) -> psi(x)` values on `N_2`.
pub fn unipotent_character(inst: &Instance, psi: Option<AddChar>) -> Vec<(Mat, Fe)> {
    (0..inst.q() as u32)
        .map(|x| {
            let v = match psi {
                Some(p) => p.eval(inst, x),
                None => inst.field().one(),
            };
            (unipotent(x), v)
        })
        .collect()
}

/// Derivatives of a representation of `GL_2`: `V^(2)` is the
/// `(N_2, psi)`-coinvariants, `V^(1)` the `N_2`-coinvariants with the
/// residual action of `GL_1` through `diag(x, 1)`.
pub struct Derivatives {
    pub top_dim: usize,
    pub first: SmallRep,
}

pub fn derivatives(inst: &Instance, module: &FunctionModule) -> Derivatives {
    let e_psi = coinvariant_projector(module, &unipotent_character(inst, Some(AddChar::PSI)))
        .expect("p is invertible mod l");
    let e_one = coinvariant_projector(module, &unipotent_character(inst, None)).expect("p is invertible mod l");
    let f = inst.field();
    let g1 = diag(inst.tower().exp1(1), 1);
    Derivatives {
        top_dim: linalg::rank(f, &e_psi),
        first: restrict_to_image(module, &e_one, &[g1]),
    }
}

pub fn is_cuspidal(inst: &Instance, module: &FunctionModule) -> bool {
    let d = derivatives(inst, module);
    d.first.dim == 0 && d.top_dim == 1
}

/// Kernel of `rho(w)` on the Kirillov model, `w = (0 1; 1 0)`:
/// `(rho(w) f)(y) = sum_x K(xy) nu(x)^{-1} f(x)` with
/// `K(u) = -q^{-1} nu(-1) sum_{N(t) = -u} nu(t) psi(tr t)`, indexed by label.
pub fn kirillov_kernel(inst: &Instance, i: u64, psi: AddChar) -> Vec<Fe> {
    let t = inst.tower();
    let f = inst.field();
    let jx = gauss::bessel_j_with(inst, i, psi);
    let mut out = vec![f.zero(); inst.q() as usize];
    for u in t.units() {
        out[u as usize] = f.neg(&jx[t.neg(u) as usize]);
    }
    out
}

/// Bessel-vector Whittaker function of the cuspidal class of `nu_i` for the
/// additive character `psi`, as a full table over `GL_2(F_q)`.
///
/// `W(n(x) diag(a, d)) = psi(x) [a = d] nu(a)` and
/// `W(n(x) (0 s; t 0) n(y)) = psi(x) psi(y) nu(t) K(s/t)`.
pub fn bessel_table(inst: &Instance, group: &MatGroup, i: u64, psi: AddChar) -> Vec<Fe> {
    let t = inst.tower();
    let f = inst.field();
    let k = kirillov_kernel(inst, i, psi);
    let nu = MultChar::nu(inst, i);
    group
        .elems()
        .iter()
        .map(|&g| match bruhat(t, g) {
            Bruhat::Upper { x, a, d } => {
                if a == d {
                    f.mul(&psi.eval(inst, x), &nu.eval_label(inst, a).unwrap())
                } else {
                    f.zero()
                }
            }
            Bruhat::Big { x, s, t: tt, y } => {
                let ps = psi.eval(inst, t.add(x, y));
                let z = f.mul(&nu.eval_label(inst, tt).unwrap(), &k[t.mul(s, t.inv(tt)) as usize]);
                f.mul(&ps, &z)
            }
        })
        .collect()
}

/// `J(x) = W_f((0 1; x 0)) = nu(x) K(1/x)`, the Bessel function of the
/// model, indexed by label (index 0 unused).
pub fn model_bessel_j(inst: &Instance, i: u64, psi: AddChar) -> Vec<Fe> {
    let t = inst.tower();
    let f = inst.field();
    let k = kirillov_kernel(inst, i, psi);
    let nu = MultChar::nu(inst, i);
    let mut out = vec![f.zero(); inst.q() as usize];
    for x in t.units() {
        out[x as usize] = f.mul(&nu.eval_label(inst, x).unwrap(), &k[t.inv(x) as usize]);
    }
    out
}

/// `W~(g) = W(w ^t g^{-1})` on a full table.
pub fn tilde_table<E: Clone>(group: &MatGroup, table: &[E]) -> Vec<E> {
    let t = group.tower();
    group
        .elems()
        .iter()
        .map(|&g| {
            let h = mat_mul(t, W2, transpose(mat_inv(t, g)));
            table[group.index_of(h).unwrap()].clone()
        })
        .collect()
}

/// `W~(x) = W(x^{-1})` for a function on `F_q^×` indexed by label.
pub fn tilde_gl1<E: Clone>(t: &FqTower, w: &[E]) -> Vec<E> {
    let mut out = w.to_vec();
    for x in t.units() {
        out[x as usize] = w[t.inv(x) as usize].clone();
    }
    out
}

/// The Whittaker model of a character of `GL_1`: the character itself,
/// indexed by label (index 0 unused).
pub fn whittaker_of_character(inst: &Instance, omega: MultChar) -> Vec<Fe> {
    let f = inst.field();
    let mut out = vec![f.zero(); inst.q() as usize];
    for x in inst.tower().units() {
        out[x as usize] = omega.eval_label(inst, x).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("Whittaker table is not (N, psi)-equivariant")]
    NotEquivariant,
    #[error("span of the Bessel vector has dimension {got}, expected {expected}")]
    WrongDimension { got: usize, expected: usize },
    #[error("mirabolic translates span {got} dimensions, expected {expected}")]
    MirabolicDeficient { got: usize, expected: usize },
    #[error("derivatives are not those of a cuspidal representation (V^(1) dim {first}, V^(2) dim {top})")]
    NotCuspidal { first: usize, top: usize },
    #[error("the psi-Whittaker vector does not generate the module")]
    Reducible,
}

/// The Whittaker model of the cuspidal class of `nu_i`, validated: the
/// translates of the Bessel vector span `q - 1` dimensions, already under
/// the mirabolic subgroup; `V^(1) = 0` and `dim V^(2) = 1`; and the
/// `(N, psi)`-eigenvector generates the module, which makes it irreducible
/// because `N` has order prime to `l`.
pub struct CuspidalModel<'a> {
    pub i: u64,
    pub psi: AddChar,
    pub table: Vec<Fe>,
    pub module: FunctionModule<'a>,
}

/// `Ind_{N_2}^{GL_2} psi` on an enumerated `GL_2(F_q)`.
pub fn whittaker_space<'a>(inst: &'a Instance, group: &'a MatGroup<'a>, psi: AddChar) -> InducedModule<'a> {
    InducedModule::new(
        group,
        inst.field(),
        |g| g[0] == 1 && g[2] == 0 && g[3] == 1,
        |g| psi.eval(inst, g[1]),
    )
}

pub fn cuspidal_whittaker<'a>(
    inst: &'a Instance,
    ind: &'a InducedModule<'a>,
    i: u64,
    psi: AddChar,
) -> Result<CuspidalModel<'a>, ModelError> {
    let t = inst.tower();
    let f = inst.field();
    let q = inst.q() as usize;
    let table = bessel_table(inst, ind.group, i, psi);
    let coords = ind.coords(&table).ok_or(ModelError::NotEquivariant)?;
    let mirabolic = FunctionModule::generated(ind, &[coords.clone()], &mirabolic_generators(t));
    if mirabolic.dim() != q - 1 {
        return Err(ModelError::MirabolicDeficient {
            got: mirabolic.dim(),
            expected: q - 1,
        });
    }
    let gens = gl2_generators(t);
    let module = FunctionModule::generated(ind, &[coords], &gens);
    if module.dim() != q - 1 {
        return Err(ModelError::WrongDimension {
            got: module.dim(),
            expected: q - 1,
        });
    }
    let e_psi = coinvariant_projector(&module, &unipotent_character(inst, Some(psi))).expect("p invertible");
    let e_one = coinvariant_projector(&module, &unipotent_character(inst, None)).expect("p invertible");
    let top = linalg::rank(f, &e_psi);
    let first = linalg::rank(f, &e_one);
    if top != 1 || first != 0 {
        return Err(ModelError::NotCuspidal { first, top });
    }
    let eig = linalg::transpose(&e_psi)
        .into_iter()
        .find(|c| !linalg::is_zero_vec(f, c))
        .expect("rank one");
    if !module.spins_to_whole(&module.vector(&eig), &gens) {
        return Err(ModelError::Reducible);
    }
    Ok(CuspidalModel {
        i,
        psi,
        table,
        module,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bruhat_recomposes() {
        for q in [2u64, 3, 4, 5, 7] {
            let t = FqTower::new(q).unwrap();
            let g = MatGroup::gl2(&t);
            assert_eq!(g.len() as u64, (q * q - 1) * (q * q - q));
            for &x in g.elems() {
                assert_eq!(bruhat_compose(&t, bruhat(&t, x)), x);
            }
        }
    }

    #[test]
    fn induced_dimensions() {
        let inst = Instance::new(2, 3).unwrap();
        let g = MatGroup::gl2(inst.tower());
        let ind = whittaker_space(&inst, &g, AddChar::PSI);
        assert_eq!(ind.dim(), 16);
        let inst = Instance::new(3, 2).unwrap();
        let g = MatGroup::gl2(inst.tower());
        assert_eq!(whittaker_space(&inst, &g, AddChar::PSI).dim(), 3);
    }

    #[test]
    fn translations_form_an_action() {
        let inst = Instance::new(2, 3).unwrap();
        let t = inst.tower();
        let f = inst.field();
        let g = MatGroup::gl2(t);
        let ind = whittaker_space(&inst, &g, AddChar::PSI);
        let v: Vector = (0..ind.dim() as u64).map(|k| f.from_encoding(k % 4)).collect();
        let gens = gl2_generators(t);
        for &a in &gens {
            for &b in &gens {
                let ab = ind.translation(mat_mul(t, a, b)).apply(f, &v);
                let a_b = ind.translation(a).apply(f, &ind.translation(b).apply(f, &v));
                assert_eq!(ab, a_b);
            }
        }
    }

    #[test]
    fn regular_module_of_n_has_one_dimensional_coinvariants() {
        let inst = Instance::new(2, 5).unwrap();
        let n = MatGroup::unipotent_radical(inst.tower());
        let ind = InducedModule::new(&n, inst.field(), |g| g == [1, 0, 0, 1], |_| inst.field().one());
        let module = FunctionModule::full(&ind);
        for psi in [None, Some(AddChar::PSI)] {
            let p = coinvariant_projector(&module, &unipotent_character(&inst, psi)).unwrap();
            assert_eq!(linalg::rank(inst.field(), &p), 1);
            assert_eq!(linalg::mat_mul(inst.field(), &p, &p), p);
        }
    }

    #[test]
    fn bessel_vector_support() {
        let inst = Instance::new(2, 5).unwrap();
        let t = inst.tower();
        let g = MatGroup::gl2(t);
        let table = bessel_table(&inst, &g, 1, AddChar::PSI);
        for x in t.units() {
            let v = &table[g.index_of(diag(x, 1)).unwrap()];
            assert_eq!(inst.field().is_one(v), x == 1);
            assert!(x == 1 || inst.field().is_zero(v));
        }
    }

    #[test]
    fn tilde_is_an_involution_on_bessel_tables() {
        let inst = Instance::new(2, 3).unwrap();
        let g = MatGroup::gl2(inst.tower());
        for i in 0..inst.m_prime() {
            let table = bessel_table(&inst, &g, i, AddChar::PSI);
            let tt = tilde_table(&g, &tilde_table(&g, &table));
            assert_eq!(tt, table);
            let inv = whittaker_space(&inst, &g, AddChar::PSI.inverse());
            assert!(inv.coords(&tilde_table(&g, &table)).is_some());
        }
    }

    #[test]
    fn principal_series_is_not_cuspidal() {
        let inst = Instance::new(2, 3).unwrap();
        let t = inst.tower();
        let g = MatGroup::gl2(t);
        let ind = InducedModule::new(&g, inst.field(), |h| h[2] == 0, |_| inst.field().one());
        let module = FunctionModule::full(&ind);
        assert_eq!(module.dim(), 4);
        let d = derivatives(&inst, &module);
        assert!(d.first.dim > 0);
        assert!(!is_cuspidal(&inst, &module));
    }

    #[test]
    fn q2_model_is_one_dimensional() {
        let inst = Instance::new(3, 2).unwrap();
        let g = MatGroup::gl2(inst.tower());
        let ind = whittaker_space(&inst, &g, AddChar::PSI);
        let model = cuspidal_whittaker(&inst, &ind, 0, AddChar::PSI).unwrap();
        assert_eq!(model.module.dim(), 1);
        // GL_2(F_2) = S_3 and the model is the sign character
        let f = inst.field();
        assert!(f.is_one(&model.table[g.index_of([1, 0, 0, 1]).unwrap()]));
        assert_eq!(model.table[g.index_of(W2).unwrap()], f.from_int(-1));
    }

    /// Multiplication by `w^k` on `F_{q^2} = F_q + F_q w`.
    fn elliptic(t: &FqTower, k: u64) -> Mat {
        let w = t.w();
        let tr = t.label(&t.trace(w)).unwrap();
        let nm = t.label(&t.norm(w)).unwrap();
        let mw = [0, t.neg(nm), 1, tr];
        let mut g = [1, 0, 0, 1];
        for _ in 0..k {
            g = mat_mul(t, g, mw);
        }
        g
    }

    #[test]
    fn model_character_on_elliptic_elements() {
        // trace of rho_nu at an elliptic t is -(nu(t) + nu(t^q))
        for (ell, q) in [(2, 3), (2, 5), (3, 5), (5, 3), (3, 4), (7, 3)] {
            let inst = Instance::new(ell, q).unwrap();
            let t = inst.tower();
            let f = inst.field();
            let g = MatGroup::gl2(t);
            let ind = whittaker_space(&inst, &g, AddChar::PSI);
            for i in 0..inst.m_prime() {
                let Ok(model) = cuspidal_whittaker(&inst, &ind, i, AddChar::PSI) else {
                    assert!(!crate::characters::has_cuspidal_lift(i, q as u64, inst.m_prime(), ell));
                    continue;
                };
                let nu = MultChar::nu(&inst, i);
                for k in (1..inst.m()).filter(|k| k % (q as u64 + 1) != 0) {
                    let m = model.module.matrix_of(elliptic(t, k));
                    let tr = (0..m.len()).fold(f.zero(), |acc, r| f.add(&acc, &m[r][r]));
                    let expect = f.neg(&f.add(&nu.eval_w_power(&inst, k), &nu.eval_w_power(&inst, k * q as u64)));
                    assert_eq!(tr, expect, "({ell},{q}) i={i} k={k}");
                }
            }
        }
    }

    #[test]
    fn models_exist_exactly_for_classes_with_a_cuspidal_lift() {
        for (ell, q) in [(3, 2), (2, 3), (2, 5), (3, 5), (5, 3), (3, 7), (2, 7), (5, 7)] {
            let inst = Instance::new(ell, q).unwrap();
            let g = MatGroup::gl2(inst.tower());
            let ind = whittaker_space(&inst, &g, AddChar::PSI);
            for i in crate::characters::class_representatives(q as u64, inst.m_prime()) {
                let lift = crate::characters::has_cuspidal_lift(i, q as u64, inst.m_prime(), ell);
                let r = cuspidal_whittaker(&inst, &ind, i, AddChar::PSI);
                assert_eq!(r.is_ok(), lift, "({ell},{q}) i={i}");
                if !lift {
                    assert_eq!(r.err(), Some(ModelError::WrongDimension { got: q as usize, expected: q as usize - 1 }));
                }
            }
        }
    }
}
