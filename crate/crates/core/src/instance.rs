//! Everything fixed once `(l, q)` is chosen: the tower `F_q ⊂ F_{q^2}`, the
//! coefficient field containing the needed roots of unity, and the choices
//! of `w`, `zeta` and `psi`.

use serde::Serialize;

use crate::arith;
use crate::field::{Embedding, Fe, FieldCtx, FieldError, ZetaChart};
use crate::tower::{FqTower, TowerError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("l = {0} is not a prime")]
    EllNotPrime(u64),
    #[error("q = {0} is not a prime power")]
    QNotPrimePower(u64),
    #[error("l = {ell} equals the characteristic of F_{q}")]
    EllIsCharacteristic { ell: u64, q: u64 },
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Which generator and roots of unity are used. The canonical choice is
/// `(1, 1, 1)`; other values replace `w` by `w^w_exp`, `zeta_L` by
/// `zeta_L^zeta_exp` and the root behind `psi` by its `psi_exp`-th power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Choices {
    pub w_exp: u64,
    pub zeta_exp: u64,
    pub psi_exp: u64,
}

impl Choices {
    pub const CANONICAL: Choices = Choices {
        w_exp: 1,
        zeta_exp: 1,
        psi_exp: 1,
    };
}

#[derive(Debug)]
pub struct Instance {
    ell: u64,
    q: u64,
    tower: FqTower,
    field: FieldCtx,
    chart: ZetaChart,
    m: u64,
    m_prime: u64,
    n_prime: u64,
    l: u64,
    choices: Choices,
    w_exp_inv: u64,
}

impl Instance {
    pub fn new(ell: u64, q: u64) -> Result<Instance, InstanceError> {
        Instance::with_choices(ell, q, Choices::CANONICAL)
    }

    /// The instance with the smallest non-identity unit exponent in each slot.
    pub fn alternate(ell: u64, q: u64) -> Result<Instance, InstanceError> {
        let base = Instance::new(ell, q)?;
        let next_unit = |n: u64| (2..n.max(2)).find(|&k| arith::gcd(k, n) == 1).unwrap_or(1);
        let p = base.tower.p() as u64;
        let choices = Choices {
            w_exp: next_unit(base.m),
            zeta_exp: next_unit(base.l),
            psi_exp: next_unit(p),
        };
        Instance::with_choices(ell, q, choices)
    }

    pub fn with_choices(ell: u64, q: u64, choices: Choices) -> Result<Instance, InstanceError> {
        if !arith::is_prime(ell) {
            return Err(InstanceError::EllNotPrime(ell));
        }
        let (p, _) = arith::prime_power(q).ok_or(InstanceError::QNotPrimePower(q))?;
        if p == ell {
            return Err(InstanceError::EllIsCharacteristic { ell, q });
        }
        let m_prime = arith::ell_regular_part(q * q - 1, ell);
        let field = FieldCtx::build_coeff_field(ell as u32, &[m_prime, p])?;
        let (l, zeta) = field.anchor().expect("coefficient fields carry an anchor");
        let zeta = zeta.clone();
        Instance::over_field(ell, q, field, &zeta, l, choices)
    }

    /// The instance with coefficients in `field`, anchored at `zeta` of exact
    /// order `l`; `zeta` must generate `field` and `l` must be divisible by
    /// `m'` and `p`.
    pub fn over_field(
        ell: u64,
        q: u64,
        field: FieldCtx,
        zeta: &Fe,
        l: u64,
        choices: Choices,
    ) -> Result<Instance, InstanceError> {
        let tower = FqTower::new(q)?;
        let m = q * q - 1;
        let m_prime = arith::ell_regular_part(m, ell);
        let n_prime = arith::ell_regular_part(q - 1, ell);
        assert!(l % m_prime == 0 && l % tower.p() as u64 == 0, "anchor order must cover m' and p");
        let chart = ZetaChart::new(&field, zeta, l);
        assert!(arith::gcd(choices.w_exp, m) == 1, "w_exp must be a unit mod q^2-1");
        assert!(arith::gcd(choices.zeta_exp, l) == 1, "zeta_exp must be a unit mod L");
        assert!(arith::gcd(choices.psi_exp, tower.p() as u64) == 1, "psi_exp must be a unit mod p");
        let w_exp_inv = arith::inv_mod(choices.w_exp, m).unwrap_or(0);
        Ok(Instance {
            ell,
            q,
            tower,
            field,
            chart,
            m,
            m_prime,
            n_prime,
            l,
            choices,
            w_exp_inv,
        })
    }

    /// The same instance over a larger coefficient field that also contains
    /// roots of unity of order `extra`, together with the embedding of the
    /// present coefficient field into it. The new anchor is chosen so that
    /// every character value is the image of the old one.
    pub fn extended(&self, extra: u64) -> Result<(Instance, Embedding), InstanceError> {
        let ell = self.ell as u32;
        let big = FieldCtx::build_coeff_field(ell, &[self.l, extra])?;
        let (lb, a) = big.anchor().expect("coefficient fields carry an anchor");
        let a = a.clone();
        let zeta_dst = big.pow(&a, lb / self.l);
        let zeta_src = self.root_power(1);
        let emb = Embedding::via_roots(&self.field, &big, &zeta_src, &zeta_dst, self.l)
            .ok_or(FieldError::NoRoot(self.l))?;
        let image = emb.apply(&self.field, &big, &zeta_src);
        let k = (1..self.l)
            .find(|&k| big.pow(&zeta_dst, k) == image)
            .expect("the image of zeta_L is a power of zeta_dst");
        // every value is zeta_L^{c zeta_exp}; fold zeta_exp into the new
        // anchor and lift the exponent to a unit mod lb without changing it
        // mod l
        let r = k * self.choices.zeta_exp % self.l;
        let k = (0..lb)
            .map(|t| r + t * self.l)
            .find(|&c| arith::gcd(c, lb) == 1)
            .expect("CRT gives a unit lift");
        let zeta = big.pow(&a, k);
        let choices = Choices {
            zeta_exp: 1,
            ..self.choices
        };
        let inst = Instance::over_field(self.ell, self.q, big, &zeta, lb, choices)?;
        Ok((inst, emb))
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.tower.p() as u64
    }

    pub fn tower(&self) -> &FqTower {
        &self.tower
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn chart(&self) -> &ZetaChart {
        &self.chart
    }

    pub fn choices(&self) -> Choices {
        self.choices
    }

    /// `q^2 - 1`.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// `l`-regular part of `q^2 - 1`.
    pub fn m_prime(&self) -> u64 {
        self.m_prime
    }

    /// `l`-regular part of `q - 1`.
    pub fn n_prime(&self) -> u64 {
        self.n_prime
    }

    /// `l`-part of `q - 1`, written `l^a`.
    pub fn ell_part(&self) -> u64 {
        (self.q - 1) / self.n_prime
    }

    /// Order of the anchor root `zeta_L`, `L = lcm(m', p)`.
    pub fn big_l(&self) -> u64 {
        self.l
    }

    /// Exponent of the active `w` for an element given by its exponent `k`
    /// against the canonical generator.
    #[inline]
    pub fn w_log(&self, k: u64) -> u64 {
        (k % self.m) * self.w_exp_inv % self.m
    }

    /// Exponent of `zeta_L` for `zeta_{m'}^a` under the active choices.
    #[inline]
    pub fn exp_m(&self, a: u64) -> u64 {
        (a % self.m_prime) * (self.l / self.m_prime) % self.l * self.choices.zeta_exp % self.l
    }

    /// Exponent of `zeta_L` for `psi(x)`, `x` an `F_q` label.
    #[inline]
    pub fn exp_psi(&self, x: u32) -> u64 {
        let p = self.p();
        let t = self.tower.abs_trace(x) as u64 * self.choices.psi_exp % p;
        t * (self.l / p) % self.l * self.choices.zeta_exp % self.l
    }

    /// `zeta_L^c` in the canonical basis.
    pub fn root_power(&self, c: u64) -> Fe {
        self.chart.to_field(self.chart.power(c))
    }

    /// The active primitive `m'`-th root of unity.
    pub fn zeta_m(&self) -> Fe {
        self.root_power(self.exp_m(1))
    }

    /// The active primitive `p`-th root of unity behind `psi`.
    pub fn zeta_p(&self) -> Fe {
        let p = self.p();
        self.root_power(self.l / p * self.choices.psi_exp % self.l * self.choices.zeta_exp % self.l)
    }

    /// `q^{-1}` as a prime-field residue.
    pub fn q_inv(&self) -> u32 {
        arith::inv_mod(self.q % self.ell, self.ell).expect("l != p") as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_parameters() {
        let inst = Instance::new(3, 7).unwrap();
        assert_eq!(inst.m_prime(), 16);
        assert_eq!(inst.n_prime(), 2);
        assert_eq!(inst.ell_part(), 3);
        assert_eq!(inst.field().degree(), 12);
        let inst = Instance::new(2, 5).unwrap();
        assert_eq!((inst.m_prime(), inst.n_prime(), inst.field().degree()), (3, 1, 4));
    }

    #[test]
    fn rejects_ell_equal_p() {
        assert!(matches!(
            Instance::new(5, 5),
            Err(InstanceError::EllIsCharacteristic { .. })
        ));
        assert!(matches!(Instance::new(4, 5), Err(InstanceError::EllNotPrime(4))));
    }

    #[test]
    fn roots_have_the_right_orders() {
        for (ell, q) in [(2, 5), (3, 7), (5, 3), (2, 3)] {
            for inst in [Instance::new(ell, q).unwrap(), Instance::alternate(ell, q).unwrap()] {
                let f = inst.field();
                let z = inst.zeta_m();
                assert_eq!(f.order_dividing(&z, inst.m_prime()), inst.m_prime());
                let zp = inst.zeta_p();
                assert_eq!(f.order_dividing(&zp, inst.p()), inst.p());
            }
        }
    }

    #[test]
    fn extension_maps_roots_to_roots() {
        for (ell, q, extra) in [(2, 5, 7), (3, 7, 11), (5, 3, 7), (3, 2, 7)] {
            for small in [Instance::new(ell, q).unwrap(), Instance::alternate(ell, q).unwrap()] {
                let (big, emb) = small.extended(extra).unwrap();
                assert!(big.field().degree() > small.field().degree());
                let phi = |a: &Fe| emb.apply(small.field(), big.field(), a);
                assert_eq!(phi(&small.zeta_m()), big.zeta_m());
                assert_eq!(phi(&small.zeta_p()), big.zeta_p());
            }
        }
    }
}
