//! The tower `F_q ⊂ F_{q^2}` for `q = p^e`.
//!
//! `F_{q^2}` is a [`FieldCtx`] with log tables and generator `w`; `F_q` is its
//! Frobenius-fixed subfield. Elements of `F_q` are handled as small integer
//! labels (the integer value itself when `q` is prime) with precomputed
//! addition and multiplication tables, since the GL(2) layer does millions
//! of such operations.

use crate::arith;
use crate::field::{Fe, FieldCtx, FieldError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TowerError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("q = {0} is too large for tabulated F_q^2 arithmetic")]
    TooLarge(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Largest supported `q`; `F_{q^2}` log tables must stay small.
pub const MAX_Q: u64 = 255;

#[derive(Debug)]
pub struct FqTower {
    p: u32,
    e: u32,
    q: u32,
    ext: FieldCtx,
    /// label -> encoding in ext
    sub_enc: Vec<u32>,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
    /// label -> k with g1^k = label (g1 = w^{q+1}); u32::MAX at zero
    log1: Vec<u32>,
    /// k -> label of g1^k
    exp1: Vec<u16>,
    /// label -> absolute trace in F_p
    abs_tr: Vec<u32>,
    /// k -> label of trace(w^k)
    tr_w: Vec<u16>,
}

impl FqTower {
    pub fn new(q: u64) -> Result<FqTower, TowerError> {
        let (p, e) = arith::prime_power(q).ok_or(TowerError::NotPrimePower(q))?;
        if q > MAX_Q {
            return Err(TowerError::TooLarge(q));
        }
        let ext = FieldCtx::new(p as u32, 2 * e as usize)?;
        let qq = q as usize;
        let m = qq * qq - 1;
        // subfield elements are the (q+1)-th powers of w together with zero;
        // labels follow increasing ext encoding
        let mut sub: Vec<u32> = (0..q - 1)
            .map(|k| ext.encode(&ext.exp(k * (q + 1)).unwrap()) as u32)
            .collect();
        sub.push(0);
        sub.sort_unstable();
        let mut label_of = vec![u16::MAX; m + 1];
        for (lab, &enc) in sub.iter().enumerate() {
            label_of[enc as usize] = lab as u16;
        }
        let lab = |a: &Fe| label_of[ext.encode(a) as usize];
        let elems: Vec<Fe> = sub.iter().map(|&c| ext.from_encoding(c as u64)).collect();
        let mut add_t = vec![0u16; qq * qq];
        let mut mul_t = vec![0u16; qq * qq];
        for a in 0..qq {
            for b in 0..qq {
                add_t[a * qq + b] = lab(&ext.add(&elems[a], &elems[b]));
                mul_t[a * qq + b] = lab(&ext.mul(&elems[a], &elems[b]));
            }
        }
        let neg_t = (0..qq).map(|a| lab(&ext.neg(&elems[a]))).collect();
        let inv_t = (0..qq)
            .map(|a| if a == 0 { 0 } else { lab(&ext.inv(&elems[a]).unwrap()) })
            .collect();
        let mut log1 = vec![u32::MAX; qq];
        let mut exp1 = Vec::with_capacity(qq - 1);
        for k in 0..q - 1 {
            let l = lab(&ext.exp(k * (q + 1)).unwrap());
            log1[l as usize] = k as u32;
            exp1.push(l);
        }
        let abs_tr = elems
            .iter()
            .map(|a| {
                let mut s = ext.zero();
                let mut x = a.clone();
                for _ in 0..e {
                    s = ext.add(&s, &x);
                    x = ext.pow(&x, p);
                }
                s.coeffs()[0]
            })
            .collect();
        let tr_w = (0..m as u64)
            .map(|k| {
                let t = ext.exp(k).unwrap();
                lab(&ext.add(&t, &ext.pow(&t, q)))
            })
            .collect();
        Ok(FqTower {
            p: p as u32,
            e,
            q: q as u32,
            ext,
            sub_enc: sub,
            add_t,
            mul_t,
            neg_t,
            inv_t,
            log1,
            exp1,
            abs_tr,
            tr_w,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of `F_{q^2}^×`.
    pub fn m(&self) -> u64 {
        let q = self.q as u64;
        q * q - 1
    }

    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    /// The fixed generator `w` of `F_{q^2}^×`.
    pub fn w(&self) -> &Fe {
        self.ext.generator().expect("tower fields have a generator")
    }

    pub fn frobenius(&self, t: &Fe) -> Fe {
        self.ext.pow(t, self.q as u64)
    }

    pub fn trace(&self, t: &Fe) -> Fe {
        self.ext.add(t, &self.frobenius(t))
    }

    pub fn norm(&self, t: &Fe) -> Fe {
        self.ext.mul(t, &self.frobenius(t))
    }

    /// Label of an element of `F_{q^2}` that lies in `F_q`.
    pub fn label(&self, a: &Fe) -> Option<u32> {
        let enc = self.ext.encode(a) as u32;
        self.sub_enc.binary_search(&enc).ok().map(|i| i as u32)
    }

    /// The element of `F_{q^2}` carrying a label.
    pub fn embed(&self, label: u32) -> Fe {
        self.ext.from_encoding(self.sub_enc[label as usize] as u64)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add_t[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_t[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_t[a as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero label.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inv_t[a as usize] as u32
    }

    /// `k` with `g1^k = a` for `g1 = w^{q+1}`, the fixed generator of `F_q^×`.
    #[inline]
    pub fn log1(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.log1[a as usize]
    }

    /// Label of `g1^k`.
    #[inline]
    pub fn exp1(&self, k: u64) -> u32 {
        self.exp1[(k % (self.q as u64 - 1)) as usize] as u32
    }

    /// Absolute trace `F_q -> F_p` of a label.
    #[inline]
    pub fn abs_trace(&self, a: u32) -> u32 {
        self.abs_tr[a as usize]
    }

    /// Label of `trace(w^k)`.
    #[inline]
    pub fn trace_of_power(&self, k: u64) -> u32 {
        self.tr_w[(k % self.m()) as usize] as u32
    }

    /// Labels of the nonzero elements, as `g1^0, g1^1, ...`.
    pub fn units(&self) -> impl Iterator<Item = u32> + '_ {
        self.exp1.iter().map(|&l| l as u32)
    }

    /// `dlog_w` of the label `x`, viewed in `F_{q^2}^×`.
    pub fn dlog_ext_of_label(&self, x: u32) -> u64 {
        self.log1(x) as u64 * (self.q as u64 + 1)
    }

    /// An `F_p`-basis of `F_q` (as labels).
    pub fn prime_basis(&self) -> Vec<u32> {
        // powers of a primitive element of F_q span it over F_p
        (0..self.e as u64).map(|k| self.exp1(k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_q_labels_are_integers() {
        let t = FqTower::new(7).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(t.add(a, b), (a + b) % 7);
                assert_eq!(t.mul(a, b), (a * b) % 7);
            }
        }
        assert_eq!(t.abs_trace(5), 5);
    }

    #[test]
    fn norm_of_generator_generates() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            let t = FqTower::new(q).unwrap();
            let g1 = t.exp1(1);
            let mut seen = std::collections::HashSet::new();
            let mut x = 1u32;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = t.mul(x, g1);
            }
            assert_eq!(seen.len() as u64, q - 1, "q={q}");
            assert_eq!(t.label(&t.norm(t.w())), Some(g1));
        }
    }

    #[test]
    fn frobenius_trace_norm() {
        for q in [2u64, 3, 4, 5, 9] {
            let t = FqTower::new(q).unwrap();
            let ext = t.ext();
            for k in 0..t.m() {
                let x = ext.exp(k).unwrap();
                assert_eq!(t.frobenius(&t.frobenius(&x)), x);
                let tr = t.trace(&x);
                let nm = t.norm(&x);
                assert_eq!(t.frobenius(&tr), tr);
                assert_eq!(t.frobenius(&nm), nm);
                assert_eq!(t.label(&tr), Some(t.trace_of_power(k)));
                assert!(t.label(&nm).unwrap() != 0);
            }
        }
    }

    #[test]
    fn rejects_bad_q() {
        assert!(matches!(FqTower::new(6), Err(TowerError::NotPrimePower(6))));
        assert!(matches!(FqTower::new(257), Err(TowerError::TooLarge(257))));
    }
}
