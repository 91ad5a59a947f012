//! Finite fields `F_{l^d}` in a fixed polynomial basis.
//!
//! The modulus is the smallest monic irreducible polynomial of degree `d` in
//! base-`l` encoding order. Small fields get discrete log tables and a
//! primitive generator. For large fields the group order cannot be factored
//! cheaply, so instead of a generator the context is anchored at a single
//! primitive root of unity `zeta_L` for the lcm `L` of all requested orders.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::arith;
use crate::fp;

/// Largest multiplicative group order for which log tables are built.
pub const LOG_TABLE_LIMIT: u64 = 1 << 16;
/// Largest multiplicative group order for which a generator is searched.
pub const GENERATOR_LIMIT: u64 = 1 << 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("order {order} is divisible by the characteristic {ell}")]
    OrderNotCoprime { order: u64, ell: u64 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("element does not belong to F_{ell}^{degree}")]
    WrongContext { ell: u32, degree: usize },
    #[error("no root of unity of order {0} in this field")]
    NoRoot(u64),
    #[error("root of unity of order {0} was not registered and the field has no generator")]
    RootUnavailable(u64),
}

/// Field element: coefficients in the polynomial basis, lowest degree first.
/// Serializes as that coefficient array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize)]
#[serde(transparent)]
pub struct Fe(pub(crate) Vec<u32>);

impl Fe {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Debug)]
struct LogTables {
    /// exp[k] = encoding of g^k
    exp: Vec<u32>,
    /// log[encoding] = k, with u32::MAX at zero
    log: Vec<u32>,
}

#[derive(Debug)]
pub struct FieldCtx {
    ell: u32,
    degree: usize,
    modulus: Vec<u32>,
    neg_mod: Vec<u64>,
    order: BigUint,
    tables: Option<LogTables>,
    generator: Option<Fe>,
    anchor: Option<(u64, Fe)>,
}

impl FieldCtx {
    /// The field of `ell^degree` elements with canonical modulus.
    pub fn new(ell: u32, degree: usize) -> Result<FieldCtx, FieldError> {
        if !arith::is_prime(ell as u64) {
            return Err(FieldError::NotPrime(ell as u64));
        }
        assert!(degree >= 1, "degree must be positive");
        let modulus = fp::smallest_irreducible(ell, degree);
        let neg_mod = modulus[..degree]
            .iter()
            .map(|&c| ((ell - c) % ell) as u64)
            .collect();
        let order = BigUint::from(ell).pow(degree as u32) - 1u32;
        let mut ctx = FieldCtx {
            ell,
            degree,
            modulus,
            neg_mod,
            order,
            tables: None,
            generator: None,
            anchor: None,
        };
        if let Some(n) = ctx.order_u64().filter(|&n| n <= GENERATOR_LIMIT) {
            let g = ctx.find_generator(n);
            if n <= LOG_TABLE_LIMIT {
                ctx.tables = Some(ctx.build_tables(&g, n));
            }
            ctx.generator = Some(g);
        }
        Ok(ctx)
    }

    /// Minimal-degree field containing primitive roots of unity of every
    /// requested order, with those roots registered.
    pub fn build_coeff_field(ell: u32, orders: &[u64]) -> Result<FieldCtx, FieldError> {
        if !arith::is_prime(ell as u64) {
            return Err(FieldError::NotPrime(ell as u64));
        }
        let mut l = 1u64;
        for &n in orders {
            if n == 0 || n % ell as u64 == 0 {
                return Err(FieldError::OrderNotCoprime {
                    order: n,
                    ell: ell as u64,
                });
            }
            l = arith::lcm(l, n);
        }
        let d = if l == 1 {
            1
        } else {
            arith::multiplicative_order(ell as u64, l).expect("coprime by construction") as usize
        };
        let mut ctx = FieldCtx::new(ell, d)?;
        ctx.register_root(l)?;
        Ok(ctx)
    }

    /// Registers `zeta_L` for later roots of unity of any order dividing `L`.
    fn register_root(&mut self, l: u64) -> Result<(), FieldError> {
        let zeta = match &self.generator {
            Some(g) => {
                let n = self.order_u64().expect("generator implies small order");
                if n % l != 0 {
                    return Err(FieldError::NoRoot(l));
                }
                self.pow(g, n / l)
            }
            None => self.smallest_root_of_exact_order(l)?,
        };
        self.anchor = Some((l, zeta));
        Ok(())
    }

    fn smallest_root_of_exact_order(&self, l: u64) -> Result<Fe, FieldError> {
        let lb = BigUint::from(l);
        if !(&self.order % &lb).is_zero() {
            return Err(FieldError::NoRoot(l));
        }
        let cof = &self.order / &lb;
        let primes = arith::prime_divisors(l);
        let mut enc = 2u64;
        loop {
            let a = self.from_encoding(enc);
            let z = self.pow_big(&a, &cof);
            if primes.iter().all(|&r| !self.is_one(&self.pow(&z, l / r))) {
                return Ok(z);
            }
            enc += 1;
        }
    }

    fn find_generator(&self, n: u64) -> Fe {
        let primes = arith::prime_divisors(n);
        let mut enc = 1u64;
        loop {
            let a = self.from_encoding(enc);
            if !self.is_zero(&a) && primes.iter().all(|&r| !self.is_one(&self.pow(&a, n / r))) {
                return a;
            }
            enc += 1;
        }
    }

    fn build_tables(&self, g: &Fe, n: u64) -> LogTables {
        let size = (n + 1) as usize;
        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![u32::MAX; size];
        let mut x = self.one();
        for k in 0..n {
            let e = self.encode(&x) as u32;
            exp.push(e);
            log[e as usize] = k as u32;
            x = self.mul_poly(&x, g);
        }
        LogTables { exp, log }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Order of the multiplicative group.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn generator(&self) -> Option<&Fe> {
        self.generator.as_ref()
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// The registered root of unity `zeta_L` and its order `L`.
    pub fn anchor(&self) -> Option<(u64, &Fe)> {
        self.anchor.as_ref().map(|(l, z)| (*l, z))
    }

    pub fn zero(&self) -> Fe {
        Fe(vec![0; self.degree])
    }

    pub fn one(&self) -> Fe {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Fe {
        let mut c = vec![0; self.degree];
        c[0] = v.rem_euclid(self.ell as i64) as u32;
        Fe(c)
    }

    /// Validates a coefficient vector as an element of this field.
    pub fn elem(&self, coeffs: Vec<u32>) -> Result<Fe, FieldError> {
        let fe = Fe(coeffs);
        self.check(&fe)?;
        Ok(fe)
    }

    pub fn check(&self, a: &Fe) -> Result<(), FieldError> {
        if a.0.len() != self.degree || a.0.iter().any(|&c| c >= self.ell) {
            return Err(FieldError::WrongContext {
                ell: self.ell,
                degree: self.degree,
            });
        }
        Ok(())
    }

    /// Base-`ell` integer encoding of the coefficient vector.
    pub fn encode(&self, a: &Fe) -> u64 {
        a.0.iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.ell as u64 + c as u64)
    }

    pub fn from_encoding(&self, mut enc: u64) -> Fe {
        let mut c = vec![0; self.degree];
        for slot in c.iter_mut() {
            *slot = (enc % self.ell as u64) as u32;
            enc /= self.ell as u64;
        }
        Fe(c)
    }

    pub fn is_zero(&self, a: &Fe) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &Fe) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.ell;
        Fe(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn add_assign(&self, a: &mut Fe, b: &Fe) {
        let p = self.ell;
        for (x, &y) in a.0.iter_mut().zip(&b.0) {
            *x = (*x + y) % p;
        }
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.ell;
        Fe(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + p - y) % p).collect())
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let p = self.ell;
        Fe(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, a: &Fe, s: u32) -> Fe {
        let p = self.ell as u64;
        let s = s as u64 % p;
        Fe(a.0.iter().map(|&x| (x as u64 * s % p) as u32).collect())
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        match &self.tables {
            Some(t) => {
                let (ea, eb) = (self.encode(a) as usize, self.encode(b) as usize);
                if ea == 0 || eb == 0 {
                    return self.zero();
                }
                let n = t.exp.len();
                let k = (t.log[ea] as usize + t.log[eb] as usize) % n;
                self.from_encoding(t.exp[k] as u64)
            }
            None => self.mul_poly(a, b),
        }
    }

    fn mul_poly(&self, a: &Fe, b: &Fe) -> Fe {
        Fe(fp::mulmod(&a.0, &b.0, &self.neg_mod, self.ell))
    }

    pub fn pow(&self, a: &Fe, e: u64) -> Fe {
        if let (Some(t), Some(n)) = (&self.tables, self.order_u64()) {
            let ea = self.encode(a) as usize;
            if ea == 0 {
                return if e == 0 { self.one() } else { self.zero() };
            }
            let k = (t.log[ea] as u128 * e as u128 % n as u128) as usize;
            return self.from_encoding(t.exp[k] as u64);
        }
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn pow_big(&self, a: &Fe, e: &BigUint) -> Fe {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn inv(&self, a: &Fe) -> Result<Fe, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::ZeroInverse);
        }
        if self.tables.is_some() {
            let n = self.order_u64().expect("tabled fields are small");
            return Ok(self.pow(a, n - 1));
        }
        Ok(Fe(fp::inv_mod_poly(&a.0, &self.modulus, self.ell).expect("the modulus is irreducible")))
    }

    /// Discrete logarithm to the context generator, when log tables exist.
    pub fn dlog(&self, a: &Fe) -> Option<u64> {
        let t = self.tables.as_ref()?;
        let v = t.log[self.encode(a) as usize];
        (v != u32::MAX).then_some(v as u64)
    }

    /// `g^k` for the context generator, via tables when present.
    pub fn exp(&self, k: u64) -> Option<Fe> {
        match &self.tables {
            Some(t) => Some(self.from_encoding(t.exp[(k % t.exp.len() as u64) as usize] as u64)),
            None => self.generator.as_ref().map(|g| self.pow(g, k)),
        }
    }

    /// Deterministic primitive `n`-th root of unity: `g^{(l^d-1)/n}` when a
    /// generator exists, otherwise `zeta_L^{L/n}` for the registered anchor.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<Fe, FieldError> {
        if n == 0 || !(&self.order % BigUint::from(n)).is_zero() {
            return Err(FieldError::NoRoot(n));
        }
        if let (Some(g), Some(order)) = (&self.generator, self.order_u64()) {
            return Ok(self.pow(g, order / n));
        }
        match &self.anchor {
            Some((l, z)) if l % n == 0 => Ok(self.pow(z, l / n)),
            _ => Err(FieldError::RootUnavailable(n)),
        }
    }

    /// Multiplicative order of a nonzero element dividing `n`.
    pub fn order_dividing(&self, a: &Fe, n: u64) -> u64 {
        let mut ord = n;
        for (r, _) in arith::factorize(n) {
            while ord % r == 0 && self.is_one(&self.pow(a, ord / r)) {
                ord /= r;
            }
        }
        ord
    }

    /// Evaluates a polynomial over `F_l` (coefficients low to high) at `x`.
    pub fn eval_prime_poly(&self, f: &[u32], x: &Fe) -> Fe {
        let mut acc = self.zero();
        for &c in f.iter().rev() {
            acc = self.mul(&acc, x);
            acc.0[0] = (acc.0[0] + c) % self.ell;
        }
        acc
    }

    /// Human-readable polynomial form in the variable `x`.
    pub fn format(&self, a: &Fe) -> String {
        let terms: Vec<String> = a
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".into(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.ell, self.degree, self.modulus)
    }
}

/// Coordinates relative to the power basis `1, zeta, ..., zeta^{d-1}` of a
/// fixed root of unity `zeta` of order `L` generating the field.
///
/// Sums of roots of unity become sums of precomputed rows, which is the inner
/// loop of every Gauss sum. Conversion back to the canonical basis is one
/// matrix-vector product.
#[derive(Debug)]
pub struct ZetaChart {
    ell: u32,
    order: u64,
    degree: usize,
    /// powers[c] = zeta^c in zeta coordinates, for c in [0, L)
    powers: Vec<Vec<u32>>,
    /// columns are zeta^t in canonical coordinates
    to_canonical: Vec<Vec<u32>>,
    from_canonical: Vec<Vec<u32>>,
    minpoly: Vec<u32>,
}

impl ZetaChart {
    /// Builds the chart for `zeta` of exact order `order`. Panics if `zeta`
    /// does not generate the field over `F_l`.
    pub fn new(field: &FieldCtx, zeta: &Fe, order: u64) -> ZetaChart {
        let d = field.degree();
        let p = field.ell();
        let mut cols = Vec::with_capacity(d + 1);
        let mut z = field.one();
        for _ in 0..=d {
            cols.push(z.0.clone());
            z = field.mul(&z, zeta);
        }
        // to_canonical[r][t] = coefficient r of zeta^t
        let to_canonical: Vec<Vec<u32>> = (0..d).map(|r| (0..d).map(|t| cols[t][r]).collect()).collect();
        let from_canonical =
            fp::mat_inverse(&to_canonical, p).expect("root of unity does not generate the field");
        // zeta^d = sum a_t zeta^t gives the minimal polynomial
        let a = fp::mat_vec(&from_canonical, &cols[d], p);
        let mut minpoly: Vec<u32> = a.iter().map(|&c| (p - c) % p).collect();
        minpoly.push(1);
        let neg_mod: Vec<u64> = a.iter().map(|&c| c as u64).collect();
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0u32; d];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            cur = shift_reduce(&cur, &neg_mod, p);
        }
        ZetaChart {
            ell: p,
            order,
            degree: d,
            powers,
            to_canonical,
            from_canonical,
            minpoly,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Minimal polynomial of zeta over `F_l`, monic, low to high.
    pub fn minpoly(&self) -> &[u32] {
        &self.minpoly
    }

    /// `zeta^c` in chart coordinates.
    pub fn power(&self, c: u64) -> &[u32] {
        &self.powers[(c % self.order) as usize]
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.degree]
    }

    /// `acc += s * zeta^c`.
    pub fn add_power(&self, acc: &mut [u32], c: u64, s: u32) {
        let p = self.ell;
        for (x, &y) in acc.iter_mut().zip(self.power(c)) {
            *x = (*x + s * y) % p;
        }
    }

    pub fn to_field(&self, v: &[u32]) -> Fe {
        Fe(fp::mat_vec(&self.to_canonical, v, self.ell))
    }

    pub fn from_field(&self, a: &Fe) -> Vec<u32> {
        fp::mat_vec(&self.from_canonical, &a.0, self.ell)
    }
}

/// Multiplies by the variable modulo `x^d - sum a_t x^t`.
fn shift_reduce(v: &[u32], a: &[u64], p: u32) -> Vec<u32> {
    let d = v.len();
    let top = v[d - 1] as u64;
    let mut out = vec![0u32; d];
    for t in 0..d {
        let lower = if t == 0 { 0 } else { v[t - 1] as u64 };
        out[t] = ((lower + top * a[t]) % p as u64) as u32;
    }
    out
}

/// Field embedding `F_{l^d} -> F_{l^{d'}}` determined by the image of the
/// polynomial variable `x`.
#[derive(Debug)]
pub struct Embedding {
    image_of_x: Fe,
}

impl Embedding {
    /// Finds an embedding sending the anchor `zeta_L` of `src` to a power of
    /// `zeta` (an element of order `L` in `dst`). The smallest exponent `k`
    /// coprime to `L` with `minpoly(zeta^k) = 0` is used.
    pub fn via_roots(src: &FieldCtx, dst: &FieldCtx, zeta_src: &Fe, zeta_dst: &Fe, l: u64) -> Option<Embedding> {
        if src.ell() != dst.ell() || dst.degree() % src.degree() != 0 {
            return None;
        }
        if src.degree() == 1 {
            return Some(Embedding { image_of_x: dst.zero() });
        }
        let chart = ZetaChart::new(src, zeta_src, l);
        let target = (1..l)
            .filter(|&k| arith::gcd(k, l) == 1)
            .map(|k| dst.pow(zeta_dst, k))
            .find(|z| dst.is_zero(&dst.eval_prime_poly(chart.minpoly(), z)))?;
        // x = sum c_t zeta^t in src, so phi(x) = sum c_t target^t
        let mut x = src.zero();
        x.0[1] = 1;
        let mut img = dst.zero();
        let mut pw = dst.one();
        for &c in &chart.from_field(&x) {
            img = dst.add(&img, &dst.scale(&pw, c));
            pw = dst.mul(&pw, &target);
        }
        Some(Embedding { image_of_x: img })
    }

    pub fn apply(&self, src: &FieldCtx, dst: &FieldCtx, a: &Fe) -> Fe {
        if src.degree() == 1 {
            return dst.from_int(a.0[0] as i64);
        }
        dst.eval_prime_poly(&a.0, &self.image_of_x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coeff_field_degrees() {
        assert_eq!(FieldCtx::build_coeff_field(3, &[2]).unwrap().degree(), 1);
        assert_eq!(FieldCtx::build_coeff_field(2, &[3, 5]).unwrap().degree(), 4);
        assert_eq!(FieldCtx::build_coeff_field(3, &[7, 16]).unwrap().degree(), 12);
        assert!(matches!(
            FieldCtx::build_coeff_field(4, &[3]),
            Err(FieldError::NotPrime(4))
        ));
        assert!(matches!(
            FieldCtx::build_coeff_field(3, &[6]),
            Err(FieldError::OrderNotCoprime { .. })
        ));
    }

    #[test]
    fn roots_of_unity_small_fields() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(f3.primitive_root_of_unity(2).unwrap(), f3.from_int(2));
        assert_eq!(f3.primitive_root_of_unity(1).unwrap(), f3.one());
        let f16 = FieldCtx::new(2, 4).unwrap();
        let g = f16.generator().unwrap().clone();
        assert_eq!(f16.primitive_root_of_unity(5).unwrap(), f16.pow(&g, 3));
        assert!(f16.primitive_root_of_unity(7).is_err());
    }

    #[test]
    fn inverse_and_lagrange() {
        let f5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(f5.inv(&f5.from_int(2)).unwrap(), f5.from_int(3));
        assert_eq!(f5.inv(&f5.zero()), Err(FieldError::ZeroInverse));
        for (ell, d) in [(2, 4), (3, 3), (7, 2)] {
            let f = FieldCtx::new(ell, d).unwrap();
            let g = f.generator().unwrap();
            assert!(f.is_one(&f.pow(g, f.order_u64().unwrap())));
        }
    }

    proptest::proptest! {
        #[test]
        fn euclid_inverse_matches_fermat(coeffs in proptest::collection::vec(0u32..5, 30)) {
            let f = FieldCtx::new(5, 30).unwrap();
            let a = f.elem(coeffs).unwrap();
            proptest::prop_assume!(!f.is_zero(&a));
            let b = f.inv(&a).unwrap();
            proptest::prop_assert!(f.is_one(&f.mul(&a, &b)));
            proptest::prop_assert_eq!(b, f.pow_big(&a, &(f.order() - 1u32)));
        }
    }

    #[test]
    fn f4_trace() {
        let f4 = FieldCtx::new(2, 2).unwrap();
        let alpha = f4.elem(vec![0, 1]).unwrap();
        assert_eq!(f4.add(&alpha, &f4.mul(&alpha, &alpha)), f4.one());
    }

    #[test]
    fn cross_context_rejected() {
        let f = FieldCtx::new(3, 2).unwrap();
        assert!(f.elem(vec![1, 2, 0]).is_err());
        assert!(f.elem(vec![3, 0]).is_err());
    }

    #[test]
    fn large_field_anchor() {
        // 2^110 - 1 is far beyond the generator limit
        let f = FieldCtx::build_coeff_field(2, &[33, 23]).unwrap();
        assert_eq!(f.degree(), 110);
        assert!(f.generator().is_none());
        let z = f.primitive_root_of_unity(759).unwrap();
        assert!(f.is_one(&f.pow(&z, 759)));
        for r in [3, 11, 23] {
            assert!(!f.is_one(&f.pow(&z, 759 / r)));
        }
        assert_eq!(f.primitive_root_of_unity(33).unwrap(), f.pow(&z, 23));
        assert!(matches!(f.primitive_root_of_unity(7), Err(_)));
    }

    #[test]
    fn table_and_polynomial_multiplication_agree() {
        let f = FieldCtx::new(3, 4).unwrap();
        assert!(f.has_log_tables());
        let n = f.order_u64().unwrap() + 1;
        for ea in (0..n).step_by(7) {
            for eb in (0..n).step_by(11) {
                let (a, b) = (f.from_encoding(ea), f.from_encoding(eb));
                assert_eq!(f.mul(&a, &b), f.mul_poly(&a, &b));
            }
        }
    }

    #[test]
    fn zeta_chart_roundtrip() {
        let f = FieldCtx::build_coeff_field(3, &[16, 7]).unwrap();
        let (l, z) = f.anchor().unwrap();
        let chart = ZetaChart::new(&f, z, l);
        assert_eq!(chart.minpoly().len(), f.degree() + 1);
        for c in [0u64, 1, 5, 17, 111] {
            assert_eq!(chart.to_field(chart.power(c)), f.pow(z, c));
        }
        let a = f.from_encoding(12345);
        assert_eq!(chart.to_field(&chart.from_field(&a)), a);
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let src = FieldCtx::build_coeff_field(2, &[5]).unwrap();
        let dst = FieldCtx::build_coeff_field(2, &[5, 17]).unwrap();
        assert_eq!(dst.degree() % src.degree(), 0);
        let zs = src.primitive_root_of_unity(5).unwrap();
        let zd = dst.primitive_root_of_unity(5).unwrap();
        let emb = Embedding::via_roots(&src, &dst, &zs, &zd, 5).unwrap();
        for ea in 0..16 {
            for eb in 0..16 {
                let (a, b) = (src.from_encoding(ea), src.from_encoding(eb));
                let lhs = emb.apply(&src, &dst, &src.mul(&a, &b));
                let rhs = dst.mul(&emb.apply(&src, &dst, &a), &emb.apply(&src, &dst, &b));
                assert_eq!(lhs, rhs);
                let lhs = emb.apply(&src, &dst, &src.add(&a, &b));
                let rhs = dst.add(&emb.apply(&src, &dst, &a), &emb.apply(&src, &dst, &b));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
