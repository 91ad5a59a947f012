//! Dense polynomials and small matrices over a prime field `F_p`, with
//! coefficients stored as `u32` residues (lowest degree first).

pub(crate) fn inv(a: u32, p: u32) -> u32 {
    crate::arith::inv_mod(a as u64, p as u64).expect("nonzero residue") as u32
}

pub(crate) fn trim(f: &mut Vec<u32>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub(crate) fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `b`.
pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv(b[db], p) as u64;
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - db;
        for (k, &bk) in b[..=db].iter().enumerate() {
            let t = (c * bk as u64 % p as u64) as u32;
            r[shift + k] = (r[shift + k] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

/// Quotient and remainder of `a` by a nonzero `b`.
fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = inv(b[db], p) as u64;
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    let mut quo = vec![0u32; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr] as u64 * lead_inv % p as u64;
        let shift = dr - db;
        quo[shift] = c as u32;
        for (k, &bk) in b[..=db].iter().enumerate() {
            let t = (c * bk as u64 % p as u64) as u32;
            r[shift + k] = (r[shift + k] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut quo);
    (quo, r)
}

fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|c| c as u32).collect();
    trim(&mut out);
    out
}

/// Inverse of `a` modulo an irreducible `m` by the extended Euclidean
/// algorithm, padded to `deg m` coefficients. `None` when `a = 0 mod m`.
pub(crate) fn inv_mod_poly(a: &[u32], m: &[u32], p: u32) -> Option<Vec<u32>> {
    let d = degree(m)?;
    let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
    let (mut t0, mut t1) = (Vec::new(), vec![1u32]);
    trim(&mut r0);
    while !r1.is_empty() {
        let (quo, r) = divrem(&r0, &r1, p);
        let t = sub(&t0, &mul(&quo, &t1, p), p);
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, t);
    }
    if degree(&r0)? != 0 {
        return None;
    }
    let c = inv(r0[0], p) as u64;
    let mut out: Vec<u32> = t0.iter().map(|&x| (x as u64 * c % p as u64) as u32).collect();
    out.resize(d, 0);
    Some(out)
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Multiplication modulo a monic polynomial of degree `d`; `neg_mod[t]` holds
/// `-modulus[t] mod p`. Inputs have length `d`.
pub(crate) fn mulmod(a: &[u32], b: &[u32], neg_mod: &[u64], p: u32) -> Vec<u32> {
    let d = neg_mod.len();
    // products are below p^2 and at most 2d of them land in one slot, so
    // u64 accumulators cannot overflow for any field used here
    let mut acc = vec![0u64; 2 * d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let x = x as u64;
        for (slot, &y) in acc[i..i + d].iter_mut().zip(b) {
            *slot += x * y as u64;
        }
    }
    reduce(&mut acc, neg_mod, p);
    acc[..d].iter().map(|&v| v as u32).collect()
}

/// Reduces a length-`2d` accumulator in place modulo the monic modulus.
pub(crate) fn reduce(acc: &mut [u64], neg_mod: &[u64], p: u32) {
    let d = neg_mod.len();
    let pp = p as u64;
    for k in (d..acc.len()).rev() {
        let c = acc[k] % pp;
        acc[k] = 0;
        if c == 0 {
            continue;
        }
        let base = k - d;
        for (slot, &m) in acc[base..base + d].iter_mut().zip(neg_mod) {
            *slot += c * m;
        }
    }
    for v in acc[..d].iter_mut() {
        *v %= pp;
    }
}

/// Ben-Or irreducibility test for a monic polynomial of degree `d >= 1`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let neg_mod: Vec<u64> = f[..d].iter().map(|&c| ((p - c) % p) as u64).collect();
    let mut x = vec![0u32; d];
    x[1] = 1;
    let mut h = x.clone();
    for _ in 0..d / 2 {
        h = powmod_small(&h, p as u64, &neg_mod, p);
        let diff = sub(&h, &x, p);
        let g = gcd(f, &diff, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

fn powmod_small(a: &[u32], mut e: u64, neg_mod: &[u64], p: u32) -> Vec<u32> {
    let d = neg_mod.len();
    let mut acc = vec![0u32; d];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &base, neg_mod, p);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(&base, &base, neg_mod, p);
        }
    }
    acc
}

/// Smallest monic irreducible polynomial of degree `d`, scanning lower
/// coefficients in increasing base-`p` integer encoding.
pub(crate) fn smallest_irreducible(p: u32, d: usize) -> Vec<u32> {
    let mut f = vec![0u32; d + 1];
    f[d] = 1;
    if d == 1 {
        return f;
    }
    loop {
        // increment lower coefficients as a base-p counter
        let mut k = 0;
        loop {
            f[k] += 1;
            if f[k] < p {
                break;
            }
            f[k] = 0;
            k += 1;
            assert!(k < d, "no irreducible polynomial of degree {d}");
        }
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
}

/// Row-major square matrix inverse over `F_p`; `None` if singular.
pub(crate) fn mat_inverse(m: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = m.len();
    let pp = p as u64;
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u32::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let iv = inv(a[col][col], p) as u64;
        for v in a[col].iter_mut() {
            *v = (*v as u64 * iv % pp) as u32;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col] == 0 {
                continue;
            }
            let c = row[col] as u64;
            for (v, &w) in row.iter_mut().zip(&pivot_row) {
                *v = ((*v as u64 + (pp - c) * w as u64) % pp) as u32;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Matrix (row-major, `rows x cols`) times column vector.
pub(crate) fn mat_vec(m: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    m.iter()
        .map(|row| {
            let s: u64 = row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
            (s % p as u64) as u32
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_irreducibles() {
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(smallest_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(smallest_irreducible(5, 2), vec![2, 0, 1]);
    }

    #[test]
    fn ben_or_matches_root_and_factor_counts() {
        // degree <= 3 polynomials are irreducible iff they have no root
        for p in [2u32, 3, 5] {
            for enc in 0..p.pow(3) {
                let f = vec![enc % p, enc / p % p, enc / (p * p), 1];
                let has_root = (0..p).any(|x| {
                    let v = f.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64);
                    v == 0
                });
                assert_eq!(is_irreducible(&f, p), !has_root, "{f:?} over F_{p}");
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![1, 2, 0], vec![0, 1, 4], vec![3, 0, 2]];
        let inv = mat_inverse(&m, 5).unwrap();
        for (i, row) in m.iter().enumerate() {
            for j in 0..3 {
                let s: u32 = (0..3).map(|k| row[k] * inv[k][j]).sum::<u32>() % 5;
                assert_eq!(s, u32::from(i == j));
            }
        }
        assert!(mat_inverse(&[vec![1, 2], vec![2, 4]], 5).is_none());
    }
}
