//! Gamma tables, duplicate search and the `q = 2 l^i + 1` scan.

use serde::Serialize;

use crate::arith;
use crate::characters::{self, class_representatives};
use crate::field::Fe;
use crate::gauss::GaussTable;
use crate::instance::{Instance, InstanceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    pub rep: u64,
    pub conjugate: u64,
    pub regular: bool,
    /// Whether the class lifts to a cuspidal representation in
    /// characteristic zero.
    pub cuspidal: bool,
}

pub fn classes(inst: &Instance) -> Vec<ClassInfo> {
    let (q, mp) = (inst.q(), inst.m_prime());
    class_representatives(q, mp)
        .into_iter()
        .map(|rep| ClassInfo {
            rep,
            conjugate: characters::conjugate_exponent(rep, q, mp),
            regular: characters::is_regular(rep, q, mp),
            cuspidal: characters::has_cuspidal_lift(rep, q, mp, inst.ell()),
        })
        .collect()
}

/// Gamma values of every class against every `omega_j`.
#[derive(Debug, Clone)]
pub struct GammaTable {
    pub ell: u64,
    pub q: u64,
    pub m_prime: u64,
    pub n_prime: u64,
    pub classes: Vec<ClassInfo>,
    /// rows[r][j] for class `classes[r]`
    pub rows: Vec<Vec<Fe>>,
}

pub fn gamma_table(inst: &Instance) -> GammaTable {
    let gt = GaussTable::new(inst);
    let classes = classes(inst);
    let rows = classes
        .iter()
        .map(|c| {
            (0..inst.n_prime())
                .map(|j| {
                    let v = gt.gamma(inst, c.rep, j);
                    assert!(!inst.field().is_zero(&v), "gamma vanished at i={} j={j}", c.rep);
                    v
                })
                .collect()
        })
        .collect();
    GammaTable {
        ell: inst.ell(),
        q: inst.q(),
        m_prime: inst.m_prime(),
        n_prime: inst.n_prime(),
        classes,
        rows,
    }
}

/// Pairs of class representatives with equal rows: screen on `j = 0`, then
/// compare full rows among the survivors.
pub fn find_duplicates(table: &GammaTable) -> Vec<(u64, u64)> {
    duplicates_two_stage(&table.rows, &table.classes)
}

/// Same result as [`find_duplicates`] by comparing every pair of full rows.
pub fn find_duplicates_naive(table: &GammaTable) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 0..table.rows.len() {
        for b in a + 1..table.rows.len() {
            if table.rows[a] == table.rows[b] {
                out.push((table.classes[a].rep, table.classes[b].rep));
            }
        }
    }
    out
}

fn duplicates_two_stage<T: Ord + Clone>(rows: &[Vec<T>], classes: &[ClassInfo]) -> Vec<(u64, u64)> {
    // group by the j = 0 value, then by full rows within each group
    let mut order: Vec<usize> = (0..rows.len()).collect();
    order.sort_by(|&a, &b| rows[a][0].cmp(&rows[b][0]).then(a.cmp(&b)));
    let mut out = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && rows[order[end]][0] == rows[order[start]][0] {
            end += 1;
        }
        let group = &order[start..end];
        for (x, &a) in group.iter().enumerate() {
            for &b in &group[x + 1..] {
                if rows[a] == rows[b] {
                    let (lo, hi) = (a.min(b), a.max(b));
                    out.push((classes[lo].rep, classes[hi].rep));
                }
            }
        }
        start = end;
    }
    out.sort_unstable();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Duplicate {
    pub i: u64,
    pub i2: u64,
    pub regular: (bool, bool),
    pub cuspidal: (bool, bool),
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub ell: u64,
    pub q: u64,
    pub m_prime: u64,
    pub n_prime: u64,
    pub class_count: usize,
    pub duplicates: Vec<Duplicate>,
    /// Duplicate count under the alternate `(w, zeta, psi)`, when requested.
    pub alternate_duplicates: Option<usize>,
}

impl SearchReport {
    pub fn has_duplicates(&self) -> bool {
        !self.duplicates.is_empty()
    }

    /// Whether the alternate choices disagree with the canonical ones.
    pub fn alternate_discrepancy(&self) -> bool {
        self.alternate_duplicates
            .is_some_and(|n| n != self.duplicates.len())
    }
}

fn duplicate_pairs(inst: &Instance) -> (Vec<ClassInfo>, Vec<(u64, u64)>) {
    let gt = GaussTable::new(inst);
    let classes = classes(inst);
    let rows: Vec<Vec<Vec<u32>>> = classes.iter().map(|c| gt.row_chart(inst, c.rep)).collect();
    let pairs = duplicates_two_stage(&rows, &classes);
    (classes, pairs)
}

/// Counterexample search in chart coordinates; with `alternate`, the search
/// is repeated under the alternate choices whenever duplicates are found.
pub fn search(ell: u64, q: u64, alternate: bool) -> Result<SearchReport, InstanceError> {
    let inst = Instance::new(ell, q)?;
    let (classes, pairs) = duplicate_pairs(&inst);
    let info = |r: u64| *classes.iter().find(|c| c.rep == r).expect("known class");
    let duplicates: Vec<Duplicate> = pairs
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (info(a), info(b));
            Duplicate {
                i: a,
                i2: b,
                regular: (x.regular, y.regular),
                cuspidal: (x.cuspidal, y.cuspidal),
            }
        })
        .collect();
    let alternate_duplicates = if alternate && !duplicates.is_empty() {
        let alt = Instance::alternate(ell, q)?;
        Some(duplicate_pairs(&alt).1.len())
    } else {
        None
    };
    Ok(SearchReport {
        ell,
        q,
        m_prime: inst.m_prime(),
        n_prime: inst.n_prime(),
        class_count: classes.len(),
        duplicates,
        alternate_duplicates,
    })
}

/// `Some(i)` if `q = 2 l^i + 1` with `i > 0`.
pub fn conjecture_exponent(ell: u64, q: u64) -> Option<u32> {
    if q < 3 || (q - 1) % 2 != 0 {
        return None;
    }
    let h = (q - 1) / 2;
    let i = arith::valuation(h, ell);
    (i > 0 && ell.checked_pow(i) == Some(h)).then_some(i)
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanEntry {
    pub ell: u64,
    pub q: u64,
    pub has_duplicates: bool,
    pub duplicate_count: usize,
    pub predicted: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub ell_max: u64,
    pub q_max: u64,
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn violations(&self) -> Vec<&ScanEntry> {
        self.entries.iter().filter(|e| !e.agrees).collect()
    }
}

/// Runs the search on every pair of distinct primes `l <= ell_max`,
/// `q <= q_max` and compares with the conjectured pattern.
pub fn scan_conjecture(ell_max: u64, q_max: u64) -> Result<ScanReport, InstanceError> {
    let mut entries = Vec::new();
    for ell in arith::primes_up_to(ell_max) {
        for q in arith::primes_up_to(q_max) {
            if q == ell {
                continue;
            }
            let r = search(ell, q, false)?;
            let predicted = conjecture_exponent(ell, q).is_some();
            entries.push(ScanEntry {
                ell,
                q,
                has_duplicates: r.has_duplicates(),
                duplicate_count: r.duplicates.len(),
                predicted,
                agrees: predicted == r.has_duplicates(),
            });
        }
    }
    Ok(ScanReport {
        ell_max,
        q_max,
        entries,
    })
}
