//! Versioned JSON envelopes with the context fingerprint, and CSV tables.

use serde::Serialize;

use crate::field::Fe;
use crate::gauss::GammaValue;
use crate::instance::{Choices, Instance};
use crate::search::GammaTable;

pub const SCHEMA: u32 = 1;

/// Everything needed to reproduce a value: the coefficient field, the
/// anchor root, `psi` and the generator choices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub ell: u64,
    pub q: u64,
    pub degree: usize,
    /// Monic modulus, constant term first.
    pub modulus: Vec<u32>,
    pub generator: Option<Fe>,
    pub anchor_order: u64,
    pub anchor: Fe,
    pub zeta_m: Fe,
    pub psi_root: Fe,
    pub choices: Choices,
}

impl Fingerprint {
    pub fn of(inst: &Instance) -> Fingerprint {
        let f = inst.field();
        Fingerprint {
            ell: inst.ell(),
            q: inst.q(),
            degree: f.degree(),
            modulus: f.modulus().to_vec(),
            generator: f.generator().cloned(),
            anchor_order: inst.big_l(),
            anchor: inst.root_power(1),
            zeta_m: inst.zeta_m(),
            psi_root: inst.zeta_p(),
            choices: inst.choices(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema: u32,
    pub command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<Fingerprint>,
    pub data: T,
}

pub fn to_json<T: Serialize>(command: &str, inst: Option<&Instance>, data: T) -> String {
    let env = Envelope {
        schema: SCHEMA,
        command,
        fingerprint: inst.map(Fingerprint::of),
        data,
    };
    serde_json::to_string_pretty(&env).expect("reports serialize")
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaRecord {
    pub i: u64,
    pub j: u64,
    pub value: Fe,
    pub provenance: crate::gauss::Provenance,
}

impl GammaRecord {
    pub fn new(g: &GammaValue) -> GammaRecord {
        GammaRecord {
            i: g.i,
            j: g.j,
            value: g.value.clone(),
            provenance: g.provenance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub i: u64,
    pub conjugate: u64,
    pub regular: bool,
    pub cuspidal: bool,
    pub values: Vec<Fe>,
}

pub fn table_rows(table: &GammaTable) -> Vec<TableRow> {
    table
        .classes
        .iter()
        .zip(&table.rows)
        .map(|(c, r)| TableRow {
            i: c.rep,
            conjugate: c.conjugate,
            regular: c.regular,
            cuspidal: c.cuspidal,
            values: r.clone(),
        })
        .collect()
}

#[derive(Serialize)]
struct CsvRow {
    ell: u64,
    q: u64,
    i: u64,
    j: u64,
    regular: bool,
    cuspidal: bool,
    value: String,
}

/// One line per `(i, j)`: `ell,q,i,j,regular,cuspidal,value`, with values
/// as JSON coefficient arrays, lowest degree first.
pub fn table_csv(table: &GammaTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in table_rows(table) {
        for (j, v) in row.values.iter().enumerate() {
            w.serialize(CsvRow {
                ell: table.ell,
                q: table.q,
                i: row.i,
                j: j as u64,
                regular: row.regular,
                cuspidal: row.cuspidal,
                value: serde_json::to_string(v).expect("coefficients serialize"),
            })
            .expect("in-memory writer");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("ascii")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::gamma_table;

    #[test]
    fn envelope_is_versioned_and_stable() {
        let inst = Instance::new(2, 5).unwrap();
        let a = to_json("table", Some(&inst), table_rows(&gamma_table(&inst)));
        let b = to_json("table", Some(&Instance::new(2, 5).unwrap()), table_rows(&gamma_table(&inst)));
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["fingerprint"]["degree"], 4);
        assert_eq!(v["data"][0]["values"][0], serde_json::json!([1, 0, 0, 0]));
    }

    #[test]
    fn csv_has_one_line_per_entry() {
        let inst = Instance::new(3, 7).unwrap();
        let csv = table_csv(&gamma_table(&inst));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "ell,q,i,j,regular,cuspidal,value");
        assert_eq!(lines.len(), 1 + 9 * 2);
    }
}
