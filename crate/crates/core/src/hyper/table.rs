use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use super::spec::Regrouping;
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Key `(k, i, j)`: `(k, m1, m2)` for lattice tables and `(k, m, n)` with
/// `m = m1 + m2`, `n = m1` for total-degree tables.
pub type TableKey = (i32, u32, u32);

/// Exact coefficients of `eps^k x1^m1 x2^m2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTable {
    pub entries: BTreeMap<TableKey, Rational>,
    pub eps_order: i32,
    pub degree_bound: u32,
    pub regrouping: Regrouping,
}

impl ExpansionTable {
    pub fn new(eps_order: i32, degree_bound: u32) -> Self {
        ExpansionTable {
            entries: BTreeMap::new(),
            eps_order,
            degree_bound,
            regrouping: Regrouping::Lattice,
        }
    }

    pub fn get(&self, k: i32, a: u32, b: u32) -> Option<&Rational> {
        self.entries.get(&(k, a, b))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lattice table with `m1` and `m2` exchanged.
    pub fn swapped(&self) -> ExpansionTable {
        assert_eq!(self.regrouping, Regrouping::Lattice, "swap is defined on lattice keys");
        ExpansionTable {
            entries: self
                .entries
                .iter()
                .map(|(&(k, a, b), v)| ((k, b, a), v.clone()))
                .collect(),
            ..self.clone()
        }
    }

    /// Keeps only entries with `k <= eps_order` and degree `<= degree_bound`.
    pub fn restricted(&self, eps_order: i32, degree_bound: u32) -> ExpansionTable {
        let degree = |&(_, a, b): &TableKey| match self.regrouping {
            Regrouping::Lattice => a + b,
            Regrouping::TotalDegree => a,
        };
        ExpansionTable {
            entries: self
                .entries
                .iter()
                .filter(|(key, _)| key.0 <= eps_order && degree(key) <= degree_bound)
                .map(|(key, v)| (*key, v.clone()))
                .collect(),
            eps_order: eps_order.min(self.eps_order),
            degree_bound: degree_bound.min(self.degree_bound),
            regrouping: self.regrouping,
        }
    }
}

/// Re-keys a lattice table by total degree: `(k, m1, m2) -> (k, m1+m2, m1)`.
pub fn regroup_total_degree(t: &ExpansionTable) -> Result<ExpansionTable> {
    if t.regrouping != Regrouping::Lattice {
        return Err(Error::domain("table is already regrouped by total degree"));
    }
    Ok(ExpansionTable {
        entries: t
            .entries
            .iter()
            .map(|(&(k, m1, m2), v)| ((k, m1 + m2, m1), v.clone()))
            .collect(),
        eps_order: t.eps_order,
        degree_bound: t.degree_bound,
        regrouping: Regrouping::TotalDegree,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Aligned,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "aligned" => Ok(TableFormat::Aligned),
            _ => Err(Error::domain(format!(
                "unknown table format '{s}' (expected csv or aligned)"
            ))),
        }
    }
}

/// Renders a table. CSV rows are sorted by key; the aligned form prints one
/// block per `k`, one row per first index.
pub fn emit_table(t: &ExpansionTable, format: TableFormat) -> String {
    let (first, second) = match t.regrouping {
        Regrouping::Lattice => ("m1", "m2"),
        Regrouping::TotalDegree => ("m", "n"),
    };
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            writeln!(out, "k,{first},{second},coefficient").unwrap();
            for (&(k, a, b), v) in &t.entries {
                writeln!(out, "{k},{a},{b},{v}").unwrap();
            }
        }
        TableFormat::Aligned => {
            let width = t.entries.values().map(|v| v.to_string().len()).max().unwrap_or(1);
            let mut blocks: BTreeMap<i32, BTreeMap<u32, BTreeMap<u32, &Rational>>> = BTreeMap::new();
            for (&(k, a, b), v) in &t.entries {
                blocks.entry(k).or_default().entry(a).or_default().insert(b, v);
            }
            for (i, (k, rows)) in blocks.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                writeln!(out, "k = {k}").unwrap();
                let cols = rows.values().flat_map(|r| r.keys()).max().copied().unwrap_or(0);
                let mut header = format!("{:>6} |", format!("{first}\\{second}"));
                for c in 0..=cols {
                    write!(header, " {:>width$}", c).unwrap();
                }
                writeln!(out, "{}", header.trim_end()).unwrap();
                for (a, row) in rows {
                    let mut line = format!("{a:>6} |");
                    for c in 0..=cols {
                        match row.get(&c) {
                            Some(v) => write!(line, " {:>width$}", v.to_string()).unwrap(),
                            None => write!(line, " {:>width$}", "").unwrap(),
                        }
                    }
                    writeln!(out, "{}", line.trim_end()).unwrap();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn table(entries: &[(TableKey, Rational)]) -> ExpansionTable {
        let mut t = ExpansionTable::new(3, 5);
        t.entries.extend(entries.iter().cloned());
        t
    }

    #[test]
    fn regroup_rekeys() {
        let t = table(&[((0, 1, 1), rat(4, 1)), ((2, 0, 3), rat(1, 2))]);
        let g = regroup_total_degree(&t).unwrap();
        assert_eq!(g.get(0, 2, 1), Some(&rat(4, 1)));
        assert_eq!(g.get(2, 3, 0), Some(&rat(1, 2)));
        assert_eq!(g.len(), 2);
        assert!(regroup_total_degree(&g).is_err());
        assert!(regroup_total_degree(&table(&[])).unwrap().is_empty());
    }

    #[test]
    fn csv_rendering() {
        let mut t = table(&[((0, 5, 5), rat(21, 512))]);
        t.regrouping = Regrouping::TotalDegree;
        assert_eq!(emit_table(&t, TableFormat::Csv), "k,m,n,coefficient\n0,5,5,21/512\n");
        let empty = table(&[]);
        assert_eq!(emit_table(&empty, TableFormat::Csv), "k,m1,m2,coefficient\n");
    }

    #[test]
    fn aligned_rendering_is_triangular() {
        let mut t = table(&[((0, 0, 0), rat(1, 1)), ((0, 1, 0), rat(1, 2)), ((0, 1, 1), rat(1, 4))]);
        t.regrouping = Regrouping::TotalDegree;
        let text = emit_table(&t, TableFormat::Aligned);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k = 0");
        assert_eq!(lines[1], "   m\\n |   0   1");
        assert_eq!(lines[2], "     0 |   1");
        assert_eq!(lines[3], "     1 | 1/2 1/4");
    }
}
