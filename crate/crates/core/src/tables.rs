//! The printed triangles, as fixtures, and their recomputation.
//!
//! Each table is a Riordan array indexed by `(n, k)`. Peak tables are filled
//! for `k <= n`, valley tables for `2k <= n`; other cells are blank.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::formulas::CountId;
use crate::series::table_array;
use crate::verify::{evaluate, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Table {
    pub id: &'static str,
    pub count: CountId,
    pub title: &'static str,
    /// Printed rows, `rows[n][k]`.
    pub printed: &'static [&'static [u64]],
}

/// A printed cell that disagrees with every way of computing it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Misprint {
    pub table: &'static str,
    pub n: usize,
    pub k: usize,
    pub printed: u64,
    pub actual: u64,
}

/// Row 5 of the `V*` table reads 729 in print; `binom(12, 5) = 792`, which
/// also equals `V(5,0) + V_L(4,0) = 462 + 330`.
pub const MISPRINTS: &[Misprint] = &[Misprint { table: "3.3", n: 5, k: 0, printed: 729, actual: 792 }];

pub const TABLES: &[Table] = &[
    Table {
        id: "1.1",
        count: CountId::CPartial,
        title: "partial Dyck paths of length 2n-k ending at level k",
        printed: &[
            &[1],
            &[1, 1],
            &[2, 2, 1],
            &[5, 5, 3, 1],
            &[14, 14, 9, 4, 1],
            &[42, 42, 28, 14, 5, 1],
            &[132, 132, 90, 48, 20, 6, 1],
            &[429, 429, 297, 165, 75, 27, 7, 1],
        ],
    },
    Table {
        id: "2.1",
        count: CountId::F,
        title: "pairs (free path empty or starting ud, partial path ending at k)",
        printed: &[
            &[1],
            &[2, 1],
            &[5, 3, 1],
            &[15, 9, 4, 1],
            &[49, 29, 14, 5, 1],
            &[168, 98, 49, 20, 6, 1],
        ],
    },
    Table {
        id: "2.2",
        count: CountId::S,
        title: "symmetric peaks of weight k+1 in Dyck paths of semilength n+1",
        printed: &[
            &[1],
            &[2, 1],
            &[5, 2, 1],
            &[15, 5, 2, 1],
            &[49, 15, 5, 2, 1],
            &[168, 49, 15, 5, 2, 1],
        ],
    },
    Table {
        id: "2.3",
        count: CountId::E,
        title: "pairs (free path, partial path ending at k)",
        printed: &[
            &[1],
            &[3, 1],
            &[10, 4, 1],
            &[35, 15, 5, 1],
            &[126, 56, 21, 6, 1],
            &[462, 210, 84, 28, 7, 1],
        ],
    },
    Table {
        id: "2.4",
        count: CountId::L,
        title: "left-asymmetric peaks of weight k+1 in Dyck paths of semilength n+3",
        printed: &[
            &[1],
            &[5, 1],
            &[21, 5, 1],
            &[84, 21, 5, 1],
            &[330, 84, 21, 5, 1],
            &[1287, 330, 84, 21, 5, 1],
        ],
    },
    Table {
        id: "2.5",
        count: CountId::SStar,
        title: "symmetric or left-asymmetric peaks of weight k+1, semilength n+1",
        printed: &[
            &[1],
            &[2, 1],
            &[6, 2, 1],
            &[20, 6, 2, 1],
            &[70, 20, 6, 2, 1],
            &[252, 70, 20, 6, 2, 1],
        ],
    },
    Table {
        id: "3.1",
        count: CountId::V,
        title: "symmetric valleys of weight k+1 in Dyck paths of semilength n+2",
        printed: &[
            &[1],
            &[3],
            &[10, 1],
            &[35, 5],
            &[126, 21, 1],
            &[462, 84, 7],
            &[1716, 330, 36, 1],
        ],
    },
    Table {
        id: "3.2",
        count: CountId::VL,
        title: "left-asymmetric valleys of weight k+1 in Dyck paths of semilength n+3",
        printed: &[
            &[1],
            &[5],
            &[21, 1],
            &[84, 7],
            &[330, 36, 1],
            &[1287, 165, 9],
            &[5005, 715, 55, 1],
        ],
    },
    Table {
        id: "3.3",
        count: CountId::VStar,
        title: "symmetric or left-asymmetric valleys of weight k+1, semilength n+2",
        printed: &[
            &[1],
            &[4],
            &[15, 1],
            &[56, 6],
            &[210, 28, 1],
            &[729, 120, 8],
            &[3003, 495, 45, 1],
        ],
    },
];

impl Table {
    pub fn get(id: &str) -> Result<&'static Table> {
        TABLES
            .iter()
            .find(|t| t.id == id)
            .ok_or_else(|| Error::Unknown(format!("table {id:?} (known: 1.1, 2.1-2.5, 3.1-3.3)")))
    }

    /// Highest `k` with a cell in row `n`.
    pub fn row_width(&self, n: usize) -> usize {
        if self.count.is_valley_indexed() {
            n / 2
        } else {
            n
        }
    }

    pub fn misprint(&self, n: usize, k: usize) -> Option<&'static Misprint> {
        MISPRINTS.iter().find(|m| m.table == self.id && m.n == n && m.k == k)
    }

    /// Rows `0..rows` recomputed with `method`. Rows are ragged: row `n`
    /// holds `k = 0..=row_width(n)`.
    ///
    /// The series method reads the table's Riordan array directly.
    pub fn compute(&self, rows: usize, method: Method) -> Result<Vec<Vec<BigInt>>> {
        if rows == 0 {
            return Ok(Vec::new());
        }
        let array = match method {
            Method::Series => Some(table_array(self.id, rows - 1)?),
            _ => None,
        };
        (0..rows)
            .map(|n| {
                (0..=self.row_width(n))
                    .map(|k| match &array {
                        Some(a) => a.entry(n, k),
                        None => evaluate(method, self.count, n, k, 0),
                    })
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_shapes() {
        for t in TABLES {
            for (n, row) in t.printed.iter().enumerate() {
                assert_eq!(row.len(), t.row_width(n) + 1, "table {} row {n}", t.id);
            }
        }
        assert!(Table::get("4.1").is_err());
    }

    #[test]
    fn formula_matches_print_except_misprint() {
        for t in TABLES {
            let rows = t.compute(t.printed.len(), Method::Formula).unwrap();
            for (n, row) in t.printed.iter().enumerate() {
                for (k, &v) in row.iter().enumerate() {
                    let expected = t.misprint(n, k).map_or(v, |m| m.actual);
                    assert_eq!(rows[n][k], BigInt::from(expected), "table {} ({n},{k})", t.id);
                }
            }
        }
    }

    #[test]
    fn riordan_matches_formula() {
        for t in TABLES {
            let a = t.compute(12, Method::Series).unwrap();
            let b = t.compute(12, Method::Formula).unwrap();
            assert_eq!(a, b, "table {}", t.id);
        }
    }
}
