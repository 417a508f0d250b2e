//! Coefficient tables for the fixed-dimension functions, read from the
//! embedded `benchmark_constants.csv`.

use once_cell::sync::Lazy;

pub(crate) const CONSTANTS_CSV: &str = include_str!("../../data/benchmark_constants.csv");

#[derive(Debug)]
pub struct CoefficientTables {
    pub foxholes_a: [[f64; 25]; 2],
    pub kowalik_a: [f64; 11],
    pub kowalik_b: [f64; 11],
    pub hartman3_a: [[f64; 3]; 4],
    pub hartman3_c: [f64; 4],
    pub hartman3_p: [[f64; 3]; 4],
    pub hartman6_a: [[f64; 6]; 4],
    pub hartman6_c: [f64; 4],
    pub hartman6_p: [[f64; 6]; 4],
    pub shekel_a: [[f64; 4]; 10],
    pub shekel_c: [f64; 10],
}

static TABLES: Lazy<CoefficientTables> = Lazy::new(|| parse(CONSTANTS_CSV));

pub fn tables() -> &'static CoefficientTables {
    &TABLES
}

fn parse(text: &str) -> CoefficientTables {
    let mut t = CoefficientTables {
        foxholes_a: [[0.0; 25]; 2],
        kowalik_a: [0.0; 11],
        kowalik_b: [0.0; 11],
        hartman3_a: [[0.0; 3]; 4],
        hartman3_c: [0.0; 4],
        hartman3_p: [[0.0; 3]; 4],
        hartman6_a: [[0.0; 6]; 4],
        hartman6_c: [0.0; 4],
        hartman6_p: [[0.0; 6]; 4],
        shekel_a: [[0.0; 4]; 10],
        shekel_c: [0.0; 10],
    };
    let mut filled = 0;
    for (line_no, line) in text.lines().enumerate().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let [name, row, col, value] = fields[..] else {
            panic!("benchmark_constants.csv line {}: expected 4 fields", line_no + 1);
        };
        let row: usize = row.parse().expect("row index");
        let col: usize = col.parse().expect("column index");
        let value: f64 = value.parse().expect("constant value");
        let slot = match name {
            "foxholes_a" => &mut t.foxholes_a[row][col],
            "kowalik_a" => &mut t.kowalik_a[col],
            "kowalik_b" => &mut t.kowalik_b[col],
            "hartman3_a" => &mut t.hartman3_a[row][col],
            "hartman3_c" => &mut t.hartman3_c[col],
            "hartman3_p" => &mut t.hartman3_p[row][col],
            "hartman6_a" => &mut t.hartman6_a[row][col],
            "hartman6_c" => &mut t.hartman6_c[col],
            "hartman6_p" => &mut t.hartman6_p[row][col],
            "shekel_a" => &mut t.shekel_a[row][col],
            "shekel_c" => &mut t.shekel_c[col],
            other => panic!("benchmark_constants.csv: unknown table `{other}`"),
        };
        *slot = value;
        filled += 1;
    }
    assert_eq!(filled, 202, "benchmark_constants.csv is incomplete");
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use sha2::{Digest, Sha256};

    #[test]
    fn constants_file_checksum_is_pinned() {
        let digest = hex::encode(Sha256::digest(CONSTANTS_CSV.as_bytes()));
        assert_eq!(
            digest,
            "827d22a1e71b8821433077a364b4d25ea75d22cf5e813f2a696856f8226c4350"
        );
    }

    #[test]
    fn table_shapes_and_spot_values() {
        let t = tables();
        assert_eq!(t.foxholes_a[0][..5], [-32.0, -16.0, 0.0, 16.0, 32.0]);
        assert_eq!(t.foxholes_a[1][24], 32.0);
        assert_eq!(t.kowalik_b[0], 4.0);
        assert_eq!(t.hartman3_p[3][0], 0.03815);
        assert_eq!(t.hartman6_p[2][5], 0.665);
        assert_eq!(t.shekel_a[9], [7.0, 3.6, 7.0, 3.6]);
        assert_eq!(t.shekel_c[9], 0.5);
    }
}
