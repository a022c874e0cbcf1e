use std::fmt::Write as _;

use num_rational::BigRational;

use super::HarnessError;
use crate::claw::exponent::truncated_decimal;
use crate::claw::{hsx_exponent, mclaw_exponent, sha3_bound_table};

/// Output size of SHA3-512 in bits.
pub const SHA3_512_BITS: f64 = 512.0;

/// One row of the exponent table.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentRow {
    pub l: u32,
    pub mclaw: BigRational,
    pub hsx: BigRational,
}

/// Both exponents for every `l` in `2..=l_max`.
pub fn bound_table(l_max: u32) -> Result<Vec<ExponentRow>, HarnessError> {
    if l_max < 2 {
        return Err(HarnessError::InvalidConfig(format!(
            "l_max must be at least 2, got {l_max}"
        )));
    }
    Ok((2..=l_max)
        .map(|l| ExponentRow {
            l,
            mclaw: mclaw_exponent(l),
            hsx: hsx_exponent(l),
        })
        .collect())
}

/// Aligned text rendering with exact fractions and 4-digit truncated
/// decimals.
pub fn render_bound_table(rows: &[ExponentRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>3}  {:>12} {:>8}  {:>12} {:>8}",
        "l", "mclaw", "decimal", "hsx", "decimal"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>3}  {:>12} {:>8}  {:>12} {:>8}",
            r.l,
            r.mclaw.to_string(),
            truncated_decimal(&r.mclaw, 4),
            r.hsx.to_string(),
            truncated_decimal(&r.hsx, 4)
        );
    }
    out
}

/// CSV rendering of the exponent table.
pub fn bound_table_csv(rows: &[ExponentRow]) -> String {
    let mut out = String::from("l,mclaw,mclaw_decimal,hsx,hsx_decimal\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.l,
            r.mclaw,
            truncated_decimal(&r.mclaw, 4),
            r.hsx,
            truncated_decimal(&r.hsx, 4)
        );
    }
    out
}

/// `ceil(log2(Qlimit_2))` for `l = 2..=5` with `N = 2^512` and `c_N = 1`:
/// the query budget for an l-collision of SHA3-512.
pub fn sha3_table() -> Vec<(u32, u32)> {
    sha3_bound_table(2..=5, 2, SHA3_512_BITS, 1.0).expect("parameters are in range")
}

pub fn render_sha3_table(rows: &[(u32, u32)]) -> String {
    let mut out = String::from("  l  log2 queries\n");
    for (l, bits) in rows {
        let _ = writeln!(out, "{l:>3}  {bits:>12}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_rows() {
        let rows = bound_table(8).unwrap();
        assert_eq!(rows.len(), 7);
        let mclaw: Vec<String> = rows.iter().map(|r| r.mclaw.to_string()).collect();
        let hsx: Vec<String> = rows.iter().map(|r| r.hsx.to_string()).collect();
        assert_eq!(mclaw, ["1/3", "3/7", "7/15", "15/31", "31/63", "63/127", "127/255"]);
        assert_eq!(hsx, ["1/3", "4/9", "13/27", "40/81", "121/243", "364/729", "1093/2187"]);
        assert!(bound_table(1).is_err());
    }

    #[test]
    fn rendered_decimals() {
        let text = render_bound_table(&bound_table(7).unwrap());
        let last = text.lines().last().unwrap();
        assert!(last.contains("0.4960") && last.contains("0.4993"), "{last}");
    }

    #[test]
    fn sha3_row() {
        assert_eq!(sha3_table(), vec![(2, 181), (3, 230), (4, 250), (5, 259)]);
    }
}
