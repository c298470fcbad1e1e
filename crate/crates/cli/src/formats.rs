//! Plain-text formats: angle lists, bit tables and matrix dumps.

use oraclemux::{BitTable, UnitaryMatrix};

use crate::error::CliError;

/// One decimal radian value per line, in control-value order. Blank lines
/// and lines starting with `#` are skipped.
pub fn parse_angle_file(text: &str) -> Result<Vec<f64>, CliError> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(n, l)| {
            l.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| {
                    CliError::Format(format!("line {}: not a finite number: {l:?}", n + 1))
                })
        })
        .collect()
}

/// Comma-separated angles, as given to `--angles`.
pub fn parse_angle_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Format(format!("not a finite angle: {s:?}")))
        })
        .collect()
}

pub fn format_angle_file(angles: &[f64]) -> String {
    angles.iter().map(|a| format!("{a}\n")).collect()
}

/// One row per line, bits as `0`/`1`, rows in control-value order.
pub fn format_bit_table(table: &BitTable) -> String {
    let mut out = String::new();
    for row in table.rows() {
        out.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

pub fn parse_bit_table(text: &str) -> Result<BitTable, CliError> {
    let rows: Vec<Vec<bool>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(CliError::Format(format!("bit table row {l:?} holds {c:?}"))),
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if rows.len() < 2 || !rows.len().is_power_of_two() {
        return Err(CliError::Format(format!(
            "bit table needs 2^n_beta rows, found {}",
            rows.len()
        )));
    }
    let n_beta = rows.len().trailing_zeros() as usize;
    let n_alpha = rows[0].len();
    Ok(BitTable::from_rows(n_beta, n_alpha, &rows)?)
}

/// Row-major dump: a `dim N` header, then one line per row of
/// space-separated `re,im` pairs.
pub fn format_matrix(m: &UnitaryMatrix) -> String {
    let n = m.dim();
    let mut out = format!("dim {n}\n");
    for i in 0..n {
        let row: Vec<String> = (0..n)
            .map(|j| {
                let z = m.get(i, j);
                format!("{:.17e},{:.17e}", z.re, z.im)
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use oraclemux::{quantize, AngleVector, QuantizeMode};
    use std::f64::consts::PI;

    #[test]
    fn bit_table_text() {
        let a = AngleVector::new(2, vec![PI / 2.0, 3.0 * PI / 2.0, PI, 0.0]).unwrap();
        let t = quantize(&a, 2, QuantizeMode::Truncate).unwrap();
        let text = format_bit_table(&t);
        assert_eq!(text, "01\n11\n10\n00\n");
        assert_eq!(parse_bit_table(&text).unwrap(), t);
        assert!(parse_bit_table("01\n1\n").is_err());
        assert!(parse_bit_table("01\n12\n").is_err());
        assert!(parse_bit_table("01\n11\n10\n").is_err());
    }

    #[test]
    fn angle_files() {
        let v = parse_angle_file("# header\n0.5\n\n-1.25\n3e-3\n").unwrap();
        assert_eq!(v, vec![0.5, -1.25, 3e-3]);
        assert!(parse_angle_file("0.5\nabc\n").is_err());
        assert!(parse_angle_file("NaN\n").is_err());
        let angles = [0.1, 2.0 / 3.0, -7.0];
        assert_eq!(
            parse_angle_file(&format_angle_file(&angles)).unwrap(),
            angles
        );
        assert_eq!(parse_angle_list("1, -2.5,3").unwrap(), vec![1.0, -2.5, 3.0]);
        assert!(parse_angle_list("1,,2").is_err());
    }

    #[test]
    fn matrix_dump() {
        let text = format_matrix(&UnitaryMatrix::identity(2));
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "dim 2");
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("1.00000000000000000e0,0.00000000000000000e0 "));
    }
}
