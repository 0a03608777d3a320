//! `z_mm,force_N` measurement files.

use origami_spring::fitting::Measurement;

use crate::error::{CliError, Result};

pub const HEADER: [&str; 2] = ["z_mm", "force_N"];

/// Parses a measurement file. Lines starting with `#` are skipped; errors
/// name the 1-based line.
pub fn read_measurements(text: &str) -> Result<Vec<Measurement>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let bad = |line: u64, msg: String| CliError::Data(format!("line {line}: {msg}"));

    let header = match records.next() {
        None => return Err(bad(1, format!("expected header `{}`", HEADER.join(",")))),
        Some(r) => r?,
    };
    let line = header.position().map_or(1, |p| p.line());
    if header.iter().collect::<Vec<_>>() != HEADER {
        return Err(bad(line, format!("expected header `{}`", HEADER.join(","))));
    }

    let mut out = Vec::new();
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(bad(line, format!("expected 2 fields, found {}", record.len())));
        }
        let field = |i: usize| {
            record[i]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| bad(line, format!("`{}` is not a number", &record[i])))
        };
        out.push(Measurement {
            z: field(0)?,
            force: field(1)?,
        });
    }
    Ok(out)
}

/// Serializes measurements with the standard header.
pub fn write_measurements(points: &[Measurement]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for p in points {
        w.write_record([p.z.to_string(), p.force.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_whitespace() {
        let text = "# spring A\nz_mm,force_N\n0, -0.5\n# mid\n10.5,0.25\n";
        let m = read_measurements(text).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!((m[1].z, m[1].force), (10.5, 0.25));
    }

    #[test]
    fn empty_file_is_line_one_error() {
        let err = read_measurements("").unwrap_err().to_string();
        assert!(err.starts_with("line 1:"), "{err}");
    }

    #[test]
    fn malformed_row_names_line() {
        let err = read_measurements("z_mm,force_N\n1,2\n3,abc\n").unwrap_err().to_string();
        assert!(err.starts_with("line 3:"), "{err}");
        let err = read_measurements("z,F\n").unwrap_err().to_string();
        assert!(err.starts_with("line 1:"), "{err}");
        let err = read_measurements("z_mm,force_N\n1,2,3\n").unwrap_err().to_string();
        assert!(err.starts_with("line 2:"), "{err}");
    }

    #[test]
    fn write_read_round_trip() {
        let pts = vec![
            Measurement { z: 0.0, force: -0.125 },
            Measurement { z: 1.0 / 3.0, force: 2.5e-7 },
        ];
        let text = write_measurements(&pts);
        assert!(text.ends_with('\n'));
        assert_eq!(read_measurements(&text).unwrap(), pts);
    }
}
