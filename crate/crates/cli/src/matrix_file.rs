//! Plain-text generator matrix files: a `q k n` header, then `k` rows of
//! `n` space-separated entries, every line newline-terminated.

use wspec_core::{Error, GeneratorMatrix, PrimeField, Result};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn number(line: usize, column: usize, tok: &str) -> Result<u64> {
    tok.parse::<u64>().map_err(|_| {
        parse_error(
            line,
            column,
            format!("`{tok}` is not a nonnegative integer"),
        )
    })
}

/// Parses a matrix file. Columns in errors count whitespace-separated fields from 1.
pub fn parse(text: &str) -> Result<GeneratorMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "empty file, expected `q k n`"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(parse_error(
            1,
            fields.len().min(3) + 1,
            "header must be `q k n`",
        ));
    }
    let q = number(1, 1, fields[0])?;
    let k = number(1, 2, fields[1])? as usize;
    let n = number(1, 3, fields[2])? as usize;
    let field = PrimeField::new(q)?;
    if k == 0 || n == 0 {
        return Err(parse_error(
            1,
            if k == 0 { 2 } else { 3 },
            "k and n must be positive",
        ));
    }
    let mut rows = Vec::with_capacity(k);
    for row in 0..k {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| parse_error(row + 2, 1, format!("expected {k} rows, found {row}")))?;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n {
            return Err(parse_error(
                line_no,
                tokens.len().min(n) + 1,
                format!("row has {} entries, expected {n}", tokens.len()),
            ));
        }
        let mut entries = Vec::with_capacity(n);
        for (j, tok) in tokens.iter().enumerate() {
            let v = number(line_no, j + 1, tok)?;
            if v >= q {
                return Err(parse_error(
                    line_no,
                    j + 1,
                    format!("entry {v} is outside [0, {q})"),
                ));
            }
            entries.push(v as u32);
        }
        rows.push(entries);
    }
    if let Some((line_no, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(parse_error(
            line_no,
            1,
            format!("unexpected trailing line `{extra}`"),
        ));
    }
    GeneratorMatrix::new(field, rows)
}

/// Writes the canonical file form.
pub fn render(g: &GeneratorMatrix) -> String {
    let mut out = format!("{} {} {}\n", g.q(), g.k(), g.n());
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
