//! Text format for multimatrix instances.
//!
//! Header `mm <n> <k> <mode>` for binary data, `cmm <n> <k> <mode>` for
//! rational costs; mode is `sparse` or `dense`. Sparse records are
//! `<c1> … <cn> <v>` with 1-based coordinates and unlisted cells zero.
//! Dense data is exactly `k^n` values in lexicographic order with the
//! last coordinate varying fastest. Costs may be integers, decimals, or
//! `p/q` fractions. Blank lines are ignored.

use std::collections::HashSet;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{BinaryMultimatrix, CostMultimatrix};
use crate::shape::Shape;

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedMatrix {
    Binary(BinaryMultimatrix),
    Cost(CostMultimatrix),
}

impl ParsedMatrix {
    pub fn shape(&self) -> Shape {
        match self {
            ParsedMatrix::Binary(m) => m.shape(),
            ParsedMatrix::Cost(m) => m.shape(),
        }
    }

    /// Canonical text for whichever kind was parsed.
    pub fn serialize(&self) -> String {
        match self {
            ParsedMatrix::Binary(m) => serialize_binary(m),
            ParsedMatrix::Cost(m) => serialize_cost(m),
        }
    }
}

pub fn parse_matrix(text: &str) -> Result<ParsedMatrix> {
    let mut lines = numbered_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 {
        return Err(Error::parse(
            header_no,
            format!(
                "header must be `mm|cmm <n> <k> <mode>`, got {} tokens",
                tokens.len()
            ),
        ));
    }
    let is_cost = match tokens[0] {
        "mm" => false,
        "cmm" => true,
        other => return Err(Error::parse(header_no, format!("unknown kind `{other}`"))),
    };
    let n: usize = tokens[1]
        .parse()
        .map_err(|_| Error::parse(header_no, format!("bad dimension count `{}`", tokens[1])))?;
    let k: usize = tokens[2]
        .parse()
        .map_err(|_| Error::parse(header_no, format!("bad axis extent `{}`", tokens[2])))?;
    let shape = Shape::new(n, k).map_err(|e| e.at_line(header_no))?;
    let dense = match tokens[3] {
        "sparse" => false,
        "dense" => true,
        other => return Err(Error::parse(header_no, format!("unknown mode `{other}`"))),
    };

    if dense {
        parse_dense(shape, is_cost, lines, text)
    } else {
        parse_sparse(shape, is_cost, lines)
    }
}

fn parse_sparse<'a, I>(shape: Shape, is_cost: bool, lines: I) -> Result<ParsedMatrix>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let n = shape.n();
    let mut seen: HashSet<usize> = HashSet::new();
    let mut bits = vec![false; shape.cell_count()];
    let mut costs = vec![BigRational::zero(); if is_cost { shape.cell_count() } else { 0 }];
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != n + 1 {
            return Err(Error::parse(
                line_no,
                format!("record needs {} tokens, got {}", n + 1, tokens.len()),
            ));
        }
        let mut indices = Vec::with_capacity(n);
        for t in &tokens[..n] {
            let v: usize = t
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad index `{t}`")))?;
            indices.push(v);
        }
        let coord = shape.coord(&indices).map_err(|e| e.at_line(line_no))?;
        let idx = shape.linear_index(&coord);
        if !seen.insert(idx) {
            return Err(Error::parse(
                line_no,
                format!("duplicate coordinate ({coord})"),
            ));
        }
        let value_tok = tokens[n];
        if is_cost {
            let v = parse_rational(value_tok)
                .ok_or_else(|| Error::parse(line_no, format!("bad cost `{value_tok}`")))?;
            costs[idx] = v;
        } else {
            let v = parse_bit(value_tok).ok_or_else(|| {
                Error::parse(line_no, format!("value `{value_tok}` is not 0 or 1"))
            })?;
            bits[idx] = v;
        }
    }
    Ok(if is_cost {
        ParsedMatrix::Cost(CostMultimatrix::from_dense(shape, costs)?)
    } else {
        ParsedMatrix::Binary(BinaryMultimatrix::from_dense(shape, bits)?)
    })
}

fn parse_dense<'a, I>(shape: Shape, is_cost: bool, lines: I, text: &str) -> Result<ParsedMatrix>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let want = shape.cell_count();
    let mut bits = Vec::with_capacity(want);
    let mut costs = Vec::with_capacity(want);
    let mut last_line = 1;
    for (line_no, line) in lines {
        last_line = line_no;
        for tok in line.split_whitespace() {
            if bits.len() + costs.len() == want {
                return Err(Error::parse(
                    line_no,
                    format!("dense data has more than {want} values"),
                ));
            }
            if is_cost {
                let v = parse_rational(tok)
                    .ok_or_else(|| Error::parse(line_no, format!("bad cost `{tok}`")))?;
                costs.push(v);
            } else {
                let v = parse_bit(tok)
                    .ok_or_else(|| Error::parse(line_no, format!("value `{tok}` is not 0 or 1")))?;
                bits.push(v);
            }
        }
    }
    let got = bits.len() + costs.len();
    if got != want {
        let total_lines = text.lines().count().max(last_line);
        return Err(Error::parse(
            total_lines,
            format!("dense data has {got} values, shape needs {want}"),
        ));
    }
    Ok(if is_cost {
        ParsedMatrix::Cost(CostMultimatrix::from_dense(shape, costs)?)
    } else {
        ParsedMatrix::Binary(BinaryMultimatrix::from_dense(shape, bits)?)
    })
}

/// Canonical serialization: sparse when fewer than half the cells are
/// nonzero, dense otherwise. `parse(serialize(m)) == m`.
pub fn serialize_binary(m: &BinaryMultimatrix) -> String {
    let shape = m.shape();
    let total = shape.cell_count();
    let ones = m.count_ones();
    let mut out = String::new();
    if ones * 2 < total {
        out.push_str(&format!("mm {} {} sparse\n", shape.n(), shape.k()));
        for coord in m.ones() {
            for c in coord.indices() {
                out.push_str(&format!("{c} "));
            }
            out.push_str("1\n");
        }
    } else {
        out.push_str(&format!("mm {} {} dense\n", shape.n(), shape.k()));
        let values: Vec<&str> = (0..total)
            .map(|i| if m.get_linear(i) { "1" } else { "0" })
            .collect();
        out.push_str(&values.join(" "));
        out.push('\n');
    }
    out
}

pub fn serialize_cost(m: &CostMultimatrix) -> String {
    let shape = m.shape();
    let total = shape.cell_count();
    let nonzero = m.count_nonzero();
    let mut out = String::new();
    if nonzero * 2 < total {
        out.push_str(&format!("cmm {} {} sparse\n", shape.n(), shape.k()));
        for (i, v) in m.values().iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let coord = shape.coord_at(i);
            for c in coord.indices() {
                out.push_str(&format!("{c} "));
            }
            out.push_str(&format!("{}\n", format_rational(v)));
        }
    } else {
        out.push_str(&format!("cmm {} {} dense\n", shape.n(), shape.k()));
        let values: Vec<String> = m.values().iter().map(format_rational).collect();
        out.push_str(&values.join(" "));
        out.push('\n');
    }
    out
}

fn numbered_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
}

fn parse_bit(tok: &str) -> Option<bool> {
    match tok {
        "0" => Some(false),
        "1" => Some(true),
        _ => None,
    }
}

/// Accepts integers, `p/q` fractions, and plain decimals.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    if let Some((num, den)) = tok.split_once('/') {
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    if let Some((int_part, frac_part)) = tok.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int: BigInt = if int_part == "-" {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let magnitude = int.abs() * &scale + frac;
        let signed = if negative { -magnitude } else { magnitude };
        return Some(BigRational::new(signed, scale));
    }
    let int: BigInt = tok.parse().ok()?;
    Some(BigRational::from_integer(int))
}

/// Integer when the denominator is 1, `p/q` otherwise.
pub fn format_rational(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}
