//! Operator exchange formats: coordinate text `row col re im` (0-based)
//! under a one-line JSON header, and a single JSON document. Floats are
//! written in shortest round-trip form, so both formats re-import
//! bit-exactly.

use serde::{Deserialize, Serialize};

use super::op::{Band, TruncOp, C64};
use super::space::Space;
use crate::algebra::Algebra;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorHeader {
    pub algebra: Option<Algebra>,
    pub generator: Option<String>,
    pub q: Option<f64>,
    pub dims: Vec<usize>,
    pub bandwidth: Vec<Band>,
    pub space: Space,
    pub nnz: usize,
}

impl OperatorHeader {
    pub fn for_op(op: &TruncOp, algebra: Option<Algebra>, generator: Option<String>, q: Option<f64>) -> Self {
        Self {
            algebra,
            generator,
            q,
            dims: op.factor_dims(),
            bandwidth: op.band().to_vec(),
            space: op.space().clone(),
            nnz: op.nnz(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonOperator {
    header: OperatorHeader,
    entries: Vec<(usize, usize, f64, f64)>,
}

fn assemble(header: &OperatorHeader, entries: impl IntoIterator<Item = (usize, usize, f64, f64)>) -> Result<TruncOp> {
    let n = header.space.dim();
    if header.bandwidth.len() != header.space.rank() {
        return Err(Error::Format("bandwidth arity differs from the factor count".into()));
    }
    let mut cols: Vec<Vec<(usize, C64)>> = vec![Vec::new(); n];
    let mut count = 0;
    for (i, j, re, im) in entries {
        if i >= n || j >= n {
            return Err(Error::Format(format!("entry ({i}, {j}) outside dimension {n}")));
        }
        cols[j].push((i, C64::new(re, im)));
        count += 1;
    }
    if count != header.nnz {
        return Err(Error::Format(format!("header announces {} entries, found {count}", header.nnz)));
    }
    Ok(TruncOp::from_columns(&header.space, header.bandwidth.clone(), cols))
}

pub fn export_text(op: &TruncOp, header: &OperatorHeader) -> Result<String> {
    let mut out = format!("# {}\n", serde_json::to_string(header)?);
    for (i, j, v) in op.triplets() {
        out.push_str(&format!("{i} {j} {:?} {:?}\n", v.re, v.im));
    }
    Ok(out)
}

pub fn import_text(text: &str) -> Result<(OperatorHeader, TruncOp)> {
    let mut lines = text.lines();
    let first = lines.next().ok_or_else(|| Error::Format("empty operator file".into()))?;
    let json = first.strip_prefix("# ").ok_or_else(|| Error::Format("missing '# ' header line".into()))?;
    let header: OperatorHeader = serde_json::from_str(json)?;
    let mut entries = Vec::new();
    for (n, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Format(format!("line {}: expected 'row col re im'", n + 2));
        if f.len() != 4 {
            return Err(bad());
        }
        let i = f[0].parse().map_err(|_| bad())?;
        let j = f[1].parse().map_err(|_| bad())?;
        let re = f[2].parse().map_err(|_| bad())?;
        let im = f[3].parse().map_err(|_| bad())?;
        entries.push((i, j, re, im));
    }
    let op = assemble(&header, entries)?;
    Ok((header, op))
}

pub fn export_json(op: &TruncOp, header: &OperatorHeader) -> Result<String> {
    let doc = JsonOperator { header: header.clone(), entries: op.triplets().map(|(i, j, v)| (i, j, v.re, v.im)).collect() };
    Ok(serde_json::to_string(&doc)?)
}

pub fn import_json(text: &str) -> Result<(OperatorHeader, TruncOp)> {
    let doc: JsonOperator = serde_json::from_str(text)?;
    let op = assemble(&doc.header, doc.entries)?;
    Ok((doc.header, op))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TruncOp {
        let a = TruncOp::shift(7, 1, |k| (1.0 - 0.5f64.powi(4 * k as i32 + 4)).sqrt());
        let b = TruncOp::shift(5, -1, |k| -(k as f64).sqrt() / 3.0);
        a.kron(&b).scale(C64::from_polar(1.0, 0.3))
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let op = sample();
        let h = OperatorHeader::for_op(&op, Some(Algebra::Sym2), Some("z22".into()), Some(0.5));
        let (h2, back) = import_text(&export_text(&op, &h).unwrap()).unwrap();
        assert_eq!(h, h2);
        assert_eq!(op, back);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let op = sample();
        let h = OperatorHeader::for_op(&op, None, None, None);
        let (_, back) = import_json(&export_json(&op, &h).unwrap()).unwrap();
        assert_eq!(op, back);
    }

    #[test]
    fn rejects_out_of_range() {
        let op = TruncOp::shift(2, 1, |_| 1.0);
        let h = OperatorHeader::for_op(&op, None, None, None);
        let text = export_text(&op, &h).unwrap().replace("1 0 ", "9 0 ");
        assert!(import_text(&text).is_err());
    }
}
