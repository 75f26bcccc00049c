//! Machine-readable rows for computed graphs. Big integers travel as decimal strings.

use std::io::{self, Write};

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::graph::Graph;
use crate::graph6::emit_graph6;
use crate::sigma::{sigma01, SigmaDistribution};

pub(crate) fn biguint_as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn biguints_as_strings<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

/// One computed graph: counts and the reduced ratio.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordRow {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub sigma0: String,
    pub sigma1: String,
    pub q_num: String,
    pub q_den: String,
}

impl RecordRow {
    pub fn compute(g: &Graph) -> Self {
        let pair = sigma01(g);
        let q = pair.q();
        RecordRow {
            graph6: emit_graph6(g),
            n: g.order(),
            m: g.size(),
            sigma0: pair.sigma0.to_string(),
            sigma1: pair.sigma1.to_string(),
            q_num: q.numer().to_string(),
            q_den: q.denom().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionRow {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    #[serde(serialize_with = "biguints_as_strings")]
    pub counts: Vec<BigUint>,
}

impl DistributionRow {
    pub fn new(g: &Graph, dist: SigmaDistribution) -> Self {
        DistributionRow {
            graph6: emit_graph6(g),
            n: g.order(),
            m: g.size(),
            counts: dist.counts,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
}

pub fn write_jsonl<T: Serialize, W: Write + ?Sized>(out: &mut W, rows: &[T]) -> io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut *out, row)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_records<W: Write + ?Sized>(
    out: &mut W,
    rows: &[RecordRow],
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Jsonl => write_jsonl(out, rows),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_row() {
        let row = RecordRow::compute(&Graph::path(4));
        assert_eq!(row.sigma0, "8");
        assert_eq!(row.sigma1, "5");
        assert_eq!((row.q_num.as_str(), row.q_den.as_str()), ("5", "8"));
        assert_eq!((row.n, row.m), (4, 3));
    }

    #[test]
    fn reduced_ratio() {
        let two_k2 = Graph::path(2).disjoint_union(&Graph::path(2)).unwrap();
        let row = RecordRow::compute(&two_k2);
        assert_eq!((row.sigma0.as_str(), row.sigma1.as_str()), ("9", "6"));
        assert_eq!((row.q_num.as_str(), row.q_den.as_str()), ("2", "3"));
    }

    #[test]
    fn csv_has_header() {
        let mut buf = Vec::new();
        write_records(
            &mut buf,
            &[RecordRow::compute(&Graph::path(2))],
            Format::Csv,
        )
        .unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "graph6,n,m,sigma0,sigma1,q_num,q_den\nA_,2,1,3,1,1,3\n"
        );
    }

    #[test]
    fn jsonl_strings_for_counts() {
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &[RecordRow::compute(&Graph::path(2))]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "{\"graph6\":\"A_\",\"n\":2,\"m\":1,\"sigma0\":\"3\",\"sigma1\":\"1\",\"q_num\":\"1\",\"q_den\":\"3\"}\n"
        );
    }
}
