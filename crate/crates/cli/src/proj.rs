//! Parsing of coefficient-matrix and root-list specs from the command line.

use anyhow::{bail, Context, Result};
use qflag::cartan::{RootSystem, Weight};
use qflag::matrix::ScalarMatrix;
use qflag::repbuild::RepRef;
use qflag::scalar::Scalar;

/// Grammar: `diag:<s1,...,sd>` (scalar entries), `unit:<m>[,<n>]`
/// (1-based basis indices), `weight:<coords>` (diagonal indicator of one
/// weight space), `diag-index:<k>` (rank-1 only: the weight label `k`),
/// `zero-block` (rank-1 idempotent on the zero-weight block).
pub fn parse_proj(rep: &RepRef, spec: &str) -> Result<ScalarMatrix> {
    let d = rep.dim();
    let (kind, rest) = match spec.split_once(':') {
        Some((k, r)) => (k, r),
        None => (spec, ""),
    };
    match kind {
        "diag" => {
            let entries: Vec<Scalar> = rest
                .split(',')
                .map(|t| t.trim().parse::<Scalar>().map_err(|e| anyhow::anyhow!("{e}")))
                .collect::<Result<_>>()?;
            if entries.len() != d {
                bail!("diag spec has {} entries, module dimension is {d}", entries.len());
            }
            Ok(ScalarMatrix::from_diagonal(&entries))
        }
        "unit" => {
            let parts: Vec<usize> = rest
                .split(',')
                .map(|t| t.trim().parse::<usize>().context("unit index"))
                .collect::<Result<_>>()?;
            let (m, n) = match parts.as_slice() {
                [m] => (*m, *m),
                [m, n] => (*m, *n),
                _ => bail!("unit spec takes one or two indices"),
            };
            if m < 1 || n < 1 || m > d || n > d {
                bail!("unit index out of range 1..={d}");
            }
            Ok(ScalarMatrix::unit(d, m - 1, n - 1))
        }
        "weight" => {
            let coords: Vec<i64> = rest
                .split(',')
                .map(|t| t.trim().parse::<i64>().context("weight coordinate"))
                .collect::<Result<_>>()?;
            let w = Weight(coords);
            let indices = rep.indices_of_weight(&w);
            if indices.is_empty() {
                bail!("{w} is not a weight of {}", rep.label());
            }
            Ok(qflag::matunits::diag_indicator(d, &indices))
        }
        "diag-index" => {
            if rep.root_system().rank() != 1 {
                bail!("diag-index is the sl(2) weight label and needs a rank-1 type");
            }
            let k: i64 = rest.trim().parse().context("diag-index value")?;
            let indices = rep.indices_of_weight(&Weight(vec![k]));
            if indices.is_empty() {
                bail!("k={k} is not a weight label of {}", rep.label());
            }
            Ok(qflag::matunits::diag_indicator(d, &indices))
        }
        "zero-block" => {
            let rank = rep.root_system().rank();
            let z = rep.indices_of_weight(&Weight::zero(rank));
            match z.as_slice() {
                [] => bail!("{} has no zero-weight vectors", rep.label()),
                [i] => Ok(qflag::matunits::diag_indicator(d, &[*i])),
                [i, j, ..] => {
                    let mut c = ScalarMatrix::zero(d);
                    *c.at_mut(*i, *i) = Scalar::one();
                    *c.at_mut(*i, *j) = Scalar::one();
                    Ok(c)
                }
            }
        }
        other => bail!("unknown projection spec {other:?}"),
    }
}

/// Parses `a=1,2` or `a=all` into 0-based simple-root indices.
pub fn parse_roots(rs: &RootSystem, spec: &str) -> Result<Vec<usize>> {
    let rest = spec.strip_prefix("a=").unwrap_or(spec);
    if rest == "all" {
        return Ok((0..rs.rank()).collect());
    }
    let mut out = Vec::new();
    for t in rest.split(',') {
        let a: usize = t.trim().parse().context("root index")?;
        if a < 1 || a > rs.rank() {
            bail!("root index {a} out of range 1..={}", rs.rank());
        }
        out.push(a - 1);
    }
    Ok(out)
}
