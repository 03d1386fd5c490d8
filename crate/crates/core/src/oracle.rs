//! Brute-force feasibility check over a box of integer parts.
//!
//! Independent of the certifier search: it only relies on exact arithmetic
//! and the QP kernel. The caller must know that every feasible point has
//! its integer part in `[-box, box]^p` and that continuous fibers are
//! bounded.

use num_traits::Signed;

use crate::certifier::MiqpInstance;
use crate::error::{Error, Result};
use crate::exact::{from_int, Integer, QVector};
use crate::par;
use crate::qp::qp_global_min;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub feasible: bool,
    pub witness: Option<QVector>,
    pub box_radius: u64,
}

/// Cap on the number of integer parts scanned.
const ORACLE_LIMIT: u64 = 50_000_000;

/// Scans integer parts in lexicographic order; the witness is the first
/// feasible one found (with the QP minimizer on its fiber).
pub fn brute_force_feasibility(inst: &MiqpInstance, box_radius: u64) -> Result<OracleVerdict> {
    let p = inst.p as u32;
    let side = 2 * box_radius + 1;
    let total = side
        .checked_pow(p)
        .filter(|&t| t <= ORACLE_LIMIT)
        .ok_or(Error::TooLarge {
            what: "oracle box",
            limit: ORACLE_LIMIT,
        })?;
    let r = box_radius as i64;
    let point = |mut idx: u64| -> Vec<Integer> {
        let mut y = vec![Integer::from(0); inst.p];
        for slot in y.iter_mut().rev() {
            *slot = Integer::from((idx % side) as i64 - r);
            idx /= side;
        }
        y
    };
    let check = |idx: u64| -> Option<Result<QVector>> {
        let y: Vec<_> = point(idx).into_iter().map(from_int).collect();
        if inst.p == inst.dim() {
            let x = QVector::new(y);
            let ok = inst.poly.contains(&x) && !inst.q.eval(&x).ok()?.is_positive();
            return ok.then_some(Ok(x));
        }
        let fiber = inst.poly.fix_leading(&y);
        let reduced = inst.q.fix_leading(&y);
        match qp_global_min(&reduced, &fiber) {
            Ok(res) if !res.value.is_positive() => Some(Ok(QVector::new(y).concat(&res.minimizer))),
            Ok(_) | Err(Error::Empty) => None,
            Err(e) => Some(Err(e)),
        }
    };
    // scan in chunks so the first hit is found without visiting the whole box
    const CHUNK: u64 = 4096;
    let mut start = 0;
    while start < total {
        let len = CHUNK.min(total - start) as usize;
        if let Some(hit) = par::find_map_first_range(len, |k| check(start + k as u64)) {
            let x = hit?;
            return Ok(OracleVerdict {
                feasible: true,
                witness: Some(x),
                box_radius,
            });
        }
        start += CHUNK;
    }
    Ok(OracleVerdict {
        feasible: false,
        witness: None,
        box_radius,
    })
}
