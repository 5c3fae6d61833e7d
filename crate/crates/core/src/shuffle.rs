//! Shuffles of paths: interleavings by negative-started blocks that keep
//! each operand's order, with the daimon confined to the last position.
//!
//! After a shared positive-ended prefix is factored out, each operand
//! suffix is a strictly alternating negative path, i.e. a list of
//! (negative, positive) blocks. The shuffle is the set of order-preserving
//! merges of the two block lists; when both operands end with a daimon the
//! last proper block of one side is dropped instead.

use std::collections::BTreeSet;

use crate::alphabet::{Action, Address};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::sequence::{ActionSequence, Path};

/// Shuffle of two positive-ended paths over the same ambient base.
/// Undefined combinations (overlapping suffix foci, disagreement right
/// after a negative action) are domain errors.
pub fn shuffle_paths(p: &Path, q: &Path) -> Result<BTreeSet<Path>> {
    if p.base() != q.base() {
        return Err(Error::Domain(format!(
            "shuffle of paths on different bases: {} vs {}",
            p.base(),
            q.base()
        )));
    }
    if !p.is_positive_ended() || !q.is_positive_ended() {
        return Err(Error::Domain("shuffle of a negative-ended path".into()));
    }

    let pa = p.actions();
    let qa = q.actions();
    let shared = pa.iter().zip(qa.iter()).take_while(|(a, b)| a == b).count();
    let prefix = &pa[..shared];
    if shared > 0 && prefix[shared - 1].is_negative() {
        return Err(Error::Domain(
            "operands disagree immediately after a shared negative action".into(),
        ));
    }
    let sp = &pa[shared..];
    let sq = &qa[shared..];
    if sp.is_empty() && sq.is_empty() {
        // p = q; the union clauses yield the operand itself.
        return Ok(BTreeSet::from([p.clone()]));
    }
    if sp.first().map(Action::is_positive).unwrap_or(false)
        || sq.first().map(Action::is_positive).unwrap_or(false)
    {
        return Err(Error::Domain(
            "suffixes after the shared prefix must be negative paths".into(),
        ));
    }
    if !disjoint_foci(sp, sq) {
        return Err(Error::Domain(
            "suffixes after the shared prefix overlap on foci".into(),
        ));
    }

    let mut merged: BTreeSet<Vec<Action>> = BTreeSet::new();
    let p_daimon = sp.last().map(Action::is_daimon).unwrap_or(false);
    let q_daimon = sq.last().map(Action::is_daimon).unwrap_or(false);
    if p_daimon && q_daimon {
        // Both-daimon extension: drop the final (negative, daimon) block of
        // one operand, keep the other's, and take the union over both picks.
        merge_blocks(&blocks(sp), &blocks(&sq[..sq.len() - 2]), &mut merged);
        merge_blocks(&blocks(&sp[..sp.len() - 2]), &blocks(sq), &mut merged);
    } else {
        merge_blocks(&blocks(sp), &blocks(sq), &mut merged);
    }

    let mut out = BTreeSet::new();
    for suffix in merged {
        let mut actions = prefix.to_vec();
        actions.extend(suffix);
        let seq = ActionSequence::new(p.base().clone(), actions);
        let path = Path::new(seq).expect("a shuffle of paths is a path");
        out.insert(path);
    }
    Ok(out)
}

fn disjoint_foci(a: &[Action], b: &[Action]) -> bool {
    let fa: BTreeSet<&Address> = a.iter().filter_map(Action::focus).collect();
    b.iter().filter_map(Action::focus).all(|f| !fa.contains(f))
}

/// Minimal blocks of a strictly alternating negative path: consecutive
/// (negative, positive) pairs.
fn blocks(suffix: &[Action]) -> Vec<&[Action]> {
    debug_assert!(suffix.len() % 2 == 0);
    suffix.chunks(2).collect()
}

fn merge_blocks(a: &[&[Action]], b: &[&[Action]], out: &mut BTreeSet<Vec<Action>>) {
    let mut current = Vec::new();
    merge_rec(a, b, 0, 0, &mut current, out);
}

fn merge_rec(
    a: &[&[Action]],
    b: &[&[Action]],
    i: usize,
    j: usize,
    current: &mut Vec<Action>,
    out: &mut BTreeSet<Vec<Action>>,
) {
    if i == a.len() && j == b.len() {
        out.insert(current.clone());
        return;
    }
    // A block ending with the daimon must be the globally last one.
    if i < a.len() {
        let block = a[i];
        if !block.last().map(Action::is_daimon).unwrap_or(false) || (i + 1 == a.len() && j == b.len())
        {
            current.extend(block.iter().cloned());
            merge_rec(a, b, i + 1, j, current, out);
            current.truncate(current.len() - block.len());
        }
    }
    if j < b.len() {
        let block = b[j];
        if !block.last().map(Action::is_daimon).unwrap_or(false) || (j + 1 == b.len() && i == a.len())
        {
            current.extend(block.iter().cloned());
            merge_rec(a, b, i, j + 1, current, out);
            current.truncate(current.len() - block.len());
        }
    }
}

/// Least fixed point of pairwise shuffles containing `paths`. Pairs on
/// which the shuffle is undefined are skipped. Terminates because foci
/// are finite and linearity bounds path length; the budget guards against
/// combinatorial blow-up on large inputs.
pub fn shuffle_closure(paths: &BTreeSet<Path>, budget: &mut Budget) -> Result<BTreeSet<Path>> {
    let mut all: BTreeSet<Path> = paths.clone();
    let mut frontier: Vec<Path> = paths.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut fresh: Vec<Path> = Vec::new();
        for b in &frontier {
            for a in all.clone().iter() {
                if a == b {
                    continue;
                }
                budget.charge(1)?;
                let Ok(results) = shuffle_paths(a, b) else { continue };
                for r in results {
                    budget.charge(1)?;
                    if !all.contains(&r) {
                        all.insert(r.clone());
                        fresh.push(r);
                    }
                }
            }
        }
        frontier = fresh;
    }
    Ok(all)
}
