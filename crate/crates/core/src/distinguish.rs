use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::rep::{IntervalRepresentation, LengthConstraint};

/// Checks the shift amount for a compression: strictly positive and at most
/// half the smallest endpoint gap. Under that bound a shifted endpoint can
/// never land on another endpoint value, so no strict inequality between
/// endpoint values flips and the induced order is preserved.
fn check_eps(rep: &IntervalRepresentation, eps: &Rational) -> Result<()> {
    let gap = rep.min_endpoint_gap()?;
    if !eps.is_positive() || eps > &gap.half() {
        return Err(Error::EpsilonTooLarge);
    }
    Ok(())
}

/// Moves every interval whose left endpoint lies strictly left of c to the
/// right by eps; the rest stay put. The induced order is unchanged.
pub fn left_compress(
    rep: &IntervalRepresentation,
    c: &Rational,
    eps: &Rational,
) -> Result<IntervalRepresentation> {
    check_eps(rep, eps)?;
    Ok(rep.map_intervals(|_, iv| {
        if iv.left() < c {
            iv.translate(eps)
        } else {
            iv.clone()
        }
    }))
}

/// Moves every interval whose right endpoint lies strictly right of c to the
/// left by eps; the rest stay put. The induced order is unchanged.
pub fn right_compress(
    rep: &IntervalRepresentation,
    c: &Rational,
    eps: &Rational,
) -> Result<IntervalRepresentation> {
    check_eps(rep, eps)?;
    let neg = -eps;
    Ok(rep.map_intervals(|_, iv| {
        if iv.right() > c {
            iv.translate(&neg)
        } else {
            iv.clone()
        }
    }))
}

/// Pairs of distinct, non-identical intervals that share an endpoint value,
/// tagged with the smallest shared value. Sorted by (value, i, j).
fn sharing_pairs(rep: &IntervalRepresentation) -> Vec<(Rational, usize, usize)> {
    let n = rep.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let x = rep.interval_at(i);
            let y = rep.interval_at(j);
            if x == y {
                continue;
            }
            let mut shared: Option<&Rational> = None;
            for a in [x.left(), x.right()] {
                for b in [y.left(), y.right()] {
                    if a == b && shared.is_none_or(|s| a < s) {
                        shared = Some(a);
                    }
                }
            }
            if let Some(v) = shared {
                out.push((v.clone(), i, j));
            }
        }
    }
    out.sort();
    out
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub(crate) struct SeparationStats {
    pub compressions: usize,
    pub twin_shifts: usize,
}

/// Full separation pipeline; see `make_distinguishing` for the public entry.
/// Phase one removes shared endpoints between non-identical intervals with
/// one compression per step; phase two moves one twin of each duplicated
/// holding sideways. Identical zero-length intervals cannot be separated.
pub(crate) fn separate_endpoints_with_stats(
    rep: &IntervalRepresentation,
) -> Result<(IntervalRepresentation, SeparationStats)> {
    for class in rep.twin_classes() {
        let len = rep.interval(&class[0]).unwrap().length();
        if len.is_zero() {
            return Err(Error::IrreducibleTwins { elements: class });
        }
    }
    let mut stats = SeparationStats::default();
    let mut current = rep.clone();
    let mut pending = sharing_pairs(&current);
    while let Some((v, i, j)) = pending.first().cloned() {
        let eps = current.min_endpoint_gap()?.half();
        let x = current.interval_at(i).clone();
        let y = current.interval_at(j).clone();
        current = if x.left() == y.left() {
            // Shared left endpoint: pull everything beyond the nearer right
            // endpoint back; exactly one of the pair moves.
            let c = if x.right() <= y.right() {
                x.right().clone()
            } else {
                y.right().clone()
            };
            right_compress(&current, &c, &eps)?
        } else if x.right() == y.right() {
            // Shared right endpoint: push everything before the farther left
            // endpoint forward; exactly one of the pair moves.
            let c = if x.left() >= y.left() {
                x.left().clone()
            } else {
                y.left().clone()
            };
            left_compress(&current, &c, &eps)?
        } else {
            // Touching: the right endpoint of one is the left endpoint of the
            // other. Shift the left neighbour forward, away from the shared
            // value.
            left_compress(&current, &v, &eps)?
        };
        stats.compressions += 1;
        let next = sharing_pairs(&current);
        if next.len() >= pending.len() {
            return Err(Error::InternalContradiction(
                "compression step did not reduce shared endpoints".into(),
            ));
        }
        pending = next;
    }
    // Phase two: identical holdings. All remaining twins have positive
    // length; move the last twin of a class until no class has two members.
    loop {
        let classes = current.twin_classes();
        let Some(class) = classes.first() else { break };
        let mover = class.last().unwrap().clone();
        let eps = current.min_endpoint_gap()?.half();
        let idx = current.index_of(&mover).unwrap();
        let len = current.interval_at(idx).length();
        if len < eps {
            return Err(Error::InternalContradiction(
                "twin shorter than the shift; gap accounting is broken".into(),
            ));
        }
        current = current.map_intervals(|i, iv| {
            if i == idx {
                iv.translate(&eps)
            } else {
                iv.clone()
            }
        });
        stats.twin_shifts += 1;
    }
    if !current.is_distinguishing() {
        return Err(Error::InternalContradiction(
            "separation finished on a non-distinguishing representation".into(),
        ));
    }
    if current.poset_of().relation_idx_pairs() != rep.poset_of().relation_idx_pairs() {
        return Err(Error::InternalContradiction(
            "separation changed the induced order".into(),
        ));
    }
    Ok((current, stats))
}

pub fn separate_endpoints(rep: &IntervalRepresentation) -> Result<IntervalRepresentation> {
    separate_endpoints_with_stats(rep).map(|(r, _)| r)
}

/// Rebuilds the representation with all endpoint values distinct while
/// keeping every interval length and the induced order exactly. The lengths
/// must lie in the given constraint; identical zero-length intervals are the
/// one unresolvable case.
pub fn make_distinguishing(
    rep: &IntervalRepresentation,
    constraint: &LengthConstraint,
) -> Result<IntervalRepresentation> {
    if !rep.lengths_within(constraint) {
        return Err(Error::LengthsOutOfClass(format!(
            "a length falls outside {}",
            constraint
        )));
    }
    let (out, _) = separate_endpoints_with_stats(rep)?;
    debug_assert_eq!(sorted(out.lengths()), sorted(rep.lengths()));
    Ok(out)
}

fn sorted(mut v: Vec<Rational>) -> Vec<Rational> {
    v.sort();
    v
}
