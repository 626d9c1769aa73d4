use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::poset::{LinearExtension, Poset, Realizer};
use crate::rational::Rational;
use crate::rep::IntervalRepresentation;

/// An injective assignment of a point inside each element's interval.
/// Sorting the elements by assigned value reads off a linear extension of
/// the induced order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceFunction {
    values: Vec<(String, Rational)>,
}

impl ChoiceFunction {
    pub fn new<I, S>(values: I) -> Result<ChoiceFunction>
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: Into<String>,
    {
        let values: Vec<(String, Rational)> =
            values.into_iter().map(|(s, v)| (s.into(), v)).collect();
        let mut seen = std::collections::HashSet::new();
        for (id, _) in &values {
            if !seen.insert(id.as_str()) {
                return Err(Error::DuplicateElement(id.clone()));
            }
        }
        Ok(ChoiceFunction { values })
    }

    pub fn value(&self, id: &str) -> Option<&Rational> {
        self.values.iter().find(|(e, _)| e == id).map(|(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.values.iter().map(|(e, v)| (e.as_str(), v))
    }

    /// All values pairwise distinct, one value per element of the
    /// representation, each inside its element's interval.
    fn validate_for(&self, rep: &IntervalRepresentation) -> Result<()> {
        if self.values.len() != rep.n() {
            return Err(Error::GroundSetMismatch);
        }
        for (id, v) in &self.values {
            let Some(iv) = rep.interval(id) else {
                return Err(Error::GroundSetMismatch);
            };
            if !iv.contains(v) {
                return Err(Error::OutOfInterval(id.clone()));
            }
        }
        for (i, (_, v)) in self.values.iter().enumerate() {
            for (_, w) in &self.values[i + 1..] {
                if v == w {
                    return Err(Error::NotInjective);
                }
            }
        }
        Ok(())
    }
}

/// Reads off the linear extension given by increasing assigned value.
pub fn extension_of_choice(
    rep: &IntervalRepresentation,
    f: &ChoiceFunction,
) -> Result<LinearExtension> {
    f.validate_for(rep)?;
    let mut order: Vec<(&Rational, &str)> = f.values.iter().map(|(e, v)| (v, e.as_str())).collect();
    order.sort();
    let ext = LinearExtension::new(order.into_iter().map(|(_, e)| e));
    if !ext.extends(&rep.poset_of()) {
        return Err(Error::InternalContradiction(
            "value order of a valid choice does not extend the induced order".into(),
        ));
    }
    Ok(ext)
}

/// Topological order of one part's extension, another's, and the poset,
/// taken together as a digraph. Ties go to the element that appears earlier
/// in `first`, then to element-list order. Returns None on a cycle.
fn merge_pair(
    p: &Poset,
    first: &LinearExtension,
    second: &LinearExtension,
) -> Option<LinearExtension> {
    let n = p.n();
    let idx = |id: &str| p.index_of(id).expect("merge parts drawn from p");
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    let add = |adj: &mut Vec<Vec<usize>>, indeg: &mut Vec<usize>, a: usize, b: usize| {
        if !adj[a].contains(&b) {
            adj[a].push(b);
            indeg[b] += 1;
        }
    };
    for (a, b) in p.relation_idx_pairs() {
        add(&mut adj, &mut indeg, a, b);
    }
    for ext in [first, second] {
        for w in ext.order().windows(2) {
            add(&mut adj, &mut indeg, idx(&w[0]), idx(&w[1]));
        }
    }
    let first_pos: HashMap<&str, usize> = first.positions();
    let mut done = vec![false; n];
    let mut out: Vec<&str> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None;
        for v in 0..n {
            if done[v] || indeg[v] > 0 {
                continue;
            }
            let id = &p.elements()[v];
            let key = (
                first_pos.get(id.as_str()).copied().unwrap_or(usize::MAX),
                v,
                v,
            );
            if best.is_none_or(|b| key < (b.0, b.1, b.2)) {
                best = Some(key);
            }
        }
        let (_, _, v) = best?;
        done[v] = true;
        out.push(&p.elements()[v]);
        for &w in &adj[v] {
            indeg[w] -= 1;
        }
    }
    Some(LinearExtension::new(out))
}

/// Combines one linear extension per part of a partition into a single
/// linear extension of the whole order that restricts to each input. Needs
/// an interval order; parts are folded in pairwise.
pub fn merge_extensions(
    p: &Poset,
    parts: &[Vec<String>],
    exts: &[LinearExtension],
) -> Result<LinearExtension> {
    if parts.len() != exts.len() {
        return Err(Error::NotAPartition);
    }
    let mut seen = std::collections::HashSet::new();
    for part in parts {
        for id in part {
            if p.index_of(id).is_none() {
                return Err(Error::UnknownElement(id.clone()));
            }
            if !seen.insert(id.as_str()) {
                return Err(Error::NotAPartition);
            }
        }
    }
    if seen.len() != p.n() {
        return Err(Error::NotAPartition);
    }
    for (part, ext) in parts.iter().zip(exts) {
        if !ext.extends(&p.restrict(part)?) {
            return Err(Error::NotAnExtension);
        }
    }
    let mut acc_elems: Vec<String> = parts.first().cloned().unwrap_or_default();
    let mut acc = exts
        .first()
        .cloned()
        .unwrap_or_else(|| LinearExtension::new(Vec::<String>::new()));
    for (part, ext) in parts.iter().zip(exts).skip(1) {
        acc_elems.extend(part.iter().cloned());
        let sub = p.restrict(&acc_elems)?;
        // A cycle can only come from a pair of incomparable two-chains; on
        // an interval order the combined digraph is always acyclic.
        acc = merge_pair(&sub, &acc, ext)
            .ok_or(())
            .map_err(|_| match p.find_two_plus_two() {
                Some(witness) => Error::NotIntervalOrder { witness },
                None => Error::InternalContradiction(
                    "extension merge hit a cycle on an interval order".into(),
                ),
            })?;
    }
    if !acc.extends(&p.restrict(&acc_elems)?) {
        return Err(Error::InternalContradiction(
            "merged order fails to extend the poset".into(),
        ));
    }
    Ok(acc)
}

/// Combines realizers of the two parts of a partition into a realizer of the
/// whole order, using at most two extensions more than the larger input.
/// The extra pair comes from two choice functions that take left endpoints
/// on one part and right endpoints on the other, covering the cross pairs.
pub fn lift_partition_realizer(
    rep: &IntervalRepresentation,
    x1: &[String],
    x2: &[String],
    r1: &Realizer,
    r2: &Realizer,
) -> Result<Realizer> {
    if !rep.is_distinguishing() {
        return Err(Error::NotDistinguishing);
    }
    let p = rep.poset_of();
    let parts = [x1.to_vec(), x2.to_vec()];
    let mut seen = std::collections::HashSet::new();
    for id in x1.iter().chain(x2) {
        if p.index_of(id).is_none() {
            return Err(Error::UnknownElement(id.clone()));
        }
        if !seen.insert(id.as_str()) {
            return Err(Error::NotAPartition);
        }
    }
    if seen.len() != p.n() {
        return Err(Error::NotAPartition);
    }
    for (part, r) in parts.iter().zip([r1, r2]) {
        let sub = p.restrict(part)?;
        if !crate::poset::is_realizer(&sub, r.extensions())? {
            return Err(Error::NotARealizer);
        }
    }
    if p.n() == 0 {
        return Ok(Realizer::empty());
    }
    let t = r1.extensions().len().max(r2.extensions().len());
    let pad = |r: &Realizer, k: usize| -> LinearExtension {
        r.extensions()
            .get(k)
            .or_else(|| r.extensions().last())
            .cloned()
            .unwrap_or_else(|| LinearExtension::new(Vec::<String>::new()))
    };
    let mut exts = Vec::with_capacity(t + 2);
    for k in 0..t {
        exts.push(merge_extensions(&p, &parts, &[pad(r1, k), pad(r2, k)])?);
    }
    let side = |left_part: &[String]| -> Result<LinearExtension> {
        let on_left: std::collections::HashSet<&str> =
            left_part.iter().map(String::as_str).collect();
        let f = ChoiceFunction::new(rep.elements().iter().enumerate().map(|(i, id)| {
            let iv = rep.interval_at(i);
            let v = if on_left.contains(id.as_str()) {
                iv.left().clone()
            } else {
                iv.right().clone()
            };
            (id.clone(), v)
        }))?;
        extension_of_choice(rep, &f)
    };
    exts.push(side(x1)?);
    exts.push(side(x2)?);
    let exts = crate::poset::dedup_extensions(exts);
    let size = exts.len();
    let out = Realizer::verified(&p, exts)
        .map_err(|_| Error::InternalContradiction("lifted family is not a realizer".into()))?;
    if size > t + 2 {
        return Err(Error::InternalContradiction(
            "lifted realizer exceeds its size bound".into(),
        ));
    }
    Ok(out)
}

/// Builds a choice function that reads off exactly the given extension.
/// Zero-length intervals take their point value; the rest climb by shrinking
/// fractions of the smallest endpoint gap, which keeps every value strictly
/// inside its interval and strictly above the previous one.
pub fn realize_extension(
    rep: &IntervalRepresentation,
    l: &LinearExtension,
) -> Result<ChoiceFunction> {
    if !rep.is_distinguishing() {
        return Err(Error::NotDistinguishing);
    }
    let p = rep.poset_of();
    if !l.is_permutation_of(p.elements()) {
        return Err(Error::GroundSetMismatch);
    }
    if !l.extends(&p) {
        return Err(Error::NotAnExtension);
    }
    if rep.n() == 0 {
        return ChoiceFunction::new(Vec::<(String, Rational)>::new());
    }
    let all_points = (0..rep.n()).all(|i| rep.interval_at(i).is_zero_length());
    let eps = if all_points {
        Rational::one()
    } else {
        rep.min_endpoint_gap()?
    };
    let mut values: Vec<(String, Rational)> = Vec::with_capacity(rep.n());
    let mut prev: Option<Rational> = None;
    let mut step = eps;
    for id in l.order() {
        step = step.half();
        let iv = rep.interval(id).unwrap();
        let v = if iv.is_zero_length() {
            iv.midpoint()
        } else {
            let low = iv.left() + &step;
            match &prev {
                Some(pv) => {
                    let chased = pv + &step;
                    if chased > low {
                        chased
                    } else {
                        low
                    }
                }
                None => low,
            }
        };
        if let Some(pv) = &prev {
            if &v <= pv {
                return Err(Error::InternalContradiction(
                    "choice values failed to increase along the extension".into(),
                ));
            }
        }
        if !iv.contains(&v) {
            return Err(Error::InternalContradiction(
                "constructed choice value left its interval".into(),
            ));
        }
        prev = Some(v.clone());
        values.push((id.clone(), v));
    }
    let f = ChoiceFunction::new(values)?;
    f.validate_for(rep)?;
    Ok(f)
}
