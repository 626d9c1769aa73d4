use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Checks an element id for use in the text formats: nonempty, no whitespace,
/// and none of the tokens the formats reserve.
pub(crate) fn validate_id(id: &str) -> Result<()> {
    let ok = !id.is_empty()
        && !id.chars().any(char::is_whitespace)
        && id != "<"
        && id != "="
        && !id.ends_with(':');
    if ok {
        Ok(())
    } else {
        Err(Error::Parse {
            line: 0,
            msg: format!("bad element id {:?}", id),
        })
    }
}

/// Finite strict partial order. The relation is stored transitively closed;
/// `lt[i * n + j]` holds iff element i is strictly below element j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    lt: Vec<bool>,
}

impl Poset {
    /// Builds a poset from a ground set and a list of strict relations.
    /// The transitive closure is computed here; the input does not have to be
    /// closed. Cycles (including self-loops) are rejected.
    pub fn new<I, P, S, T>(elements: I, pairs: P) -> Result<Poset>
    where
        I: IntoIterator<Item = S>,
        P: IntoIterator<Item = (T, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, id) in elements.iter().enumerate() {
            validate_id(id)?;
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateElement(id.clone()));
            }
        }
        let n = elements.len();
        let mut lt = vec![false; n * n];
        for (x, y) in pairs {
            let (x, y) = (x.into(), y.into());
            let i = *index.get(&x).ok_or(Error::UnknownElement(x))?;
            let j = *index.get(&y).ok_or(Error::UnknownElement(y))?;
            if i == j {
                return Err(Error::CycleDetected(vec![elements[i].clone()]));
            }
            lt[i * n + j] = true;
        }
        // Floyd-Warshall closure over the boolean relation.
        for k in 0..n {
            for i in 0..n {
                if lt[i * n + k] {
                    for j in 0..n {
                        if lt[k * n + j] {
                            lt[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if lt[i * n + j] && lt[j * n + i] {
                    return Err(Error::CycleDetected(vec![
                        elements[i].clone(),
                        elements[j].clone(),
                        elements[i].clone(),
                    ]));
                }
            }
        }
        Ok(Poset {
            elements,
            index,
            lt,
        })
    }

    pub fn chain<I, S>(elements: I) -> Result<Poset>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let pairs: Vec<(String, String)> = elements
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Poset::new(elements, pairs)
    }

    pub fn antichain<I, S>(elements: I) -> Result<Poset>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Poset::new(elements, Vec::<(String, String)>::new())
    }

    pub fn n(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn lt_idx(&self, i: usize, j: usize) -> bool {
        self.lt[i * self.n() + j]
    }

    pub fn lt(&self, x: &str, y: &str) -> bool {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.lt_idx(i, j),
            _ => false,
        }
    }

    pub fn comparable_idx(&self, i: usize, j: usize) -> bool {
        self.lt_idx(i, j) || self.lt_idx(j, i)
    }

    pub fn incomparable_idx(&self, i: usize, j: usize) -> bool {
        i != j && !self.comparable_idx(i, j)
    }

    /// All related pairs (x, y) with x < y, sorted by element index.
    pub fn relation_pairs(&self) -> Vec<(String, String)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt[i * n + j] {
                    out.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        out
    }

    /// Relation as index pairs; used as a cheap equality/dedup key.
    pub fn relation_idx_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt[i * n + j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Sub-poset on the given elements. Result keeps the original element order.
    pub fn restrict(&self, subset: &[String]) -> Result<Poset> {
        let mut keep = vec![false; self.n()];
        for id in subset {
            let i = self
                .index_of(id)
                .ok_or_else(|| Error::UnknownElement(id.clone()))?;
            if keep[i] {
                return Err(Error::DuplicateElement(id.clone()));
            }
            keep[i] = true;
        }
        let ids: Vec<usize> = (0..self.n()).filter(|&i| keep[i]).collect();
        let elements: Vec<String> = ids.iter().map(|&i| self.elements[i].clone()).collect();
        let m = ids.len();
        let mut lt = vec![false; m * m];
        for a in 0..m {
            for b in 0..m {
                lt[a * m + b] = self.lt_idx(ids[a], ids[b]);
            }
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(Poset {
            elements,
            index,
            lt,
        })
    }

    /// First 2+2 in scan order: (a, b, c, d) with a < b, c < d and all four
    /// cross pairs incomparable. None means the poset is an interval order.
    pub fn find_two_plus_two(&self) -> Option<[String; 4]> {
        let n = self.n();
        for a in 0..n {
            for b in 0..n {
                if !self.lt_idx(a, b) {
                    continue;
                }
                for c in 0..n {
                    if c == a || c == b {
                        continue;
                    }
                    for d in 0..n {
                        if d == a || d == b || !self.lt_idx(c, d) {
                            continue;
                        }
                        if self.incomparable_idx(a, c)
                            && self.incomparable_idx(a, d)
                            && self.incomparable_idx(b, c)
                            && self.incomparable_idx(b, d)
                        {
                            return Some([
                                self.elements[a].clone(),
                                self.elements[b].clone(),
                                self.elements[c].clone(),
                                self.elements[d].clone(),
                            ]);
                        }
                    }
                }
            }
        }
        None
    }

    /// First 3+1 in scan order: (a, b, c, d) with a < b < c and d incomparable
    /// to all three. None plus 2+2-freeness means the poset is a semiorder.
    pub fn find_three_plus_one(&self) -> Option<[String; 4]> {
        let n = self.n();
        for a in 0..n {
            for b in 0..n {
                if !self.lt_idx(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !self.lt_idx(b, c) {
                        continue;
                    }
                    for d in 0..n {
                        if self.incomparable_idx(d, a)
                            && self.incomparable_idx(d, b)
                            && self.incomparable_idx(d, c)
                        {
                            return Some([
                                self.elements[a].clone(),
                                self.elements[b].clone(),
                                self.elements[c].clone(),
                                self.elements[d].clone(),
                            ]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_interval_order(&self) -> bool {
        self.find_two_plus_two().is_none()
    }

    pub fn is_semiorder(&self) -> bool {
        self.find_two_plus_two().is_none() && self.find_three_plus_one().is_none()
    }

    pub fn is_chain(&self) -> bool {
        let n = self.n();
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.comparable_idx(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// All linear extensions, in lexicographic order of element indices.
    /// Exponential; intended for small ground sets.
    pub fn linear_extensions(&self) -> Vec<LinearExtension> {
        let n = self.n();
        let mut out = Vec::new();
        let mut used = vec![false; n];
        let mut acc = Vec::with_capacity(n);
        self.extend_rec(&mut used, &mut acc, &mut out);
        debug_assert!(!out.is_empty() || n == 0);
        if n == 0 {
            out.push(LinearExtension::new(Vec::<String>::new()));
        }
        out
    }

    fn extend_rec(
        &self,
        used: &mut Vec<bool>,
        acc: &mut Vec<usize>,
        out: &mut Vec<LinearExtension>,
    ) {
        let n = self.n();
        if acc.len() == n {
            out.push(LinearExtension::new(
                acc.iter()
                    .map(|&i| self.elements[i].clone())
                    .collect::<Vec<_>>(),
            ));
            return;
        }
        'next: for i in 0..n {
            if used[i] {
                continue;
            }
            for j in 0..n {
                if !used[j] && self.lt_idx(j, i) {
                    continue 'next;
                }
            }
            used[i] = true;
            acc.push(i);
            self.extend_rec(used, acc, out);
            acc.pop();
            used[i] = false;
        }
    }

    /// Layers a subset of the poset by successive minima (`Up`) or successive
    /// maxima (`Down`). Without a seed the whole ground set is layered. With a
    /// seed, `Up` layers the elements strictly above some seed element and
    /// `Down` the elements strictly below some seed element.
    pub fn min_layers(
        &self,
        seed: Option<&[String]>,
        direction: LayerDirection,
    ) -> Result<LayerPartition> {
        let covered: Vec<usize> = match seed {
            None => (0..self.n()).collect(),
            Some(seed_ids) => {
                let mut seen = HashSet::new();
                let mut seed_idx = Vec::new();
                for id in seed_ids {
                    let i = self
                        .index_of(id)
                        .ok_or_else(|| Error::UnknownElement(id.clone()))?;
                    if !seen.insert(i) {
                        return Err(Error::DuplicateElement(id.clone()));
                    }
                    seed_idx.push(i);
                }
                (0..self.n())
                    .filter(|&x| {
                        seed_idx.iter().any(|&s| match direction {
                            LayerDirection::Up => self.lt_idx(s, x),
                            LayerDirection::Down => self.lt_idx(x, s),
                        })
                    })
                    .collect()
            }
        };
        Ok(self.layer_subset(&covered, direction))
    }

    /// Successive extremal sets of the sub-poset induced on `subset`.
    fn layer_subset(&self, subset: &[usize], direction: LayerDirection) -> LayerPartition {
        let mut remaining: Vec<usize> = subset.to_vec();
        let mut layers = Vec::new();
        while !remaining.is_empty() {
            let layer: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&x| {
                    !remaining.iter().any(|&y| match direction {
                        LayerDirection::Up => self.lt_idx(y, x),
                        LayerDirection::Down => self.lt_idx(x, y),
                    })
                })
                .collect();
            debug_assert!(!layer.is_empty());
            remaining.retain(|x| !layer.contains(x));
            layers.push(layer.iter().map(|&i| self.elements[i].clone()).collect());
        }
        LayerPartition { layers }
    }

    /// Emits the `poset v1` text format: header, element list, then the
    /// covering pairs of the relation sorted by element index.
    pub fn to_text(&self) -> String {
        let n = self.n();
        let mut s = String::from("poset v1\n");
        s.push_str("elements:");
        for e in &self.elements {
            s.push(' ');
            s.push_str(e);
        }
        s.push('\n');
        for i in 0..n {
            for j in 0..n {
                if !self.lt_idx(i, j) {
                    continue;
                }
                // Only covering pairs are written; closure is recomputed on load.
                let covered = (0..n).any(|k| self.lt_idx(i, k) && self.lt_idx(k, j));
                if !covered {
                    let _ = writeln!(s, "{} < {}", self.elements[i], self.elements[j]);
                }
            }
        }
        s
    }

    /// Parses the `poset v1` text format. Blank lines are ignored.
    pub fn parse_text(text: &str) -> Result<Poset> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty());
        let (lno, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty file".into(),
        })?;
        if header.trim() != "poset v1" {
            return Err(Error::Parse {
                line: lno,
                msg: format!("expected \"poset v1\", got {:?}", header),
            });
        }
        let (lno, elems_line) = lines.next().ok_or(Error::Parse {
            line: lno,
            msg: "missing elements line".into(),
        })?;
        let rest = elems_line.strip_prefix("elements:").ok_or(Error::Parse {
            line: lno,
            msg: "expected \"elements: ...\"".into(),
        })?;
        let elements: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        let mut pairs = Vec::new();
        for (lno, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 3 || tokens[1] != "<" {
                return Err(Error::Parse {
                    line: lno,
                    msg: format!("expected \"<id> < <id>\", got {:?}", line),
                });
            }
            pairs.push((tokens[0].to_string(), tokens[2].to_string()));
        }
        Poset::new(elements, pairs).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { line: 0, msg },
            other => other,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerDirection {
    Up,
    Down,
}

/// Ordered, disjoint layers produced by `Poset::min_layers`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerPartition {
    layers: Vec<Vec<String>>,
}

impl LayerPartition {
    pub fn layers(&self) -> &[Vec<String>] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    pub fn flatten(&self) -> Vec<String> {
        self.layers.iter().flatten().cloned().collect()
    }
}

/// A sequence of elements. When attached to a poset it is usually a linear
/// extension, but the type itself only stores the order; `extends` checks
/// the extension property. `dual` in particular produces a sequence that is
/// an extension only when the relevant elements form an antichain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearExtension {
    order: Vec<String>,
}

impl LinearExtension {
    pub fn new<I, S>(order: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        LinearExtension {
            order: order.into_iter().map(Into::into).collect(),
        }
    }

    pub fn order(&self) -> &[String] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.order.iter().position(|e| e == id)
    }

    pub fn positions(&self) -> HashMap<&str, usize> {
        self.order
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect()
    }

    /// True iff this is a permutation of the poset's elements that puts x
    /// before y whenever x < y.
    pub fn extends(&self, p: &Poset) -> bool {
        if !self.is_permutation_of(p.elements()) {
            return false;
        }
        let pos = self.positions();
        for (x, y) in p.relation_pairs() {
            if pos[x.as_str()] > pos[y.as_str()] {
                return false;
            }
        }
        true
    }

    pub fn is_permutation_of(&self, elements: &[String]) -> bool {
        if self.order.len() != elements.len() {
            return false;
        }
        let mine: HashSet<&str> = self.order.iter().map(String::as_str).collect();
        mine.len() == self.order.len() && elements.iter().all(|e| mine.contains(e.as_str()))
    }

    /// Reversed sequence.
    pub fn dual(&self) -> LinearExtension {
        LinearExtension {
            order: self.order.iter().rev().cloned().collect(),
        }
    }

    /// Subsequence on the given elements, preserving this order.
    pub fn restrict(&self, keep: &[String]) -> LinearExtension {
        let keep: HashSet<&str> = keep.iter().map(String::as_str).collect();
        LinearExtension {
            order: self
                .order
                .iter()
                .filter(|e| keep.contains(e.as_str()))
                .cloned()
                .collect(),
        }
    }
}

/// True iff in L every y from `upper` appears above every z from `lower`
/// unless the poset forces otherwise; the two blocks must partition the
/// ground set.
pub fn is_over(l: &LinearExtension, upper: &[String], lower: &[String], p: &Poset) -> Result<bool> {
    let mut seen = HashSet::new();
    for id in upper.iter().chain(lower.iter()) {
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
    if !l.is_permutation_of(p.elements()) {
        return Err(Error::GroundSetMismatch);
    }
    let pos = l.positions();
    for y in upper {
        for z in lower {
            let comparable = p.lt(y, z) || p.lt(z, y);
            if !comparable && pos[y.as_str()] < pos[z.as_str()] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff every member extends the poset and every incomparable pair
/// appears in both orders somewhere in the family, i.e. the intersection of
/// the members equals the relation.
pub fn is_realizer(p: &Poset, exts: &[LinearExtension]) -> Result<bool> {
    if p.n() == 0 {
        return Ok(true);
    }
    for ext in exts {
        if !ext.is_permutation_of(p.elements()) {
            return Err(Error::GroundSetMismatch);
        }
    }
    if exts.is_empty() {
        return Ok(false);
    }
    let positions: Vec<Vec<usize>> = exts
        .iter()
        .map(|ext| {
            let pos = ext.positions();
            p.elements().iter().map(|e| pos[e.as_str()]).collect()
        })
        .collect();
    let n = p.n();
    for i in 0..n {
        for j in 0..n {
            if p.lt_idx(i, j) && positions.iter().any(|pos| pos[i] > pos[j]) {
                return Ok(false);
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if p.incomparable_idx(i, j) {
                let i_first = positions.iter().any(|pos| pos[i] < pos[j]);
                let j_first = positions.iter().any(|pos| pos[j] < pos[i]);
                if !i_first || !j_first {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Drops later exact duplicates, keeping first occurrences in order.
pub fn dedup_extensions(exts: Vec<LinearExtension>) -> Vec<LinearExtension> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for ext in exts {
        if seen.insert(ext.order.clone()) {
            out.push(ext);
        }
    }
    out
}

/// A family of linear extensions whose intersection is exactly the poset
/// relation. Construction goes through `verified`, so every value of this
/// type has passed `is_realizer`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realizer {
    extensions: Vec<LinearExtension>,
}

impl Realizer {
    pub fn verified(p: &Poset, extensions: Vec<LinearExtension>) -> Result<Realizer> {
        if extensions.is_empty() && p.n() > 0 {
            return Err(Error::NotARealizer);
        }
        if !is_realizer(p, &extensions)? {
            return Err(Error::NotARealizer);
        }
        Ok(Realizer { extensions })
    }

    /// Realizer of the empty poset: a single empty extension.
    pub fn empty() -> Realizer {
        Realizer {
            extensions: vec![LinearExtension::new(Vec::<String>::new())],
        }
    }

    pub fn extensions(&self) -> &[LinearExtension] {
        &self.extensions
    }

    pub fn size(&self) -> usize {
        self.extensions.len()
    }

    /// Emits the `realizer v1 k=<n>` text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("realizer v1 k={}\n", self.extensions.len());
        for ext in &self.extensions {
            s.push_str(&ext.order().join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the `realizer v1` format. Every line must be a permutation of
    /// the same element set; the realizer property is checked against a poset
    /// separately.
    pub fn parse_text(text: &str) -> Result<Realizer> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty());
        let (lno, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty file".into(),
        })?;
        let k: usize = header
            .strip_prefix("realizer v1 k=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or(Error::Parse {
                line: lno,
                msg: format!("expected \"realizer v1 k=<n>\", got {:?}", header),
            })?;
        let mut extensions = Vec::new();
        let mut first_set: Option<HashSet<String>> = None;
        for (lno, line) in lines {
            let order: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            let set: HashSet<String> = order.iter().cloned().collect();
            if set.len() != order.len() {
                return Err(Error::Parse {
                    line: lno,
                    msg: "repeated element in extension".into(),
                });
            }
            match &first_set {
                None => first_set = Some(set),
                Some(first) => {
                    if *first != set {
                        return Err(Error::Parse {
                            line: lno,
                            msg: "extensions list different elements".into(),
                        });
                    }
                }
            }
            extensions.push(LinearExtension::new(order));
        }
        if extensions.len() != k {
            return Err(Error::Parse {
                line: 0,
                msg: format!("header says k={}, found {} lines", k, extensions.len()),
            });
        }
        if extensions.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "realizer must contain at least one extension".into(),
            });
        }
        Ok(Realizer { extensions })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(elements: &[&str], pairs: &[(&str, &str)]) -> Poset {
        Poset::new(elements.to_vec(), pairs.to_vec()).unwrap()
    }

    #[test]
    fn closure_is_computed() {
        let q = p(&["a", "b", "c"], &[("a", "b"), ("b", "c")]);
        assert!(q.lt("a", "c"));
        assert_eq!(q.relation_pairs().len(), 3);
    }

    #[test]
    fn cycles_are_rejected() {
        let r = Poset::new(vec!["a", "b"], vec![("a", "b"), ("b", "a")]);
        assert!(matches!(r, Err(Error::CycleDetected(_))));
        let r = Poset::new(vec!["a"], vec![("a", "a")]);
        assert!(matches!(r, Err(Error::CycleDetected(_))));
    }

    #[test]
    fn duplicate_and_unknown_elements() {
        assert!(matches!(
            Poset::new(vec!["a", "a"], Vec::<(String, String)>::new()),
            Err(Error::DuplicateElement(_))
        ));
        assert!(matches!(
            Poset::new(vec!["a"], vec![("a", "b")]),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn restrict_keeps_relation_and_order() {
        let q = p(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c")]);
        let r = q
            .restrict(&["c".to_string(), "a".to_string(), "d".to_string()])
            .unwrap();
        assert_eq!(r.elements(), &["a", "c", "d"]);
        assert!(r.lt("a", "c"));
        assert!(!r.lt("a", "d"));
    }

    #[test]
    fn two_plus_two_detection() {
        let q = p(&["a", "b", "c", "d"], &[("a", "b"), ("c", "d")]);
        let w = q.find_two_plus_two().unwrap();
        assert_eq!(w, ["a", "b", "c", "d"].map(String::from));
        assert!(!q.is_interval_order());

        let chain = Poset::chain(vec!["a", "b", "c", "d"]).unwrap();
        assert!(chain.find_two_plus_two().is_none());
    }

    #[test]
    fn three_plus_one_detection() {
        let q = p(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c")]);
        let w = q.find_three_plus_one().unwrap();
        assert_eq!(w, ["a", "b", "c", "d"].map(String::from));
        assert!(Poset::antichain(vec!["a", "b", "c"])
            .unwrap()
            .find_three_plus_one()
            .is_none());
    }

    #[test]
    fn linear_extension_checks() {
        let q = p(&["a", "b", "c"], &[("a", "b")]);
        assert!(LinearExtension::new(vec!["a", "b", "c"]).extends(&q));
        assert!(LinearExtension::new(vec!["c", "a", "b"]).extends(&q));
        assert!(!LinearExtension::new(vec!["b", "a", "c"]).extends(&q));
        assert!(!LinearExtension::new(vec!["a", "b"]).extends(&q));
    }

    #[test]
    fn dual_is_an_involution() {
        let l = LinearExtension::new(vec!["a", "b", "c"]);
        assert_eq!(l.dual().dual(), l);
        assert_eq!(l.dual().order(), &["c", "b", "a"]);
    }

    #[test]
    fn all_extensions_of_a_vee() {
        let q = p(&["a", "b", "c"], &[("a", "b"), ("a", "c")]);
        let exts = q.linear_extensions();
        assert_eq!(exts.len(), 2);
        assert!(exts.iter().all(|l| l.extends(&q)));
    }

    #[test]
    fn realizer_checks() {
        let q = Poset::antichain(vec!["a", "b"]).unwrap();
        let l1 = LinearExtension::new(vec!["a", "b"]);
        let l2 = LinearExtension::new(vec!["b", "a"]);
        assert!(is_realizer(&q, &[l1.clone(), l2.clone()]).unwrap());
        assert!(!is_realizer(&q, std::slice::from_ref(&l1)).unwrap());
        let chain = Poset::chain(vec!["a", "b"]).unwrap();
        assert!(is_realizer(&chain, std::slice::from_ref(&l1)).unwrap());
        // An extension of a different ground set is an error, not a "no".
        let other = LinearExtension::new(vec!["a", "x"]);
        assert!(matches!(
            is_realizer(&q, &[other]),
            Err(Error::GroundSetMismatch)
        ));
        assert!(Realizer::verified(&q, vec![l1, l2]).is_ok());
    }

    #[test]
    fn is_over_examples() {
        let q = p(&["a", "b", "c"], &[("a", "b")]);
        let l = LinearExtension::new(vec!["a", "b", "c"]);
        // Listings read bottom to top, so the last element sits over the rest.
        let over = is_over(&l, &["c".into()], &["a".into(), "b".into()], &q).unwrap();
        assert!(over);
        let l2 = LinearExtension::new(vec!["c", "a", "b"]);
        // a < b is forced; only incomparable pairs count against "over".
        let over = is_over(&l2, &["a".into(), "b".into()], &["c".into()], &q).unwrap();
        assert!(over);
        assert!(matches!(
            is_over(&l, &["a".into()], &["a".into(), "b".into(), "c".into()], &q),
            Err(Error::NotAPartition)
        ));
    }

    #[test]
    fn layers_by_successive_minima() {
        let q = p(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        );
        let up = q.min_layers(None, LayerDirection::Up).unwrap();
        assert_eq!(
            up.layers(),
            &[
                vec!["a".to_string()],
                vec!["b".into(), "c".into()],
                vec!["d".into()]
            ]
        );
        let down = q.min_layers(None, LayerDirection::Down).unwrap();
        assert_eq!(
            down.layers(),
            &[
                vec!["d".to_string()],
                vec!["b".into(), "c".into()],
                vec!["a".into()]
            ]
        );
    }

    #[test]
    fn seeded_layers_cover_only_elements_above_the_seed() {
        let q = p(&["a", "b", "c", "x"], &[("a", "b"), ("b", "c")]);
        let up = q
            .min_layers(Some(&["a".to_string()]), LayerDirection::Up)
            .unwrap();
        // x is incomparable to a, so it is not layered.
        assert_eq!(up.layers(), &[vec!["b".to_string()], vec!["c".to_string()]]);
        let down = q
            .min_layers(Some(&["c".to_string()]), LayerDirection::Down)
            .unwrap();
        assert_eq!(
            down.layers(),
            &[vec!["b".to_string()], vec!["a".to_string()]]
        );
    }

    #[test]
    fn poset_text_round_trip() {
        let q = p(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c")]);
        let text = q.to_text();
        assert_eq!(text, "poset v1\nelements: a b c d\na < b\nb < c\n");
        let back = Poset::parse_text(&text).unwrap();
        assert_eq!(back, q);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn poset_parse_errors() {
        assert!(matches!(
            Poset::parse_text("nope\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Poset::parse_text("poset v1\nelements: a b\na b\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            Poset::parse_text("poset v1\nelements: a\na < b\n"),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn realizer_text_round_trip() {
        let q = Poset::antichain(vec!["a", "b"]).unwrap();
        let r = Realizer::verified(
            &q,
            vec![
                LinearExtension::new(vec!["a", "b"]),
                LinearExtension::new(vec!["b", "a"]),
            ],
        )
        .unwrap();
        let text = r.to_text();
        assert_eq!(text, "realizer v1 k=2\na b\nb a\n");
        let back = Realizer::parse_text(&text).unwrap();
        assert_eq!(back, r);
        assert!(Realizer::parse_text("realizer v1 k=2\na b\n").is_err());
        assert!(Realizer::parse_text("realizer v1 k=1\na a\n").is_err());
    }
}
