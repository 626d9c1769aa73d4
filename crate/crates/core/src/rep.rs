use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::{validate_id, Poset};
use crate::rational::Rational;

/// Closed interval with rational endpoints, left <= right. Zero-length
/// intervals (left == right) are allowed and represent single points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    left: Rational,
    right: Rational,
}

impl Interval {
    pub fn new(left: Rational, right: Rational) -> Result<Interval> {
        if left > right {
            return Err(Error::InvalidInterval);
        }
        Ok(Interval { left, right })
    }

    pub fn point(v: Rational) -> Interval {
        Interval {
            left: v.clone(),
            right: v,
        }
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn length(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn is_zero_length(&self) -> bool {
        self.left == self.right
    }

    pub fn midpoint(&self) -> Rational {
        (&self.left + &self.right).half()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.left <= v && v <= &self.right
    }

    pub fn translate(&self, delta: &Rational) -> Interval {
        Interval {
            left: &self.left + delta,
            right: &self.right + delta,
        }
    }

    fn scale(&self, m: &Rational) -> Interval {
        // Only called with m > 0, so the endpoint order is preserved.
        Interval {
            left: &self.left * m,
            right: &self.right * m,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

/// Allowed interval lengths: either an explicit finite set or a closed range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LengthConstraint {
    FiniteSet(BTreeSet<Rational>),
    Range { lo: Rational, hi: Rational },
}

impl LengthConstraint {
    pub fn finite<I>(lengths: I) -> Result<LengthConstraint>
    where
        I: IntoIterator<Item = Rational>,
    {
        let set: BTreeSet<Rational> = lengths.into_iter().collect();
        if set.is_empty() {
            return Err(Error::InvalidConstraint("empty length set".into()));
        }
        if set.iter().any(Rational::is_negative) {
            return Err(Error::InvalidConstraint("negative length".into()));
        }
        Ok(LengthConstraint::FiniteSet(set))
    }

    pub fn range(lo: Rational, hi: Rational) -> Result<LengthConstraint> {
        if lo.is_negative() {
            return Err(Error::InvalidConstraint("negative length".into()));
        }
        if lo > hi {
            return Err(Error::InvalidConstraint("lo above hi".into()));
        }
        Ok(LengthConstraint::Range { lo, hi })
    }

    pub fn contains(&self, len: &Rational) -> bool {
        match self {
            LengthConstraint::FiniteSet(set) => set.contains(len),
            LengthConstraint::Range { lo, hi } => lo <= len && len <= hi,
        }
    }

    pub fn max_length(&self) -> &Rational {
        match self {
            LengthConstraint::FiniteSet(set) => set.iter().next_back().unwrap(),
            LengthConstraint::Range { hi, .. } => hi,
        }
    }

    pub fn min_length(&self) -> &Rational {
        match self {
            LengthConstraint::FiniteSet(set) => set.iter().next().unwrap(),
            LengthConstraint::Range { lo, .. } => lo,
        }
    }

    /// Parses "{a,b,c}" as a finite set or "[a,b]" as a range.
    pub fn parse(s: &str) -> Result<LengthConstraint> {
        let bad = |msg: String| Error::Parse { line: 0, msg };
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let lens: Result<Vec<Rational>> = inner
                .split(',')
                .map(|t| Rational::parse(t.trim()))
                .collect();
            LengthConstraint::finite(lens?)
        } else if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 2 {
                return Err(bad(format!("expected [lo,hi], got {:?}", s)));
            }
            LengthConstraint::range(
                Rational::parse(parts[0].trim())?,
                Rational::parse(parts[1].trim())?,
            )
        } else {
            Err(bad(format!("expected {{a,b,...}} or [lo,hi], got {:?}", s)))
        }
    }
}

impl fmt::Display for LengthConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthConstraint::FiniteSet(set) => {
                write!(f, "{{")?;
                for (i, len) in set.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", len)?;
                }
                write!(f, "}}")
            }
            LengthConstraint::Range { lo, hi } => write!(f, "[{},{}]", lo, hi),
        }
    }
}

/// Assignment of one interval to every element of a ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRepresentation {
    elements: Vec<String>,
    intervals: Vec<Interval>,
    index: HashMap<String, usize>,
}

impl IntervalRepresentation {
    pub fn new<I, S>(pairs: I) -> Result<IntervalRepresentation>
    where
        I: IntoIterator<Item = (S, Interval)>,
        S: Into<String>,
    {
        let mut elements = Vec::new();
        let mut intervals = Vec::new();
        let mut index = HashMap::new();
        for (id, iv) in pairs {
            let id = id.into();
            validate_id(&id)?;
            if index.insert(id.clone(), elements.len()).is_some() {
                return Err(Error::DuplicateElement(id));
            }
            elements.push(id);
            intervals.push(iv);
        }
        Ok(IntervalRepresentation {
            elements,
            intervals,
            index,
        })
    }

    pub(crate) fn from_parts(elements: Vec<String>, intervals: Vec<Interval>) -> Self {
        debug_assert_eq!(elements.len(), intervals.len());
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        IntervalRepresentation {
            elements,
            intervals,
            index,
        }
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

    pub fn interval(&self, id: &str) -> Option<&Interval> {
        self.index_of(id).map(|i| &self.intervals[i])
    }

    pub fn interval_at(&self, i: usize) -> &Interval {
        &self.intervals[i]
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Rebuilds the representation with transformed intervals, keeping the
    /// element order.
    pub(crate) fn map_intervals<F>(&self, f: F) -> IntervalRepresentation
    where
        F: Fn(usize, &Interval) -> Interval,
    {
        let intervals = self
            .intervals
            .iter()
            .enumerate()
            .map(|(i, iv)| f(i, iv))
            .collect();
        IntervalRepresentation {
            elements: self.elements.clone(),
            intervals,
            index: self.index.clone(),
        }
    }

    /// The induced order: x < y iff the interval of x ends strictly before
    /// the interval of y begins. Always an interval order.
    pub fn poset_of(&self) -> Poset {
        let n = self.n();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && self.intervals[i].right() < self.intervals[j].left() {
                    pairs.push((self.elements[i].clone(), self.elements[j].clone()));
                }
            }
        }
        Poset::new(self.elements.clone(), pairs).expect("interval containment relation is acyclic")
    }

    /// True iff the induced order equals the given poset, element for element.
    pub fn matches(&self, p: &Poset) -> Result<bool> {
        if self.n() != p.n() || self.elements.iter().any(|e| p.index_of(e).is_none()) {
            return Err(Error::GroundSetMismatch);
        }
        let mine = self.poset_of();
        for x in &self.elements {
            for y in &self.elements {
                if mine.lt(x, y) != p.lt(x, y) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff no two elements hold the same interval.
    pub fn is_twin_free(&self) -> bool {
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.intervals[i] == self.intervals[j] {
                    return false;
                }
            }
        }
        true
    }

    /// Groups of elements holding identical intervals, in element order.
    /// Only groups of two or more are returned.
    pub fn twin_classes(&self) -> Vec<Vec<String>> {
        let mut groups: Vec<(Interval, Vec<String>)> = Vec::new();
        for (i, iv) in self.intervals.iter().enumerate() {
            match groups.iter_mut().find(|(g, _)| g == iv) {
                Some((_, members)) => members.push(self.elements[i].clone()),
                None => groups.push((iv.clone(), vec![self.elements[i].clone()])),
            }
        }
        groups
            .into_iter()
            .filter(|(_, m)| m.len() > 1)
            .map(|(_, m)| m)
            .collect()
    }

    /// True iff every endpoint value occurs at most once across the whole
    /// representation. The two coinciding endpoints of a single zero-length
    /// interval count as one occurrence.
    pub fn is_distinguishing(&self) -> bool {
        let mut seen = BTreeSet::new();
        for iv in &self.intervals {
            if !seen.insert(iv.left().clone()) {
                return false;
            }
            if !iv.is_zero_length() && !seen.insert(iv.right().clone()) {
                return false;
            }
        }
        true
    }

    pub fn lengths(&self) -> Vec<Rational> {
        self.intervals.iter().map(Interval::length).collect()
    }

    pub fn distinct_lengths(&self) -> BTreeSet<Rational> {
        self.intervals.iter().map(Interval::length).collect()
    }

    pub fn lengths_within(&self, constraint: &LengthConstraint) -> bool {
        self.intervals
            .iter()
            .all(|iv| constraint.contains(&iv.length()))
    }

    /// Multiplies every endpoint by m > 0. The induced order is unchanged.
    pub fn scale(&self, m: &Rational) -> Result<IntervalRepresentation> {
        if !m.is_positive() {
            return Err(Error::NonpositiveFactor);
        }
        Ok(self.map_intervals(|_, iv| iv.scale(m)))
    }

    pub fn translate(&self, delta: &Rational) -> IntervalRepresentation {
        self.map_intervals(|_, iv| iv.translate(delta))
    }

    /// Distinct endpoint values in increasing order.
    pub fn endpoint_values(&self) -> Vec<Rational> {
        let mut set = BTreeSet::new();
        for iv in &self.intervals {
            set.insert(iv.left().clone());
            set.insert(iv.right().clone());
        }
        set.into_iter().collect()
    }

    /// Smallest difference between two distinct endpoint values.
    pub fn min_endpoint_gap(&self) -> Result<Rational> {
        let values = self.endpoint_values();
        if values.len() < 2 {
            return Err(Error::AllEndpointsEqual);
        }
        let mut best: Option<Rational> = None;
        for w in values.windows(2) {
            let gap = &w[1] - &w[0];
            best = Some(match best {
                None => gap,
                Some(b) => b.min(gap),
            });
        }
        Ok(best.unwrap())
    }

    /// Sub-representation on the given elements, keeping the original order.
    pub fn restrict(&self, subset: &[String]) -> Result<IntervalRepresentation> {
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
        let mut elements = Vec::new();
        let mut intervals = Vec::new();
        for i in 0..self.n() {
            if keep[i] {
                elements.push(self.elements[i].clone());
                intervals.push(self.intervals[i].clone());
            }
        }
        Ok(IntervalRepresentation::from_parts(elements, intervals))
    }

    /// Emits the `rep v1` text format.
    pub fn to_text(&self) -> String {
        let mut s = String::from("rep v1\n");
        for (e, iv) in self.elements.iter().zip(&self.intervals) {
            s.push_str(&format!("{} = {} {}\n", e, iv.left(), iv.right()));
        }
        s
    }

    /// Parses the `rep v1` text format. Blank lines are ignored.
    pub fn parse_text(text: &str) -> Result<IntervalRepresentation> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim().is_empty());
        let (lno, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty file".into(),
        })?;
        if header.trim() != "rep v1" {
            return Err(Error::Parse {
                line: lno,
                msg: format!("expected \"rep v1\", got {:?}", header),
            });
        }
        let mut pairs = Vec::new();
        for (lno, line) in lines {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 4 || tokens[1] != "=" {
                return Err(Error::Parse {
                    line: lno,
                    msg: format!("expected \"<id> = <left> <right>\", got {:?}", line),
                });
            }
            let left = Rational::parse(tokens[2]).map_err(|e| located(e, lno))?;
            let right = Rational::parse(tokens[3]).map_err(|e| located(e, lno))?;
            let iv = Interval::new(left, right).map_err(|e| located(e, lno))?;
            pairs.push((tokens[0].to_string(), iv));
        }
        IntervalRepresentation::new(pairs)
    }
}

fn located(e: Error, line: usize) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        Error::InvalidInterval => Error::Parse {
            line,
            msg: "left endpoint above right".into(),
        },
        Error::ZeroDenominator => Error::Parse {
            line,
            msg: "zero denominator".into(),
        },
        other => other,
    }
}

/// Builds a distinguishing representation with positive lengths for any
/// interval order. Left ranks come from the chain of strict down-sets, right
/// ranks from the chain of strict up-sets; a half-unit stretch makes every
/// length positive and the separation pipeline removes shared endpoints.
/// The result is normalized so its smallest endpoint is zero.
pub fn canonical_representation(p: &Poset) -> Result<IntervalRepresentation> {
    if let Some(witness) = p.find_two_plus_two() {
        return Err(Error::NotIntervalOrder { witness });
    }
    let n = p.n();
    if n == 0 {
        return Ok(IntervalRepresentation::from_parts(Vec::new(), Vec::new()));
    }
    // In an interval order the strict down-sets form a chain under inclusion,
    // and so do the strict up-sets; sorting by size orders each chain.
    let down_sets: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| p.lt_idx(y, x)).collect())
        .collect();
    let up_sets: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| p.lt_idx(x, y)).collect())
        .collect();
    let rank = |sets: &[Vec<bool>], ascending: bool| -> Result<Vec<usize>> {
        let mut distinct: Vec<&Vec<bool>> = Vec::new();
        for s in sets {
            if !distinct.iter().any(|d| **d == *s) {
                distinct.push(s);
            }
        }
        let size = |s: &Vec<bool>| s.iter().filter(|&&b| b).count();
        distinct.sort_by_key(|s| size(s));
        for w in distinct.windows(2) {
            let (small, large) = (w[0], w[1]);
            let included = (0..n).all(|i| !small[i] || large[i]);
            if !included {
                return Err(Error::InternalContradiction(
                    "down/up-sets of a 2+2-free order must form a chain".into(),
                ));
            }
        }
        if !ascending {
            distinct.reverse();
        }
        Ok(sets
            .iter()
            .map(|s| distinct.iter().position(|d| **d == *s).unwrap() + 1)
            .collect())
    };
    let left_rank = rank(&down_sets, true)?;
    let right_rank = rank(&up_sets, false)?;
    let mut intervals = Vec::with_capacity(n);
    for x in 0..n {
        let l = Rational::from_int(left_rank[x] as i64);
        let r = &Rational::from_int(right_rank[x] as i64) + &Rational::new(1, 2).unwrap();
        if l > r {
            return Err(Error::InternalContradiction(
                "rank interval collapsed; ranks are inconsistent".into(),
            ));
        }
        intervals.push(Interval { left: l, right: r });
    }
    let rep = IntervalRepresentation::from_parts(p.elements().to_vec(), intervals);
    if !rep.matches(p)? {
        return Err(Error::InternalContradiction(
            "rank representation does not induce the input order".into(),
        ));
    }
    let rep = crate::distinguish::separate_endpoints(&rep).map_err(|e| match e {
        Error::IrreducibleTwins { elements } => Error::InternalContradiction(format!(
            "positive-length twins must be separable: {}",
            elements.join(", ")
        )),
        other => other,
    })?;
    let min = rep.endpoint_values().into_iter().next().unwrap();
    let rep = rep.translate(&(-&min));
    if !rep.matches(p)? || !rep.is_distinguishing() {
        return Err(Error::InternalContradiction(
            "canonical representation failed its own checks".into(),
        ));
    }
    debug_assert!(rep.intervals.iter().all(|iv| iv.length().is_positive()));
    Ok(rep)
}
