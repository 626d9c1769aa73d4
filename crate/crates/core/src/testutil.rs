//! Generators used by the test suite: exhaustive labeled posets on small
//! ground sets and seeded random posets and representations. Element names
//! follow the `e1..en` convention of the search enumerator so poset texts
//! compare across modules.

use rand::rngs::StdRng;
use rand::Rng;

use crate::poset::Poset;
use crate::rational::Rational;
use crate::rep::{Interval, IntervalRepresentation};

pub fn element_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{}", i)).collect()
}

/// Number of labeled posets on n elements, for cross-checking the
/// enumerator below.
pub fn labeled_poset_count(n: usize) -> usize {
    [1, 1, 3, 19, 219, 4231, 130023][n]
}

/// Every strict partial order on elements e1..en, by running through all
/// orientation assignments of the element pairs and keeping the transitively
/// closed ones. Each poset appears exactly once.
pub fn all_labeled_posets(n: usize) -> Vec<Poset> {
    let names = element_names(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut trits = vec![0u8; pairs.len()];
    loop {
        let mut lt = vec![false; n * n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            match trits[k] {
                1 => lt[i * n + j] = true,
                2 => lt[j * n + i] = true,
                _ => {}
            }
        }
        let mut transitive = true;
        'check: for a in 0..n {
            for b in 0..n {
                if !lt[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if lt[b * n + c] && !lt[a * n + c] {
                        transitive = false;
                        break 'check;
                    }
                }
            }
        }
        if transitive {
            let rel: Vec<(String, String)> = (0..n)
                .flat_map(|i| {
                    let names = &names;
                    let lt = &lt;
                    (0..n).filter_map(move |j| {
                        if lt[i * n + j] {
                            Some((names[i].clone(), names[j].clone()))
                        } else {
                            None
                        }
                    })
                })
                .collect();
            out.push(Poset::new(names.clone(), rel).unwrap());
        }
        let mut k = 0;
        loop {
            if k == trits.len() {
                debug_assert_eq!(out.len(), labeled_poset_count(n));
                return out;
            }
            trits[k] += 1;
            if trits[k] < 3 {
                break;
            }
            trits[k] = 0;
            k += 1;
        }
    }
}

/// The labeled posets free of incomparable two-chain pairs.
pub fn all_labeled_interval_orders(n: usize) -> Vec<Poset> {
    all_labeled_posets(n)
        .into_iter()
        .filter(|p| p.find_two_plus_two().is_none())
        .collect()
}

/// The labeled posets free of incomparable two-chain pairs and of
/// three-chains with a loose element.
pub fn all_labeled_semiorders(n: usize) -> Vec<Poset> {
    all_labeled_posets(n)
        .into_iter()
        .filter(|p| p.find_two_plus_two().is_none() && p.find_three_plus_one().is_none())
        .collect()
}

/// The order on pairs (a_1..a_k, b_1..b_k) with a_i < b_j exactly when
/// i != j. Its dimension is k for k >= 2.
pub fn standard_example(k: usize) -> Poset {
    let names: Vec<String> = (1..=k)
        .map(|i| format!("a{}", i))
        .chain((1..=k).map(|i| format!("b{}", i)))
        .collect();
    let rel: Vec<(String, String)> = (1..=k)
        .flat_map(|i| {
            (1..=k).filter_map(move |j| {
                if i != j {
                    Some((format!("a{}", i), format!("b{}", j)))
                } else {
                    None
                }
            })
        })
        .collect();
    Poset::new(names, rel).unwrap()
}

/// Random poset on e1..en: a shuffled order of the elements with each
/// forward pair related independently, then closed transitively.
pub fn random_poset(n: usize, edge_chance: f64, rng: &mut StdRng) -> Poset {
    let names = element_names(n);
    let mut topo: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        topo.swap(i, j);
    }
    let mut rel = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(edge_chance) {
                rel.push((names[topo[i]].clone(), names[topo[j]].clone()));
            }
        }
    }
    Poset::new(names, rel).unwrap()
}

/// Random representation on e1..en with endpoints on a quarter grid. Twins
/// and shared endpoints arise naturally; pass lengths to pin the length
/// multiset choices.
pub fn random_rep(
    n: usize,
    lengths: Option<&[Rational]>,
    rng: &mut StdRng,
) -> IntervalRepresentation {
    let names = element_names(n);
    let pairs: Vec<(String, Interval)> = names
        .into_iter()
        .map(|id| {
            let l = Rational::new(rng.gen_range(0..(4 * n as i64 + 4)), 4).unwrap();
            let len = match lengths {
                Some(ls) => ls[rng.gen_range(0..ls.len())].clone(),
                None => Rational::new(rng.gen_range(0..=8), 4).unwrap(),
            };
            let r = &l + &len;
            (id, Interval::new(l, r).unwrap())
        })
        .collect();
    IntervalRepresentation::new(pairs).unwrap()
}

/// Random distinguishing representation: random rep pushed through the
/// endpoint separation pipeline, retrying on irreducible twins.
pub fn random_distinguishing_rep(
    n: usize,
    lengths: Option<&[Rational]>,
    rng: &mut StdRng,
) -> IntervalRepresentation {
    loop {
        let rep = random_rep(n, lengths, rng);
        let constraint = crate::rep::LengthConstraint::range(
            Rational::zero(),
            Rational::from_int(4 * n as i64 + 8),
        )
        .unwrap();
        match crate::distinguish::make_distinguishing(&rep, &constraint) {
            Ok(out) => return out,
            Err(_) => continue,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn poset_enumeration_counts_match_the_known_sequence() {
        for n in 0..=4 {
            assert_eq!(all_labeled_posets(n).len(), labeled_poset_count(n));
        }
    }

    #[test]
    fn enumerated_posets_are_distinct() {
        let posets = all_labeled_posets(3);
        let texts: std::collections::HashSet<String> = posets.iter().map(|p| p.to_text()).collect();
        assert_eq!(texts.len(), posets.len());
    }

    #[test]
    fn three_element_filters() {
        // No poset on three elements contains two disjoint two-chains, and
        // only the three-chain plus isolated shapes need four elements, so
        // every three-element poset is both an interval order and a
        // semiorder.
        assert_eq!(all_labeled_interval_orders(3).len(), 19);
        assert_eq!(all_labeled_semiorders(3).len(), 19);
        // On four elements the two-plus-two and three-plus-one shapes each
        // appear; counts drop accordingly.
        let io4 = all_labeled_interval_orders(4).len();
        let so4 = all_labeled_semiorders(4).len();
        assert!(io4 < 219);
        assert!(so4 < io4);
    }

    #[test]
    fn standard_example_dimensions() {
        let s3 = standard_example(3);
        assert_eq!(crate::dimension::dimension(&s3, 4).unwrap(), 3);
    }

    #[test]
    fn random_generators_are_deterministic_per_seed() {
        let mut r1 = StdRng::seed_from_u64(7);
        let mut r2 = StdRng::seed_from_u64(7);
        assert_eq!(
            random_poset(5, 0.4, &mut r1).to_text(),
            random_poset(5, 0.4, &mut r2).to_text()
        );
        assert_eq!(
            random_rep(5, None, &mut r1).to_text(),
            random_rep(5, None, &mut r2).to_text()
        );
        let d = random_distinguishing_rep(5, None, &mut r1);
        assert!(d.is_distinguishing());
    }
}
