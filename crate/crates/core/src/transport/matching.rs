//! Hopcroft-Karp maximum bipartite matching with lowest-index tie-breaking,
//! and Hall-violator certificates when no perfect matching exists.

use std::collections::VecDeque;

use serde::Serialize;

const NIL: usize = usize::MAX;

/// Maximum matching; `adjacency[l]` lists right neighbours of left vertex `l`.
/// Neighbours are tried in ascending order.
pub fn hopcroft_karp(adjacency: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let left_count = adjacency.len();
    let adjacency: Vec<Vec<usize>> = adjacency
        .iter()
        .map(|l| {
            let mut l = l.clone();
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect();
    let mut match_left = vec![NIL; left_count];
    let mut match_right = vec![NIL; right_count];
    let mut layer = vec![0usize; left_count];

    loop {
        // BFS from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..left_count {
            if match_left[l] == NIL {
                layer[l] = 0;
                queue.push_back(l);
            } else {
                layer[l] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adjacency[l] {
                let next = match_right[r];
                if next == NIL {
                    found = true;
                } else if layer[next] == usize::MAX {
                    layer[next] = layer[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        let mut cursor = vec![0usize; left_count];
        for l in 0..left_count {
            if match_left[l] == NIL {
                augment(l, &adjacency, &mut match_left, &mut match_right, &mut layer, &mut cursor);
            }
        }
    }
    match_left.into_iter().map(|r| (r != NIL).then_some(r)).collect()
}

fn augment(
    l: usize,
    adjacency: &[Vec<usize>],
    match_left: &mut [usize],
    match_right: &mut [usize],
    layer: &mut [usize],
    cursor: &mut [usize],
) -> bool {
    while cursor[l] < adjacency[l].len() {
        let r = adjacency[l][cursor[l]];
        cursor[l] += 1;
        let next = match_right[r];
        let ok = next == NIL
            || (layer[next] == layer[l] + 1 && augment(next, adjacency, match_left, match_right, layer, cursor));
        if ok {
            match_left[l] = r;
            match_right[r] = l;
            return true;
        }
    }
    layer[l] = usize::MAX;
    false
}

/// Result of a perfect-matching query between two equal-size vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatchingOutcome {
    /// `pairs[i] = (left, right)`, in left order.
    Perfect { pairs: Vec<(usize, usize)> },
    /// `left` has fewer than `left.len()` neighbours, namely `neighbors`.
    HallViolator { left: Vec<usize>, neighbors: Vec<usize> },
    SizeMismatch { left: usize, right: usize },
}

impl MatchingOutcome {
    pub fn is_perfect(&self) -> bool {
        matches!(self, MatchingOutcome::Perfect { .. })
    }
}

/// Perfect matching between `left` and `right` (indices local to the
/// slices) or a certificate that none exists.
pub fn perfect_matching(adjacency: &[Vec<usize>], right_count: usize) -> MatchingOutcome {
    if adjacency.len() != right_count {
        return MatchingOutcome::SizeMismatch { left: adjacency.len(), right: right_count };
    }
    let matched = hopcroft_karp(adjacency, right_count);
    let Some(free) = matched.iter().position(Option::is_none) else {
        return MatchingOutcome::Perfect {
            pairs: matched.iter().enumerate().map(|(l, r)| (l, r.unwrap())).collect(),
        };
    };
    let mut match_right = vec![NIL; right_count];
    for (l, r) in matched.iter().enumerate() {
        if let Some(r) = r {
            match_right[*r] = l;
        }
    }
    // alternating BFS from the free left vertex
    let mut seen_left = vec![false; adjacency.len()];
    let mut seen_right = vec![false; right_count];
    let mut queue = VecDeque::from([free]);
    seen_left[free] = true;
    while let Some(l) = queue.pop_front() {
        for &r in &adjacency[l] {
            if !seen_right[r] {
                seen_right[r] = true;
                let next = match_right[r];
                if next != NIL && !seen_left[next] {
                    seen_left[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    let collect = |seen: &[bool]| seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect();
    MatchingOutcome::HallViolator {
        left: collect(&seen_left),
        neighbors: collect(&seen_right),
    }
}
