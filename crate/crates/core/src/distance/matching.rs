//! Hopcroft–Karp maximum bipartite matching.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Maximum matching of a bipartite graph given by left-side adjacency lists.
/// Returns `mate[left] = Some(right)`.
pub fn hopcroft_karp(adjacency: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let left_count = adjacency.len();
    let mut mate_left = vec![FREE; left_count];
    let mut mate_right = vec![FREE; right_count];
    let mut dist = vec![0usize; left_count];

    loop {
        // Layered BFS from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..left_count {
            if mate_left[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                let w = mate_right[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut next_edge = vec![0usize; left_count];
        for u in 0..left_count {
            if mate_left[u] == FREE {
                augment(u, adjacency, &mut mate_left, &mut mate_right, &mut dist, &mut next_edge);
            }
        }
    }
    mate_left.into_iter().map(|m| (m != FREE).then_some(m)).collect()
}

/// Iterative DFS along the BFS layers.
fn augment(
    root: usize,
    adjacency: &[Vec<usize>],
    mate_left: &mut [usize],
    mate_right: &mut [usize],
    dist: &mut [usize],
    next_edge: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&u) = stack.last() {
        if next_edge[u] == adjacency[u].len() {
            dist[u] = usize::MAX;
            stack.pop();
            continue;
        }
        let v = adjacency[u][next_edge[u]];
        next_edge[u] += 1;
        let w = mate_right[v];
        if w == FREE {
            // Flip the alternating path recorded on the stack.
            let mut right = v;
            while let Some(left) = stack.pop() {
                let previous = mate_left[left];
                mate_left[left] = right;
                mate_right[right] = left;
                right = previous;
            }
            return true;
        }
        if dist[w] != usize::MAX && dist[w] == dist[u] + 1 {
            stack.push(w);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn size(m: &[Option<usize>]) -> usize {
        m.iter().filter(|x| x.is_some()).count()
    }

    #[test]
    fn perfect_matching_needs_augmenting_paths() {
        // Greedy takes 0-0 first; the optimum rematches 0-1.
        let adjacency = vec![vec![0, 1], vec![0], vec![1, 2]];
        let m = hopcroft_karp(&adjacency, 3);
        assert_eq!(size(&m), 3);
        assert_eq!(m[1], Some(0));
    }

    #[test]
    fn deficient_graph() {
        let adjacency = vec![vec![0], vec![0], vec![0]];
        assert_eq!(size(&hopcroft_karp(&adjacency, 1)), 1);
        assert_eq!(size(&hopcroft_karp(&[], 0)), 0);
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        use rand::Rng;
        let mut rng = crate::sampling::seeded_rng(9);
        for _ in 0..200 {
            let (l, r) = (rng.gen_range(0..6), rng.gen_range(0..6));
            let adjacency: Vec<Vec<usize>> = (0..l).map(|_| (0..r).filter(|_| rng.gen_bool(0.35)).collect()).collect();
            let m = hopcroft_karp(&adjacency, r);
            let mut used = vec![false; r];
            for (u, v) in m.iter().enumerate() {
                if let Some(v) = v {
                    assert!(adjacency[u].contains(v) && !used[*v]);
                    used[*v] = true;
                }
            }
            assert_eq!(size(&m), brute(&adjacency, 0, &mut vec![false; r]));
        }
    }

    fn brute(adjacency: &[Vec<usize>], u: usize, used: &mut Vec<bool>) -> usize {
        if u == adjacency.len() {
            return 0;
        }
        let mut best = brute(adjacency, u + 1, used);
        for &v in &adjacency[u] {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + brute(adjacency, u + 1, used));
                used[v] = false;
            }
        }
        best
    }
}
