//! Hopcroft-Karp maximum bipartite matching. `adj[u]` lists the right-side
//! neighbors of left vertex u; returns the size of a maximum matching.

pub(crate) fn max_bipartite_matching(n_right: usize, adj: &[Vec<u32>]) -> usize {
    const NIL: u32 = u32::MAX;
    let n_left = adj.len();
    let mut match_left = vec![NIL; n_left];
    let mut match_right = vec![NIL; n_right];
    let mut dist = vec![0u32; n_left];
    let mut queue = Vec::with_capacity(n_left);
    let mut total = 0usize;

    loop {
        // BFS from unmatched left vertices builds the layer structure.
        queue.clear();
        for u in 0..n_left {
            if match_left[u] == NIL {
                dist[u] = 0;
                queue.push(u as u32);
            } else {
                dist[u] = NIL;
            }
        }
        let mut layered = false;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            for &v in &adj[u] {
                let w = match_right[v as usize];
                if w == NIL {
                    layered = true;
                } else if dist[w as usize] == NIL {
                    dist[w as usize] = dist[u] + 1;
                    queue.push(w);
                }
            }
        }
        if !layered {
            return total;
        }
        // DFS along layers augments vertex-disjoint shortest paths.
        fn augment(
            u: usize,
            adj: &[Vec<u32>],
            dist: &mut [u32],
            match_left: &mut [u32],
            match_right: &mut [u32],
        ) -> bool {
            for i in 0..adj[u].len() {
                let v = adj[u][i] as usize;
                let w = match_right[v];
                if w == NIL
                    || (dist[w as usize] == dist[u] + 1
                        && augment(w as usize, adj, dist, match_left, match_right))
                {
                    match_left[u] = v as u32;
                    match_right[v] = u as u32;
                    return true;
                }
            }
            dist[u] = NIL;
            false
        }
        for u in 0..n_left {
            if match_left[u] == NIL
                && augment(u, adj, &mut dist, &mut match_left, &mut match_right)
            {
                total += 1;
            }
        }
    }
}
