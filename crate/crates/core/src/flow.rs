//! Dinic max-flow on integer capacities, used for the closure problems behind
//! density minimization and admissibility.

use std::collections::VecDeque;

pub(crate) const INF: i64 = i64::MAX / 4;

pub(crate) struct FlowNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i64>,
    next: Vec<usize>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: vec![NIL; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            level: vec![0; nodes],
            iter: vec![0; nodes],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) {
        debug_assert!(cap >= 0);
        for (a, b, c) in [(u, v, cap), (v, u, 0)] {
            self.to.push(b);
            self.cap.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut e = self.head[u];
            while e != NIL {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
                e = self.next[e];
            }
        }
        self.level[t] >= 0
    }

    // iterative blocking-flow DFS
    fn augment(&mut self, s: usize, t: usize) -> i64 {
        let mut total = 0;
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let pushed = path.iter().map(|&e| self.cap[e]).min().unwrap_or(0);
                for &e in &path {
                    self.cap[e] -= pushed;
                    self.cap[e ^ 1] += pushed;
                }
                total += pushed;
                // retreat to the tail of the first saturated arc
                let cut = path.iter().position(|&e| self.cap[e] == 0).unwrap();
                path.truncate(cut);
                u = if cut == 0 { s } else { self.to[path[cut - 1]] };
                continue;
            }
            let mut advanced = false;
            while self.iter[u] != NIL {
                let e = self.iter[u];
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                self.iter[u] = self.next[e];
            }
            if advanced {
                continue;
            }
            if u == s {
                return total;
            }
            // dead end: prune u and step back
            self.level[u] = -1;
            let e = path.pop().unwrap();
            u = self.to[e ^ 1];
            self.iter[u] = self.next[self.iter[u]];
        }
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let mut flow = 0;
        while self.bfs(s, t) {
            self.iter.copy_from_slice(&self.head);
            flow += self.augment(s, t);
        }
        flow
    }

    /// Nodes reachable from `s` in the residual network (source side of a
    /// minimum cut). Call after [`max_flow`](Self::max_flow).
    pub fn source_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let mut e = self.head[u];
            while e != NIL {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
                e = self.next[e];
            }
        }
        seen
    }
}

/// Maximum-weight closure: choose a set of nodes closed under `requires`
/// (if `a` is chosen and `(a, b)` is listed then `b` is chosen) maximizing
/// total weight. Returns the optimum and the maximal optimal set.
pub(crate) fn max_weight_closure(weights: &[i64], requires: &[(usize, usize)]) -> (i64, Vec<bool>) {
    let k = weights.len();
    let (s, t) = (k, k + 1);
    let mut net = FlowNetwork::new(k + 2);
    let mut positive = 0;
    for (i, &w) in weights.iter().enumerate() {
        if w > 0 {
            positive += w;
            net.add_edge(s, i, w);
        } else if w < 0 {
            net.add_edge(i, t, -w);
        }
    }
    for &(a, b) in requires {
        net.add_edge(a, b, INF);
    }
    let cut = net.max_flow(s, t);
    let side = net.source_side(s);
    (positive - cut, side[..k].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        // CLRS figure 26.1, max flow 23
        let mut net = FlowNetwork::new(6);
        for (u, v, c) in [
            (0, 1, 16),
            (0, 2, 13),
            (1, 3, 12),
            (2, 1, 4),
            (2, 4, 14),
            (3, 2, 9),
            (3, 5, 20),
            (4, 3, 7),
            (4, 5, 4),
        ] {
            net.add_edge(u, v, c);
        }
        assert_eq!(net.max_flow(0, 5), 23);
        let side = net.source_side(0);
        assert!(side[0] && !side[5]);
    }

    #[test]
    fn closure_brute_force() {
        // small random instances against subset enumeration
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..200 {
            let k = 1 + (next() % 8) as usize;
            let weights: Vec<i64> = (0..k).map(|_| (next() % 11) as i64 - 5).collect();
            let mut req = Vec::new();
            for a in 0..k {
                for b in 0..k {
                    if a != b && next() % 4 == 0 {
                        req.push((a, b));
                    }
                }
            }
            let mut best = 0;
            for mask in 0u32..1 << k {
                let closed = req.iter().all(|&(a, b)| mask >> a & 1 == 0 || mask >> b & 1 == 1);
                if closed {
                    let w: i64 = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| weights[i]).sum();
                    best = best.max(w);
                }
            }
            let (value, set) = max_weight_closure(&weights, &req);
            assert_eq!(value, best);
            let w: i64 = (0..k).filter(|&i| set[i]).map(|i| weights[i]).sum();
            assert_eq!(w, best);
            assert!(req.iter().all(|&(a, b)| !set[a] || set[b]));
        }
    }
}
