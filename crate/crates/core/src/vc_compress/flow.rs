//! Dinic's blocking-flow max flow over arbitrary-precision capacities.

use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::VecDeque;

struct Arc {
    to: usize,
    cap: BigUint,
}

pub(crate) struct Network {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<usize>,
    next: Vec<usize>,
}

impl Network {
    pub(crate) fn new(nodes: usize) -> Self {
        Network { arcs: Vec::new(), out: vec![Vec::new(); nodes], level: vec![0; nodes], next: vec![0; nodes] }
    }

    /// Adds `from -> to` and its reverse residual arc; returns the forward arc id.
    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: BigUint) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap });
        self.arcs.push(Arc { to: from, cap: BigUint::zero() });
        self.out[from].push(id);
        self.out[to].push(id + 1);
        id
    }

    /// Flow pushed through a forward arc so far.
    pub(crate) fn flow(&self, arc: usize) -> &BigUint {
        &self.arcs[arc ^ 1].cap
    }

    pub(crate) fn max_flow(&mut self, s: usize, t: usize) -> BigUint {
        let mut total = BigUint::zero();
        while self.bfs(s, t) {
            self.next.iter_mut().for_each(|x| *x = 0);
            loop {
                let pushed = self.dfs(s, t, None);
                if pushed.is_zero() {
                    break;
                }
                total += pushed;
            }
        }
        total
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        const UNSEEN: usize = usize::MAX;
        self.level.iter_mut().for_each(|l| *l = UNSEEN);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.out[u] {
                let v = self.arcs[a].to;
                if self.level[v] == UNSEEN && !self.arcs[a].cap.is_zero() {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        self.level[t] != UNSEEN
    }

    /// `limit = None` stands for an unbounded push out of the source.
    fn dfs(&mut self, u: usize, t: usize, limit: Option<&BigUint>) -> BigUint {
        if u == t {
            return limit.cloned().expect("sink is never the source");
        }
        while self.next[u] < self.out[u].len() {
            let a = self.out[u][self.next[u]];
            let v = self.arcs[a].to;
            if self.level[v] == self.level[u] + 1 && !self.arcs[a].cap.is_zero() {
                let cap = self.arcs[a].cap.clone();
                let bound = match limit {
                    Some(l) if *l < cap => l.clone(),
                    _ => cap,
                };
                let pushed = self.dfs(v, t, Some(&bound));
                if !pushed.is_zero() {
                    self.arcs[a].cap -= &pushed;
                    self.arcs[a ^ 1].cap += &pushed;
                    return pushed;
                }
            }
            self.next[u] += 1;
        }
        BigUint::zero()
    }
}
