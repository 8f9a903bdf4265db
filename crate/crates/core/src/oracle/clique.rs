//! Exact maximum clique by branch and bound with greedy colouring bounds,
//! over dense bitset adjacency.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    blocks: Vec<u64>,
}

impl Bitset {
    pub fn empty(len: usize) -> Self {
        Self {
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.blocks[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn intersect(&self, other: &Bitset) -> Bitset {
        Bitset {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &Bitset) {
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    /// Drops every element `<= i`.
    pub fn keep_above(&mut self, i: usize) {
        let (q, r) = (i / 64, i % 64);
        for b in &mut self.blocks[..q] {
            *b = 0;
        }
        if let Some(b) = self.blocks.get_mut(q) {
            *b &= if r == 63 { 0 } else { !0u64 << (r + 1) };
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.blocks
            .iter()
            .enumerate()
            .find(|(_, &b)| b != 0)
            .map(|(k, b)| k * 64 + b.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(k, &b)| {
            let mut b = b;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let t = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// Undirected graph on `0..n` with bitset neighbourhoods.
#[derive(Debug, Clone)]
pub struct Graph {
    adj: Vec<Bitset>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Bitset::empty(n); n],
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i].insert(j);
        self.adj[j].insert(i);
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbours(&self, i: usize) -> &Bitset {
        &self.adj[i]
    }

    /// The graph with every non-edge between distinct vertices as an edge.
    pub fn complement(&self) -> Graph {
        let n = self.len();
        let all = Bitset::full(n);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut c = all.clone();
                c.subtract(a);
                c.remove(i);
                c
            })
            .collect();
        Graph { adj }
    }

    /// Colour classes greedily, returning vertices ordered by colour with
    /// the colour number (an upper bound on the clique inside the prefix).
    fn colour_sort(&self, p: &Bitset) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(p.count());
        let mut uncoloured = p.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                uncoloured.remove(v);
                q.remove(v);
                q.subtract(&self.adj[v]);
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(
        &self,
        mut p: Bitset,
        cur: &mut Vec<usize>,
        best: &mut Vec<usize>,
        floor: usize,
        stop_at: usize,
    ) -> bool {
        let order = self.colour_sort(&p);
        for &(v, colour) in order.iter().rev() {
            if cur.len() + colour <= best.len().max(floor) {
                return false;
            }
            cur.push(v);
            let next = p.intersect(&self.adj[v]);
            if next.is_empty() {
                if cur.len() > best.len().max(floor) {
                    *best = cur.clone();
                    if best.len() >= stop_at {
                        cur.pop();
                        return true;
                    }
                }
            } else if self.expand(next, cur, best, floor, stop_at) {
                cur.pop();
                return true;
            }
            cur.pop();
            p.remove(v);
        }
        false
    }

    /// A maximum clique inside `within`, sorted ascending.
    pub fn max_clique_in(&self, within: &Bitset) -> Vec<usize> {
        let mut best = Vec::new();
        if let Some(v) = within.first() {
            best.push(v);
        }
        self.expand(within.clone(), &mut Vec::new(), &mut best, 0, usize::MAX);
        best.sort_unstable();
        best
    }

    pub fn max_clique(&self) -> Vec<usize> {
        self.max_clique_in(&Bitset::full(self.len()))
    }

    /// Whether `within` holds a clique of `size` vertices.
    pub fn has_clique(&self, within: &Bitset, size: usize) -> bool {
        if size == 0 {
            return true;
        }
        if within.count() < size {
            return false;
        }
        if size == 1 {
            return true;
        }
        let mut best = Vec::new();
        self.expand(within.clone(), &mut Vec::new(), &mut best, size - 1, size);
        best.len() >= size
    }

    /// The lexicographically least clique of the given size, assuming one
    /// exists and none is larger.
    pub fn least_clique(&self, size: usize) -> Vec<usize> {
        let mut chosen = Vec::with_capacity(size);
        let mut cand = Bitset::full(self.len());
        while chosen.len() < size {
            let need = size - chosen.len() - 1;
            let pick = cand
                .iter()
                .find(|&v| {
                    let mut rest = cand.intersect(&self.adj[v]);
                    rest.keep_above(v);
                    self.has_clique(&rest, need)
                })
                .expect("a clique of the requested size exists");
            chosen.push(pick);
            cand.intersect_with(&self.adj[pick]);
            cand.keep_above(pick);
        }
        chosen
    }
}
