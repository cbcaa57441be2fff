//! Euler circuits of small directed multigraphs (Hierholzer).

/// A directed multigraph on `0..vertex_count` with numbered edges.
#[derive(Debug, Clone, Default)]
pub struct Multigraph {
    adjacency: Vec<Vec<(usize, usize)>>,
    edge_count: usize,
    in_degree: Vec<usize>,
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Self { adjacency: vec![Vec::new(); vertex_count], edge_count: 0, in_degree: vec![0; vertex_count] }
    }

    /// Adds `tail -> head` and returns its edge id.
    pub fn add_edge(&mut self, tail: usize, head: usize) -> usize {
        let id = self.edge_count;
        self.adjacency[tail].push((head, id));
        self.in_degree[head] += 1;
        self.edge_count += 1;
        id
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// In-degree equals out-degree everywhere.
    pub fn is_balanced(&self) -> bool {
        self.adjacency.iter().zip(&self.in_degree).all(|(out, &inn)| out.len() == inn)
    }

    /// All edges lie in one weakly connected component.
    pub fn edges_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (u, outs) in self.adjacency.iter().enumerate() {
            for &(v, _) in outs {
                let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                parent[a] = b;
            }
        }
        let mut root = None;
        for (u, outs) in self.adjacency.iter().enumerate() {
            if outs.is_empty() {
                continue;
            }
            let r = find(&mut parent, u);
            if *root.get_or_insert(r) != r {
                return false;
            }
        }
        true
    }

    pub fn is_eulerian(&self) -> bool {
        self.is_balanced() && self.edges_connected()
    }

    /// Closed Euler circuit as a vertex sequence `v_0, ..., v_{E-1}` (edge i
    /// goes from `v_i` to `v_{i+1 mod E}`), starting at `start`. Out-edges
    /// are taken in insertion order. `None` unless the graph is Eulerian and
    /// `start` has an out-edge.
    pub fn euler_circuit(&self, start: usize) -> Option<Vec<usize>> {
        if self.edge_count == 0 || self.adjacency[start].is_empty() || !self.is_eulerian() {
            return None;
        }
        let mut next = vec![0usize; self.vertex_count()];
        let mut stack = vec![start];
        let mut circuit = Vec::with_capacity(self.edge_count + 1);
        while let Some(&v) = stack.last() {
            if next[v] < self.adjacency[v].len() {
                let (w, _) = self.adjacency[v][next[v]];
                next[v] += 1;
                stack.push(w);
            } else {
                circuit.push(v);
                stack.pop();
            }
        }
        circuit.reverse();
        circuit.pop();
        debug_assert_eq!(circuit.len(), self.edge_count);
        Some(circuit)
    }
}
