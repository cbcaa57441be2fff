//! Packing closed trails ("pieces") into connected classes of a fixed total
//! size.
//!
//! Every piece is balanced, so a connected class is Eulerian and can be
//! re-read as one closed trail. The packer is a depth-first search: each
//! class is seeded with the unused piece that has the fewest unused
//! neighbours, then grown by adjacent pieces that still fit. After a class
//! closes, every connected component of the remaining pieces must have a
//! total size divisible by the class size, since a class never spans two
//! components.

use crate::euler::Multigraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Piece {
    /// Directed edges `(tail, head)`.
    pub edges: Vec<(usize, usize)>,
}

impl Piece {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// Partitions `pieces` into classes of total size `class_size`, each
/// connected through shared vertices, as piece indices per class.
pub(crate) fn pack_connected(
    pieces: &[Piece],
    vertex_count: usize,
    class_size: usize,
    node_budget: u64,
) -> PackOutcome {
    let total: usize = pieces.iter().map(Piece::size).sum();
    if class_size == 0
        || !total.is_multiple_of(class_size)
        || pieces.iter().any(|p| p.size() > class_size || p.size() == 0)
    {
        return PackOutcome::Infeasible;
    }
    // Pieces touching each vertex.
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for (i, p) in pieces.iter().enumerate() {
        for &(u, v) in &p.edges {
            for w in [u, v] {
                if at_vertex[w].last() != Some(&i) {
                    at_vertex[w].push(i);
                }
            }
        }
    }
    let mut neighbours: Vec<Vec<usize>> = vec![Vec::new(); pieces.len()];
    for (i, p) in pieces.iter().enumerate() {
        let mut ns: Vec<usize> =
            p.edges.iter().flat_map(|&(u, v)| [u, v]).flat_map(|w| at_vertex[w].iter().copied()).collect();
        ns.sort_unstable();
        ns.dedup();
        ns.retain(|&j| j != i);
        neighbours[i] = ns;
    }
    let mut state = Packer {
        pieces,
        neighbours,
        class_size,
        used: vec![false; pieces.len()],
        classes: Vec::new(),
        nodes: 0,
        budget: node_budget,
        out_of_budget: false,
    };
    if state.solve() {
        PackOutcome::Packed(state.classes)
    } else if state.out_of_budget {
        PackOutcome::OutOfBudget
    } else {
        PackOutcome::Infeasible
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum PackOutcome {
    Packed(Vec<Vec<usize>>),
    Infeasible,
    OutOfBudget,
}

struct Packer<'a> {
    pieces: &'a [Piece],
    neighbours: Vec<Vec<usize>>,
    class_size: usize,
    used: Vec<bool>,
    classes: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
    out_of_budget: bool,
}

impl Packer<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
        }
        !self.out_of_budget
    }

    fn solve(&mut self) -> bool {
        let Some(seed) = self.most_constrained() else {
            return true;
        };
        self.used[seed] = true;
        let mut class = vec![seed];
        let size = self.pieces[seed].size();
        let mut excluded = Vec::new();
        let ok = self.grow(&mut class, size, &mut excluded);
        if !ok {
            self.used[seed] = false;
        }
        ok
    }

    fn most_constrained(&self) -> Option<usize> {
        (0..self.pieces.len())
            .filter(|&i| !self.used[i])
            .min_by_key(|&i| (self.neighbours[i].iter().filter(|&&j| !self.used[j]).count(), i))
    }

    /// Extends `class` (already marked used) to `class_size`, then solves
    /// the rest.
    fn grow(&mut self, class: &mut Vec<usize>, size: usize, excluded: &mut Vec<usize>) -> bool {
        if !self.tick() {
            return false;
        }
        if size == self.class_size {
            if !self.components_divisible() {
                return false;
            }
            self.classes.push(class.clone());
            if self.solve() {
                return true;
            }
            self.classes.pop();
            return false;
        }
        let room = self.class_size - size;
        let mut candidates: Vec<usize> = class
            .iter()
            .flat_map(|&c| self.neighbours[c].iter().copied())
            .filter(|&j| !self.used[j] && self.pieces[j].size() <= room && !excluded.contains(&j))
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        let mark = excluded.len();
        for j in candidates {
            self.used[j] = true;
            class.push(j);
            if self.grow(class, size + self.pieces[j].size(), excluded) {
                return true;
            }
            class.pop();
            self.used[j] = false;
            if self.out_of_budget {
                break;
            }
            // Classes containing j were all explored from here.
            excluded.push(j);
        }
        excluded.truncate(mark);
        false
    }

    fn components_divisible(&self) -> bool {
        let mut seen = vec![false; self.pieces.len()];
        for start in 0..self.pieces.len() {
            if self.used[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut total = 0;
            while let Some(i) = stack.pop() {
                total += self.pieces[i].size();
                for &j in &self.neighbours[i] {
                    if !self.used[j] && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
            if total % self.class_size != 0 {
                return false;
            }
        }
        true
    }
}

/// Euler circuit (as a vertex sequence) of the union of `pieces[class]`.
pub(crate) fn class_circuit(pieces: &[Piece], class: &[usize], vertex_count: usize) -> Option<Vec<usize>> {
    let mut g = Multigraph::new(vertex_count);
    for &i in class {
        for &(u, v) in &pieces[i].edges {
            g.add_edge(u, v);
        }
    }
    let start = pieces[class[0]].edges[0].0;
    g.euler_circuit(start)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(vs: &[usize]) -> Piece {
        Piece { edges: (0..vs.len()).map(|i| (vs[i], vs[(i + 1) % vs.len()])).collect() }
    }

    #[test]
    fn packs_loops_into_connected_pairs() {
        // Loops at 0..4 plus 2-cycles {0,1}, {2,3}: each class of size 4 is
        // one 2-cycle with both of its loops.
        let pieces = vec![cycle(&[0]), cycle(&[1]), cycle(&[2]), cycle(&[3]), cycle(&[0, 1]), cycle(&[2, 3])];
        let PackOutcome::Packed(classes) = pack_connected(&pieces, 4, 4, 1000) else {
            panic!("expected a packing");
        };
        assert_eq!(classes.len(), 2);
        for c in &classes {
            assert_eq!(c.iter().map(|&i| pieces[i].size()).sum::<usize>(), 4);
            assert!(class_circuit(&pieces, c, 4).is_some());
        }
    }

    #[test]
    fn detects_infeasible() {
        let pieces = vec![cycle(&[0]), cycle(&[1])];
        assert_eq!(pack_connected(&pieces, 2, 2, 1000), PackOutcome::Infeasible);
        assert_eq!(pack_connected(&pieces, 2, 3, 1000), PackOutcome::Infeasible);
    }
}
