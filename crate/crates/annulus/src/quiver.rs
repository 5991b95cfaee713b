//! A finite quiver with typed arrows and a partial translation.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    Preprojective,
    Preinjective,
    TubeOuter,
    TubeInner,
    Transjective,
}

impl Component {
    pub fn short(self) -> &'static str {
        match self {
            Component::Preprojective => "P",
            Component::Preinjective => "I",
            Component::TubeOuter => "Tg",
            Component::TubeInner => "Th",
            Component::Transjective => "T",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ArrowKind {
    Elementary,
    Long,
    Connecting,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow<L> {
    pub src: usize,
    pub dst: usize,
    pub kind: ArrowKind,
    pub label: L,
}

#[derive(Debug, Clone)]
pub struct Quiver<V, L> {
    vertices: Vec<V>,
    components: Vec<Component>,
    index: HashMap<V, usize>,
    arrows: Vec<Arrow<L>>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    tau: Vec<Option<usize>>,
}

impl<V, L> Default for Quiver<V, L> {
    fn default() -> Self {
        Quiver {
            vertices: Vec::new(),
            components: Vec::new(),
            index: HashMap::new(),
            arrows: Vec::new(),
            out_adj: Vec::new(),
            in_adj: Vec::new(),
            tau: Vec::new(),
        }
    }
}

impl<V: Clone + Eq + Hash, L> Quiver<V, L> {
    pub fn new() -> Self {
        Quiver::default()
    }

    /// Returns the id of `v`, inserting it if absent.
    pub fn add_vertex(&mut self, v: V, c: Component) -> usize {
        if let Some(&id) = self.index.get(&v) {
            return id;
        }
        let id = self.vertices.len();
        self.index.insert(v.clone(), id);
        self.vertices.push(v);
        self.components.push(c);
        self.out_adj.push(Vec::new());
        self.in_adj.push(Vec::new());
        self.tau.push(None);
        id
    }

    pub fn add_arrow(&mut self, src: usize, dst: usize, kind: ArrowKind, label: L) -> usize {
        let id = self.arrows.len();
        self.arrows.push(Arrow { src, dst, kind, label });
        self.out_adj[src].push(id);
        self.in_adj[dst].push(id);
        id
    }

    pub fn set_tau(&mut self, v: usize, tv: usize) {
        self.tau[v] = Some(tv);
    }

    pub fn id(&self, v: &V) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &V) -> bool {
        self.index.contains_key(v)
    }
}

impl<V: Clone + Eq + Hash, L: Clone> Quiver<V, L> {
    /// Copy of the quiver keeping only arrows for which `keep(id, arrow)` holds.
    pub fn filter_arrows(&self, keep: impl Fn(usize, &Arrow<L>) -> bool) -> Self {
        let mut q = Quiver::new();
        for (v, c) in self.vertices.iter().zip(&self.components) {
            q.add_vertex(v.clone(), *c);
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if keep(i, a) {
                q.add_arrow(a.src, a.dst, a.kind, a.label.clone());
            }
        }
        q.tau = self.tau.clone();
        q
    }
}

impl<V, L> Quiver<V, L> {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, id: usize) -> &V {
        &self.vertices[id]
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn component(&self, id: usize) -> Component {
        self.components[id]
    }

    pub fn arrows(&self) -> &[Arrow<L>] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> &Arrow<L> {
        &self.arrows[id]
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = &Arrow<L>> {
        self.out_adj[v].iter().map(move |&a| &self.arrows[a])
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = &Arrow<L>> {
        self.in_adj[v].iter().map(move |&a| &self.arrows[a])
    }

    pub fn tau(&self, v: usize) -> Option<usize> {
        self.tau[v]
    }

    pub fn tau_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.tau.iter().enumerate().filter_map(|(v, t)| t.map(|t| (v, t)))
    }

    pub fn count_arrows(&self, kind: ArrowKind) -> usize {
        self.arrows.iter().filter(|a| a.kind == kind).count()
    }

    pub fn count_component(&self, c: Component) -> usize {
        self.components.iter().filter(|&&x| x == c).count()
    }

    /// Elementary successors of `v`, as vertex ids.
    pub fn successors(&self, v: usize, kind: ArrowKind) -> Vec<usize> {
        self.out_arrows(v).filter(|a| a.kind == kind).map(|a| a.dst).collect()
    }

    pub fn predecessors(&self, v: usize, kind: ArrowKind) -> Vec<usize> {
        self.in_arrows(v).filter(|a| a.kind == kind).map(|a| a.src).collect()
    }

    /// Number of weakly connected components using only arrows passing `keep`.
    pub fn connected_components(&self, keep: impl Fn(&Arrow<L>) -> bool) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertices.len();
        for a in self.arrows.iter().filter(|a| keep(a)) {
            let (ra, rb) = (find(&mut parent, a.src), find(&mut parent, a.dst));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_query() {
        let mut q: Quiver<&str, ()> = Quiver::new();
        let a = q.add_vertex("a", Component::Preprojective);
        let b = q.add_vertex("b", Component::Preprojective);
        let c = q.add_vertex("c", Component::TubeOuter);
        assert_eq!(q.add_vertex("a", Component::Preprojective), a);
        q.add_arrow(a, b, ArrowKind::Elementary, ());
        q.add_arrow(b, c, ArrowKind::Long, ());
        q.set_tau(b, a);
        assert_eq!(q.successors(a, ArrowKind::Elementary), vec![b]);
        assert_eq!(q.predecessors(c, ArrowKind::Long), vec![b]);
        assert_eq!(q.connected_components(|x| x.kind == ArrowKind::Elementary), 2);
        assert_eq!(q.connected_components(|_| true), 1);
        assert_eq!(q.tau_pairs().collect::<Vec<_>>(), vec![(b, a)]);
    }
}
