use crate::Element;

/// Union-find over generator indices that remembers which merges are
/// waiting to be applied to the matrix. The class representative is always
/// the smallest index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceTracker {
    parent: Vec<Element>,
    pending: Vec<(Element, Element)>,
}

impl EquivalenceTracker {
    pub fn new(n: usize) -> Self {
        EquivalenceTracker {
            parent: (0..=n as Element).collect(),
            pending: Vec::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn find(&mut self, x: Element) -> Element {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            cur = std::mem::replace(&mut self.parent[cur as usize], root);
        }
        root
    }

    /// Records `a = b`. Returns false if they were already known equal.
    pub fn merge(&mut self, a: Element, b: Element) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (keep, drop) = (ra.min(rb), ra.max(rb));
        self.parent[drop as usize] = keep;
        self.pending.push((a.min(b), a.max(b)));
        true
    }

    pub fn has_pending(&self) -> bool {
        !self.pending.is_empty()
    }

    pub fn pending(&self) -> &[(Element, Element)] {
        &self.pending
    }

    pub(crate) fn take_pending(&mut self) -> Vec<(Element, Element)> {
        std::mem::take(&mut self.pending)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_is_idempotent_and_merge_joins() {
        let mut t = EquivalenceTracker::new(5);
        assert!(t.merge(4, 2));
        assert!(t.merge(5, 4));
        assert!(!t.merge(2, 5));
        assert_eq!(t.find(5), 2);
        let root = t.find(5);
        assert_eq!(t.find(root), 2);
        assert_eq!(t.find(3), 3);
        assert_eq!(t.pending(), &[(2, 4), (4, 5)]);
        assert_eq!(t.take_pending().len(), 2);
        assert!(!t.has_pending());
    }
}
