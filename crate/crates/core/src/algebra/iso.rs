//! Isomorphism testing for finite bikei.
//!
//! Elements are first coloured by isomorphism-invariant data and the
//! colouring is refined until stable. The search then assigns images class
//! by class, closing the partial map under both operations after every
//! choice so that a table generated by a few elements is matched after a
//! few branch points.

use super::{BikeiTable, Op};
use crate::Element;

/// Isomorphism-invariant fingerprint of a table.
///
/// Equal profiles are necessary for isomorphism, not sufficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub size: usize,
    /// Sorted multiset of refined element colours.
    pub colors: Vec<u64>,
}

/// A bijection `x ↦ map[x - 1]` between the elements of two tables that
/// commutes with both operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub map: Vec<Element>,
}

impl Isomorphism {
    pub fn identity(n: usize) -> Self {
        Isomorphism {
            map: (1..=n as Element).collect(),
        }
    }

    pub fn image(&self, x: Element) -> Element {
        self.map[x as usize - 1]
    }

    pub fn inverse(&self) -> Isomorphism {
        let mut map = vec![0; self.map.len()];
        for (i, &y) in self.map.iter().enumerate() {
            map[y as usize - 1] = i as Element + 1;
        }
        Isomorphism { map }
    }

    /// Checks bijectivity and both homomorphism equations exhaustively.
    pub fn verify(&self, from: &BikeiTable, to: &BikeiTable) -> bool {
        let n = from.size();
        if to.size() != n || self.map.len() != n {
            return false;
        }
        let mut seen = vec![false; n + 1];
        for &y in &self.map {
            if y == 0 || y as usize > n || std::mem::replace(&mut seen[y as usize], true) {
                return false;
            }
        }
        from.elements().all(|a| {
            from.elements().all(|b| {
                Op::BOTH.iter().all(|&op| {
                    self.image(from.apply(op, a, b)) == to.apply(op, self.image(a), self.image(b))
                })
            })
        })
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn write(&mut self, v: u64) {
        for byte in v.to_le_bytes() {
            self.0 ^= byte as u64;
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

/// Sorted cycle lengths of `f` when it is a permutation of `1..=n`;
/// otherwise the sorted forward-orbit sizes of every element, tagged so
/// the two cases never collide.
fn cycle_type(n: usize, f: impl Fn(Element) -> Element) -> Vec<u64> {
    let mut hit = vec![false; n + 1];
    for y in 1..=n as Element {
        hit[f(y) as usize] = true;
    }
    if hit[1..].iter().any(|&h| !h) {
        let mut sizes: Vec<u64> = (1..=n as Element).map(|y| orbit_size(y, &f)).collect();
        sizes.sort_unstable();
        sizes.push(0);
        return sizes;
    }
    let mut seen = vec![false; n + 1];
    let mut lengths = Vec::new();
    for start in 1..=n as Element {
        if seen[start as usize] {
            continue;
        }
        let mut len = 0;
        let mut y = start;
        while !seen[y as usize] {
            seen[y as usize] = true;
            len += 1;
            y = f(y);
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths
}

fn orbit_size(x: Element, f: &impl Fn(Element) -> Element) -> u64 {
    let mut seen = vec![x];
    let mut y = f(x);
    while !seen.contains(&y) {
        seen.push(y);
        y = f(y);
    }
    seen.len() as u64
}

fn initial_colors(t: &BikeiTable) -> Vec<u64> {
    let n = t.size();
    t.elements()
        .map(|x| {
            let mut h = Fnv::new();
            h.write(orbit_size(x, &|y| t.under(y, y)));
            h.write((t.under(x, x) == x) as u64);
            for op in Op::BOTH {
                for len in cycle_type(n, |y| t.apply(op, y, x)) {
                    h.write(len);
                }
                h.write(u64::MAX);
                let mut images: Vec<Element> = t.elements().map(|y| t.apply(op, x, y)).collect();
                images.sort_unstable();
                images.dedup();
                h.write(images.len() as u64);
                h.write(t.elements().filter(|&y| t.apply(op, x, y) == x).count() as u64);
            }
            h.finish()
        })
        .collect()
}

fn distinct(colors: &[u64]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Refines colours until the number of classes stops growing.
fn refined_colors(t: &BikeiTable) -> Vec<u64> {
    let mut colors = initial_colors(t);
    let mut classes = distinct(&colors);
    loop {
        let next: Vec<u64> = t
            .elements()
            .map(|x| {
                let c = |e: Element| colors[e as usize - 1];
                let mut neighbourhood: Vec<[u64; 5]> = t
                    .elements()
                    .map(|y| {
                        [
                            c(y),
                            c(t.under(x, y)),
                            c(t.over(x, y)),
                            c(t.under(y, x)),
                            c(t.over(y, x)),
                        ]
                    })
                    .collect();
                neighbourhood.sort_unstable();
                let mut h = Fnv::new();
                h.write(c(x));
                for row in neighbourhood {
                    for v in row {
                        h.write(v);
                    }
                }
                h.finish()
            })
            .collect();
        let next_classes = distinct(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

/// Isomorphism-invariant fingerprint used to prune and bucket searches.
pub fn invariant_profile(t: &BikeiTable) -> Profile {
    let mut colors = refined_colors(t);
    colors.sort_unstable();
    Profile {
        size: t.size(),
        colors,
    }
}

struct Search<'a> {
    a: &'a BikeiTable,
    b: &'a BikeiTable,
    color_a: Vec<u64>,
    color_b: Vec<u64>,
    fwd: Vec<Element>,
    back: Vec<Element>,
    assigned: Vec<Element>,
}

impl Search<'_> {
    /// Assigns `x ↦ y` and everything it forces; returns false on conflict.
    /// Assignments made are left on `assigned` for the caller to undo.
    fn assign(&mut self, x: Element, y: Element) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            let (xi, yi) = (x as usize, y as usize);
            if self.fwd[xi] != 0 {
                if self.fwd[xi] != y {
                    return false;
                }
                continue;
            }
            if self.back[yi] != 0 || self.color_a[xi - 1] != self.color_b[yi - 1] {
                return false;
            }
            self.fwd[xi] = y;
            self.back[yi] = x;
            self.assigned.push(x);
            for i in 0..self.assigned.len() {
                let u = self.assigned[i];
                let v = self.fwd[u as usize];
                for op in Op::BOTH {
                    queue.push((self.a.apply(op, x, u), self.b.apply(op, y, v)));
                    queue.push((self.a.apply(op, u, x), self.b.apply(op, v, y)));
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().unwrap();
            let y = std::mem::replace(&mut self.fwd[x as usize], 0);
            self.back[y as usize] = 0;
        }
    }

    fn solve(&mut self) -> bool {
        let n = self.a.size();
        if self.assigned.len() == n {
            return true;
        }
        // branch on the unassigned element whose colour class is rarest
        let mut best: Option<(usize, Element)> = None;
        for x in self.a.elements() {
            if self.fwd[x as usize] != 0 {
                continue;
            }
            let c = self.color_a[x as usize - 1];
            let count = self
                .b
                .elements()
                .filter(|&y| self.back[y as usize] == 0 && self.color_b[y as usize - 1] == c)
                .count();
            if best.is_none_or(|(k, _)| count < k) {
                best = Some((count, x));
            }
        }
        let Some((_, x)) = best else { return false };
        let c = self.color_a[x as usize - 1];
        let candidates: Vec<Element> = self
            .b
            .elements()
            .filter(|&y| self.back[y as usize] == 0 && self.color_b[y as usize - 1] == c)
            .collect();
        for y in candidates {
            let mark = self.assigned.len();
            if self.assign(x, y) && self.solve() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Finds an isomorphism from `a` to `b`, if one exists.
pub fn is_isomorphic(a: &BikeiTable, b: &BikeiTable) -> Option<Isomorphism> {
    let n = a.size();
    if b.size() != n {
        return None;
    }
    let color_a = refined_colors(a);
    let color_b = refined_colors(b);
    let (mut sa, mut sb) = (color_a.clone(), color_b.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut search = Search {
        a,
        b,
        color_a,
        color_b,
        fwd: vec![0; n + 1],
        back: vec![0; n + 1],
        assigned: Vec::with_capacity(n),
    };
    if !search.solve() {
        return None;
    }
    let iso = Isomorphism {
        map: search.fwd[1..].to_vec(),
    };
    debug_assert!(iso.verify(a, b));
    Some(iso)
}
