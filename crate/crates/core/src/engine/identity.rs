//! The bikei and medial identities as term data, used by the completion
//! engine to derive new entries.
//!
//! Every identity is `lhs = rhs` over at most four variables with terms of
//! depth at most two. An instantiation *acts* when all of its non-root cells
//! are known and at least one side is known:
//!
//! - both sides known and different: the two results are equal generators;
//! - one side known, the other an unknown cell with known arguments: that
//!   cell is forced to the known value.
//!
//! For incremental deduction each identity is compiled into one [`Plan`] per
//! operation node. A plan enumerates exactly the instantiations in which a
//! given known cell occupies that node.

use crate::algebra::{AxiomId, Op};
use crate::presentation::PresentationMatrix;
use crate::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Node {
    Var(u8),
    Apply(Op, u8, u8),
}

#[derive(Debug, Clone)]
pub(crate) struct Identity {
    #[allow(dead_code)]
    pub axiom: AxiomId,
    pub vars: usize,
    pub nodes: Vec<Node>,
    pub lhs: u8,
    pub rhs: u8,
    pub plans: Vec<Plan>,
}

/// Source of a value bound while solving a trigger node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Src {
    /// First argument of the trigger cell.
    Row,
    /// Second argument of the trigger cell.
    Col,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Step {
    /// Binds a variable to a trigger argument, or checks it if bound.
    Bind { var: u8, src: Src },
    /// Ranges a variable over every generator.
    Loop { var: u8 },
    /// Ranges a variable over the generators `v` for which operation node
    /// `node`, which is `other op v` (or `v op other` when `row` is set), is
    /// known.
    Scan {
        var: u8,
        node: u8,
        other: u8,
        row: bool,
    },
    /// Solves `var op arg = src` through the involution `(v op a) op a = v`.
    Preimage { var: u8, op: Op, src: Src, arg: u8 },
    /// Requires a non-root node to be known.
    Known { node: u8 },
}

#[derive(Debug, Clone)]
pub(crate) struct Plan {
    pub op: Op,
    pub steps: Vec<Step>,
}

/// Outcome of evaluating one instantiation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Action {
    None,
    Fill {
        op: Op,
        x: Element,
        y: Element,
        value: Element,
    },
    Merge(Element, Element),
}

enum Term {
    V(u8),
    A(Op, Box<Term>, Box<Term>),
}

fn v(i: u8) -> Term {
    Term::V(i)
}
fn u(a: Term, b: Term) -> Term {
    Term::A(Op::Under, Box::new(a), Box::new(b))
}
fn o(a: Term, b: Term) -> Term {
    Term::A(Op::Over, Box::new(a), Box::new(b))
}

fn push(nodes: &mut Vec<Node>, t: &Term) -> u8 {
    let node = match t {
        Term::V(i) => Node::Var(*i),
        Term::A(op, l, r) => {
            let l = push(nodes, l);
            let r = push(nodes, r);
            Node::Apply(*op, l, r)
        }
    };
    nodes.push(node);
    (nodes.len() - 1) as u8
}

impl Identity {
    fn new(axiom: AxiomId, lhs: Term, rhs: Term) -> Identity {
        let mut nodes = Vec::new();
        let lhs = push(&mut nodes, &lhs);
        let rhs = push(&mut nodes, &rhs);
        assert!(nodes.len() <= MAX_NODES);
        let mut id = Identity {
            axiom,
            vars: axiom.arity(),
            nodes,
            lhs,
            rhs,
            plans: Vec::new(),
        };
        id.plans = (0..id.nodes.len() as u8)
            .filter_map(|p| match id.nodes[p as usize] {
                Node::Apply(op, _, _) => Some(Plan {
                    op,
                    steps: id.compile(p),
                }),
                Node::Var(_) => None,
            })
            .collect();
        id
    }

    fn is_root(&self, node: u8) -> bool {
        node == self.lhs || node == self.rhs
    }

    fn vars_of(&self, node: u8, out: &mut Vec<u8>) {
        match self.nodes[node as usize] {
            Node::Var(i) => {
                if !out.contains(&i) {
                    out.push(i)
                }
            }
            Node::Apply(_, l, r) => {
                self.vars_of(l, out);
                self.vars_of(r, out);
            }
        }
    }

    fn compile(&self, trigger: u8) -> Vec<Step> {
        let mut steps = Vec::new();
        let mut bound = vec![false; self.vars];
        let mut checked = vec![false; self.nodes.len()];
        let Node::Apply(_, l, r) = self.nodes[trigger as usize] else {
            unreachable!("triggers are operation nodes")
        };
        for (child, src) in [(l, Src::Row), (r, Src::Col)] {
            match self.nodes[child as usize] {
                Node::Var(var) => {
                    steps.push(Step::Bind { var, src });
                    bound[var as usize] = true;
                }
                Node::Apply(op, cl, cr) => {
                    let (Node::Var(var), Node::Var(arg)) =
                        (self.nodes[cl as usize], self.nodes[cr as usize])
                    else {
                        panic!("identity terms are at most two levels deep");
                    };
                    if !bound[arg as usize] {
                        steps.push(Step::Loop { var: arg });
                        bound[arg as usize] = true;
                        self.push_known(&mut steps, &bound, &mut checked);
                    }
                    steps.push(Step::Preimage { var, op, src, arg });
                    bound[var as usize] = true;
                }
            }
            self.push_known(&mut steps, &bound, &mut checked);
        }
        for var in 0..self.vars as u8 {
            if !bound[var as usize] {
                steps.push(Step::Loop { var });
                bound[var as usize] = true;
                self.push_known(&mut steps, &bound, &mut checked);
            }
        }
        self.fuse_scans(steps)
    }

    /// Turns a loop followed by a check on a cell it indexes into a scan of
    /// that row or column.
    fn fuse_scans(&self, mut steps: Vec<Step>) -> Vec<Step> {
        let mut i = 0;
        while i < steps.len() {
            if let Step::Loop { var } = steps[i] {
                let fused = steps[i + 1..]
                    .iter()
                    .take_while(|s| matches!(s, Step::Known { .. }))
                    .enumerate()
                    .find_map(|(k, s)| {
                        let Step::Known { node } = *s else {
                            return None;
                        };
                        let Node::Apply(_, l, r) = self.nodes[node as usize] else {
                            return None;
                        };
                        match (self.nodes[l as usize], self.nodes[r as usize]) {
                            (Node::Var(a), Node::Var(b)) if a == var && b != var => Some((
                                k,
                                Step::Scan {
                                    var,
                                    node,
                                    other: b,
                                    row: true,
                                },
                            )),
                            (Node::Var(a), Node::Var(b)) if b == var && a != var => Some((
                                k,
                                Step::Scan {
                                    var,
                                    node,
                                    other: a,
                                    row: false,
                                },
                            )),
                            _ => None,
                        }
                    });
                if let Some((k, scan)) = fused {
                    steps[i] = scan;
                    steps.remove(i + 1 + k);
                }
            }
            i += 1;
        }
        steps
    }

    fn push_known(&self, steps: &mut Vec<Step>, bound: &[bool], checked: &mut [bool]) {
        for node in 0..self.nodes.len() as u8 {
            if checked[node as usize]
                || self.is_root(node)
                || matches!(self.nodes[node as usize], Node::Var(_))
            {
                continue;
            }
            let mut vars = Vec::new();
            self.vars_of(node, &mut vars);
            if vars.iter().all(|&v| bound[v as usize]) {
                checked[node as usize] = true;
                steps.push(Step::Known { node });
            }
        }
    }

    /// Value of `node` under `vars`, or 0 if a cell on the way is unknown.
    #[inline]
    pub fn eval(
        &self,
        node: u8,
        vars: &[Element; 4],
        get: &impl Fn(Op, Element, Element) -> Element,
    ) -> Element {
        match self.nodes[node as usize] {
            Node::Var(i) => vars[i as usize],
            Node::Apply(op, l, r) => {
                let a = self.eval(l, vars, get);
                if a == 0 {
                    return 0;
                }
                let b = self.eval(r, vars, get);
                if b == 0 {
                    return 0;
                }
                get(op, a, b)
            }
        }
    }

    /// Applies the deduction rule to one fully bound instantiation.
    #[inline]
    pub fn act(
        &self,
        vars: &[Element; 4],
        get: &impl Fn(Op, Element, Element) -> Element,
    ) -> Action {
        let left = self.eval(self.lhs, vars, get);
        let right = self.eval(self.rhs, vars, get);
        match (left, right) {
            (0, 0) => Action::None,
            (0, value) => self.forced(self.lhs, value, vars, get),
            (value, 0) => self.forced(self.rhs, value, vars, get),
            (l, r) if l != r => Action::Merge(l.min(r), l.max(r)),
            _ => Action::None,
        }
    }

    fn forced(
        &self,
        root: u8,
        value: Element,
        vars: &[Element; 4],
        get: &impl Fn(Op, Element, Element) -> Element,
    ) -> Action {
        let Node::Apply(op, l, r) = self.nodes[root as usize] else {
            return Action::None;
        };
        let x = self.eval(l, vars, get);
        let y = self.eval(r, vars, get);
        if x == 0 || y == 0 {
            return Action::None;
        }
        Action::Fill { op, x, y, value }
    }

    /// Calls `visit` with every instantiation in which the known cell
    /// `(op, row, col)` sits at the plan's trigger node, together with the
    /// action it yields. Instantiations with an unknown non-root cell are
    /// skipped.
    pub fn for_each_triggered(
        &self,
        plan: &Plan,
        row: Element,
        col: Element,
        m: &PresentationMatrix,
        visit: &mut impl FnMut(&[Element; 4], Action),
    ) {
        let get = |op, a, b| m.get(op, a, b);
        self.for_each_triggered_by(plan, row, col, m.size() as Element, &get, visit);
    }

    /// As [`Identity::for_each_triggered`] over `n` generators whose cells
    /// are read through `get`.
    pub fn for_each_triggered_by<G, V>(
        &self,
        plan: &Plan,
        row: Element,
        col: Element,
        n: Element,
        get: &G,
        visit: &mut V,
    ) where
        G: Fn(Op, Element, Element) -> Element,
        V: FnMut(&[Element; 4], Action),
    {
        let mut cursor = Cursor {
            id: self,
            row,
            col,
            n,
            get,
            visit,
            vars: [0; 4],
            vals: [0; MAX_NODES],
        };
        cursor.run(&plan.steps);
    }
}

const MAX_NODES: usize = 16;

/// Backtracking state for one plan. `vals` caches the value of every
/// operation node checked so far.
struct Cursor<'a, G, V> {
    id: &'a Identity,
    row: Element,
    col: Element,
    n: Element,
    get: &'a G,
    visit: &'a mut V,
    vars: [Element; 4],
    vals: [Element; MAX_NODES],
}

impl<G, V> Cursor<'_, G, V>
where
    G: Fn(Op, Element, Element) -> Element,
    V: FnMut(&[Element; 4], Action),
{
    #[inline]
    fn value(&self, node: u8) -> Element {
        match self.id.nodes[node as usize] {
            Node::Var(i) => self.vars[i as usize],
            Node::Apply(..) => self.vals[node as usize],
        }
    }

    #[inline]
    fn side(&self, root: u8) -> Element {
        match self.id.nodes[root as usize] {
            Node::Var(i) => self.vars[i as usize],
            Node::Apply(op, l, r) => (self.get)(op, self.value(l), self.value(r)),
        }
    }

    fn forced(&self, root: u8, value: Element) -> Action {
        match self.id.nodes[root as usize] {
            Node::Var(_) => Action::None,
            Node::Apply(op, l, r) => Action::Fill {
                op,
                x: self.value(l),
                y: self.value(r),
                value,
            },
        }
    }

    fn leaf(&mut self) {
        let (lhs, rhs) = (self.id.lhs, self.id.rhs);
        let action = match (self.side(lhs), self.side(rhs)) {
            (0, 0) => Action::None,
            (0, value) => self.forced(lhs, value),
            (value, 0) => self.forced(rhs, value),
            (l, r) if l != r => Action::Merge(l.min(r), l.max(r)),
            _ => Action::None,
        };
        (self.visit)(&self.vars, action);
    }

    fn bind(&mut self, var: u8, value: Element, rest: &[Step]) {
        let slot = self.vars[var as usize];
        if slot == 0 {
            self.vars[var as usize] = value;
            self.run(rest);
            self.vars[var as usize] = 0;
        } else if slot == value {
            self.run(rest);
        }
    }

    fn run(&mut self, steps: &[Step]) {
        let Some((&step, rest)) = steps.split_first() else {
            self.leaf();
            return;
        };
        let src = |s: Src| if s == Src::Row { self.row } else { self.col };
        match step {
            Step::Bind { var, src: s } => {
                let value = src(s);
                self.bind(var, value, rest);
            }
            Step::Loop { var } => {
                for value in 1..=self.n {
                    self.vars[var as usize] = value;
                    self.run(rest);
                }
                self.vars[var as usize] = 0;
            }
            Step::Scan {
                var,
                node,
                other,
                row,
            } => {
                let Node::Apply(op, ..) = self.id.nodes[node as usize] else {
                    unreachable!("scans read operation nodes")
                };
                let other = self.vars[other as usize];
                for value in 1..=self.n {
                    let cell = if row {
                        (self.get)(op, value, other)
                    } else {
                        (self.get)(op, other, value)
                    };
                    if cell != 0 {
                        self.vars[var as usize] = value;
                        self.vals[node as usize] = cell;
                        self.run(rest);
                    }
                }
                self.vars[var as usize] = 0;
            }
            Step::Preimage {
                var,
                op,
                src: s,
                arg,
            } => {
                let value = (self.get)(op, src(s), self.vars[arg as usize]);
                if value != 0 {
                    self.bind(var, value, rest);
                }
            }
            Step::Known { node } => {
                let Node::Apply(op, l, r) = self.id.nodes[node as usize] else {
                    unreachable!("only operation nodes are checked")
                };
                let value = (self.get)(op, self.value(l), self.value(r));
                if value != 0 {
                    self.vals[node as usize] = value;
                    self.run(rest);
                }
            }
        }
    }
}

/// The identities in checking order: (i), (ii.i)–(ii.iv), (iii.i)–(iii.iii),
/// then (m.i)–(m.iii) when `medial` is set.
pub(crate) fn identities(medial: bool) -> Vec<Identity> {
    let (x, y, z, w) = (0, 1, 2, 3);
    let mut ids = vec![
        Identity::new(AxiomId::I, u(v(x), v(x)), o(v(x), v(x))),
        Identity::new(AxiomId::IiI, u(v(x), o(v(y), v(x))), u(v(x), v(y))),
        Identity::new(AxiomId::IiIi, o(v(x), u(v(y), v(x))), o(v(x), v(y))),
        Identity::new(AxiomId::IiIii, o(o(v(x), v(y)), v(y)), v(x)),
        Identity::new(AxiomId::IiIv, u(u(v(x), v(y)), v(y)), v(x)),
        Identity::new(
            AxiomId::IiiI,
            o(o(v(x), v(y)), u(v(z), v(y))),
            o(o(v(x), v(z)), o(v(y), v(z))),
        ),
        Identity::new(
            AxiomId::IiiIi,
            u(o(v(x), v(y)), o(v(z), v(y))),
            o(u(v(x), v(z)), u(v(y), v(z))),
        ),
        Identity::new(
            AxiomId::IiiIii,
            u(u(v(x), v(y)), o(v(z), v(y))),
            u(u(v(x), v(z)), u(v(y), v(z))),
        ),
    ];
    if medial {
        ids.extend([
            Identity::new(
                AxiomId::MI,
                u(u(v(x), v(y)), u(v(z), v(w))),
                u(u(v(x), v(z)), u(v(y), v(w))),
            ),
            Identity::new(
                AxiomId::MIi,
                o(u(v(x), v(y)), u(v(z), v(w))),
                u(o(v(x), v(z)), o(v(y), v(w))),
            ),
            Identity::new(
                AxiomId::MIii,
                o(o(v(x), v(y)), o(v(z), v(w))),
                o(o(v(x), v(z)), o(v(y), v(w))),
            ),
        ]);
    }
    ids
}
