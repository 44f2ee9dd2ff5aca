use std::fmt;
use std::str::FromStr;

use super::BikeiTable;
use crate::Element;

/// Labels of the bikei and medial identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    /// `x ▁ x = x ▔ x`
    I,
    /// `x ▁ (y ▔ x) = x ▁ y`
    IiI,
    /// `x ▔ (y ▁ x) = x ▔ y`
    IiIi,
    /// `(x ▔ y) ▔ y = x`
    IiIii,
    /// `(x ▁ y) ▁ y = x`
    IiIv,
    /// `(x ▔ y) ▔ (z ▁ y) = (x ▔ z) ▔ (y ▔ z)`
    IiiI,
    /// `(x ▔ y) ▁ (z ▔ y) = (x ▁ z) ▔ (y ▁ z)`
    IiiIi,
    /// `(x ▁ y) ▁ (z ▔ y) = (x ▁ z) ▁ (y ▁ z)`
    IiiIii,
    /// `(x ▁ y) ▁ (z ▁ w) = (x ▁ z) ▁ (y ▁ w)`
    MI,
    /// `(x ▁ y) ▔ (z ▁ w) = (x ▔ z) ▁ (y ▔ w)`
    MIi,
    /// `(x ▔ y) ▔ (z ▔ w) = (x ▔ z) ▔ (y ▔ w)`
    MIii,
}

impl AxiomId {
    pub const BIKEI: [AxiomId; 8] = [
        AxiomId::I,
        AxiomId::IiI,
        AxiomId::IiIi,
        AxiomId::IiIii,
        AxiomId::IiIv,
        AxiomId::IiiI,
        AxiomId::IiiIi,
        AxiomId::IiiIii,
    ];
    pub const MEDIAL: [AxiomId; 3] = [AxiomId::MI, AxiomId::MIi, AxiomId::MIii];

    pub fn label(self) -> &'static str {
        match self {
            AxiomId::I => "i",
            AxiomId::IiI => "ii.i",
            AxiomId::IiIi => "ii.ii",
            AxiomId::IiIii => "ii.iii",
            AxiomId::IiIv => "ii.iv",
            AxiomId::IiiI => "iii.i",
            AxiomId::IiiIi => "iii.ii",
            AxiomId::IiiIii => "iii.iii",
            AxiomId::MI => "m.i",
            AxiomId::MIi => "m.ii",
            AxiomId::MIii => "m.iii",
        }
    }

    /// Number of variables the identity quantifies over.
    pub fn arity(self) -> usize {
        match self {
            AxiomId::I => 1,
            AxiomId::IiI | AxiomId::IiIi | AxiomId::IiIii | AxiomId::IiIv => 2,
            AxiomId::IiiI | AxiomId::IiiIi | AxiomId::IiiIii => 3,
            AxiomId::MI | AxiomId::MIi | AxiomId::MIii => 4,
        }
    }

    /// Evaluates both sides of the identity at `vars` (length = arity).
    pub fn evaluate(self, t: &BikeiTable, vars: &[Element]) -> (Element, Element) {
        let u = |a, b| t.under(a, b);
        let o = |a, b| t.over(a, b);
        match (self, vars) {
            (AxiomId::I, &[x]) => (u(x, x), o(x, x)),
            (AxiomId::IiI, &[x, y]) => (u(x, o(y, x)), u(x, y)),
            (AxiomId::IiIi, &[x, y]) => (o(x, u(y, x)), o(x, y)),
            (AxiomId::IiIii, &[x, y]) => (o(o(x, y), y), x),
            (AxiomId::IiIv, &[x, y]) => (u(u(x, y), y), x),
            (AxiomId::IiiI, &[x, y, z]) => (o(o(x, y), u(z, y)), o(o(x, z), o(y, z))),
            (AxiomId::IiiIi, &[x, y, z]) => (u(o(x, y), o(z, y)), o(u(x, z), u(y, z))),
            (AxiomId::IiiIii, &[x, y, z]) => (u(u(x, y), o(z, y)), u(u(x, z), u(y, z))),
            (AxiomId::MI, &[x, y, z, w]) => (u(u(x, y), u(z, w)), u(u(x, z), u(y, w))),
            (AxiomId::MIi, &[x, y, z, w]) => (o(u(x, y), u(z, w)), u(o(x, z), o(y, w))),
            (AxiomId::MIii, &[x, y, z, w]) => (o(o(x, y), o(z, w)), o(o(x, z), o(y, w))),
            _ => panic!(
                "axiom {} takes {} variables, got {}",
                self,
                self.arity(),
                vars.len()
            ),
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for AxiomId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomId::BIKEI
            .iter()
            .chain(&AxiomId::MEDIAL)
            .copied()
            .find(|a| a.label() == s)
            .ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

/// A failed instance of an identity: evaluating `axiom` at `witness` gives
/// `lhs != rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxiomViolation {
    pub axiom: AxiomId,
    pub witness: Vec<Element>,
    pub lhs: Element,
    pub rhs: Element,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["x", "y", "z", "w"];
        write!(f, "({})", self.axiom)?;
        for (name, v) in NAMES.iter().zip(&self.witness) {
            write!(f, " {name}={v}")?;
        }
        write!(f, ": {} != {}", self.lhs, self.rhs)
    }
}

fn check(t: &BikeiTable, axioms: &[AxiomId]) -> Vec<AxiomViolation> {
    let n = t.size() as Element;
    let mut out = Vec::new();
    for &axiom in axioms {
        let arity = axiom.arity();
        let mut vars = vec![1; arity];
        loop {
            let (lhs, rhs) = axiom.evaluate(t, &vars);
            if lhs != rhs {
                out.push(AxiomViolation {
                    axiom,
                    witness: vars.clone(),
                    lhs,
                    rhs,
                });
            }
            // odometer, last variable fastest
            let mut i = arity;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if vars[i] < n {
                    vars[i] += 1;
                    break;
                }
                vars[i] = 1;
            }
            if vars.iter().all(|&v| v == 1) {
                break;
            }
        }
    }
    out
}

/// All violations of axioms (i), (ii.i)–(ii.iv) and (iii.i)–(iii.iii),
/// in axiom order and then lexicographic witness order.
pub fn check_bikei_axioms(t: &BikeiTable) -> Vec<AxiomViolation> {
    check(t, &AxiomId::BIKEI)
}

/// All violations of the medial identities (m.i)–(m.iii).
pub fn check_medial(t: &BikeiTable) -> Vec<AxiomViolation> {
    check(t, &AxiomId::MEDIAL)
}
