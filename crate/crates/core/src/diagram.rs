//! Virtual link diagrams given as signed Gauss codes.
//!
//! A code lists, for each component, the classical crossings met while
//! walking it: `O3+` is an over pass through crossing 3 with positive sign.
//! Components are separated by `;`; an empty component is an unknotted
//! circle with no classical crossings. Virtual crossings are not recorded.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Op;
use crate::error::{Error, Result};
use crate::presentation::{PresentationMatrix, Relation, ShortForm};
use crate::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Over,
    Under,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pass {
    pub crossing: u32,
    pub role: Role,
    pub sign: Sign,
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = match self.role {
            Role::Over => 'O',
            Role::Under => 'U',
        };
        let sign = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "{role}{}{sign}", self.crossing)
    }
}

/// A validated signed Gauss code: every crossing label occurs exactly twice,
/// once over and once under, with matching signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramCode {
    components: Vec<Vec<Pass>>,
}

/// The four semiarcs at a classical crossing, numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingPorts {
    pub crossing: u32,
    pub under_in: Element,
    pub under_out: Element,
    pub over_in: Element,
    pub over_out: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiarcLabeling {
    pub semiarc_count: usize,
    /// Sorted by crossing label.
    pub crossings: Vec<CrossingPorts>,
}

impl DiagramCode {
    pub fn new(components: Vec<Vec<Pass>>) -> Result<Self> {
        let components = if components.is_empty() {
            vec![Vec::new()]
        } else {
            components
        };
        let mut seen: BTreeMap<u32, (Option<Sign>, Option<Sign>)> = BTreeMap::new();
        for pass in components.iter().flatten() {
            let entry = seen.entry(pass.crossing).or_default();
            let slot = match pass.role {
                Role::Over => &mut entry.0,
                Role::Under => &mut entry.1,
            };
            if slot.replace(pass.sign).is_some() {
                let role = if pass.role == Role::Over {
                    "over"
                } else {
                    "under"
                };
                return Err(Error::Diagram(format!(
                    "crossing {} has two {role} passes",
                    pass.crossing
                )));
            }
        }
        for (label, signs) in &seen {
            match signs {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::Diagram(format!("sign mismatch on crossing {label}")));
                }
                (Some(_), Some(_)) => {}
                _ => return Err(Error::Diagram(format!("crossing {label} is unmatched"))),
            }
        }
        Ok(DiagramCode { components })
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn crossing_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Starts the walk along `component` at pass `by` instead of pass 0.
    pub fn rotated(&self, component: usize, by: usize) -> DiagramCode {
        let mut c = self.clone();
        let passes = &mut c.components[component];
        if !passes.is_empty() {
            let k = by % passes.len();
            passes.rotate_left(k);
        }
        c
    }

    /// Walks `component` in the opposite direction.
    pub fn reversed(&self, component: usize) -> DiagramCode {
        let mut c = self.clone();
        c.components[component].reverse();
        c
    }

    /// Renames crossing labels through `f`, which must be injective.
    pub fn relabeled(&self, f: impl Fn(u32) -> u32) -> Result<DiagramCode> {
        let components = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| Pass {
                        crossing: f(p.crossing),
                        ..*p
                    })
                    .collect()
            })
            .collect();
        DiagramCode::new(components)
    }

    /// Numbers semiarcs component by component: semiarc `i` of a component
    /// runs from its pass `i` to pass `i + 1` (cyclically).
    pub fn label_semiarcs(&self) -> SemiarcLabeling {
        let mut ports: BTreeMap<u32, CrossingPorts> = BTreeMap::new();
        let mut offset = 0;
        for passes in &self.components {
            let len = passes.len();
            for (i, pass) in passes.iter().enumerate() {
                let incoming = offset + ((i + len - 1) % len) as Element + 1;
                let outgoing = offset + i as Element + 1;
                let entry = ports.entry(pass.crossing).or_insert(CrossingPorts {
                    crossing: pass.crossing,
                    under_in: 0,
                    under_out: 0,
                    over_in: 0,
                    over_out: 0,
                });
                match pass.role {
                    Role::Under => {
                        entry.under_in = incoming;
                        entry.under_out = outgoing;
                    }
                    Role::Over => {
                        entry.over_in = incoming;
                        entry.over_out = outgoing;
                    }
                }
            }
            offset += len.max(1) as Element;
        }
        SemiarcLabeling {
            semiarc_count: offset as usize,
            crossings: ports.into_values().collect(),
        }
    }

    /// Crossing relations on the semiarc generators: at each classical
    /// crossing, `under_out = under_in ▁ over_in` and
    /// `over_out = over_in ▔ under_in`. Signs are not used.
    pub fn relations(&self) -> (usize, Vec<Relation>) {
        let labeling = self.label_semiarcs();
        let mut relations = Vec::with_capacity(2 * labeling.crossings.len());
        for c in &labeling.crossings {
            relations.push(Relation {
                op: Op::Under,
                x: c.under_in,
                y: c.over_in,
                result: c.under_out,
            });
            relations.push(Relation {
                op: Op::Over,
                x: c.over_in,
                y: c.under_in,
                result: c.over_out,
            });
        }
        (labeling.semiarc_count, relations)
    }

    /// The fundamental-bikei presentation matrix of the diagram.
    pub fn to_presentation(&self) -> ShortForm {
        let (n, relations) = self.relations();
        let (matrix, merges) =
            PresentationMatrix::from_relations(n, &relations).expect("semiarcs in range");
        ShortForm { matrix, merges }
    }
}

impl fmt::Display for DiagramCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            for p in c {
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for DiagramCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_gauss_code(s)
    }
}

/// Parses `O1+U2+U1+O2+`-style codes; components are separated by `;`.
pub fn parse_gauss_code(text: &str) -> Result<DiagramCode> {
    let mut components = Vec::new();
    for (ci, component) in text.trim().split(';').enumerate() {
        let chars: Vec<char> = component.chars().filter(|c| !c.is_whitespace()).collect();
        let mut passes = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let role = match chars[i] {
                'O' | 'o' => Role::Over,
                'U' | 'u' => Role::Under,
                c => {
                    return Err(Error::Diagram(format!(
                        "component {}: expected `O` or `U`, found `{c}`",
                        ci + 1
                    )))
                }
            };
            i += 1;
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let crossing: u32 = digits.parse().map_err(|_| {
                Error::Diagram(format!("component {}: expected crossing label", ci + 1))
            })?;
            let sign = match chars.get(i) {
                Some('+') => Sign::Positive,
                Some('-') | Some('−') => Sign::Negative,
                _ => {
                    return Err(Error::Diagram(format!(
                        "component {}: crossing {crossing} needs a sign",
                        ci + 1
                    )))
                }
            };
            i += 1;
            passes.push(Pass {
                crossing,
                role,
                sign,
            });
        }
        components.push(passes);
    }
    DiagramCode::new(components)
}

/// Reads `name: code` lines; `#` comments and blank lines are skipped.
/// Codes are returned unparsed so a bad entry does not hide the others.
pub fn parse_corpus(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, code) = line.split_once(':').ok_or_else(|| Error::Parse {
            line: i + 1,
            column: 1,
            message: "expected `name: code`".into(),
        })?;
        out.push((name.trim().to_string(), code.trim().to_string()));
    }
    Ok(out)
}
