use std::collections::HashMap;
use std::fmt::Write;
use std::path::Path;

use bikei::algebra::{invariant_profile, is_isomorphic};
use bikei::diagram::parse_gauss_code;
use bikei::BikeiTable;
use rayon::prelude::*;

use crate::pipeline::{parse_matrix_input, read, Completed, Runner};

pub enum Status {
    Finite(BikeiTable),
    Exceeded,
    Error(String),
}

pub struct Entry {
    pub name: String,
    pub status: Status,
    pub class: Option<usize>,
}

pub struct Class {
    pub id: usize,
    pub cardinality: usize,
    /// Indices into the entry list; the first is the representative.
    pub members: Vec<usize>,
}

pub struct Report {
    pub entries: Vec<Entry>,
    pub classes: Vec<Class>,
}

/// Runs one corpus entry. `@file` entries name a presentation file relative
/// to the corpus; anything else is a Gauss code.
fn run_entry(source: &str, base: &Path, runner: &Runner) -> Status {
    let input = match source.strip_prefix('@') {
        Some(file) => read(&base.join(file.trim())).and_then(|text| parse_matrix_input(&text)),
        None => parse_gauss_code(source)
            .map(|d| d.to_presentation())
            .map_err(Into::into),
    };
    match input.and_then(|sf| runner.run(&sf)) {
        Ok(Completed::Finite(t)) => Status::Finite(t),
        Ok(Completed::Exceeded { .. }) => Status::Exceeded,
        Err(e) => Status::Error(format!("{e:#}")),
    }
}

pub fn classify(entries: &[(String, String)], base: &Path, runner: &Runner) -> Report {
    let statuses: Vec<Status> = entries
        .par_iter()
        .map(|(_, source)| run_entry(source, base, runner))
        .collect();
    let mut entries: Vec<Entry> = entries
        .iter()
        .zip(statuses)
        .map(|((name, _), status)| Entry {
            name: name.clone(),
            status,
            class: None,
        })
        .collect();

    let mut classes: Vec<Class> = Vec::new();
    let mut buckets: HashMap<_, Vec<usize>> = HashMap::new();
    for i in 0..entries.len() {
        let Status::Finite(t) = &entries[i].status else {
            continue;
        };
        let bucket = buckets.entry(invariant_profile(t)).or_default();
        let found = bucket.iter().copied().find(|&c| {
            let Status::Finite(rep) = &entries[classes[c].members[0]].status else {
                unreachable!()
            };
            is_isomorphic(rep, t).is_some()
        });
        let c = found.unwrap_or_else(|| {
            classes.push(Class {
                id: classes.len() + 1,
                cardinality: t.size(),
                members: Vec::new(),
            });
            bucket.push(classes.len() - 1);
            classes.len() - 1
        });
        classes[c].members.push(i);
        entries[i].class = Some(classes[c].id);
    }
    Report { entries, classes }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.entries.is_empty() {
            return out;
        }
        for e in &self.entries {
            let _ = match &e.status {
                Status::Finite(t) => writeln!(
                    out,
                    "{}\tFINITE\t{}\t{}",
                    e.name,
                    t.size(),
                    e.class.unwrap_or(0)
                ),
                Status::Exceeded => writeln!(out, "{}\tBOUND_EXCEEDED\t-\t-", e.name),
                Status::Error(msg) => writeln!(out, "{}\tERROR\t-\t-\t{msg}", e.name),
            };
        }
        out.push_str("# classes\n");
        for c in &self.classes {
            let names: Vec<&str> = c
                .members
                .iter()
                .map(|&i| self.entries[i].name.as_str())
                .collect();
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                c.id,
                c.cardinality,
                names[0],
                names.join(", ")
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        let count = |f: fn(&Status) -> bool| self.entries.iter().filter(|e| f(&e.status)).count();
        let finite = count(|s| matches!(s, Status::Finite(_)));
        let exceeded = count(|s| matches!(s, Status::Exceeded));
        let errors = count(|s| matches!(s, Status::Error(_)));
        let mut sizes: Vec<usize> = self.classes.iter().map(|c| c.cardinality).collect();
        sizes.sort_unstable();
        let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        format!(
            "{} entries: {finite} finite, {exceeded} bound exceeded, {errors} errors; {} classes (cardinalities {})\n",
            self.entries.len(),
            self.classes.len(),
            if sizes.is_empty() { "-".to_string() } else { sizes.join(" ") }
        )
    }
}
