//! Command results and their json/text renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Bracket,
    Cohomology,
    Classify,
    Deform,
    Tables,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Bracket => "bracket",
            Command::Cohomology => "cohomology",
            Command::Classify => "classify",
            Command::Deform => "deform",
            Command::Tables => "tables",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: Command,
    /// The parsed inputs in cochain syntax.
    pub inputs: Vec<String>,
    pub result: Outcome,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Verify {
        codifferential: bool,
        square: String,
        /// The three structure-constant equations, present for quadratic
        /// cochains on 0|3.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        equations: Option<Vec<Equation>>,
    },
    Bracket {
        bracket: String,
    },
    Cohomology {
        h: Vec<usize>,
        weights: Vec<WeightRow>,
    },
    Classify {
        label: Label,
    },
    Deform {
        parameters: Vec<ParameterRow>,
        /// Terms added at each order, starting with the infinitesimal part.
        orders: Vec<String>,
        deformation: String,
        terminated: bool,
        termination_order: Option<usize>,
        relations: Vec<String>,
        verified: bool,
    },
    Tables {
        rows: Vec<TableRow>,
    },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub equation: String,
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct WeightRow {
    pub weight: usize,
    pub dim: usize,
    pub z: usize,
    pub b: usize,
    pub h: usize,
    pub representatives: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<[String; 2]>,
}

impl Label {
    pub fn text(&self) -> String {
        let mut s = self.tag.clone();
        if let Some(j) = &self.j {
            write!(s, " j={j}").unwrap();
        }
        if let Some([a, b]) = &self.lambda {
            write!(s, " lambda={{{a}, {b}}}").unwrap();
        }
        s
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ParameterRow {
    pub name: String,
    pub parity: String,
    pub weight: usize,
    pub representative: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub map: String,
    pub image: String,
}

impl Report {
    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialise");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        writeln!(w, "command: {}", self.command.name()).unwrap();
        for input in &self.inputs {
            writeln!(w, "input: {input}").unwrap();
        }
        match &self.result {
            Outcome::Verify {
                codifferential,
                square,
                equations,
            } => {
                writeln!(w, "codifferential: {}", yes_no(*codifferential)).unwrap();
                writeln!(w, "[d,d] = {square}").unwrap();
                if let Some(eqs) = equations {
                    let violated: Vec<_> = eqs.iter().filter(|e| e.value != "0").collect();
                    if !violated.is_empty() {
                        writeln!(w, "violated equations:").unwrap();
                        for e in violated {
                            writeln!(w, "  {} = {}", e.equation, e.value).unwrap();
                        }
                    }
                }
            }
            Outcome::Bracket { bracket } => writeln!(w, "bracket = {bracket}").unwrap(),
            Outcome::Cohomology { h, weights } => {
                let h: Vec<String> = h.iter().map(usize::to_string).collect();
                writeln!(w, "h = ({})", h.join(",")).unwrap();
                writeln!(w, "weight  dim   z   b   h").unwrap();
                for r in weights {
                    writeln!(w, "{:>6}  {:>3}  {:>2}  {:>2}  {:>2}", r.weight, r.dim, r.z, r.b, r.h).unwrap();
                }
                for r in weights {
                    for rep in &r.representatives {
                        writeln!(w, "H^{}: {rep}", r.weight).unwrap();
                    }
                }
            }
            Outcome::Classify { label } => writeln!(w, "class: {}", label.text()).unwrap(),
            Outcome::Deform {
                parameters,
                orders,
                deformation,
                terminated,
                termination_order,
                relations,
                verified,
            } => {
                writeln!(w, "parameters:").unwrap();
                for p in parameters {
                    writeln!(
                        w,
                        "  {} ({}, weight {}): {}",
                        p.name, p.parity, p.weight, p.representative
                    )
                    .unwrap();
                }
                for (k, o) in orders.iter().enumerate() {
                    writeln!(w, "order {}: {o}", k + 1).unwrap();
                }
                writeln!(w, "deformation: {deformation}").unwrap();
                match termination_order {
                    Some(n) if *terminated => writeln!(w, "terminated: yes, at order {n}").unwrap(),
                    _ => writeln!(w, "terminated: no").unwrap(),
                }
                writeln!(w, "relations: {}", relations_text(relations)).unwrap();
                writeln!(w, "verified: {}", yes_no(*verified)).unwrap();
            }
            Outcome::Tables { rows } => {
                for r in rows {
                    writeln!(w, "D({}) = {}", r.map, r.image).unwrap();
                }
            }
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn relations_text(relations: &[String]) -> String {
    if relations.is_empty() {
        "(0)".to_string()
    } else {
        format!("({})", relations.join(", "))
    }
}
