//! Report rendering. The machine format is line oriented with a fixed
//! field order and canonical `p/q` rationals, so identical inputs
//! produce byte-identical output and every report parses back into the
//! same value.

use tec_core::{Rational, TecVerdict, TecWitness};

use crate::input::{format_masses, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyReport {
    pub l: u32,
    pub masses: Vec<Rational>,
    pub classifier_tec: bool,
    /// Rendered branch witness when the classifier says TEC.
    pub witness: Option<String>,
    pub normalizing_shift: usize,
    /// `Some(true)` when the `a_max > 5/6` shortcut decides.
    pub corollary1: Option<bool>,
    pub oracle_tec: bool,
    /// Sign pattern and masses of a nontrivial equivalent measure.
    pub counterexample: Option<(String, Vec<Rational>)>,
}

impl ClassifyReport {
    pub fn new(
        masses: &[Rational],
        classifier: &TecVerdict,
        oracle: &TecVerdict,
        corollary1: Option<bool>,
    ) -> Self {
        let witness = classifier.tec.then(|| classifier.witness.to_string());
        let counterexample = match &oracle.witness {
            TecWitness::Counterexample { pattern, measure } => {
                Some((pattern.to_string(), measure.masses().to_vec()))
            }
            _ => None,
        };
        ClassifyReport {
            l: 3,
            masses: masses.to_vec(),
            classifier_tec: classifier.tec,
            witness,
            normalizing_shift: classifier.normalizing_shift.index(),
            corollary1,
            oracle_tec: oracle.tec,
            counterexample,
        }
    }

    pub fn agreement(&self) -> bool {
        self.classifier_tec == self.oracle_tec
    }

    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        out.push_str("format: tec-classify-v1\n");
        out.push_str(&format!("l: {}\n", self.l));
        out.push_str(&format!("masses: {}\n", format_masses(&self.masses)));
        out.push_str(&format!("classifier: {}\n", verdict_token(self.classifier_tec)));
        out.push_str(&format!("witness: {}\n", self.witness.as_deref().unwrap_or("none")));
        out.push_str(&format!("normalizing-shift: x{}\n", self.normalizing_shift));
        out.push_str(&format!(
            "corollary1: {}\n",
            if self.corollary1 == Some(true) { "tec" } else { "undecided" }
        ));
        out.push_str(&format!("oracle: {}\n", verdict_token(self.oracle_tec)));
        match &self.counterexample {
            Some((pattern, masses)) => {
                out.push_str(&format!("counterexample-pattern: {pattern}\n"));
                out.push_str(&format!("counterexample: {}\n", format_masses(masses)));
            }
            None => {
                out.push_str("counterexample-pattern: none\n");
                out.push_str("counterexample: none\n");
            }
        }
        out.push_str(&format!("agreement: {}\n", self.agreement()));
        out
    }

    pub fn parse_machine(text: &str) -> Result<Self, String> {
        let mut lines = Fields::new(text);
        lines.expect("format", "tec-classify-v1")?;
        let l: u32 = lines.take("l")?.parse().map_err(|e| format!("l: {e}"))?;
        let masses = parse_mass_list(&lines.take("masses")?)?;
        let classifier_tec = parse_verdict_token(&lines.take("classifier")?)?;
        let witness = match lines.take("witness")?.as_str() {
            "none" => None,
            w => Some(w.to_string()),
        };
        let shift_field = lines.take("normalizing-shift")?;
        let normalizing_shift = shift_field
            .strip_prefix('x')
            .ok_or_else(|| format!("bad shift: {shift_field}"))?
            .parse::<usize>()
            .map_err(|e| format!("normalizing-shift: {e}"))?;
        let corollary1 = match lines.take("corollary1")?.as_str() {
            "tec" => Some(true),
            "undecided" => None,
            other => return Err(format!("bad corollary1 field: {other}")),
        };
        let oracle_tec = parse_verdict_token(&lines.take("oracle")?)?;
        let pattern = lines.take("counterexample-pattern")?;
        let counter_masses = lines.take("counterexample")?;
        let counterexample = if pattern == "none" {
            None
        } else {
            Some((pattern, parse_mass_list(&counter_masses)?))
        };
        let report = ClassifyReport {
            l,
            masses,
            classifier_tec,
            witness,
            normalizing_shift,
            corollary1,
            oracle_tec,
            counterexample,
        };
        let agreement: bool = lines
            .take("agreement")?
            .parse()
            .map_err(|e| format!("agreement: {e}"))?;
        if agreement != report.agreement() {
            return Err("agreement field contradicts the verdicts".into());
        }
        Ok(report)
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("measure on Z_2^{}: {}\n", self.l, format_masses(&self.masses)));
        out.push_str(&format!(
            "closed-form classifier: {}\n",
            if self.classifier_tec {
                "trivial equivalence class"
            } else {
                "nontrivial equivalence class"
            }
        ));
        if let Some(witness) = &self.witness {
            out.push_str(&format!(
                "  satisfied condition: {witness} (normalizing shift x{})\n",
                self.normalizing_shift
            ));
        }
        out.push_str(&format!(
            "a_max > 5/6 shortcut: {}\n",
            if self.corollary1 == Some(true) { "decides (TEC)" } else { "no decision" }
        ));
        out.push_str(&format!(
            "brute-force oracle: {}\n",
            if self.oracle_tec {
                "trivial equivalence class (all sign-pattern candidates are shifts)"
            } else {
                "nontrivial equivalence class"
            }
        ));
        if let Some((pattern, masses)) = &self.counterexample {
            out.push_str(&format!(
                "  nontrivial equivalent measure: {} (sign pattern {pattern})\n",
                format_masses(masses)
            ));
        }
        out.push_str(&format!(
            "agreement: {}\n",
            if self.agreement() { "yes" } else { "NO - INTERNAL INCONSISTENCY" }
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub l: u32,
    pub masses: Vec<Rational>,
    pub members: Vec<Vec<Rational>>,
}

impl ClassReport {
    pub fn to_machine(&self) -> String {
        let mut out = String::new();
        out.push_str("format: tec-class-v1\n");
        out.push_str(&format!("l: {}\n", self.l));
        out.push_str(&format!("masses: {}\n", format_masses(&self.masses)));
        out.push_str(&format!("class-count: {}\n", self.members.len()));
        for (i, member) in self.members.iter().enumerate() {
            out.push_str(&format!("member {}: {}\n", i + 1, format_masses(member)));
        }
        out
    }

    pub fn parse_machine(text: &str) -> Result<Self, String> {
        let mut lines = Fields::new(text);
        lines.expect("format", "tec-class-v1")?;
        let l: u32 = lines.take("l")?.parse().map_err(|e| format!("l: {e}"))?;
        let masses = parse_mass_list(&lines.take("masses")?)?;
        let count: usize = lines
            .take("class-count")?
            .parse()
            .map_err(|e| format!("class-count: {e}"))?;
        let mut members = Vec::with_capacity(count);
        for i in 0..count {
            members.push(parse_mass_list(&lines.take(&format!("member {}", i + 1))?)?);
        }
        Ok(ClassReport { l, masses, members })
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("measure on Z_2^{}: {}\n", self.l, format_masses(&self.masses)));
        out.push_str(&format!(
            "equivalence class: {} member{} (modulo shift)\n",
            self.members.len(),
            if self.members.len() == 1 { "" } else { "s" }
        ));
        for member in &self.members {
            out.push_str(&format!("  {}\n", format_masses(member)));
        }
        out
    }
}

fn verdict_token(tec: bool) -> &'static str {
    if tec {
        "tec"
    } else {
        "non-tec"
    }
}

fn parse_verdict_token(token: &str) -> Result<bool, String> {
    match token {
        "tec" => Ok(true),
        "non-tec" => Ok(false),
        other => Err(format!("bad verdict token: {other}")),
    }
}

fn parse_mass_list(text: &str) -> Result<Vec<Rational>, String> {
    text.split_whitespace().map(parse_rational).collect()
}

/// Sequential `key: value` line reader.
struct Fields<'a> {
    lines: std::str::Lines<'a>,
}

impl<'a> Fields<'a> {
    fn new(text: &'a str) -> Self {
        Fields { lines: text.lines() }
    }

    fn take(&mut self, key: &str) -> Result<String, String> {
        let line = self.lines.next().ok_or_else(|| format!("missing field '{key}'"))?;
        let (k, v) = line.split_once(": ").ok_or_else(|| format!("malformed line '{line}'"))?;
        if k != key {
            return Err(format!("expected field '{key}', found '{k}'"));
        }
        Ok(v.to_string())
    }

    fn expect(&mut self, key: &str, value: &str) -> Result<(), String> {
        let found = self.take(key)?;
        if found != value {
            return Err(format!("expected {key} '{value}', found '{found}'"));
        }
        Ok(())
    }
}
