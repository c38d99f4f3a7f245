use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use qpol_core::analysis::{CheckResult, Claim, EquivalenceReport, Fingerprint, Verdict};
use qpol_core::numeric::{NullSpaceReport, SpectralPoint};
use qpol_core::orbit::{OrbitClass, OrbitPoint};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub algebra: String,
    pub q: f64,
    pub q_exact: Option<String>,
    pub truncation: usize,
    /// Seed of every random choice made during the run.
    pub seed: u64,
    pub residuals: Vec<ResidualLine>,
    pub identities: Vec<IdentityLine>,
    pub fingerprints: Vec<FingerprintLine>,
    pub equivalences: Vec<EquivalenceLine>,
    pub commutants: Vec<CommutantLine>,
    pub orbit: Vec<OrbitLine>,
    pub spectra: Vec<SpectrumLine>,
    pub claims: Vec<Claim>,
    pub checks: Vec<CheckResult>,
    pub exports: Vec<ExportLine>,
    /// Free-form outputs such as a normal form.
    pub values: Vec<NamedValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ResidualLine {
    pub subject: String,
    pub relation: String,
    pub residual: f64,
    pub tol: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityLine {
    pub lhs: String,
    pub rhs: String,
    /// Normal form of `lhs - rhs`.
    pub difference: String,
    /// `exact-true` or `exact-false`.
    pub verdict: String,
    pub at_q: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FingerprintLine {
    pub subject: String,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceLine {
    pub a: String,
    pub b: String,
    pub report: EquivalenceReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CommutantLine {
    pub subject: String,
    pub null_cyclic: usize,
    pub commutant: Option<NullSpaceReport>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitLine {
    pub seed: OrbitPoint,
    pub class: OrbitClass,
    pub distance: f64,
    pub indices: Option<(u32, u32)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumLine {
    pub subject: String,
    pub class: Option<OrbitClass>,
    pub class_residual: Option<f64>,
    pub points: Vec<SpectralPoint>,
    pub dropped: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExportLine {
    pub subject: String,
    pub generator: String,
    pub encoding: String,
    pub nnz: usize,
    pub round_trip_exact: bool,
    pub path: Option<String>,
    pub content: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

impl RunReport {
    pub fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    pub fn residual(&mut self, subject: &str, relation: &str, residual: f64, tol: f64) {
        let passed = residual < tol;
        if !passed {
            self.fail(format!("{subject}: relation `{relation}` residual {residual:.3e} >= {tol:.0e}"));
        }
        self.residuals.push(ResidualLine { subject: subject.into(), relation: relation.into(), residual, tol, passed });
    }

    pub fn check(&mut self, c: CheckResult) {
        if !c.passed {
            self.fail(format!("check `{}` residual {:.3e} over {} block(s)", c.name, c.residual, c.tested));
        }
        self.checks.push(c);
    }

    pub fn claim(&mut self, c: Claim) {
        if c.verdict != Verdict::Confirmed {
            self.fail(format!("claim `{}` {:?}: {}", c.id, c.verdict, c.evidence));
        }
        self.claims.push(c);
    }

    pub fn value(&mut self, name: &str, value: impl ToString) {
        self.values.push(NamedValue { name: name.into(), value: value.to_string() });
    }

    pub fn finish(&mut self) {
        self.passed = self.failures.is_empty();
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per reported item: `section,subject,name,value,passed`.
    pub fn to_csv(&self) -> String {
        let mut rows = vec!["section,subject,name,value,passed".to_string()];
        let mut row = |section: &str, subject: &str, name: &str, value: String, passed: Option<bool>| {
            let p = passed.map(|b| b.to_string()).unwrap_or_default();
            rows.push([section, subject, name, &value, &p].iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
        };
        for r in &self.residuals {
            row("residual", &r.subject, &r.relation, r.residual.to_string(), Some(r.passed));
        }
        for i in &self.identities {
            row("identity", &i.lhs, &i.rhs, i.verdict.clone(), Some(i.verdict == "exact-true"));
        }
        for f in &self.fingerprints {
            let fp = &f.fingerprint;
            let class = fp.orbit.map(|c| c.to_string()).unwrap_or_default();
            row("fingerprint", &f.subject, "orbit", class, None);
            for e in &fp.table {
                row("fingerprint", &f.subject, &format!("label {:?}", e.label), e.multiplicity.to_string(), None);
            }
            for p in &fp.phases {
                row("fingerprint", &f.subject, &format!("phases {}", p.generator), format!("{:?}", p.phases), None);
            }
        }
        for e in &self.equivalences {
            row("equivalence", &e.a, &e.b, e.report.equivalent.to_string(), None);
        }
        for c in &self.commutants {
            let dim = c.commutant.as_ref().map(|r| r.dimension.to_string()).unwrap_or_default();
            row("commutant", &c.subject, "dimension", dim, None);
            row("commutant", &c.subject, "null_cyclic", c.null_cyclic.to_string(), None);
        }
        for o in &self.orbit {
            let mn = o.indices.map(|(m, n)| format!("{m} {n}")).unwrap_or_default();
            row("orbit", &format!("{} {}", o.seed.x1, o.seed.x2), &o.class.to_string(), mn, None);
        }
        for s in &self.spectra {
            for p in &s.points {
                row("spectrum", &s.subject, &format!("{:?}", p.values), p.multiplicity.to_string(), None);
            }
            if let Some(c) = s.class {
                row("spectrum", &s.subject, "class", c.to_string(), None);
            }
        }
        for c in &self.claims {
            row("claim", &c.id, &c.statement, format!("{:?}", c.verdict).to_lowercase(), Some(c.verdict == Verdict::Confirmed));
        }
        for c in &self.checks {
            row("check", &c.name, "residual", c.residual.to_string(), Some(c.passed));
        }
        for e in &self.exports {
            row("export", &e.subject, &e.generator, e.nnz.to_string(), Some(e.round_trip_exact));
        }
        for v in &self.values {
            row("value", "", &v.name, v.value.clone(), None);
        }
        row("summary", "", "passed", self.passed.to_string(), Some(self.passed));
        let mut out = rows.join("\n");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        for r in &self.residuals {
            let _ = writeln!(w, "{:<40} {:<44} {:.3e} {}", r.subject, r.relation, r.residual, mark(r.passed));
        }
        for i in &self.identities {
            let _ = writeln!(w, "{}", i.verdict);
            if i.verdict != "exact-true" {
                let _ = writeln!(w, "  lhs - rhs = {}", i.difference);
            }
        }
        for f in &self.fingerprints {
            let fp = &f.fingerprint;
            let class = fp.orbit.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(w, "{}: {} dim {} interior {}", f.subject, class, fp.dim, fp.interior_dim);
            for e in &fp.table {
                let grow = if e.growing { " (growing)" } else { "" };
                let _ = writeln!(w, "  {:?} x{}{grow}", e.label, e.multiplicity);
            }
            for p in &fp.phases {
                let _ = writeln!(w, "  phases of {}: {:?}", p.generator, p.phases);
            }
        }
        for e in &self.equivalences {
            let verdict = if e.report.equivalent { "equivalent" } else { "not equivalent" };
            match &e.report.fingerprint_mismatch {
                Some(why) => writeln!(w, "{} vs {}: {verdict} ({why})", e.a, e.b),
                None => writeln!(w, "{} vs {}: {verdict}", e.a, e.b),
            }
            .ok();
        }
        for c in &self.commutants {
            let dim = c.commutant.as_ref().map(|r| r.dimension.to_string()).unwrap_or_else(|| "?".into());
            let _ = writeln!(w, "{}: commutant dim {dim}, null-cyclic {}", c.subject, c.null_cyclic);
            if let Some(note) = &c.note {
                let _ = writeln!(w, "  {note}");
            }
        }
        for o in &self.orbit {
            let _ = writeln!(w, "{}", o.class);
        }
        for s in &self.spectra {
            let class = s.class.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
            let _ = writeln!(w, "{}: {class}", s.subject);
            for p in &s.points {
                let _ = writeln!(w, "  {:?} x{}", p.values, p.multiplicity);
            }
        }
        for c in &self.claims {
            let _ = writeln!(w, "{:<22} {:<12} {}", c.id, format!("{:?}", c.verdict).to_lowercase(), c.statement);
        }
        for c in &self.checks {
            let _ = writeln!(w, "{:<40} {:.3e} {}", c.name, c.residual, mark(c.passed));
        }
        for e in &self.exports {
            match (&e.content, &e.path) {
                (Some(c), _) => w.push_str(c),
                (None, Some(p)) => {
                    let _ = writeln!(w, "{} written to {p}", e.generator);
                }
                _ => {}
            }
        }
        for v in &self.values {
            let _ = writeln!(w, "{}", v.value);
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(w, "time {t:.1} ms");
        }
        for f in &self.failures {
            let _ = writeln!(w, "FAILED: {f}");
        }
        out
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
