//! Parameter files.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use su3_bethe::integral::limits::LimitOrder;
use su3_bethe::integral::recursion::RecOrder;
use su3_bethe::kernel::{genericity_check, Violation};
use su3_bethe::lattice::ChainSpec;
use su3_bethe::{Error, RKind, RTable, Rat, SPInput, VarSet};

/// One r-value at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RValue {
    pub at: Rat,
    pub value: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Limits {
    /// Largest ℓ+m handed to the integral routes.
    #[serde(default = "default_max_size")]
    pub max_size: usize,
    #[serde(default)]
    pub recursion_order: RecOrder,
    #[serde(default)]
    pub limit_order: LimitOrder,
}

fn default_max_size() -> usize {
    4
}

fn yes() -> bool {
    true
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_size: default_max_size(), recursion_order: RecOrder::default(), limit_order: LimitOrder::default() }
    }
}

/// Check suites understood by `identities`. An empty list selects all that apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Residues,
    ZResidues,
    Collisions,
    Fill,
    Actions,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub id: String,
    pub l: usize,
    pub m: usize,
    pub mu_b: Vec<Rat>,
    pub lam_b: Vec<Rat>,
    pub lam_c: Vec<Rat>,
    pub mu_c: Vec<Rat>,
    /// Free r₁ values; with `onshell_b` the values at λ̄ᴮ are computed.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r1: Vec<RValue>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r3: Vec<RValue>,
    #[serde(default = "yes")]
    pub onshell_b: bool,
    /// Inhomogeneities of the fundamental chain used by the oracle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Rat>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Suite>,
    #[serde(default)]
    pub limits: Limits,
    /// Run even when two parameters differ by 0 or ±1.
    #[serde(default, skip_serializing_if = "is_false")]
    pub allow_nongeneric: bool,
}

impl CaseFile {
    pub fn new(id: impl Into<String>, mu_b: Vec<Rat>, lam_b: Vec<Rat>, lam_c: Vec<Rat>, mu_c: Vec<Rat>) -> Self {
        CaseFile {
            id: id.into(),
            l: lam_b.len(),
            m: mu_b.len(),
            mu_b,
            lam_b,
            lam_c,
            mu_c,
            r1: Vec::new(),
            r3: Vec::new(),
            onshell_b: true,
            chain: None,
            checks: Vec::new(),
            limits: Limits::default(),
            allow_nongeneric: false,
        }
    }

    pub fn with_r(mut self, kind: RKind, at: Rat, value: Rat) -> Self {
        let v = RValue { at, value };
        match kind {
            RKind::R1 => self.r1.push(v),
            RKind::R3 => self.r3.push(v),
        }
        self
    }

    /// Every parameter, chain included.
    pub fn params(&self) -> Vec<Rat> {
        let mut p: Vec<Rat> = [&self.mu_b, &self.lam_b, &self.lam_c, &self.mu_c].into_iter().flatten().cloned().collect();
        if let Some(c) = &self.chain {
            p.extend(c.iter().cloned());
        }
        p
    }

    pub fn genericity(&self) -> Vec<Violation> {
        genericity_check(&self.params())
    }

    pub fn rtable(&self) -> RTable {
        let mut t = RTable::new();
        for v in &self.r1 {
            t.set(RKind::R1, v.at.clone(), v.value.clone());
        }
        for v in &self.r3 {
            t.set(RKind::R3, v.at.clone(), v.value.clone());
        }
        t
    }

    pub fn input(&self) -> su3_bethe::Result<SPInput> {
        let sets = (VarSet::new(self.mu_b.clone()), VarSet::new(self.lam_b.clone()), VarSet::new(self.lam_c.clone()), VarSet::new(self.mu_c.clone()));
        if self.onshell_b {
            SPInput::onshell(sets.0, sets.1, sets.2, sets.3, &self.rtable())
        } else {
            SPInput::new(sets.0, sets.1, sets.2, sets.3, self.rtable())
        }
    }

    pub fn chain_spec(&self) -> su3_bethe::Result<ChainSpec> {
        match &self.chain {
            Some(c) => ChainSpec::new(c.clone()),
            None => Err(Error::Unsupported(format!("case {} has no chain", self.id))),
        }
    }

    /// Cardinality and consistency checks that the file format cannot express.
    pub fn validate(&self) -> su3_bethe::Result<()> {
        let bad = |field: &str, msg: String| Error::Parse { line: 0, field: format!("{}.{field}", self.id), msg };
        for (name, v, n) in [("lam_b", &self.lam_b, self.l), ("lam_c", &self.lam_c, self.l), ("mu_b", &self.mu_b, self.m), ("mu_c", &self.mu_c, self.m)] {
            if v.len() != n {
                return Err(bad(name, format!("has {} entries, expected {n}", v.len())));
            }
        }
        if let Some(c) = &self.chain {
            if c.is_empty() {
                return Err(bad("chain", "empty chain".into()));
            }
            ChainSpec::new(c.clone()).map_err(|e| bad("chain", e.to_string()))?;
        }
        for (name, vs) in [("r1", &self.r1), ("r3", &self.r3)] {
            let mut seen = BTreeSet::new();
            for v in vs {
                if !seen.insert(&v.at) {
                    return Err(bad(name, format!("two values at {}", v.at)));
                }
            }
        }
        Ok(())
    }
}

/// A file holds one case or an array of cases.
pub fn parse_cases(text: &str) -> su3_bethe::Result<Vec<CaseFile>> {
    let many = text.trim_start().starts_with('[');
    let de = &mut serde_json::Deserializer::from_str(text);
    let cases = if many {
        serde_path_to_error::deserialize::<_, Vec<CaseFile>>(de).map_err(located)?
    } else {
        vec![serde_path_to_error::deserialize::<_, CaseFile>(de).map_err(located)?]
    };
    let mut ids = BTreeSet::new();
    for c in &cases {
        c.validate()?;
        if !ids.insert(c.id.clone()) {
            return Err(Error::Parse { line: 0, field: "id".into(), msg: format!("duplicate case id {}", c.id) });
        }
    }
    Ok(cases)
}

fn located(e: serde_path_to_error::Error<serde_json::Error>) -> Error {
    let field = e.path().to_string();
    let inner = e.inner();
    Error::Parse { line: inner.line(), field, msg: format!("{inner}") }
}

pub fn load_cases(path: &Path) -> su3_bethe::Result<Vec<CaseFile>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, field: String::new(), msg: format!("{}: {e}", path.display()) })?;
    parse_cases(&text)
}

/// Loads a file that must contain exactly one case.
pub fn load_case(path: &Path) -> su3_bethe::Result<CaseFile> {
    let mut v = load_cases(path)?;
    if v.len() != 1 {
        return Err(Error::Parse { line: 0, field: String::new(), msg: format!("expected one case, found {}", v.len()) });
    }
    Ok(v.remove(0))
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn save_cases(cases: &[CaseFile], path: &Path) -> std::io::Result<()> {
    fs::write(path, to_json(&cases))
}

/// The (ℓ,m) = (1,0) reference case: λᴮ = {1}, λᶜ = {0}, r₁(0) = 5.
pub fn standard_l1() -> CaseFile {
    let mut c = CaseFile::new("standard-1-0", vec![], vec![Rat::int(1)], vec![Rat::int(0)], vec![]).with_r(RKind::R1, Rat::int(0), Rat::int(5));
    c.allow_nongeneric = true;
    c
}

/// The (ℓ,m) = (0,1) reference case: μᴮ = {1}, μᶜ = {0}, r₃(0) = 3.
pub fn standard_m1() -> CaseFile {
    let mut c = CaseFile::new("standard-0-1", vec![Rat::int(1)], vec![], vec![], vec![Rat::int(0)]).with_r(RKind::R3, Rat::int(0), Rat::int(3));
    c.allow_nongeneric = true;
    c
}
