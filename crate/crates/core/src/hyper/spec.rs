//! Term structure of a double hypergeometric-class series and its text format.
//!
//! A spec describes the lattice term
//!
//! ```text
//! prod_i (A_i + d_i delta + a_i eps)_{L_i(m1,m2)} / prod_j (B_j + e_j delta + b_j eps)_{L_j(m1,m2)}
//!     * x1^m1 x2^m2 / (m1! m2!)
//! ```
//!
//! The text format is line oriented:
//!
//! ```text
//! [function]
//! name = F4
//! [numerator]
//! poch = 1 0 : 0 1 1        # (1 + 0*eps)_{m1+m2}
//! poch = 1 1 1 : 0 1 1      # (1 + delta + eps)_{m1+m2}
//! [denominator]
//! poch = 1 1 : 0 1 0
//! [params]
//! delta = 1/3
//! [options]
//! eps_order = 4
//! degree_bound = 8
//! regroup = lattice
//! laurent = false
//! ```
//!
//! Blank lines and `#` comments are ignored. Unknown sections or keys,
//! repeated keys and malformed values are errors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::pochhammer::LinearParam;

/// Length law `c0 + c1*m1 + c2*m2` of a Pochhammer factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexLaw {
    pub c0: u32,
    pub c1: u32,
    pub c2: u32,
}

impl IndexLaw {
    pub const fn new(c0: u32, c1: u32, c2: u32) -> Self {
        IndexLaw { c0, c1, c2 }
    }

    pub fn length(&self, m1: u32, m2: u32) -> usize {
        (self.c0 + self.c1 * m1 + self.c2 * m2) as usize
    }
}

/// A factor `(A + d*delta + a*eps)_{L(m1,m2)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperFactor {
    pub param: LinearParam,
    pub delta_coeff: Rational,
    pub law: IndexLaw,
}

impl HyperFactor {
    pub fn new(constant: Rational, slope: Rational, law: IndexLaw) -> Self {
        HyperFactor {
            param: LinearParam::new(constant, slope),
            delta_coeff: Rational::zero(),
            law,
        }
    }

    pub fn with_delta(mut self, d: Rational) -> Self {
        self.delta_coeff = d;
        self
    }

    /// The `eps`-linear parameter once `delta` is fixed.
    pub fn param_at(&self, delta: &Rational) -> LinearParam {
        LinearParam::new(
            &self.param.constant + &self.delta_coeff * delta,
            self.param.slope.clone(),
        )
    }

    pub fn depends_on_delta(&self) -> bool {
        !self.delta_coeff.is_zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Regrouping {
    /// Keys `(k, m1, m2)`.
    #[default]
    Lattice,
    /// Keys `(k, m1 + m2, m1)`.
    TotalDegree,
}

impl FromStr for Regrouping {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lattice" => Ok(Regrouping::Lattice),
            "total" => Ok(Regrouping::TotalDegree),
            _ => Err(Error::domain(format!(
                "unknown regrouping '{s}' (expected lattice or total)"
            ))),
        }
    }
}

impl fmt::Display for Regrouping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regrouping::Lattice => "lattice",
            Regrouping::TotalDegree => "total",
        })
    }
}

/// Settings read from the `[options]` section.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecOptions {
    pub eps_order: Option<i32>,
    pub degree_bound: Option<u32>,
    pub regroup: Regrouping,
    /// Allow denominators that vanish at `eps = 0`; the table then carries
    /// negative `k` entries.
    pub laurent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HyperTermSpec {
    pub name: Option<String>,
    pub numer: Vec<HyperFactor>,
    pub denom: Vec<HyperFactor>,
    pub params: BTreeMap<String, Rational>,
    pub options: SpecOptions,
}

impl HyperTermSpec {
    pub fn new(numer: Vec<HyperFactor>, denom: Vec<HyperFactor>) -> Self {
        HyperTermSpec {
            numer,
            denom,
            ..Default::default()
        }
    }

    pub fn with_param(mut self, name: &str, value: Rational) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn uses_delta(&self) -> bool {
        self.numer.iter().chain(&self.denom).any(HyperFactor::depends_on_delta)
    }

    /// The value of `delta`, required only when some factor depends on it.
    pub fn delta(&self) -> Result<Rational> {
        match self.params.get("delta") {
            Some(d) => Ok(d.clone()),
            None if self.uses_delta() => Err(Error::MissingParameter("delta".into())),
            None => Ok(Rational::zero()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_spec(text)
    }
}

impl FromStr for HyperTermSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_spec(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Function,
    Numerator,
    Denominator,
    Params,
    Options,
}

fn parse_rational(line: usize, field: &str, s: &str) -> Result<Rational> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("{field}: '{s}' is not a rational")))
}

fn parse_factor(line: usize, value: &str) -> Result<HyperFactor> {
    let (params, law) = value
        .split_once(':')
        .ok_or_else(|| Error::parse(line, "poch needs '<A> <a> [<d>] : <c0> <c1> <c2>'"))?;
    let params: Vec<&str> = params.split_whitespace().collect();
    let law: Vec<&str> = law.split_whitespace().collect();
    if !(2..=3).contains(&params.len()) {
        return Err(Error::parse(line, "poch needs two or three rationals before ':'"));
    }
    if law.len() != 3 {
        return Err(Error::parse(line, "poch needs exactly three lengths after ':'"));
    }
    let constant = parse_rational(line, "constant", params[0])?;
    let slope = parse_rational(line, "eps slope", params[1])?;
    let delta = match params.get(2) {
        Some(d) => parse_rational(line, "delta coefficient", d)?,
        None => Rational::zero(),
    };
    let mut c = [0u32; 3];
    for (slot, s) in c.iter_mut().zip(&law) {
        *slot = s
            .parse()
            .map_err(|_| Error::parse(line, format!("length coefficient '{s}' is not a nonnegative integer")))?;
    }
    Ok(HyperFactor::new(constant, slope, IndexLaw::new(c[0], c[1], c[2])).with_delta(delta))
}

fn parse_spec(text: &str) -> Result<HyperTermSpec> {
    let mut spec = HyperTermSpec::default();
    let mut section: Option<Section> = None;
    let mut seen_sections: Vec<Section> = Vec::new();
    let mut seen_keys: Vec<(u8, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let s = match name.trim() {
                "function" => Section::Function,
                "numerator" => Section::Numerator,
                "denominator" => Section::Denominator,
                "params" => Section::Params,
                "options" => Section::Options,
                other => return Err(Error::parse(line, format!("unknown section [{other}]"))),
            };
            if seen_sections.contains(&s) {
                return Err(Error::parse(line, format!("section [{}] repeated", name.trim())));
            }
            seen_sections.push(s);
            section = Some(s);
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::parse(line, format!("expected 'key = value', found '{content}'")))?;
        let current = section.ok_or_else(|| Error::parse(line, "key outside of any section"))?;
        if current != Section::Numerator && current != Section::Denominator {
            let tag = current as u8;
            if seen_keys.iter().any(|(t, k)| *t == tag && k == key) {
                return Err(Error::parse(line, format!("key '{key}' repeated")));
            }
            seen_keys.push((tag, key.to_string()));
        }
        match (current, key) {
            (Section::Function, "name") => {
                if value.is_empty() || !value.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                    return Err(Error::parse(line, format!("invalid function name '{value}'")));
                }
                spec.name = Some(value.to_string());
            }
            (Section::Numerator, "poch") => spec.numer.push(parse_factor(line, value)?),
            (Section::Denominator, "poch") => spec.denom.push(parse_factor(line, value)?),
            (Section::Params, name) => {
                if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(Error::parse(line, format!("invalid parameter name '{name}'")));
                }
                let v = parse_rational(line, name, value)?;
                spec.params.insert(name.to_string(), v);
            }
            (Section::Options, "eps_order") => {
                let v = value
                    .parse()
                    .map_err(|_| Error::parse(line, format!("eps_order '{value}' is not an integer")))?;
                spec.options.eps_order = Some(v);
            }
            (Section::Options, "degree_bound") => {
                let v = value
                    .parse()
                    .map_err(|_| Error::parse(line, format!("degree_bound '{value}' is not a nonnegative integer")))?;
                spec.options.degree_bound = Some(v);
            }
            (Section::Options, "regroup") => {
                spec.options.regroup = value.parse().map_err(|e: Error| Error::parse(line, e.to_string()))?;
            }
            (Section::Options, "laurent") => {
                spec.options.laurent = match value {
                    "true" => true,
                    "false" => false,
                    _ => {
                        return Err(Error::parse(
                            line,
                            format!("laurent must be true or false, found '{value}'"),
                        ))
                    }
                };
            }
            (_, key) => return Err(Error::parse(line, format!("unknown key '{key}' in this section"))),
        }
    }
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const F6_TEXT: &str = "\
[function]
name = F6
[numerator]
poch = 1 0 1 : 0 1 1   # (1+delta)_{m1+m2}
poch = 1 -1 1 : 0 1 1
poch = 1 0 : 0 1 0
[denominator]
poch = 1 0 1 : 0 1 0
poch = 1 -1 : 0 1 0
poch = 1 1 1 : 0 0 1

[params]
delta = 1/3
[options]
eps_order = 3
degree_bound = 6
regroup = total
";

    #[test]
    fn parses_full_spec() {
        let spec = HyperTermSpec::parse(F6_TEXT).unwrap();
        assert_eq!(spec.name.as_deref(), Some("F6"));
        assert_eq!(spec.numer.len(), 3);
        assert_eq!(spec.denom.len(), 3);
        assert_eq!(spec.numer[1].param.slope, rat(-1, 1));
        assert_eq!(spec.numer[1].delta_coeff, rat(1, 1));
        assert_eq!(spec.denom[2].law, IndexLaw::new(0, 0, 1));
        assert_eq!(spec.delta().unwrap(), rat(1, 3));
        assert_eq!(spec.options.eps_order, Some(3));
        assert_eq!(spec.options.degree_bound, Some(6));
        assert_eq!(spec.options.regroup, Regrouping::TotalDegree);
        assert!(!spec.options.laurent);
    }

    #[test]
    fn missing_delta_is_reported() {
        let text = F6_TEXT.replace("delta = 1/3", "");
        let spec = HyperTermSpec::parse(&text).unwrap();
        assert_eq!(spec.delta(), Err(Error::MissingParameter("delta".into())));
    }

    #[test]
    fn strict_mode_rejects_unknowns() {
        let cases = [
            ("[extras]\n", 1),
            ("[options]\ncolor = red\n", 2),
            ("[numerator]\npoch = 1 0 : 0 1\n", 2),
            ("[numerator]\npoch = 1 : 0 1 1\n", 2),
            ("[numerator]\npoch = 1 x : 0 1 1\n", 2),
            ("[numerator]\npoch = 1 0 : 0 -1 1\n", 2),
            ("[options]\neps_order = 2\neps_order = 3\n", 3),
            ("[options]\nregroup = diagonal\n", 2),
            ("name = F1\n", 1),
            ("[params]\ndelta = 0.5\n", 2),
            ("[options]\n[options]\n", 2),
        ];
        for (text, line) in cases {
            match HyperTermSpec::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn empty_spec_is_valid() {
        let spec = HyperTermSpec::parse("# nothing here\n\n").unwrap();
        assert!(spec.numer.is_empty() && spec.denom.is_empty());
        assert_eq!(spec.delta().unwrap(), Rational::zero());
    }

    #[test]
    fn index_law_lengths() {
        let law = IndexLaw::new(1, 2, 3);
        assert_eq!(law.length(0, 0), 1);
        assert_eq!(law.length(2, 1), 8);
    }
}
