use std::fmt;
use std::str::FromStr;

use crate::error::{LgError, Result};
use crate::sequential::MeasurementSet;

/// Sign attached to one correlator in a functional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `± ⟨M_{i_1} … M_{i_k}⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub sign: Sign,
    pub slots: MeasurementSet,
}

impl Term {
    pub fn new(sign: Sign, slots: Vec<usize>) -> Result<Self> {
        Ok(Term {
            sign,
            slots: MeasurementSet::new(slots)?,
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{s}{}", self.slots)
    }
}

/// A Leggett-Garg type functional: a signed sum of sequential correlators
/// over subsets of `n` time slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionalSpec {
    n: usize,
    terms: Vec<Term>,
}

impl FunctionalSpec {
    pub fn new(n: usize, terms: Vec<Term>) -> Result<Self> {
        if n < 2 {
            return Err(LgError::domain(format!("functional needs n ≥ 2, got {n}")));
        }
        if terms.is_empty() {
            return Err(LgError::domain("functional has no terms"));
        }
        for t in &terms {
            t.slots.check_within(n)?;
        }
        Ok(FunctionalSpec { n, terms })
    }

    fn build(n: usize, terms: &[(Sign, Vec<usize>)]) -> Result<Self> {
        let terms = terms
            .iter()
            .map(|(s, slots)| Term::new(*s, slots.clone()))
            .collect::<Result<Vec<_>>>()?;
        FunctionalSpec::new(n, terms)
    }

    /// `K_n = Σ_{i<n} ⟨M_i M_{i+1}⟩ − ⟨M_1 M_n⟩`.
    pub fn standard_k(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(LgError::domain(format!("K_n needs n ≥ 3, got {n}")));
        }
        let mut terms: Vec<(Sign, Vec<usize>)> =
            (1..n).map(|i| (Sign::Plus, vec![i, i + 1])).collect();
        terms.push((Sign::Minus, vec![1, n]));
        FunctionalSpec::build(n, &terms)
    }

    /// `⟨M_1 … M_n⟩ + ⟨M_1 … M_{n−1}⟩ − ⟨M_n⟩`.
    pub fn variant_k3(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(LgError::domain(format!("K³_n needs n ≥ 3, got {n}")));
        }
        FunctionalSpec::build(
            n,
            &[
                (Sign::Plus, (1..=n).collect()),
                (Sign::Plus, (1..n).collect()),
                (Sign::Minus, vec![n]),
            ],
        )
    }

    /// `⟨M_1 … M_{n−1}⟩ + ⟨M_2 … M_n⟩ − ⟨M_1 M_n⟩`.
    pub fn variant_l3(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(LgError::domain(format!("L³_n needs n ≥ 3, got {n}")));
        }
        FunctionalSpec::build(
            n,
            &[
                (Sign::Plus, (1..n).collect()),
                (Sign::Plus, (2..=n).collect()),
                (Sign::Minus, vec![1, n]),
            ],
        )
    }

    /// `⟨M_1 M_2 M_3⟩ + ⟨M_i M_j⟩ − ⟨M_k⟩` over three slots.
    pub fn three_time_variant(i: usize, j: usize, k: usize) -> Result<Self> {
        if !(1..=3).contains(&i) || !(1..=3).contains(&j) || !(1..=3).contains(&k) || i >= j {
            return Err(LgError::domain(format!(
                "three-time variant needs 1 ≤ i < j ≤ 3 and 1 ≤ k ≤ 3, got ({i}, {j}, {k})"
            )));
        }
        FunctionalSpec::build(
            3,
            &[
                (Sign::Plus, vec![1, 2, 3]),
                (Sign::Plus, vec![i, j]),
                (Sign::Minus, vec![k]),
            ],
        )
    }

    pub fn k3_4() -> Self {
        FunctionalSpec::variant_k3(4).expect("n = 4 is valid")
    }

    pub fn l3_4() -> Self {
        FunctionalSpec::variant_l3(4).expect("n = 4 is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Largest magnitude any assignment of ±1 correlators can give.
    pub fn algebraic_max(&self) -> f64 {
        self.terms.len() as f64
    }

    pub fn sign_sum(&self) -> f64 {
        self.terms.iter().map(|t| t.sign.value()).sum()
    }

    /// Relabel `M_index → −M_index`: every term containing the slot flips sign.
    pub fn relabeled(&self, index: usize) -> Result<Self> {
        if index == 0 || index > self.n {
            return Err(LgError::domain(format!(
                "slot {index} outside 1..={}",
                self.n
            )));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                sign: if t.slots.contains(index) {
                    t.sign.flipped()
                } else {
                    t.sign
                },
                slots: t.slots.clone(),
            })
            .collect();
        Ok(FunctionalSpec { n: self.n, terms })
    }

    /// Same terms over a larger slot count.
    pub fn with_n(&self, n: usize) -> Result<Self> {
        FunctionalSpec::new(n, self.terms.clone())
    }

    /// Parse the canonical term syntax (`+[1,2,3] +[1,2] -[3]`) or one of the
    /// shortcuts `K:n`, `K3var:n`, `L3var:n`. For term syntax `n` is the
    /// largest slot mentioned.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(spec) = parse_shortcut(text)? {
            return Ok(spec);
        }
        let terms = parse_terms(text)?;
        let n = terms
            .iter()
            .map(|t| t.slots.last())
            .max()
            .unwrap_or(0)
            .max(2);
        FunctionalSpec::new(n, terms)
    }
}

impl FromStr for FunctionalSpec {
    type Err = LgError;

    fn from_str(s: &str) -> Result<Self> {
        FunctionalSpec::parse(s)
    }
}

impl fmt::Display for FunctionalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Families addressed by the `name:n` shortcuts and by sweeps over `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionalFamily {
    StandardK,
    VariantK3,
    VariantL3,
}

impl FunctionalFamily {
    pub fn build(self, n: usize) -> Result<FunctionalSpec> {
        match self {
            FunctionalFamily::StandardK => FunctionalSpec::standard_k(n),
            FunctionalFamily::VariantK3 => FunctionalSpec::variant_k3(n),
            FunctionalFamily::VariantL3 => FunctionalSpec::variant_l3(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctionalFamily::StandardK => "K",
            FunctionalFamily::VariantK3 => "K3var",
            FunctionalFamily::VariantL3 => "L3var",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "K" => Some(FunctionalFamily::StandardK),
            "K3var" => Some(FunctionalFamily::VariantK3),
            "L3var" => Some(FunctionalFamily::VariantL3),
            _ => None,
        }
    }
}

fn parse_shortcut(text: &str) -> Result<Option<FunctionalSpec>> {
    let Some((name, n)) = text.split_once(':') else {
        return Ok(None);
    };
    let family = FunctionalFamily::from_name(name.trim())
        .ok_or_else(|| LgError::parse(format!("unknown functional shortcut '{name}'")))?;
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| LgError::parse(format!("bad measurement count in '{text}'")))?;
    family
        .build(n)
        .map(Some)
        .map_err(|e| LgError::parse(e.to_string()))
}

fn parse_terms(text: &str) -> Result<Vec<Term>> {
    let mut terms = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let sign = match rest.chars().next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return Err(LgError::parse(format!("expected '+' or '-' at '{rest}'"))),
        };
        rest = rest[1..].trim_start();
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| LgError::parse(format!("expected '[' at '{rest}'")))?;
        let close = body
            .find(']')
            .ok_or_else(|| LgError::parse(format!("unterminated term in '{text}'")))?;
        let slots = body[..close]
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| LgError::parse(format!("bad slot index '{}'", s.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        let term = Term::new(sign, slots).map_err(|e| LgError::parse(e.to_string()))?;
        terms.push(term);
        rest = body[close + 1..].trim_start();
    }
    if terms.is_empty() {
        return Err(LgError::parse("empty functional"));
    }
    Ok(terms)
}
