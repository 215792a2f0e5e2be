//! Folding signs and the necessary conditions they must meet.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::CreaseConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '−',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Folding sign per curve, in the curve order of the configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignAssignment(pub Vec<Sign>);

impl SignAssignment {
    /// Parses strings like `"+-+"` or `"+,−,+"`.
    pub fn parse(s: &str) -> Option<Self> {
        let mut v = Vec::new();
        for ch in s.chars() {
            match ch {
                '+' => v.push(Sign::Plus),
                '-' | '−' => v.push(Sign::Minus),
                ',' | ' ' | '[' | ']' => {}
                _ => return None,
            }
        }
        Some(SignAssignment(v))
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SignRefutation {
    NoPositiveCurve,
    AllPositive,
    /// The lone positive curve bounds a disk region.
    LonePositiveBoundsDisk(String),
    LengthMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Feasibility {
    NotRefuted,
    Infeasible(SignRefutation),
}

/// Refutes sign assignments that no embedding can carry. A `NotRefuted`
/// answer certifies nothing.
pub fn sign_feasibility(cfg: &CreaseConfig, signs: &SignAssignment) -> Feasibility {
    use Feasibility::*;
    if signs.0.len() != cfg.curves.len() {
        return Infeasible(SignRefutation::LengthMismatch);
    }
    let plus: Vec<usize> = (0..signs.0.len())
        .filter(|&i| signs.0[i] == Sign::Plus)
        .collect();
    if plus.is_empty() {
        return Infeasible(SignRefutation::NoPositiveCurve);
    }
    if plus.len() == signs.0.len() && signs.0.len() > 1 {
        return Infeasible(SignRefutation::AllPositive);
    }
    if plus.len() == 1 && signs.0.len() > 1 {
        let c = plus[0];
        let (a, b) = cfg.ends()[c];
        if cfg.degree(a) == 1 || cfg.degree(b) == 1 {
            return Infeasible(SignRefutation::LonePositiveBoundsDisk(
                cfg.curves[c].id.clone(),
            ));
        }
    }
    NotRefuted
}
