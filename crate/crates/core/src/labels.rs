//! Symbolic generator names for K-theory and normal-invariant bases.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symbol {
    Eta,
    EtaBar,
    AlphaEta,
    BetaEta,
    GammaEta,
    Sigma,
    Tau,
    Omega,
    Xi { index: u8 },
    /// Unnamed torsion generator.
    X,
}

impl Symbol {
    fn name(&self) -> String {
        match self {
            Self::Eta => "eta".into(),
            Self::EtaBar => "etabar".into(),
            Self::AlphaEta => "alpha*eta".into(),
            Self::BetaEta => "beta*eta".into(),
            Self::GammaEta => "gamma*eta".into(),
            Self::Sigma => "sigma".into(),
            Self::Tau => "tau".into(),
            Self::Omega => "omega".into(),
            Self::Xi { index } => format!("xi_{index}"),
            Self::X => "x".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decoration {
    #[default]
    None,
    QStar,
    DStar,
    CStar,
}

impl Decoration {
    fn is_none(&self) -> bool {
        *self == Self::None
    }
}

/// How a generator fails to be free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// `order * g = 0`.
    Torsion { order: u64 },
    /// `factor * g = other`, with `other` not itself a basis element.
    Multiple { factor: u64, other: Box<GeneratorLabel> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorLabel {
    pub symbol: Symbol,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    /// Which connected summand the class lives on, counted from 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copy_index: Option<u32>,
    #[serde(default, skip_serializing_if = "Decoration::is_none")]
    pub decoration: Decoration,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Relation>,
}

impl GeneratorLabel {
    pub fn new(symbol: Symbol) -> Self {
        Self {
            symbol,
            power: None,
            copy_index: None,
            decoration: Decoration::None,
            relation: None,
        }
    }

    pub fn power(mut self, j: u32) -> Self {
        self.power = Some(j);
        self
    }

    pub fn copy(mut self, i: u32) -> Self {
        self.copy_index = Some(i);
        self
    }

    pub fn decorated(mut self, d: Decoration) -> Self {
        self.decoration = d;
        self
    }

    pub fn torsion(mut self, order: u64) -> Self {
        self.relation = Some(Relation::Torsion { order });
        self
    }

    pub fn multiple_of(mut self, factor: u64, other: GeneratorLabel) -> Self {
        self.relation = Some(Relation::Multiple {
            factor,
            other: Box::new(other),
        });
        self
    }

    /// Moves the label to summand `i` and applies `d` to it and to anything
    /// its relation mentions.
    pub fn transported(&self, i: Option<u32>, d: Decoration) -> Self {
        let mut out = self.clone();
        out.copy_index = i;
        out.decoration = d;
        if let Some(Relation::Multiple { factor, other }) = &self.relation {
            out.relation = Some(Relation::Multiple {
                factor: *factor,
                other: Box::new(other.transported(i, d)),
            });
        }
        out
    }

    pub fn torsion_order(&self) -> Option<u64> {
        match self.relation {
            Some(Relation::Torsion { order }) => Some(order),
            _ => None,
        }
    }

    /// The relation written out, e.g. `2*sigma_1 = alpha*eta_1^3`.
    pub fn relation_text(&self) -> Option<String> {
        match &self.relation {
            None => None,
            Some(Relation::Torsion { order }) => Some(format!("{order}*{self} = 0")),
            Some(Relation::Multiple { factor, other }) => Some(format!("{factor}*{self} = {other}")),
        }
    }
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut core = self.symbol.name();
        if let Some(i) = self.copy_index {
            core.push_str(&format!("_{i}"));
        }
        if let Some(j) = self.power {
            core.push_str(&format!("^{j}"));
        }
        match self.decoration {
            Decoration::None => write!(f, "{core}"),
            Decoration::QStar => write!(f, "q*({core})"),
            Decoration::DStar => write!(f, "d*({core})"),
            Decoration::CStar => write!(f, "c*({core})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let l = GeneratorLabel::new(Symbol::Eta)
            .power(3)
            .copy(2)
            .decorated(Decoration::QStar);
        assert_eq!(l.to_string(), "q*(eta_2^3)");
        let s = GeneratorLabel::new(Symbol::Sigma)
            .copy(1)
            .multiple_of(2, GeneratorLabel::new(Symbol::AlphaEta).copy(1).power(3));
        assert_eq!(s.relation_text().unwrap(), "2*sigma_1 = alpha*eta_1^3");
        let t = GeneratorLabel::new(Symbol::Eta).power(5).torsion(2);
        assert_eq!(t.relation_text().unwrap(), "2*eta^5 = 0");
        assert_eq!(t.torsion_order(), Some(2));
        assert_eq!(
            GeneratorLabel::new(Symbol::Omega).decorated(Decoration::DStar).to_string(),
            "d*(omega)"
        );
    }

    #[test]
    fn transport_moves_relations_too() {
        let s = GeneratorLabel::new(Symbol::Tau)
            .multiple_of(2, GeneratorLabel::new(Symbol::GammaEta).power(4));
        let q = s.transported(Some(3), Decoration::QStar);
        assert_eq!(q.relation_text().unwrap(), "2*q*(tau_3) = q*(gamma*eta_3^4)");
    }

    #[test]
    fn json_round_trip() {
        let l = GeneratorLabel::new(Symbol::Xi { index: 2 }).decorated(Decoration::QStar);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"symbol":{"xi":{"index":2}},"decoration":"q-star"}"#);
        assert_eq!(serde_json::from_str::<GeneratorLabel>(&s).unwrap(), l);
    }
}
