//! The fixed symbol universe shared by every polynomial in the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Number of symbols in the universe.
pub const NSYM: usize = 18;

/// A formal parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Sym {
    B = 0,
    P,
    Delta,
    C,
    Eps1,
    Eps2,
    A,
    A1,
    A2,
    K,
    /// Deformation parameter of the Urod stress tensor.
    Eps,
    U,
    Alpha,
    Beta1,
    Beta2,
    Gamma1,
    Gamma2,
    /// Coefficient of the doubly charged exponential in the stress-tensor ansatz.
    DeltaA,
}

pub const ALL_SYMS: [Sym; NSYM] = [
    Sym::B,
    Sym::P,
    Sym::Delta,
    Sym::C,
    Sym::Eps1,
    Sym::Eps2,
    Sym::A,
    Sym::A1,
    Sym::A2,
    Sym::K,
    Sym::Eps,
    Sym::U,
    Sym::Alpha,
    Sym::Beta1,
    Sym::Beta2,
    Sym::Gamma1,
    Sym::Gamma2,
    Sym::DeltaA,
];

impl Sym {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Sym {
        ALL_SYMS[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Sym::B => "b",
            Sym::P => "P",
            Sym::Delta => "Δ",
            Sym::C => "c",
            Sym::Eps1 => "ε1",
            Sym::Eps2 => "ε2",
            Sym::A => "a",
            Sym::A1 => "a1",
            Sym::A2 => "a2",
            Sym::K => "k",
            Sym::Eps => "ε",
            Sym::U => "u",
            Sym::Alpha => "α",
            Sym::Beta1 => "β1",
            Sym::Beta2 => "β2",
            Sym::Gamma1 => "γ1",
            Sym::Gamma2 => "γ2",
            Sym::DeltaA => "δ",
        }
    }

    /// ASCII spelling accepted on the command line.
    pub fn ascii(self) -> &'static str {
        match self {
            Sym::Delta => "Delta",
            Sym::Eps1 => "eps1",
            Sym::Eps2 => "eps2",
            Sym::Eps => "eps",
            Sym::Alpha => "alpha",
            Sym::Beta1 => "beta1",
            Sym::Beta2 => "beta2",
            Sym::Gamma1 => "gamma1",
            Sym::Gamma2 => "gamma2",
            Sym::DeltaA => "delta",
            s => s.name(),
        }
    }

    pub fn parse(s: &str) -> Option<Sym> {
        ALL_SYMS
            .iter()
            .copied()
            .find(|x| x.name() == s || x.ascii() == s)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A set of symbols, iterated in universe order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolSet(u32);

impl SymbolSet {
    pub const EMPTY: SymbolSet = SymbolSet(0);

    pub fn of(syms: &[Sym]) -> SymbolSet {
        let mut s = SymbolSet(0);
        for &x in syms {
            s.0 |= 1 << x.index();
        }
        s
    }

    pub fn contains(self, s: Sym) -> bool {
        self.0 & (1 << s.index()) != 0
    }

    pub fn insert(&mut self, s: Sym) {
        self.0 |= 1 << s.index();
    }

    pub fn union(self, o: SymbolSet) -> SymbolSet {
        SymbolSet(self.0 | o.0)
    }

    pub fn is_subset(self, o: SymbolSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Sym> {
        ALL_SYMS.into_iter().filter(move |s| self.contains(*s))
    }

    pub fn names(self) -> Vec<&'static str> {
        self.iter().map(Sym::name).collect()
    }
}

impl Serialize for SymbolSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.names().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let names: Vec<String> = Vec::deserialize(d)?;
        let mut set = SymbolSet::EMPTY;
        for n in names {
            let s = Sym::parse(&n)
                .ok_or_else(|| serde::de::Error::custom(format!("unknown symbol {n}")))?;
            set.insert(s);
        }
        Ok(set)
    }
}

impl fmt::Display for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for s in ALL_SYMS {
            assert_eq!(Sym::parse(s.name()), Some(s));
            assert_eq!(Sym::parse(s.ascii()), Some(s));
        }
    }

    #[test]
    fn set_ops() {
        let a = SymbolSet::of(&[Sym::P, Sym::B]);
        assert_eq!(a.names(), vec!["b", "P"]);
        assert!(SymbolSet::of(&[Sym::B]).is_subset(a));
        assert!(!a.is_subset(SymbolSet::of(&[Sym::B])));
        assert_eq!(a.union(SymbolSet::of(&[Sym::C])).len(), 3);
    }
}
