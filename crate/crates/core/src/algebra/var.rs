use std::fmt;

/// Spectral parameters. Declaration order is alphabetical by name, which is
/// the order the derived `Ord` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Spectral {
    T,
    U,
    U1,
    U2,
    V,
}

impl Spectral {
    pub fn name(self) -> &'static str {
        match self {
            Spectral::T => "t",
            Spectral::U => "u",
            Spectral::U1 => "u1",
            Spectral::U2 => "u2",
            Spectral::V => "v",
        }
    }
}

/// A polynomial variable. The derived order is
/// `hbar < gamma(i,k) < root(i,k) < spectral(name)`, lexicographic inside each kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    Hbar,
    Gamma(u8, u8),
    Root(u8, u8),
    Spectral(Spectral),
}

impl VarId {
    pub const U: VarId = VarId::Spectral(Spectral::U);
    pub const V: VarId = VarId::Spectral(Spectral::V);
    pub const T: VarId = VarId::Spectral(Spectral::T);
    pub const U1: VarId = VarId::Spectral(Spectral::U1);
    pub const U2: VarId = VarId::Spectral(Spectral::U2);

    pub fn gamma(i: usize, k: usize) -> VarId {
        VarId::Gamma(i as u8, k as u8)
    }

    pub fn root(i: usize, k: usize) -> VarId {
        VarId::Root(i as u8, k as u8)
    }

    pub fn is_spectral(self) -> bool {
        matches!(self, VarId::Spectral(_))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Hbar => write!(f, "hb"),
            VarId::Gamma(i, k) => write!(f, "g{}_{}", i, k),
            VarId::Root(i, k) => write!(f, "r{}_{}", i, k),
            VarId::Spectral(s) => write!(f, "{}", s.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_order_follows_kinds() {
        let mut v = vec![
            VarId::V,
            VarId::root(1, 1),
            VarId::gamma(2, 1),
            VarId::Hbar,
            VarId::gamma(1, 2),
            VarId::T,
            VarId::U1,
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                VarId::Hbar,
                VarId::gamma(1, 2),
                VarId::gamma(2, 1),
                VarId::root(1, 1),
                VarId::T,
                VarId::U1,
                VarId::V
            ]
        );
    }
}
