use std::fmt;
use std::sync::Arc;

/// A named indeterminate.
///
/// The derived ordering is the global variable order used by every term
/// order in the crate: `u, v, u1, u2, u3`, then all other names
/// alphabetically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    V,
    U1,
    U2,
    U3,
    Named(Arc<str>),
}

impl Var {
    pub fn named(name: &str) -> Var {
        match name {
            "u" => Var::U,
            "v" => Var::V,
            "u1" => Var::U1,
            "u2" => Var::U2,
            "u3" => Var::U3,
            other => Var::Named(Arc::from(other)),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Var::U => "u",
            Var::V => "v",
            Var::U1 => "u1",
            Var::U2 => "u2",
            Var::U3 => "u3",
            Var::Named(s) => s,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_order() {
        let mut vs = vec![
            Var::named("b"),
            Var::U3,
            Var::named("a"),
            Var::V,
            Var::U1,
            Var::U,
            Var::U2,
        ];
        vs.sort();
        let names: Vec<_> = vs.iter().map(|v| v.name().to_string()).collect();
        assert_eq!(names, ["u", "v", "u1", "u2", "u3", "a", "b"]);
        assert_eq!(Var::named("u2"), Var::U2);
    }
}
