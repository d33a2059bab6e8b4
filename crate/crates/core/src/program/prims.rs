//! The primitive catalog.

use serde::{Deserialize, Serialize};

/// Named primitives of the list DSL. Parameterised primitives (`nth`, `take`,
/// `cons`, …) take their integer parameter as the first argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prim {
    First,
    Second,
    Third,
    Last,
    Tail,
    Droplast,
    Reverse,
    Sort,
    Unique,
    Singleton,
    Length,
    Sum,
    Max,
    Min,
    ConcatSelf,
    FilterEven,
    FilterOdd,
    Nth,
    Take,
    Drop,
    Cons,
    Append,
    Count,
    MapAdd,
    MapSub,
    MapMul,
    FilterGt,
    FilterLt,
}

/// All primitives in their canonical (enumeration) order: parameter-free
/// primitives first, then parameterised ones.
pub const PRIMITIVES: [Prim; 28] = [
    Prim::First,
    Prim::Second,
    Prim::Third,
    Prim::Last,
    Prim::Tail,
    Prim::Droplast,
    Prim::Reverse,
    Prim::Sort,
    Prim::Unique,
    Prim::Singleton,
    Prim::Length,
    Prim::Sum,
    Prim::Max,
    Prim::Min,
    Prim::ConcatSelf,
    Prim::FilterEven,
    Prim::FilterOdd,
    Prim::Nth,
    Prim::Take,
    Prim::Drop,
    Prim::Cons,
    Prim::Append,
    Prim::Count,
    Prim::MapAdd,
    Prim::MapSub,
    Prim::MapMul,
    Prim::FilterGt,
    Prim::FilterLt,
];

impl Prim {
    pub fn name(self) -> &'static str {
        match self {
            Prim::First => "first",
            Prim::Second => "second",
            Prim::Third => "third",
            Prim::Last => "last",
            Prim::Tail => "tail",
            Prim::Droplast => "droplast",
            Prim::Reverse => "reverse",
            Prim::Sort => "sort",
            Prim::Unique => "unique",
            Prim::Singleton => "singleton",
            Prim::Length => "length",
            Prim::Sum => "sum",
            Prim::Max => "max",
            Prim::Min => "min",
            Prim::ConcatSelf => "concat-self",
            Prim::FilterEven => "filter-even",
            Prim::FilterOdd => "filter-odd",
            Prim::Nth => "nth",
            Prim::Take => "take",
            Prim::Drop => "drop",
            Prim::Cons => "cons",
            Prim::Append => "append",
            Prim::Count => "count",
            Prim::MapAdd => "map-add",
            Prim::MapSub => "map-sub",
            Prim::MapMul => "map-mul",
            Prim::FilterGt => "filter-gt",
            Prim::FilterLt => "filter-lt",
        }
    }

    pub fn from_name(name: &str) -> Option<Prim> {
        PRIMITIVES.iter().copied().find(|p| p.name() == name)
    }

    /// Number of expression arguments, including the integer parameter for
    /// parameterised primitives.
    pub fn arity(self) -> usize {
        if self.has_param() {
            2
        } else {
            1
        }
    }

    /// Whether the primitive takes an integer parameter as its first argument.
    pub fn has_param(self) -> bool {
        matches!(
            self,
            Prim::Nth
                | Prim::Take
                | Prim::Drop
                | Prim::Cons
                | Prim::Append
                | Prim::Count
                | Prim::MapAdd
                | Prim::MapSub
                | Prim::MapMul
                | Prim::FilterGt
                | Prim::FilterLt
        )
    }
}
