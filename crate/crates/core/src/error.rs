use thiserror::Error;

/// Kind of structural defect found by [`crate::Matroid::assert_loopless`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectKind {
    Loop,
    Coloop,
}

impl std::fmt::Display for DefectKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DefectKind::Loop => f.write_str("loop"),
            DefectKind::Coloop => f.write_str("coloop"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("duplicate element id `{0}`")]
    DuplicateElement(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cannot contract `{0}`: it is a loop of the intermediate matroid")]
    ContractLoop(String),

    #[error("matroid is not loopless: {}", format_defects(.0))]
    NotLoopless(Vec<(String, DefectKind)>),

    #[error("`{element}` is a {kind}; {context}")]
    Degenerate {
        element: String,
        kind: DefectKind,
        context: &'static str,
    },

    #[error("invalid matroid: {0}")]
    Construction(String),

    #[error("no weight given for element `{0}`")]
    MissingWeight(String),

    #[error("invalid rational `{0}`")]
    Rational(String),

    #[error("ground set has {size} elements, above the enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn format_defects(defects: &[(String, DefectKind)]) -> String {
    defects
        .iter()
        .map(|(id, kind)| format!("`{id}` is a {kind}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
