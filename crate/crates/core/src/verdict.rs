use std::fmt;

/// Outcome of a bounded decision procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchVerdict<M> {
    /// The relation holds; the path is a replayable witness.
    Yes(Vec<M>),
    /// The relation fails; the string names the separating invariant.
    No(String),
    /// The budget ran out before either answer was certain.
    Unknown { spent: usize },
}

impl<M> SearchVerdict<M> {
    pub fn is_yes(&self) -> bool {
        matches!(self, SearchVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, SearchVerdict::No(_))
    }

    pub fn map_path<N>(self, f: impl FnOnce(Vec<M>) -> Vec<N>) -> SearchVerdict<N> {
        match self {
            SearchVerdict::Yes(p) => SearchVerdict::Yes(f(p)),
            SearchVerdict::No(s) => SearchVerdict::No(s),
            SearchVerdict::Unknown { spent } => SearchVerdict::Unknown { spent },
        }
    }

    /// Process exit code: 0 for yes, 1 for no, 2 for unknown.
    pub fn exit_code(&self) -> i32 {
        match self {
            SearchVerdict::Yes(_) => 0,
            SearchVerdict::No(_) => 1,
            SearchVerdict::Unknown { .. } => 2,
        }
    }
}

impl<M> fmt::Display for SearchVerdict<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchVerdict::Yes(p) => write!(f, "yes ({} moves)", p.len()),
            SearchVerdict::No(why) => write!(f, "no: {why}"),
            SearchVerdict::Unknown { spent } => write!(f, "unknown (budget spent: {spent} nodes)"),
        }
    }
}
