//! Errors raised when validating derivation terms.

/// A path into a derivation term, rendered like `comp.1/tensor.0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TermPath(Vec<(&'static str, usize)>);

impl TermPath {
    pub fn push(&mut self, tag: &'static str, child: usize) {
        self.0.push((tag, child));
    }

    pub fn pop(&mut self) {
        self.0.pop();
    }

    pub fn render(&self) -> String {
        if self.0.is_empty() {
            return "root".to_string();
        }
        self.0
            .iter()
            .map(|(tag, i)| format!("{tag}.{i}"))
            .collect::<Vec<_>>()
            .join("/")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error("type mismatch at {at}: {detail}")]
    Mismatch { at: String, detail: String },
    #[error("flag violation at {at}: {rule} requires {flag}")]
    FlagViolation { at: String, rule: &'static str, flag: &'static str },
    #[error("closedness violation at {at}: {detail}")]
    NotClosed { at: String, detail: String },
    #[error("bad position at {at}: {detail}")]
    BadPosition { at: String, detail: String },
}

impl CheckError {
    pub fn mismatch(path: &TermPath, detail: impl Into<String>) -> CheckError {
        CheckError::Mismatch { at: path.render(), detail: detail.into() }
    }

    pub fn flag(path: &TermPath, rule: &'static str, flag: &'static str) -> CheckError {
        CheckError::FlagViolation { at: path.render(), rule, flag }
    }

    pub fn not_closed(path: &TermPath, detail: impl Into<String>) -> CheckError {
        CheckError::NotClosed { at: path.render(), detail: detail.into() }
    }

    pub fn bad_position(path: &TermPath, detail: impl Into<String>) -> CheckError {
        CheckError::BadPosition { at: path.render(), detail: detail.into() }
    }
}
