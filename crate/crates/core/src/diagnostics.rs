//! Structured compiler diagnostics.
//!
//! Every diagnostic belongs to one of four categories: syntax errors in the
//! crease-pattern document (CSE), geometrically impossible folds (GIF), paper
//! self-intersection (PSI) and ambiguous folding states (AFS). The code
//! catalog is closed: a [`Code`] can only be built from the names below, and
//! the category is derived from the code, so the two can never disagree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Diagnostic category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Category {
    /// CP code syntax error.
    #[serde(rename = "CSE")]
    Cse,
    /// Geometrically impossible fold.
    #[serde(rename = "GIF")]
    Gif,
    /// Paper self-intersection / penetration.
    #[serde(rename = "PSI")]
    Psi,
    /// Ambiguous folding state.
    #[serde(rename = "AFS")]
    Afs,
}

impl Category {
    pub const ALL: [Category; 4] = [Category::Cse, Category::Gif, Category::Psi, Category::Afs];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::Cse => "CSE",
            Category::Gif => "GIF",
            Category::Psi => "PSI",
            Category::Afs => "AFS",
        }
    }

    /// Code-name prefix shared by every code of this category.
    pub fn code_prefix(self) -> &'static str {
        match self {
            Category::Cse => "E_CP_SYNTAX_",
            Category::Gif => "E_GEOM_",
            Category::Psi => "E_PHYS_",
            Category::Afs => "E_AMBIGUOUS_",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! codes {
    ($( $variant:ident => $name:literal, $cat:ident; )*) => {
        /// The closed catalog of diagnostic codes.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Code {
            $( $variant, )*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[ $( Code::$variant, )* ];

            pub fn as_str(self) -> &'static str {
                match self {
                    $( Code::$variant => $name, )*
                }
            }

            pub fn category(self) -> Category {
                match self {
                    $( Code::$variant => Category::$cat, )*
                }
            }
        }

        impl FromStr for Code {
            type Err = UnknownCode;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $( $name => Ok(Code::$variant), )*
                    other => Err(UnknownCode(other.to_owned())),
                }
            }
        }
    };
}

codes! {
    CpSyntaxInvalidParamCount => "E_CP_SYNTAX_INVALID_PARAM_COUNT", Cse;
    CpSyntaxUnknownCommand => "E_CP_SYNTAX_UNKNOWN_COMMAND", Cse;
    CpSyntaxInvalidParamType => "E_CP_SYNTAX_INVALID_PARAM_TYPE", Cse;
    CpSyntaxValueOutOfRange => "E_CP_SYNTAX_VALUE_OUT_OF_RANGE", Cse;
    CpSyntaxUnexpectedToken => "E_CP_SYNTAX_UNEXPECTED_TOKEN", Cse;
    CpSyntaxMissingDelimiter => "E_CP_SYNTAX_MISSING_DELIMITER", Cse;
    CpSyntaxInvalidLineReference => "E_CP_SYNTAX_INVALID_LINE_REFERENCE", Cse;
    GeomTooManyLayers => "E_GEOM_TOO_MANY_LAYERS", Gif;
    GeomAngleConstraintViolation => "E_GEOM_ANGLE_CONSTRAINT_VIOLATION", Gif;
    GeomCreasePlacementInvalid => "E_GEOM_CREASE_PLACEMENT_INVALID", Gif;
    GeomLengthConstraintViolation => "E_GEOM_LENGTH_CONSTRAINT_VIOLATION", Gif;
    PhysSelfIntersection => "E_PHYS_SELF_INTERSECTION", Psi;
    PhysIntersectionDuringMotion => "E_PHYS_INTERSECTION_DURING_MOTION", Psi;
    PhysBoundaryViolation => "E_PHYS_BOUNDARY_VIOLATION", Psi;
    AmbiguousState => "E_AMBIGUOUS_STATE", Afs;
    AmbiguousLayerOrder => "E_AMBIGUOUS_LAYER_ORDER", Afs;
    AmbiguousTuckChoice => "E_AMBIGUOUS_TUCK_CHOICE", Afs;
    AmbiguousMountainValleyAssignment => "E_AMBIGUOUS_MOUNTAIN_VALLEY_ASSIGNMENT", Afs;
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Code {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown diagnostic code `{0}`")]
pub struct UnknownCode(pub String);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("malformed diagnostic record: {0}")]
    Malformed(String),
    #[error("diagnostic category {category} does not match code {code}")]
    CategoryMismatch { category: Category, code: Code },
    #[error("undocumented diagnostic parameter `{0}`")]
    UnknownParam(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Note,
}

/// Parameter keys a diagnostic may carry.
///
/// The first block mirrors the compiler error vocabulary; the second block
/// holds the keys this implementation adds for locating problems.
pub const PARAM_KEYS: &[&str] = &[
    "ambiguous_crease_ids_or_vertex_ids",
    "calculated_layers_at_point",
    "conflicting_crease_ids_and_angles",
    "faulty_cp_code_line_numbers",
    "faulty_crease_ids",
    "faulty_token_or_command",
    "faulty_vertex_ids_or_point_coordinates",
    "intersecting_facet_ids",
    "intersecting_layer_ids",
    "layer_a_id",
    "layer_b_id",
    "max_allowable_layers",
    "number_of_possible_states",
    "problematic_coordinates_or_regions",
    "suggested_disambiguation",
    // implementation additions
    "actual",
    "check",
    "column",
    "element",
    "expected",
    "line",
    "reason",
    "reasons",
    "value",
    "vertex",
];

pub fn is_known_param(key: &str) -> bool {
    PARAM_KEYS.contains(&key)
}

/// One structured compiler message.
#[derive(Clone, Debug, PartialEq)]
pub struct Diagnostic {
    code: Code,
    severity: Severity,
    message: String,
    params: BTreeMap<String, Value>,
}

impl Diagnostic {
    pub fn error(code: Code, message: impl Into<String>) -> Self {
        Self::new(code, Severity::Error, message)
    }

    pub fn warning(code: Code, message: impl Into<String>) -> Self {
        Self::new(code, Severity::Warning, message)
    }

    pub fn note(code: Code, message: impl Into<String>) -> Self {
        Self::new(code, Severity::Note, message)
    }

    pub fn new(code: Code, severity: Severity, message: impl Into<String>) -> Self {
        Self { code, severity, message: message.into(), params: BTreeMap::new() }
    }

    /// Attach a parameter.
    ///
    /// # Panics
    /// Panics if `key` is not in [`PARAM_KEYS`]; parameter keys are fixed at
    /// compile time by the call sites, so this is a programming error.
    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        assert!(is_known_param(key), "undocumented diagnostic parameter `{key}`");
        self.params.insert(key.to_owned(), value.into());
        self
    }

    pub fn code(&self) -> Code {
        self.code
    }

    pub fn category(&self) -> Category {
        self.code.category()
    }

    pub fn severity(&self) -> Severity {
        self.severity
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    pub fn message(&self) -> &str {
        &self.message
    }

    pub fn params(&self) -> &BTreeMap<String, Value> {
        &self.params
    }

    pub fn param(&self, key: &str) -> Option<&Value> {
        self.params.get(key)
    }

    /// One-line rendering: `CATEGORY/CODE: message {k=v, ...}`.
    pub fn render(&self) -> String {
        let mut out = format!("{}/{}: {}", self.category(), self.code, self.message);
        if !self.params.is_empty() {
            out.push_str(" {");
            for (i, (k, v)) in self.params.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                out.push_str(k);
                out.push('=');
                render_value(v, &mut out);
            }
            out.push('}');
        }
        out
    }

    /// Machine-readable record used by the session protocol.
    pub fn to_record(&self) -> DiagnosticRecord {
        DiagnosticRecord {
            category: self.category(),
            code: self.code,
            severity: self.severity,
            message: self.message.clone(),
            params: self.params.clone(),
            rendered: self.render(),
        }
    }

    pub fn from_record(record: &DiagnosticRecord) -> Result<Self, RecordError> {
        if record.code.category() != record.category {
            return Err(RecordError::CategoryMismatch { category: record.category, code: record.code });
        }
        if let Some(bad) = record.params.keys().find(|k| !is_known_param(k)) {
            return Err(RecordError::UnknownParam(bad.clone()));
        }
        Ok(Self {
            code: record.code,
            severity: record.severity,
            message: record.message.clone(),
            params: record.params.clone(),
        })
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_value(v: &Value, out: &mut String) {
    match v {
        Value::String(s) => out.push_str(s),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render_value(item, out);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Serialized form of a [`Diagnostic`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticRecord {
    pub category: Category,
    pub code: Code,
    pub severity: Severity,
    pub message: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    pub rendered: String,
}

/// A failed compilation stage, carrying every diagnostic it produced.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{}", summarize(.0))]
pub struct Diagnostics(pub Vec<Diagnostic>);

fn summarize(ds: &[Diagnostic]) -> String {
    match ds {
        [] => "no diagnostics".to_owned(),
        [one] => one.render(),
        [first, rest @ ..] => format!("{} (+{} more)", first.render(), rest.len()),
    }
}

impl Diagnostics {
    pub fn single(d: Diagnostic) -> Self {
        Self(vec![d])
    }

    pub fn categories(&self) -> Vec<Category> {
        let mut cats: Vec<Category> = self.0.iter().filter(|d| d.is_error()).map(Diagnostic::category).collect();
        cats.sort();
        cats.dedup();
        cats
    }

    pub fn has_code(&self, code: Code) -> bool {
        self.0.iter().any(|d| d.code == code)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Diagnostic> {
        self.0.iter()
    }
}

impl From<Diagnostic> for Diagnostics {
    fn from(d: Diagnostic) -> Self {
        Self::single(d)
    }
}

/// Format an angle list in degrees for messages.
pub(crate) fn degrees_list(angles: &[f64]) -> String {
    let parts: Vec<String> = angles.iter().map(|a| format!("{:.3}", a.to_degrees())).collect();
    format!("[{}]", parts.join(", "))
}
