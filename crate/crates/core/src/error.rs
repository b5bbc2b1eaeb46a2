use std::fmt;

use thiserror::Error;

use crate::ideals::IdealWitness;
use crate::subset::Subset;

/// First violated group axiom of an operation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableDiagnostic {
    /// Not square, or an entry outside `0..n`.
    Malformed { reason: String },
    /// `0` fails to act as a two-sided identity on `element`.
    Identity { element: usize },
    Associativity { a: usize, b: usize, c: usize },
    RowNotPermutation { row: usize },
    ColumnNotPermutation { column: usize },
}

impl TableDiagnostic {
    pub fn code(&self) -> &'static str {
        match self {
            TableDiagnostic::Malformed { .. } => "malformed-table",
            TableDiagnostic::Identity { .. } => "identity",
            TableDiagnostic::Associativity { .. } => "associativity",
            TableDiagnostic::RowNotPermutation { .. } => "row-not-permutation",
            TableDiagnostic::ColumnNotPermutation { .. } => "column-not-permutation",
        }
    }

    /// Witness elements named by the diagnostic.
    pub fn witness(&self) -> Vec<usize> {
        match *self {
            TableDiagnostic::Malformed { .. } => vec![],
            TableDiagnostic::Identity { element } => vec![element],
            TableDiagnostic::Associativity { a, b, c } => vec![a, b, c],
            TableDiagnostic::RowNotPermutation { row } => vec![row],
            TableDiagnostic::ColumnNotPermutation { column } => vec![column],
        }
    }
}

impl fmt::Display for TableDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableDiagnostic::Malformed { reason } => write!(f, "malformed-table: {reason}"),
            TableDiagnostic::Identity { element } => {
                write!(f, "identity: 0 is not neutral for element {element}")
            }
            TableDiagnostic::Associativity { a, b, c } => {
                write!(f, "associativity: (a*b)*c != a*(b*c) at ({a}, {b}, {c})")
            }
            TableDiagnostic::RowNotPermutation { row } => {
                write!(f, "row-not-permutation: row {row}")
            }
            TableDiagnostic::ColumnNotPermutation { column } => {
                write!(f, "column-not-permutation: column {column}")
            }
        }
    }
}

/// The three brace axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// `(A,+)` is an abelian group.
    Lb1,
    /// `(A,·)` is a group.
    Lb2,
    /// `a(b+c) = ab + ac - a`.
    Lb3,
}

impl Axiom {
    pub fn code(self) -> &'static str {
        match self {
            Axiom::Lb1 => "LB1",
            Axiom::Lb2 => "LB2",
            Axiom::Lb3 => "LB3",
        }
    }
}

/// Why a pair of tables is not a brace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomFailure {
    /// One of the tables is not a group table.
    Table { axiom: Axiom, diagnostic: TableDiagnostic },
    /// The addition is a group but `a + b != b + a`.
    NotCommutative { a: usize, b: usize },
    /// `a(b+c) != ab + ac - a`.
    Distributivity { a: usize, b: usize, c: usize },
}

impl AxiomFailure {
    pub fn axiom(&self) -> Axiom {
        match self {
            AxiomFailure::Table { axiom, .. } => *axiom,
            AxiomFailure::NotCommutative { .. } => Axiom::Lb1,
            AxiomFailure::Distributivity { .. } => Axiom::Lb3,
        }
    }

    pub fn witness(&self) -> Vec<usize> {
        match self {
            AxiomFailure::Table { diagnostic, .. } => diagnostic.witness(),
            AxiomFailure::NotCommutative { a, b } => vec![*a, *b],
            AxiomFailure::Distributivity { a, b, c } => vec![*a, *b, *c],
        }
    }
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::Table { axiom, diagnostic } => write!(f, "{}: {diagnostic}", axiom.code()),
            AxiomFailure::NotCommutative { a, b } => {
                write!(f, "LB1: addition is not commutative at ({a}, {b})")
            }
            AxiomFailure::Distributivity { a, b, c } => {
                write!(f, "LB3: a(b+c) != ab+ac-a at ({a}, {b}, {c})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no-carrier: at least one cyclic factor is required")]
    NoCarrier,
    #[error("order-too-large: order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("enumeration-too-large: more than {limit} {what}")]
    EnumerationTooLarge { what: &'static str, limit: usize },
    #[error("{0}")]
    Table(TableDiagnostic),
    #[error("not-abelian: {a} + {b} != {b} + {a}")]
    NotAbelian { a: usize, b: usize },
    #[error("carrier-mismatch: addition has order {add}, multiplication has order {mul}")]
    CarrierMismatch { add: usize, mul: usize },
    #[error("{0}")]
    Axiom(AxiomFailure),
    #[error("not-radical-for-parameters: n = {n}, c = {coeff}: {failure}")]
    NotRadicalForParameters { n: usize, coeff: usize, failure: AxiomFailure },
    #[error("not-an-ideal: {0}")]
    NotAnIdeal(IdealWitness),
    #[error("not-a-subbrace: {0}")]
    NotASubbrace(IdealWitness),
    #[error("hypothesis-not-satisfied: the brace is not star-nilpotent")]
    HypothesisNotSatisfied { component: Subset },
    #[error("oracle-cap: the brute-force oracle accepts orders up to {max}, got {order}")]
    OracleCap { order: usize, max: usize },
    #[error("empty-corpus")]
    EmptyCorpus,
    #[error("parse-error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("schema-error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("io-error: {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Stable machine-readable tag.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NoCarrier => "no-carrier",
            Error::OrderTooLarge { .. } => "order-too-large",
            Error::EnumerationTooLarge { .. } => "enumeration-too-large",
            Error::Table(d) => d.code(),
            Error::NotAbelian { .. } => "not-abelian",
            Error::CarrierMismatch { .. } => "carrier-mismatch",
            Error::Axiom(f) => f.axiom().code(),
            Error::NotRadicalForParameters { .. } => "not-radical-for-parameters",
            Error::NotAnIdeal(_) => "not-an-ideal",
            Error::NotASubbrace(_) => "not-a-subbrace",
            Error::HypothesisNotSatisfied { .. } => "hypothesis-not-satisfied",
            Error::OracleCap { .. } => "oracle-cap",
            Error::EmptyCorpus => "empty-corpus",
            Error::Parse { .. } => "parse-error",
            Error::Schema { .. } => "schema-error",
            Error::Io { .. } => "io-error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
