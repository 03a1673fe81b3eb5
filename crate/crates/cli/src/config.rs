use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// 1-skeleton of the affine A_n Coxeter complex
    Lattice,
    /// p-adic lattice-class building of type affine A_3
    Building,
    /// synthetic 5-cycle (fails the triangle condition)
    Cycle5,
    /// synthetic 6-cycle (fails the quadrangle condition)
    Cycle6,
    /// 1-skeleton of the 3-cube (a median graph)
    Cube3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Triangle,
    Quadrangle,
    LocalWm,
    HeightFormula,
    EdgeForms,
    SquareLemma,
    ApartmentEmbed,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Triangle,
        Check::Quadrangle,
        Check::LocalWm,
        Check::HeightFormula,
        Check::EdgeForms,
        Check::SquareLemma,
        Check::ApartmentEmbed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Triangle => "triangle",
            Check::Quadrangle => "quadrangle",
            Check::LocalWm => "local-wm",
            Check::HeightFormula => "height-formula",
            Check::EdgeForms => "edge-forms",
            Check::SquareLemma => "square-lemma",
            Check::ApartmentEmbed => "apartment-embed",
        }
    }

    pub fn min_radius(self) -> usize {
        match self {
            Check::Triangle | Check::Quadrangle | Check::LocalWm => 3,
            Check::SquareLemma => 2,
            Check::HeightFormula | Check::EdgeForms | Check::ApartmentEmbed => 0,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| format!("unknown check {s:?}"))
    }
}

/// Options shared by `ball` and `verify`.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Rank n of the lattice model
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Prime of the building model
    #[arg(long, default_value_t = 2)]
    pub p: i64,
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    /// Ball center as a canonical vertex identifier (default: the base vertex)
    #[arg(long)]
    pub center: Option<String>,
    /// Abort once a ball exceeds this many vertices
    #[arg(long, default_value_t = 5_000_000)]
    pub max_vertices: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}
