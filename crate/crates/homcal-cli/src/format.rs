//! The structure-file format: one TOML document per structure.
//!
//! Every file carries a `kind`, a `[ring]` section naming the base
//! variables and the substitution images, and exactly one payload section
//! named after the kind. All polynomial and rational entries are strings
//! in the kernel's expression grammar (`2*t^2 - 1/3`); all indices are
//! 1-based. The exact field names are documented in `docs/FORMAT.md`.
//!
//! Printing is deterministic (fixed key order, entries sorted by index,
//! polynomials rendered canonically), so `print ∘ parse` is idempotent:
//! parsing a printed file and printing again reproduces the bytes.

use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use num::Zero;
use serde::{Deserialize, Serialize};

use homcal::algebroid::HomLieAlgebroid;
use homcal::bialgebroid::{
    dual_bialgebroid, induced_poisson, verify_bialgebroid, HomLieBialgebroid,
};
use homcal::courant::{
    build_double, to_hom_lie_2, verify_courant, verify_hom_lie_2, HomCourantAlgebroid,
};
use homcal::exterior::MultiVector;
use homcal::homlie::{self, HomLieAlgebra, HomLieBialgebra, QuadraticHomLieAlgebra};
use homcal::poisson::{cotangent_algebroid, verify_poisson, HomPoissonStructure};
use homcal::report::Report;
use homcal::ring::{Poly, PolyRing, Q, RingAuto};

/// A parsed structure of any supported kind.
#[derive(Debug, Clone)]
pub enum Structure {
    /// A Hom-Lie algebra over the constants, optionally carrying an
    /// invariant pairing (the shape of a bialgebra double).
    HomLie {
        algebra: HomLieAlgebra,
        pairing: Option<Vec<Vec<Q>>>,
    },
    /// A Hom-Lie bialgebra: an algebra with a compatible dual bracket.
    Bialgebra(HomLieBialgebra),
    /// A Hom-Lie algebroid over a polynomial base.
    Algebroid(HomLieAlgebroid),
    /// A Hom-Poisson structure (bivector over the tangent algebroid).
    Poisson(HomPoissonStructure),
    /// A dual pair of Hom-Lie algebroids.
    Bialgebroid(HomLieBialgebroid),
    /// A Hom-Courant algebroid.
    Courant(HomCourantAlgebroid),
}

impl Structure {
    /// The `kind` string used in files.
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::HomLie { .. } => "homlie",
            Structure::Bialgebra(_) => "bialgebra",
            Structure::Algebroid(_) => "algebroid",
            Structure::Poisson(_) => "poisson",
            Structure::Bialgebroid(_) => "bialgebroid",
            Structure::Courant(_) => "courant",
        }
    }
}

// ---------------------------------------------------------------------
// File schema (serde side).
// ---------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRoot {
    kind: String,
    ring: RingSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    homlie: Option<HomLieSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bialgebra: Option<BialgebraSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebroid: Option<AlgebroidSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poisson: Option<PoissonSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bialgebroid: Option<BialgebroidSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    courant: Option<CourantSection>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingSection {
    /// Base variable names; empty for constant-coefficient structures.
    variables: Vec<String>,
    /// Substitution images σ(x_μ), one polynomial string per variable.
    images: Vec<String>,
}

/// One sparse table row: the value of a bracket/product on (e_i, e_j),
/// as a dense coefficient list in the module basis. Indices are 1-based.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableEntry {
    i: usize,
    j: usize,
    value: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomLieSection {
    dim: usize,
    /// twist[r][c] = coefficient of e_{r+1} in Φ(e_{c+1}); rational strings.
    twist: Vec<Vec<String>>,
    /// Bracket rows for i < j; missing pairs are zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    brackets: Vec<TableEntry>,
    /// Optional symmetric invariant pairing matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pairing: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BialgebraSection {
    dim: usize,
    twist: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    brackets: Vec<TableEntry>,
    /// Dual bracket rows ([ε^i, ε^j] coefficients); the dual twist is
    /// always the adjoint inverse of `twist` and is not stored.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    dual_brackets: Vec<TableEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebroidSection {
    rank: usize,
    /// twist[r][c] = coefficient of e_{r+1} in φ_A(e_{c+1}); polynomials.
    twist: Vec<Vec<String>>,
    /// anchor[i][μ] = a_A(e_{i+1})(x_{μ+1}); the anchor derivation of the
    /// i-th basis section in the derivation basis D_μ = σ∘∂_μ.
    anchor: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    brackets: Vec<TableEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BivectorEntry {
    i: usize,
    j: usize,
    value: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PoissonSection {
    /// π = Σ value · D_i ∧ D_j over entries with i < j.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    bivector: Vec<BivectorEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BialgebroidSection {
    a: AlgebroidSection,
    astar: AlgebroidSection,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CourantSection {
    rank: usize,
    twist: Vec<Vec<String>>,
    /// Symmetric pairing matrix B(u_i, u_j); polynomials with constant
    /// nonzero determinant.
    pairing: Vec<Vec<String>>,
    anchor: Vec<Vec<String>>,
    /// Product rows u_i ⊙ u_j for any (i, j); the product is not skew,
    /// so both triangles may appear. Missing pairs are zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    products: Vec<TableEntry>,
}

// ---------------------------------------------------------------------
// Parsing.
// ---------------------------------------------------------------------

/// Parses a structure file, returning the validated structure.
///
/// Syntax errors carry the line/column from the TOML parser; semantic
/// errors (bad index, wrong shape, non-invertible substitution, violated
/// frame conditions) name the offending field.
pub fn parse_structure(text: &str) -> Result<Structure> {
    let root: FileRoot = toml::from_str(text).map_err(|e| anyhow!("{e}"))?;

    let known = [
        "homlie",
        "bialgebra",
        "algebroid",
        "poisson",
        "bialgebroid",
        "courant",
    ];
    if !known.contains(&root.kind.as_str()) {
        bail!(
            "unknown kind {:?}; expected one of {}",
            root.kind,
            known.join(", ")
        );
    }
    let mut present: Vec<&str> = Vec::new();
    if root.homlie.is_some() {
        present.push("homlie");
    }
    if root.bialgebra.is_some() {
        present.push("bialgebra");
    }
    if root.algebroid.is_some() {
        present.push("algebroid");
    }
    if root.poisson.is_some() {
        present.push("poisson");
    }
    if root.bialgebroid.is_some() {
        present.push("bialgebroid");
    }
    if root.courant.is_some() {
        present.push("courant");
    }
    if present != [root.kind.as_str()] {
        bail!(
            "kind {:?} requires exactly one payload section [{}]; found [{}]",
            root.kind,
            root.kind,
            present.join("], [")
        );
    }

    if root.ring.variables.len() != root.ring.images.len() {
        bail!(
            "the ring declares {} variable(s) but {} substitution image(s)",
            root.ring.variables.len(),
            root.ring.images.len()
        );
    }
    let constant = matches!(root.kind.as_str(), "homlie" | "bialgebra");
    if constant && !root.ring.variables.is_empty() {
        bail!(
            "kind {:?} is constant-coefficient; the variable list must be empty",
            root.kind
        );
    }
    let ring = if root.ring.variables.is_empty() {
        PolyRing::rationals()
    } else {
        PolyRing::new(root.ring.variables.clone())?
    };
    let sigma = if ring.nvars() == 0 {
        RingAuto::identity(&ring)
    } else {
        let images = root
            .ring
            .images
            .iter()
            .enumerate()
            .map(|(mu, s)| {
                ring.parse(s)
                    .with_context(|| format!("in [ring] image of {}", ring.vars()[mu]))
            })
            .collect::<Result<Vec<_>>>()?;
        RingAuto::new(&ring, images).context("the substitution is not valid")?
    };

    match root.kind.as_str() {
        "homlie" => {
            let s = root.homlie.as_ref().unwrap();
            let algebra = HomLieAlgebra::new(
                s.dim,
                &parse_q_entries("homlie", &s.brackets, s.dim, s.dim)?,
                parse_q_matrix("homlie.twist", &s.twist, s.dim)?,
            )?;
            let pairing = match &s.pairing {
                None => None,
                Some(m) => Some(parse_q_matrix("homlie.pairing", m, s.dim)?),
            };
            Ok(Structure::HomLie { algebra, pairing })
        }
        "bialgebra" => {
            let s = root.bialgebra.as_ref().unwrap();
            let algebra = HomLieAlgebra::new(
                s.dim,
                &parse_q_entries("bialgebra", &s.brackets, s.dim, s.dim)?,
                parse_q_matrix("bialgebra.twist", &s.twist, s.dim)?,
            )?;
            let duals = parse_q_entries("bialgebra (dual)", &s.dual_brackets, s.dim, s.dim)?;
            Ok(Structure::Bialgebra(HomLieBialgebra::new(algebra, &duals)?))
        }
        "algebroid" => {
            let s = root.algebroid.as_ref().unwrap();
            Ok(Structure::Algebroid(parse_algebroid(
                "algebroid", s, &ring, &sigma,
            )?))
        }
        "poisson" => {
            let s = root.poisson.as_ref().unwrap();
            let n = ring.nvars();
            let mut pi = MultiVector::zero(&ring, n, 2);
            let mut seen = std::collections::BTreeSet::new();
            for entry in &s.bivector {
                if entry.i < 1 || entry.j < 1 || entry.i > n || entry.j > n {
                    bail!(
                        "bivector entry ({}, {}): index out of range 1..={n}",
                        entry.i,
                        entry.j
                    );
                }
                if entry.i >= entry.j {
                    bail!(
                        "bivector entry ({}, {}): entries must have i < j (the lower triangle follows by skew-symmetry)",
                        entry.i,
                        entry.j
                    );
                }
                if !seen.insert((entry.i, entry.j)) {
                    bail!("duplicate bivector entry ({}, {})", entry.i, entry.j);
                }
                let value = ring.parse(&entry.value).with_context(|| {
                    format!("in bivector entry ({}, {})", entry.i, entry.j)
                })?;
                pi = pi.add(
                    &MultiVector::basis_tuple(&ring, n, &[entry.i - 1, entry.j - 1]).scale(&value),
                );
            }
            Ok(Structure::Poisson(HomPoissonStructure::new(&sigma, pi)?))
        }
        "bialgebroid" => {
            let s = root.bialgebroid.as_ref().unwrap();
            let a = parse_algebroid("bialgebroid.a", &s.a, &ring, &sigma)?;
            let astar = parse_algebroid("bialgebroid.astar", &s.astar, &ring, &sigma)?;
            Ok(Structure::Bialgebroid(HomLieBialgebroid::new(a, astar)?))
        }
        "courant" => {
            let s = root.courant.as_ref().unwrap();
            let n = s.rank;
            let twist = parse_poly_matrix("courant.twist", &s.twist, n, n, &ring)?;
            let pairing = parse_poly_matrix("courant.pairing", &s.pairing, n, n, &ring)?;
            let anchor =
                parse_poly_matrix("courant.anchor", &s.anchor, n, ring.nvars(), &ring)?;
            let mut table = vec![vec![vec![ring.zero(); n]; n]; n];
            let mut seen = std::collections::BTreeSet::new();
            for entry in &s.products {
                if entry.i < 1 || entry.j < 1 || entry.i > n || entry.j > n {
                    bail!(
                        "product entry ({}, {}): index out of range 1..={n}",
                        entry.i,
                        entry.j
                    );
                }
                if !seen.insert((entry.i, entry.j)) {
                    bail!("duplicate product entry ({}, {})", entry.i, entry.j);
                }
                if entry.value.len() != n {
                    bail!(
                        "product entry ({}, {}): {} component(s), expected {n}",
                        entry.i,
                        entry.j,
                        entry.value.len()
                    );
                }
                for (k, src) in entry.value.iter().enumerate() {
                    table[entry.i - 1][entry.j - 1][k] = ring.parse(src).with_context(|| {
                        format!("in product entry ({}, {})", entry.i, entry.j)
                    })?;
                }
            }
            Ok(Structure::Courant(HomCourantAlgebroid::new(
                &sigma, twist, pairing, anchor, table,
            )?))
        }
        _ => unreachable!("kind validated above"),
    }
}

/// Parses a dense matrix of rational strings.
fn parse_q_matrix(field: &str, rows: &[Vec<String>], dim: usize) -> Result<Vec<Vec<Q>>> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        bail!("{field} must be a {dim}×{dim} matrix");
    }
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, s)| {
                    parse_q(s).with_context(|| format!("in {field} entry ({}, {})", r + 1, c + 1))
                })
                .collect()
        })
        .collect()
}

/// Parses one rational constant through the expression grammar.
fn parse_q(src: &str) -> Result<Q> {
    let constants = PolyRing::rationals();
    let p = constants.parse(src)?;
    p.as_constant()
        .ok_or_else(|| anyhow!("expected a rational constant, got {src:?}"))
}

/// Parses sparse table rows with rational values into 0-based tuples.
fn parse_q_entries(
    field: &str,
    entries: &[TableEntry],
    dim: usize,
    components: usize,
) -> Result<Vec<(usize, usize, Vec<Q>)>> {
    let mut out = Vec::with_capacity(entries.len());
    let mut seen = std::collections::BTreeSet::new();
    for entry in entries {
        if entry.i < 1 || entry.j < 1 || entry.i > dim || entry.j > dim {
            bail!(
                "{field} bracket entry ({}, {}): index out of range 1..={dim}",
                entry.i,
                entry.j
            );
        }
        if entry.i >= entry.j {
            bail!(
                "{field} bracket entry ({}, {}): entries must have i < j (the rest follows by skew-symmetry)",
                entry.i,
                entry.j
            );
        }
        if !seen.insert((entry.i, entry.j)) {
            bail!("duplicate {field} bracket entry ({}, {})", entry.i, entry.j);
        }
        if entry.value.len() != components {
            bail!(
                "{field} bracket entry ({}, {}): {} component(s), expected {components}",
                entry.i,
                entry.j,
                entry.value.len()
            );
        }
        let value = entry
            .value
            .iter()
            .map(|s| {
                parse_q(s).with_context(|| {
                    format!("in {field} bracket entry ({}, {})", entry.i, entry.j)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        out.push((entry.i - 1, entry.j - 1, value));
    }
    Ok(out)
}

/// Parses a dense polynomial matrix of the given shape.
fn parse_poly_matrix(
    field: &str,
    rows: &[Vec<String>],
    nrows: usize,
    ncols: usize,
    ring: &Arc<PolyRing>,
) -> Result<Vec<Vec<Poly>>> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        bail!("{field} must be a {nrows}×{ncols} matrix");
    }
    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, s)| {
                    ring.parse(s)
                        .with_context(|| format!("in {field} entry ({}, {})", r + 1, c + 1))
                })
                .collect()
        })
        .collect()
}

/// Builds a Hom-Lie algebroid from its file section.
fn parse_algebroid(
    field: &str,
    s: &AlgebroidSection,
    ring: &Arc<PolyRing>,
    sigma: &RingAuto,
) -> Result<HomLieAlgebroid> {
    let n = s.rank;
    let twist = parse_poly_matrix(&format!("{field}.twist"), &s.twist, n, n, ring)?;
    let anchor = parse_poly_matrix(&format!("{field}.anchor"), &s.anchor, n, ring.nvars(), ring)?;
    let mut brackets = Vec::with_capacity(s.brackets.len());
    let mut seen = std::collections::BTreeSet::new();
    for entry in &s.brackets {
        if entry.i < 1 || entry.j < 1 || entry.i > n || entry.j > n {
            bail!(
                "{field} bracket entry ({}, {}): index out of range 1..={n}",
                entry.i,
                entry.j
            );
        }
        if entry.i >= entry.j {
            bail!(
                "{field} bracket entry ({}, {}): entries must have i < j (the rest follows by skew-symmetry)",
                entry.i,
                entry.j
            );
        }
        if !seen.insert((entry.i, entry.j)) {
            bail!("duplicate {field} bracket entry ({}, {})", entry.i, entry.j);
        }
        if entry.value.len() != n {
            bail!(
                "{field} bracket entry ({}, {}): {} component(s), expected {n}",
                entry.i,
                entry.j,
                entry.value.len()
            );
        }
        let value = entry
            .value
            .iter()
            .map(|src| {
                ring.parse(src).with_context(|| {
                    format!("in {field} bracket entry ({}, {})", entry.i, entry.j)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        brackets.push((entry.i - 1, entry.j - 1, value));
    }
    Ok(HomLieAlgebroid::new(sigma, twist, anchor, &brackets)?)
}

// ---------------------------------------------------------------------
// Printing.
// ---------------------------------------------------------------------

/// Renders a structure as its canonical file text.
pub fn print_structure(s: &Structure) -> String {
    let root = to_file_root(s);
    toml::to_string(&root).expect("the file schema serializes without error")
}

fn to_file_root(s: &Structure) -> FileRoot {
    let mut root = FileRoot {
        kind: s.kind().to_string(),
        ring: ring_section(s),
        homlie: None,
        bialgebra: None,
        algebroid: None,
        poisson: None,
        bialgebroid: None,
        courant: None,
    };
    match s {
        Structure::HomLie { algebra, pairing } => {
            root.homlie = Some(HomLieSection {
                dim: algebra.dim(),
                twist: q_matrix_strings(algebra.phi_matrix()),
                brackets: q_table_entries(algebra.structure_constants()),
                pairing: pairing.as_ref().map(|m| q_matrix_strings(m)),
            });
        }
        Structure::Bialgebra(bi) => {
            root.bialgebra = Some(BialgebraSection {
                dim: bi.algebra().dim(),
                twist: q_matrix_strings(bi.algebra().phi_matrix()),
                brackets: q_table_entries(bi.algebra().structure_constants()),
                dual_brackets: q_table_entries(bi.dual_algebra().structure_constants()),
            });
        }
        Structure::Algebroid(a) => {
            root.algebroid = Some(algebroid_section(a));
        }
        Structure::Poisson(p) => {
            let n = p.base().rank();
            let mut bivector = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let c = p.bivector().component(&[i, j]);
                    if !c.is_zero() {
                        bivector.push(BivectorEntry {
                            i: i + 1,
                            j: j + 1,
                            value: c.to_string(),
                        });
                    }
                }
            }
            root.poisson = Some(PoissonSection { bivector });
        }
        Structure::Bialgebroid(b) => {
            root.bialgebroid = Some(BialgebroidSection {
                a: algebroid_section(b.a()),
                astar: algebroid_section(b.astar()),
            });
        }
        Structure::Courant(c) => {
            let n = c.rank();
            let mut products = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let row = c.product_basis(i, j);
                    let value: Vec<String> =
                        (0..n).map(|k| row.component(&[k]).to_string()).collect();
                    if (0..n).any(|k| !row.component(&[k]).is_zero()) {
                        products.push(TableEntry {
                            i: i + 1,
                            j: j + 1,
                            value,
                        });
                    }
                }
            }
            root.courant = Some(CourantSection {
                rank: n,
                twist: poly_matrix_strings(c.phi_e().matrix()),
                pairing: poly_matrix_strings(c.pairing_matrix()),
                anchor: (0..n)
                    .map(|i| {
                        c.anchor_basis(i)
                            .coeffs()
                            .iter()
                            .map(|p| p.to_string())
                            .collect()
                    })
                    .collect(),
                products,
            });
        }
    }
    root
}

fn ring_section(s: &Structure) -> RingSection {
    let (ring, sigma) = match s {
        Structure::HomLie { algebra, .. } => (algebra.scalar_ring().clone(), None),
        Structure::Bialgebra(bi) => (bi.algebra().scalar_ring().clone(), None),
        Structure::Algebroid(a) => (a.ring().clone(), Some(a.sigma().clone())),
        Structure::Poisson(p) => (p.base().ring().clone(), Some(p.sigma().clone())),
        Structure::Bialgebroid(b) => (b.ring().clone(), Some(b.sigma().clone())),
        Structure::Courant(c) => (c.ring().clone(), Some(c.sigma().clone())),
    };
    RingSection {
        variables: ring.vars().to_vec(),
        images: match sigma {
            None => Vec::new(),
            Some(auto) => auto.images().iter().map(|p| p.to_string()).collect(),
        },
    }
}

fn algebroid_section(a: &HomLieAlgebroid) -> AlgebroidSection {
    let n = a.rank();
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let row = &a.bracket_table()[i][j];
            if row.iter().any(|p| !p.is_zero()) {
                brackets.push(TableEntry {
                    i: i + 1,
                    j: j + 1,
                    value: row.iter().map(|p| p.to_string()).collect(),
                });
            }
        }
    }
    AlgebroidSection {
        rank: n,
        twist: poly_matrix_strings(a.phi().matrix()),
        anchor: (0..n)
            .map(|i| a.anchor(i).coeffs().iter().map(|p| p.to_string()).collect())
            .collect(),
        brackets,
    }
}

fn q_matrix_strings(m: &[Vec<Q>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(|q| q.to_string()).collect())
        .collect()
}

fn poly_matrix_strings(m: &[Vec<Poly>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|row| row.iter().map(|p| p.to_string()).collect())
        .collect()
}

/// Sparse entries for a constant structure-constant table, upper triangle
/// only (the stored table is skew in (i, j)).
fn q_table_entries(c: &[Vec<Vec<Q>>]) -> Vec<TableEntry> {
    let dim = c.len();
    let mut out = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            if c[i][j].iter().any(|q| !q.is_zero()) {
                out.push(TableEntry {
                    i: i + 1,
                    j: j + 1,
                    value: c[i][j].iter().map(|q| q.to_string()).collect(),
                });
            }
        }
    }
    out
}

// ---------------------------------------------------------------------
// Verification and derivation dispatch.
// ---------------------------------------------------------------------

/// Runs the kind-appropriate verification suite.
pub fn verify_structure(s: &Structure, max_degree: u32) -> Report {
    match s {
        Structure::HomLie {
            algebra,
            pairing: None,
        } => algebra.verify(),
        Structure::HomLie {
            algebra,
            pairing: Some(pairing),
        } => QuadraticHomLieAlgebra {
            algebra: algebra.clone(),
            pairing: pairing.clone(),
        }
        .verify(),
        Structure::Bialgebra(bi) => bi.verify(),
        Structure::Algebroid(a) => a.verify(max_degree),
        Structure::Poisson(p) => verify_poisson(p, max_degree),
        Structure::Bialgebroid(b) => verify_bialgebroid(b, max_degree),
        Structure::Courant(c) => verify_courant(c, max_degree),
    }
}

/// A derivation target: which construction to apply to the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Bialgebroid → Courant double, or bialgebra → quadratic double.
    Double,
    /// Poisson → cotangent algebroid.
    Cotangent,
    /// Courant → Hom-Lie 2-algebra (re-verifies the two-term laws; the
    /// 2-algebra is written as its underlying Courant presentation).
    TwoAlgebra,
    /// Bialgebroid → the swapped pair.
    Dual,
    /// Bialgebroid → the induced Poisson structure on the base.
    InducedPoisson,
}

impl Target {
    pub fn name(&self) -> &'static str {
        match self {
            Target::Double => "double",
            Target::Cotangent => "cotangent",
            Target::TwoAlgebra => "two-algebra",
            Target::Dual => "dual",
            Target::InducedPoisson => "induced-poisson",
        }
    }
}

/// The outcome of a derivation command.
pub enum DeriveResult {
    /// Construction succeeded; `verification` is the auto-run report on
    /// the output (the output is valid iff it passed).
    Derived {
        output: Structure,
        verification: Report,
    },
    /// The input failed its own verification (the precondition).
    InputFailed(Report),
    /// The construction itself reported an error.
    BuildFailed(String),
    /// The kind/target combination is not defined.
    Incompatible(String),
}

/// Applies a derivation target: verifies the input, runs the construction,
/// and auto-verifies the output.
pub fn derive_structure(input: &Structure, target: Target, max_degree: u32) -> DeriveResult {
    let combos = "defined derivations: bialgebroid→double, bialgebra→double, \
                  poisson→cotangent, courant→two-algebra, bialgebroid→dual, \
                  bialgebroid→induced-poisson";
    let pre = verify_structure(input, max_degree);
    match (input, target) {
        (Structure::Bialgebroid(b), Target::Double) => {
            if !pre.passed() {
                return DeriveResult::InputFailed(pre);
            }
            match build_double(b) {
                Err(e) => DeriveResult::BuildFailed(e.to_string()),
                Ok(c) => {
                    let verification = verify_courant(&c, max_degree);
                    DeriveResult::Derived {
                        output: Structure::Courant(c),
                        verification,
                    }
                }
            }
        }
        (Structure::Bialgebra(bi), Target::Double) => {
            if !pre.passed() {
                return DeriveResult::InputFailed(pre);
            }
            match homlie::build_double(bi) {
                Err(e) => DeriveResult::BuildFailed(e.to_string()),
                Ok(quad) => {
                    let verification = quad.verify();
                    DeriveResult::Derived {
                        output: Structure::HomLie {
                            algebra: quad.algebra,
                            pairing: Some(quad.pairing),
                        },
                        verification,
                    }
                }
            }
        }
        (Structure::Poisson(p), Target::Cotangent) => {
            if !pre.passed() {
                return DeriveResult::InputFailed(pre);
            }
            match cotangent_algebroid(p) {
                Err(e) => DeriveResult::BuildFailed(e.to_string()),
                Ok(a) => {
                    let verification = a.verify(max_degree);
                    DeriveResult::Derived {
                        output: Structure::Algebroid(a),
                        verification,
                    }
                }
            }
        }
        (Structure::Courant(c), Target::TwoAlgebra) => {
            if !pre.passed() {
                return DeriveResult::InputFailed(pre);
            }
            let two = to_hom_lie_2(c);
            let verification = verify_hom_lie_2(&two, max_degree);
            DeriveResult::Derived {
                output: Structure::Courant(c.clone()),
                verification,
            }
        }
        (Structure::Bialgebroid(b), Target::Dual) => {
            if !pre.passed() {
                return DeriveResult::InputFailed(pre);
            }
            match dual_bialgebroid(b) {
                Err(e) => DeriveResult::BuildFailed(e.to_string()),
                Ok(d) => {
                    let verification = verify_bialgebroid(&d, max_degree);
                    DeriveResult::Derived {
                        output: Structure::Bialgebroid(d),
                        verification,
                    }
                }
            }
        }
        (Structure::Bialgebroid(b), Target::InducedPoisson) => {
            if !pre.passed() {
                return DeriveResult::InputFailed(pre);
            }
            match induced_poisson(b) {
                Err(e) => DeriveResult::BuildFailed(e.to_string()),
                Ok(p) => {
                    let verification = verify_poisson(&p, max_degree);
                    DeriveResult::Derived {
                        output: Structure::Poisson(p),
                        verification,
                    }
                }
            }
        }
        (other, t) => DeriveResult::Incompatible(format!(
            "target {:?} does not apply to kind {:?}; {combos}",
            t.name(),
            other.kind()
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL_HOMLIE: &str = r#"
kind = "homlie"

[ring]
variables = []
images = []

[homlie]
dim = 2
twist = [["1", "0"], ["0", "3"]]

[[homlie.brackets]]
i = 1
j = 2
value = ["0", "1"]
"#;

    #[test]
    fn minimal_homlie_file_parses_and_verifies() {
        let s = parse_structure(MINIMAL_HOMLIE).unwrap();
        assert_eq!(s.kind(), "homlie");
        let report = verify_structure(&s, 3);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn printing_is_idempotent_after_one_parse() {
        let s = parse_structure(MINIMAL_HOMLIE).unwrap();
        let once = print_structure(&s);
        let twice = print_structure(&parse_structure(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn out_of_range_component_count_is_a_semantic_error() {
        let text = MINIMAL_HOMLIE.replace(r#"value = ["0", "1"]"#, r#"value = ["0", "1", "5"]"#);
        let err = parse_structure(&text).unwrap_err().to_string();
        assert!(err.contains("expected 2"), "{err}");
    }

    #[test]
    fn out_of_range_index_is_a_semantic_error() {
        let text = MINIMAL_HOMLIE.replace("j = 2", "j = 3");
        let err = parse_structure(&text).unwrap_err().to_string();
        assert!(err.contains("out of range"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_a_position() {
        let err = parse_structure("kind = \"homlie\"\n[ring\n").unwrap_err();
        let msg = format!("{err:#}");
        assert!(msg.contains("line"), "{msg}");
    }

    #[test]
    fn kind_and_section_must_match() {
        let text = MINIMAL_HOMLIE.replace("kind = \"homlie\"", "kind = \"poisson\"");
        let err = parse_structure(&text).unwrap_err().to_string();
        assert!(err.contains("requires exactly one payload section"), "{err}");
    }

    #[test]
    fn polynomials_round_trip_through_the_grammar() {
        let ring = PolyRing::new(vec!["t"]).unwrap();
        let p = ring.parse("2*t^2 - 1/3").unwrap();
        let reparsed = ring.parse(&p.to_string()).unwrap();
        assert_eq!(p, reparsed);
    }
}
