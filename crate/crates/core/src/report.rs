//! End-to-end pipeline producing a deterministic JSON report, and its
//! re-derivation check.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::arith::factor::irreducible_over_q;
use crate::arith::interval::Interval;
use crate::arith::poly::IntPoly;
use crate::arith::rational::{self, Rational};
use crate::error::Error;
use crate::field::{build_field, FieldElem, FieldOptions, FieldSpec};
use crate::nilpotent::{
    gamma_n_generators, quotient_algebra, split_w, verify_heisenberg_power, wedge_fixed_factor,
    NilAlgebra, NilPoint,
};
use crate::solvable::{anosov_classify, in_gamma_a, unit_action, unit_log_rank, AnosovClass, MIXED_NOTE};
use crate::topology::{ce_betti, kunneth_betti, solvable_factor_algebra};

pub const SCHEMA_VERSION: u32 = 1;
/// Largest `d` for which the Chevalley-Eilenberg oracle runs by default.
pub const ORACLE_MAX_D: usize = 2;
/// Interval endpoints are rounded outward to this many binary digits.
const REPORT_BITS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgeConfig {
    pub p_coeffs: IntPoly,
    pub shift: BigInt,
    pub unit_bound: u32,
    pub width: Rational,
    pub degree_cap: usize,
}

impl ForgeConfig {
    pub fn new(p_coeffs: IntPoly, shift: BigInt) -> Self {
        let opts = FieldOptions::default();
        ForgeConfig {
            p_coeffs,
            shift,
            unit_bound: 3,
            width: opts.width,
            degree_cap: opts.degree_cap,
        }
    }

    pub fn field_options(&self) -> FieldOptions {
        FieldOptions {
            width: self.width.clone(),
            degree_cap: self.degree_cap,
        }
    }

    fn to_block(&self) -> ConfigBlock {
        ConfigBlock {
            p_coeffs: self.p_coeffs.coeffs().iter().map(BigInt::to_string).collect(),
            shift: self.shift.to_string(),
            unit_bound: self.unit_bound,
            width: rational::to_text(&self.width),
            degree_cap: self.degree_cap,
        }
    }

    fn from_json(v: &Value) -> Result<Self, String> {
        let s = |key: &str| v.get(key).and_then(Value::as_str).ok_or(format!("config.{key} missing"));
        let u = |key: &str| v.get(key).and_then(Value::as_u64).ok_or(format!("config.{key} missing"));
        let coeffs = v
            .get("p_coeffs")
            .and_then(Value::as_array)
            .ok_or("config.p_coeffs missing")?
            .iter()
            .map(|c| c.as_str().and_then(|t| t.parse::<BigInt>().ok()).ok_or("bad coefficient"))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ForgeConfig {
            p_coeffs: IntPoly::new(coeffs),
            shift: s("shift")?.parse().map_err(|_| "bad shift".to_string())?,
            unit_bound: u("unit_bound")? as u32,
            width: rational::parse(s("width")?).map_err(|e| e.to_string())?,
            degree_cap: u("degree_cap")? as usize,
        })
    }
}

/// A construction failure tagged with the pipeline stage that raised it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
}

impl fmt::Display for StageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed: {}", self.stage, self.error)
    }
}

impl std::error::Error for StageError {}

fn stage<T>(name: &'static str, r: crate::Result<T>) -> Result<T, StageError> {
    r.map_err(|error| StageError { stage: name, error })
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: ConfigBlock,
    pub field: FieldBlock,
    pub splitting: SplittingBlock,
    pub nilalgebra: NilBlock,
    pub gamma_n: GammaNBlock,
    pub units: UnitsBlock,
    pub cohomology: CohomologyBlock,
    pub out_of_scope: Vec<Annotation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigBlock {
    pub p_coeffs: Vec<String>,
    pub shift: String,
    pub unit_bound: u32,
    pub width: String,
    pub degree_cap: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Bounds {
    pub lo: String,
    pub hi: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldBlock {
    pub produced_by: &'static str,
    #[serde(rename = "Q")]
    pub q: Vec<String>,
    pub d: usize,
    pub palindromic: bool,
    pub irreducible: bool,
    pub minpoly_of_generator_is_q: bool,
    pub roots: Vec<Bounds>,
    pub pairing: Vec<[usize; 2]>,
    pub order: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingBlock {
    pub produced_by: &'static str,
    pub w_dim: usize,
    pub w1_dim: usize,
    pub w2_dim: usize,
    pub wedge_charpoly: Vec<String>,
    pub cofactor_at_one: String,
    pub w1_basis: Vec<Vec<String>>,
    pub w2_basis: Vec<Vec<String>>,
    pub direct_sum: bool,
    pub invariant: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeisenbergBlock {
    pub produced_by: &'static str,
    pub two_step: bool,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub derived_equals_center: bool,
    pub q_irreducible: bool,
    pub note: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct NilBlock {
    pub produced_by: &'static str,
    pub dim: usize,
    pub center_indices: Vec<usize>,
    pub brackets: Vec<BracketEntry>,
    pub heisenberg: HeisenbergBlock,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointEntry {
    pub v: Vec<String>,
    pub w: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaNBlock {
    pub produced_by: &'static str,
    pub generators: Vec<PointEntry>,
    pub center_lattice: Vec<Vec<String>>,
    pub denominator: String,
    pub note: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplierEntry {
    pub lo: String,
    pub hi: String,
    pub exact_one: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitEntry {
    pub coords: Vec<String>,
    pub norm: String,
    pub totally_positive: bool,
    #[serde(rename = "in_gamma_A")]
    pub in_gamma_a: Option<bool>,
    pub multipliers: Vec<MultiplierEntry>,
    pub anosov: Option<String>,
    /// How a derived unit was obtained from searched ones.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub origin: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LogRankBlock {
    pub produced_by: &'static str,
    pub rank_lower_bound: usize,
    pub considered: usize,
    pub tolerance: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnosovSummary {
    pub outside_gamma_a: usize,
    pub anosov: usize,
    pub mixed: usize,
    pub status: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitsBlock {
    pub produced_by: &'static str,
    pub bound: u32,
    pub completeness: String,
    pub searched: Vec<UnitEntry>,
    pub derived: Vec<UnitEntry>,
    pub log_rank: LogRankBlock,
    pub anosov_summary: AnosovSummary,
    pub gamma_a_note: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open_question: Option<&'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyBlock {
    pub produced_by: &'static str,
    pub factor_algebra: &'static str,
    pub kunneth: Vec<u64>,
    pub ce: Option<Vec<u64>>,
    pub euler: i64,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Annotation {
    pub topic: &'static str,
    pub status: &'static str,
}

fn texts(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::to_text).collect()
}

fn int_texts(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

/// Outward rounding to the dyadic grid `2^-bits`.
pub fn round_outward(iv: &Interval, bits: u32) -> Bounds {
    let scale = Rational::from_integer(BigInt::from(1) << bits);
    let lo = (&iv.lo * &scale).floor() / &scale;
    let hi = (&iv.hi * &scale).ceil() / &scale;
    Bounds {
        lo: rational::to_text(&lo),
        hi: rational::to_text(&hi),
    }
}

fn point_entry(p: &NilPoint) -> PointEntry {
    PointEntry {
        v: texts(&p.v),
        w: texts(&p.w),
    }
}

const ANNOTATIONS: [(&str, &str); 6] = [
    ("density of Gamma_N H in N", "analytic statement, not computed"),
    ("CR fibration and orbit closures of the (C*)^d action", "analytic statement, not computed"),
    ("H^0(X, Theta) = C^d and the non-Kahler property", "analytic statement, not computed"),
    ("absence of closed holomorphic 1-forms", "analytic statement, not computed"),
    ("algebraic dimension zero and Kodaira dimension", "analytic statement, not computed"),
    ("H^k(X, R) = H^k(g)", "cited identification; only H^k(g) is computed"),
];

struct Context {
    f: FieldSpec,
    s: crate::nilpotent::Splitting,
    width: Rational,
}

impl Context {
    fn unit_entry(&self, u: &FieldElem, origin: Option<String>) -> Result<(UnitEntry, Option<crate::solvable::UnitAction>), StageError> {
        let tp = self.f.is_totally_positive(u);
        let mut entry = UnitEntry {
            coords: texts(u.coords()),
            norm: rational::to_text(&self.f.norm(u)),
            totally_positive: tp,
            in_gamma_a: None,
            multipliers: Vec::new(),
            anosov: None,
            origin,
        };
        if !tp {
            return Ok((entry, None));
        }
        let ua = stage("unit_action", unit_action(&self.f, &self.s, u, &self.width))?;
        entry.in_gamma_a = Some(in_gamma_a(&ua));
        entry.multipliers = ua
            .multipliers
            .iter()
            .map(|m| {
                let b = round_outward(&m.interval, REPORT_BITS);
                MultiplierEntry {
                    lo: b.lo,
                    hi: b.hi,
                    exact_one: m.exact_one,
                }
            })
            .collect();
        entry.anosov = Some(anosov_classify(&ua).to_string());
        Ok((entry, Some(ua)))
    }
}

pub fn construct(cfg: &ForgeConfig) -> Result<Report, StageError> {
    let f = stage("build_field", build_field(&cfg.p_coeffs, &cfg.shift, &cfg.field_options()))?;
    let s = stage("split_W", split_w(&f))?;
    let ff = stage("split_W", wedge_fixed_factor(&f))?;
    let n: NilAlgebra = stage("quotient_algebra", quotient_algebra(&f, &s))?;
    let cert = stage("verify_heisenberg_power", verify_heisenberg_power(&n, &f))?;
    let gamma = stage("gamma_N_generators", gamma_n_generators(&n))?;
    let minpoly = stage("build_field", f.mul_matrix(&f.generator()).minpoly())?;
    let irreducible = stage("build_field", irreducible_over_q(f.q(), cfg.degree_cap))?.is_irreducible();

    let field = FieldBlock {
        produced_by: "build_field",
        q: int_texts(f.q()),
        d: f.d(),
        palindromic: f.q().is_palindromic(),
        irreducible,
        minpoly_of_generator_is_q: minpoly == f.q().to_rat(),
        roots: f
            .roots()
            .iter()
            .map(|r| Bounds {
                lo: rational::to_text(r.lo()),
                hi: rational::to_text(r.hi()),
            })
            .collect(),
        pairing: f.pairing().into_iter().map(|(a, b)| [a, b]).collect(),
        order: "Z[u0], power basis",
    };
    let splitting = SplittingBlock {
        produced_by: "split_W",
        w_dim: s.w_dim(),
        w1_dim: s.w1_basis().len(),
        w2_dim: s.w2_basis().len(),
        wedge_charpoly: int_texts(&ff.charpoly),
        cofactor_at_one: ff.cofactor_at_one.to_string(),
        w1_basis: s.w1_basis().iter().map(|v| texts(v)).collect(),
        w2_basis: s.w2_basis().iter().map(|v| texts(v)).collect(),
        direct_sum: true,
        invariant: true,
    };
    let nilalgebra = NilBlock {
        produced_by: "quotient_algebra",
        dim: n.dim(),
        center_indices: n.center_indices(),
        brackets: n
            .lie()
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| BracketEntry { i, j, coeffs: texts(&v) })
            .collect(),
        heisenberg: HeisenbergBlock {
            produced_by: "verify_heisenberg_power",
            two_step: cert.two_step,
            derived_dim: cert.derived_dim,
            center_dim: cert.center_dim,
            derived_equals_center: cert.derived_equals_center,
            q_irreducible: cert.q_irreducible,
            note: cert.note,
        },
    };
    let gamma_n = GammaNBlock {
        produced_by: "gamma_N_generators",
        generators: gamma.generators.iter().map(point_entry).collect(),
        center_lattice: gamma.center_lattice.iter().map(|v| texts(v)).collect(),
        denominator: gamma.denominator.to_string(),
        note: "products of generators and their inverses have lattice coordinates in (1/D)Z; \
equality of the generated group with a half-integral lattice is not claimed",
    };

    let ctx = Context {
        width: cfg.width.clone(),
        f,
        s,
    };
    let found = ctx.f.unit_search(cfg.unit_bound);
    let mut actions = Vec::new();
    let mut searched = Vec::new();
    for fu in &found {
        let (entry, ua) = ctx.unit_entry(&fu.elem, None)?;
        searched.push(entry);
        actions.extend(ua);
    }
    let mut derived = Vec::new();
    for fu in found.iter().filter(|fu| !fu.totally_positive) {
        let sq = ctx.f.mul(&fu.elem, &fu.elem);
        if found.iter().any(|g| g.elem == sq) {
            continue;
        }
        let origin = format!("square of [{}]", texts(fu.elem.coords()).join(", "));
        let (entry, ua) = ctx.unit_entry(&sq, Some(origin))?;
        derived.push(entry);
        actions.extend(ua);
    }
    // Two units outside Gamma_A with mutually inverse phi multiply into
    // Gamma_A; with equal phi, their quotient does. Only pairs with the
    // first such unit are formed.
    let outside_ix: Vec<usize> = (0..actions.len()).filter(|&i| !in_gamma_a(&actions[i])).collect();
    let identity = crate::arith::matrix::RatMatrix::identity(ctx.f.d());
    let mut products = Vec::new();
    if let Some((&i, rest)) = outside_ix.split_first() {
        for &j in rest {
            let (ui, uj) = (&actions[i].u, &actions[j].u);
            let (elem, op) = if &actions[i].phi * &actions[j].phi == identity {
                (ctx.f.mul(ui, uj), "product")
            } else if actions[i].phi == actions[j].phi {
                let inv = stage("unit_action", ctx.f.inverse(uj))?;
                (ctx.f.mul(ui, &inv), "quotient")
            } else {
                continue;
            };
            if !elem.is_integral() || actions.iter().chain(&products).any(|ua| ua.u == elem) {
                continue;
            }
            let origin = format!(
                "{op} of [{}] and [{}]",
                texts(ui.coords()).join(", "),
                texts(uj.coords()).join(", ")
            );
            let (entry, ua) = ctx.unit_entry(&elem, Some(origin))?;
            derived.push(entry);
            products.extend(ua);
        }
    }
    actions.extend(products);
    let lr = unit_log_rank(&ctx.f, &actions);
    let classes: Vec<AnosovClass> = actions.iter().map(anosov_classify).collect();
    let outside = classes.iter().filter(|c| **c != AnosovClass::InGammaA).count();
    let anosov = classes.iter().filter(|c| **c == AnosovClass::Anosov).count();
    let mixed = classes.iter().filter(|c| matches!(c, AnosovClass::Mixed(_))).count();
    let status = if outside == 0 {
        format!("SKIPPED: no totally positive unit outside Gamma_A within bound {}", cfg.unit_bound)
    } else if mixed == 0 {
        "all units outside Gamma_A are Anosov".to_string()
    } else {
        format!("{mixed} unit(s) with some multiplier exactly 1")
    };
    let units = UnitsBlock {
        produced_by: "unit_search",
        bound: cfg.unit_bound,
        completeness: format!(
            "all units of Z[u0] with power-basis coordinates in [-{b}, {b}], one per sign pair",
            b = cfg.unit_bound
        ),
        searched,
        derived,
        log_rank: LogRankBlock {
            produced_by: "unit_log_rank",
            rank_lower_bound: lr.rank,
            considered: lr.considered,
            tolerance: lr.tolerance,
            residual: lr.residual,
        },
        anosov_summary: AnosovSummary {
            outside_gamma_a: outside,
            anosov,
            mixed,
            status,
        },
        gamma_a_note: "Gamma_A membership is decided for the listed units only; \
derived products only illustrate the kernel, and a rank d generating set is not produced",
        open_question: (ctx.f.d() >= 3 && mixed > 0).then_some(MIXED_NOTE),
    };

    let d = ctx.f.d();
    let cohomology = stage("cohomology", cohomology_block(d, d <= ORACLE_MAX_D))?;
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        config: cfg.to_block(),
        field,
        splitting,
        nilalgebra,
        gamma_n,
        units,
        cohomology,
        out_of_scope: ANNOTATIONS
            .iter()
            .map(|&(topic, status)| Annotation { topic, status })
            .collect(),
    })
}

pub const FACTOR_ALGEBRA: &str = "s: [T,X] = -X, [T,Y] = Y, [X,Y] = Z";

pub fn cohomology_block(d: usize, oracle: bool) -> crate::Result<CohomologyBlock> {
    let kunneth = kunneth_betti(d);
    let ce = if oracle {
        Some(ce_betti(&solvable_factor_algebra(d))?)
    } else {
        None
    };
    Ok(CohomologyBlock {
        produced_by: "kunneth_betti, ce_betti",
        factor_algebra: FACTOR_ALGEBRA,
        euler: kunneth.euler(),
        matches: ce.as_ref().map(|c| c == &kunneth),
        ce: ce.map(|c| c.0),
        kunneth: kunneth.0,
    })
}

impl Report {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VerifyError {
    Parse(String),
    Schema { found: Option<u64>, expected: u32 },
    Construction(StageError),
    Mismatch(Vec<String>),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::Parse(m) => write!(f, "unreadable report: {m}"),
            VerifyError::Schema { found, expected } => match found {
                Some(v) => write!(f, "schema_version {v} is not supported (expected {expected})"),
                None => write!(f, "schema_version missing (expected {expected})"),
            },
            VerifyError::Construction(e) => write!(f, "re-derivation failed: {e}"),
            VerifyError::Mismatch(paths) => write!(f, "mismatches at: {}", paths.join(", ")),
        }
    }
}

impl std::error::Error for VerifyError {}

/// Re-derives the report from its stored config and compares every field.
pub fn verify_report(text: &str) -> Result<(), VerifyError> {
    let stored: Value = serde_json::from_str(text).map_err(|e| VerifyError::Parse(e.to_string()))?;
    let version = stored.get("schema_version").and_then(Value::as_u64);
    if version != Some(SCHEMA_VERSION as u64) {
        return Err(VerifyError::Schema {
            found: version,
            expected: SCHEMA_VERSION,
        });
    }
    let cfg = ForgeConfig::from_json(stored.get("config").unwrap_or(&Value::Null)).map_err(VerifyError::Parse)?;
    let fresh = construct(&cfg).map_err(VerifyError::Construction)?.to_value();
    let mut paths = Vec::new();
    diff_values("", &stored, &fresh, &mut paths);
    if paths.is_empty() {
        Ok(())
    } else {
        Err(VerifyError::Mismatch(paths))
    }
}

fn diff_values(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            let mut keys: Vec<&String> = x.keys().chain(y.keys()).collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                let p = format!("{path}/{k}");
                match (x.get(k), y.get(k)) {
                    (Some(u), Some(v)) => diff_values(&p, u, v, out),
                    _ => out.push(p),
                }
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (u, v)) in x.iter().zip(y).enumerate() {
                diff_values(&format!("{path}/{i}"), u, v, out);
            }
        }
        _ if a == b => {}
        _ => out.push(if path.is_empty() { "/".into() } else { path.to_string() }),
    }
}
