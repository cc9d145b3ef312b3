//! Commands and reports behind the `hopfbench` binary.
//!
//! Every command returns a serializable report; `main` prints it either as
//! text or as JSON and maps errors to exit codes with [`exit_code`].

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use hopfbench::cohomology::CentralExtension;
use hopfbench::extension::{classify, ExtensionKind};
use hopfbench::group::{parse_group_json_with_cap, parse_hom_json_with_cap};
use hopfbench::homology::FiveTermReport;
use hopfbench::satellite::catalog::find_generator_images;
use hopfbench::satellite::{endo_action, fixed_subgroup, hopf_kernel, parse_presentation, validate_relator_lattice};
use hopfbench::{
    centralise, centralise_via_kernel_pair, find_stem_extension, five_term, h2, h2_dual, trivialise,
    universal_central_extension, Error, Extension, FgAbelianGroup, FiniteGroup, IntMatrix, Reflector, RelatorModule,
};
use serde::{Deserialize, Serialize};

/// Default limit on group orders read from files.
pub const DEFAULT_CAP_ORDER: usize = 5000;

/// Largest group the universal central extension runs on without `--slow`.
pub const UCE_FAST_ORDER: usize = 24;

/// Failure of a command: an engine error or an unreadable input file.
#[derive(Debug)]
pub enum CliError {
    Engine(Error),
    Io(String),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Engine(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// | code | meaning |
/// |------|---------|
/// | 0 | success |
/// | 1 | internal failure |
/// | 2 | unreadable or invalid input, non-surjective extension |
/// | 3 | order or size cap exceeded |
/// | 4 | group not perfect |
pub fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Io(_) | CliError::Usage(_) => 2,
        CliError::Engine(e) => match e {
            Error::Parse { .. }
            | Error::NotAGroup(_)
            | Error::NotAPermutation { .. }
            | Error::NotSurjective
            | Error::NotAHomomorphism(_)
            | Error::DomainMismatch(_)
            | Error::ShapeMismatch(_)
            | Error::InvalidCocycle(_)
            | Error::InvariantViolated(_)
            | Error::Unsupported(_) => 2,
            Error::OrderLimitExceeded { .. } => 3,
            Error::NotPerfect => 4,
            _ => 1,
        },
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn load_group(path: &Path, cap: usize) -> CliResult<FiniteGroup> {
    Ok(parse_group_json_with_cap(&read(path)?, cap)?)
}

pub fn load_extension(path: &Path, cap: usize) -> CliResult<Extension> {
    let f = parse_hom_json_with_cap(&read(path)?, cap)?;
    Ok(Extension::new(f)?)
}

pub fn load_module(presentation: &Path, lattice: &Path) -> CliResult<RelatorModule> {
    let p = parse_presentation(&read(presentation)?)?;
    let l: IntMatrix = read(lattice)?.parse()?;
    Ok(RelatorModule::new(p, l)?)
}

fn invariants(g: &FgAbelianGroup) -> Vec<String> {
    let mut v: Vec<String> = g.torsion().iter().map(|d| d.to_string()).collect();
    v.extend(std::iter::repeat_n("0".to_string(), g.free_rank()));
    v
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_iter().map(|r| r.iter().map(|x| i64::try_from(x).expect("small entry")).collect()).collect()
}

fn subgroup_invariants(g: &FiniteGroup, k: &hopfbench::Subgroup) -> CliResult<FgAbelianGroup> {
    Ok(g.subgroup_as_group(k).0.abelian_invariants()?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bar,
    Dual,
    Fp,
}

/// Action `I + E e_ij` of one elementary endomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementaryAction {
    pub generator: usize,
    pub relator: usize,
    pub action: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCertificate {
    pub presentation: String,
    pub lattice: Vec<Vec<i64>>,
    pub hopf_kernel: String,
    pub fixed_subgroup: String,
    pub endomorphisms: Vec<ElementaryAction>,
    /// Comparison with the bar resolution when a group file is given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consistent_with_bar: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H2Report {
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    pub h2: String,
    pub invariants: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FixedPointCertificate>,
}

impl fmt::Display for H2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "H2 = {}", self.h2)?;
        if let Some(c) = &self.certificate {
            writeln!(f, "presentation: {}", c.presentation)?;
            writeln!(f, "lattice: {:?}", c.lattice)?;
            writeln!(f, "hopf kernel: {}", c.hopf_kernel)?;
            writeln!(f, "fixed by {} elementary endomorphisms: {}", c.endomorphisms.len(), c.fixed_subgroup)?;
            for e in &c.endomorphisms {
                writeln!(f, "  e({}, {}): {:?}", e.generator, e.relator, e.action)?;
            }
            if let Some(ok) = c.consistent_with_bar {
                writeln!(f, "agrees with bar resolution: {ok}")?;
            }
        }
        Ok(())
    }
}

pub fn cmd_h2(
    group: Option<&FiniteGroup>,
    method: Method,
    module: Option<&RelatorModule>,
) -> CliResult<H2Report> {
    let need_group = || group.ok_or_else(|| CliError::Usage(format!("--method {method:?} needs a group file").to_lowercase()));
    let (result, certificate) = match method {
        Method::Bar => (h2(need_group()?)?, None),
        Method::Dual => (h2_dual(need_group()?)?, None),
        Method::Fp => {
            let m = module.ok_or_else(|| CliError::Usage("--method fp needs --presentation and --lattice".into()))?;
            let kernel = hopf_kernel(m)?;
            let family = m.elementary_family();
            let fixed = fixed_subgroup(m, &family)?;
            let endomorphisms = family
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    Ok(ElementaryAction {
                        generator: k / m.relator_count(),
                        relator: k % m.relator_count(),
                        action: matrix_rows(&endo_action(m, e)?),
                    })
                })
                .collect::<CliResult<_>>()?;
            let consistent_with_bar = match group {
                Some(g) => {
                    let images = find_generator_images(m.presentation(), g)
                        .ok_or_else(|| CliError::Usage("the presentation does not present the group".into()))?;
                    Some(validate_relator_lattice(m.presentation(), m.lattice(), g, &images)?.consistent)
                }
                None => None,
            };
            let cert = FixedPointCertificate {
                presentation: m.presentation().to_string(),
                lattice: matrix_rows(m.lattice()),
                hopf_kernel: kernel.to_string(),
                fixed_subgroup: fixed.to_string(),
                endomorphisms,
                consistent_with_bar,
            };
            (kernel, Some(cert))
        }
    };
    Ok(H2Report {
        method,
        group_order: group.map(FiniteGroup::order),
        h2: result.to_string(),
        invariants: invariants(&result),
        certificate,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Maps {
    pub h2f: Vec<Vec<i64>>,
    pub delta2: Vec<Vec<i64>>,
    pub gamma1: Vec<Vec<i64>>,
    pub h1f: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiveTermOutput {
    #[serde(flatten)]
    pub report: FiveTermReport,
    pub maps: Maps,
}

fn group_text(inv: &[String]) -> String {
    if inv.is_empty() {
        "0".into()
    } else {
        inv.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
    }
}

impl fmt::Display for FiveTermOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.report;
        writeln!(
            f,
            "H2 B = {} -> H2 A = {} -> K/[K,B] = {} -> H1 B = {} -> H1 A = {} -> 0",
            group_text(&r.h2b),
            group_text(&r.h2a),
            group_text(&r.ki1f),
            group_text(&r.h1b),
            group_text(&r.h1a)
        )?;
        writeln!(f, "delta2: {:?}", self.maps.delta2)?;
        writeln!(f, "exact at H2 A, K/[K,B], H1 B: {:?}", r.exact)?;
        writeln!(f, "onto H1 A: {}", r.surjective_end)
    }
}

pub fn cmd_five_term(f: &Extension) -> CliResult<FiveTermOutput> {
    let seq = five_term(f)?;
    Ok(FiveTermOutput {
        report: seq.report(),
        maps: Maps {
            h2f: matrix_rows(&seq.h2f),
            delta2: matrix_rows(&seq.delta2),
            gamma1: matrix_rows(&seq.gamma1),
            h1f: matrix_rows(&seq.h1f),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentraliseReport {
    pub reflector: Reflector,
    pub dom_order: usize,
    pub cod_order: usize,
    pub kernel_order: usize,
    pub centralised_order: usize,
    pub centralised_kernel: Vec<String>,
    pub kernel_pair_order: usize,
    pub kernel_pair_kernel: Vec<String>,
    pub routes_agree: bool,
}

impl fmt::Display for CentraliseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "extension: order {} -> {} (kernel order {})", self.dom_order, self.cod_order, self.kernel_order)?;
        writeln!(
            f,
            "centralisation ({}): order {} -> {}, kernel {}",
            self.reflector.name(),
            self.centralised_order,
            self.cod_order,
            group_text(&self.centralised_kernel)
        )?;
        writeln!(f, "via kernel pair: order {}, kernel {}", self.kernel_pair_order, group_text(&self.kernel_pair_kernel))?;
        writeln!(f, "routes agree: {}", self.routes_agree)
    }
}

pub fn cmd_centralise(f: &Extension, r: Reflector) -> CliResult<CentraliseReport> {
    let ((c1, rho1), second) =
        std::thread::scope(|s| {
            let h = s.spawn(|| centralise_via_kernel_pair(f, r));
            (centralise(f, r), h.join().expect("kernel pair route does not panic"))
        });
    let (c2, rho2) = second?;
    let factors = |c: &Extension, rho: &hopfbench::GroupHom| {
        hopfbench::GroupHom::compose(c.map(), rho).map(|g| &g == f.map()).unwrap_or(false)
    };
    let routes_agree = c1.dom().order() == c2.dom().order()
        && rho1.kernel() == rho2.kernel()
        && factors(&c1, &rho1)
        && factors(&c2, &rho2);
    Ok(CentraliseReport {
        reflector: r,
        dom_order: f.dom().order(),
        cod_order: f.cod().order(),
        kernel_order: f.kernel().order(),
        centralised_order: c1.dom().order(),
        centralised_kernel: invariants(&subgroup_invariants(c1.dom(), c1.kernel())?),
        kernel_pair_order: c2.dom().order(),
        kernel_pair_kernel: invariants(&subgroup_invariants(c2.dom(), c2.kernel())?),
        routes_agree,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrivialiseReport {
    pub reflector: Reflector,
    pub dom_order: usize,
    pub trivialisation_order: usize,
    pub centralisation_order: usize,
    pub comparison_injective: bool,
    pub comparison_surjective: bool,
    pub trivial: bool,
}

impl fmt::Display for TrivialiseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "trivialisation ({}): order {} (domain {}, centralisation {})",
            self.reflector.name(),
            self.trivialisation_order,
            self.dom_order,
            self.centralisation_order
        )?;
        writeln!(
            f,
            "comparison from the centralisation: injective {}, surjective {}",
            self.comparison_injective, self.comparison_surjective
        )?;
        writeln!(f, "trivial: {}", self.trivial)
    }
}

pub fn cmd_trivialise(f: &Extension, r: Reflector) -> CliResult<TrivialiseReport> {
    let t = trivialise(f, r)?;
    Ok(TrivialiseReport {
        reflector: r,
        dom_order: f.dom().order(),
        trivialisation_order: t.extension.dom().order(),
        centralisation_order: t.centralisation.dom().order(),
        comparison_injective: t.comparison.is_injective(),
        comparison_surjective: t.comparison.is_surjective(),
        trivial: t.unit_comparison.is_isomorphism(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub reflector: Reflector,
    pub kind: ExtensionKind,
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ExtensionKind::Trivial => "trivial",
            ExtensionKind::CentralNotTrivial => "central-not-trivial",
            ExtensionKind::NonCentral => "non-central",
        };
        writeln!(f, "{kind} ({})", self.reflector.name())
    }
}

pub fn cmd_classify(f: &Extension, r: Reflector) -> CliResult<ClassifyReport> {
    Ok(ClassifyReport { reflector: r, kind: classify(f, r)? })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub group_order: usize,
    pub middle_order: usize,
    pub kernel: Vec<String>,
    pub kernel_in_center: bool,
    pub kernel_in_derived: bool,
    pub middle_perfect: bool,
    pub identity_extension: bool,
    /// `c(g, h)` in coordinates of the kernel, indexed by element numbers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<Vec<Vec<Vec<u64>>>>,
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "middle group order {} over order {}", self.middle_order, self.group_order)?;
        writeln!(f, "kernel {}", group_text(&self.kernel))?;
        writeln!(f, "kernel central: {}", self.kernel_in_center)?;
        writeln!(f, "kernel in derived subgroup: {}", self.kernel_in_derived)?;
        writeln!(f, "middle group perfect: {}", self.middle_perfect)?;
        if self.identity_extension {
            writeln!(f, "identity extension")?;
        }
        if let Some(c) = &self.cocycle {
            for (g, row) in c.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
                writeln!(f, "c({g}, -) = {}", cells.join(" "))?;
            }
        }
        Ok(())
    }
}

fn cover_report(g: &FiniteGroup, e: &CentralExtension, with_cocycle: bool) -> CliResult<CoverReport> {
    let middle: &Arc<FiniteGroup> = e.middle();
    let k = e.extension.kernel();
    Ok(CoverReport {
        group_order: g.order(),
        middle_order: middle.order(),
        kernel: invariants(&subgroup_invariants(middle, k)?),
        kernel_in_center: k.is_subset_of(&middle.center()),
        kernel_in_derived: k.is_subset_of(&middle.derived_subgroup()),
        middle_perfect: middle.is_perfect(),
        identity_extension: k.is_trivial(),
        cocycle: with_cocycle.then(|| e.cocycle.table()),
    })
}

pub fn cmd_stem(g: &FiniteGroup, with_cocycle: bool) -> CliResult<CoverReport> {
    cover_report(g, &find_stem_extension(g)?, with_cocycle)
}

/// Refuses groups beyond [`UCE_FAST_ORDER`] unless `slow` is set.
pub fn cmd_uce(g: &FiniteGroup, slow: bool, with_cocycle: bool) -> CliResult<CoverReport> {
    if !slow && g.order() > UCE_FAST_ORDER {
        return Err(Error::OrderLimitExceeded { what: "universal central extension without --slow", size: g.order(), cap: UCE_FAST_ORDER }.into());
    }
    cover_report(g, &universal_central_extension(g)?, with_cocycle)
}
