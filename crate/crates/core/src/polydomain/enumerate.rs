use std::collections::BTreeMap;
use std::fmt;

use crate::domains::{factor_bidegree, PlanarDomain};
use crate::error::{Error, Result};
use crate::spectrum::{
    kernel_dim, values_close, Bidegree, ExtendedCardinal, Multiplicity, TruncatedSpectrum,
    Unavailable, DEFAULT_ZERO_TOL,
};

/// Labels kept per merged entry.
pub const LABEL_CAP: usize = 16;

/// Which family fills the factors outside `J`.
///
/// `W`: Bergman functions on every complement factor; `V`: positive
/// eigenfunctions of □₀ on every complement factor; `Mixed`: some of each.
/// Mixed terms have the same form as `W` and `V` products and are needed to
/// exhaust the (0,q) spectrum once the complement has two or more factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelKind {
    W,
    V,
    Mixed,
}

impl fmt::Display for LabelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabelKind::W => "W",
            LabelKind::V => "V",
            LabelKind::Mixed => "Mixed",
        })
    }
}

/// `J` and `k` use 1-based factor indices. `k` maps each factor not filled
/// by a Bergman function to the rank (1-based) of its distinct eigenvalue:
/// a Dirichlet eigenvalue on `J`, a positive □₀ eigenvalue off `J`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EigenLabel {
    pub j: Vec<usize>,
    pub k: BTreeMap<usize, usize>,
    pub kind: LabelKind,
}

impl EigenLabel {
    /// Complement factors carrying a Bergman function.
    pub fn holomorphic_factors(&self, n: usize) -> Vec<usize> {
        (1..=n)
            .filter(|i| !self.j.contains(i) && !self.k.contains_key(i))
            .collect()
    }

    pub fn validate(&self, n: usize, q: usize) -> Result<()> {
        let invalid = |m: String| Err(Error::InvalidArgument(m));
        if self.j.len() != q {
            return invalid(format!("|J| = {} but q = {q}", self.j.len()));
        }
        if self.j.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("J must be strictly ascending".into());
        }
        if self.j.iter().chain(self.k.keys()).any(|&i| i == 0 || i > n) {
            return invalid(format!("factor indices must lie in 1..={n}"));
        }
        if self.k.values().any(|&r| r == 0) {
            return invalid("ranks must be positive".into());
        }
        if self.j.iter().any(|i| !self.k.contains_key(i)) {
            return invalid("k must be defined on J".into());
        }
        let off = n - q;
        let z_count = self.k.len() - q;
        let expected = if z_count == 0 {
            LabelKind::W
        } else if z_count == off {
            LabelKind::V
        } else {
            LabelKind::Mixed
        };
        if self.kind != expected {
            return invalid(format!("label kind {} does not match its k map", self.kind));
        }
        Ok(())
    }
}

impl fmt::Display for EigenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j: Vec<String> = self.j.iter().map(|i| i.to_string()).collect();
        let k: Vec<String> = self.k.iter().map(|(i, r)| format!("{i}:{r}")).collect();
        write!(
            f,
            "{}(J={{{}}}, k={{{}}})",
            self.kind,
            j.join(","),
            k.join(",")
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenEntry {
    pub value: f64,
    pub multiplicity: Multiplicity,
    /// The first [`LABEL_CAP`] labels in canonical order.
    pub labels: Vec<EigenLabel>,
    /// Number of labels merged into this entry.
    pub label_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Enumeration {
    pub q: usize,
    pub n: usize,
    pub entries: Vec<EigenEntry>,
    pub cutoff: f64,
    pub complete: bool,
    pub notes: Vec<String>,
}

impl Enumeration {
    /// The entries as a spectrum, for comparison with bidegree products.
    pub fn to_spectrum(&self, merge_tol: f64) -> Result<TruncatedSpectrum> {
        TruncatedSpectrum::try_new(
            self.entries
                .iter()
                .map(|e| crate::spectrum::SpectralPoint::new(e.value, e.multiplicity))
                .collect(),
            self.cutoff,
            self.complete,
            merge_tol,
        )
    }
}

/// One unmerged product term.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub value: f64,
    pub multiplicity: Multiplicity,
    pub label: EigenLabel,
}

/// Per-factor ingredients: Dirichlet values μ, positive □₀ values λ and the
/// Bergman dimension.
struct FactorLists {
    mu: Vec<(f64, Multiplicity)>,
    lambda: Vec<(f64, Multiplicity)>,
    bergman: ExtendedCardinal,
}

struct Prepared {
    factors: Vec<FactorLists>,
    cutoff: f64,
    notes: Vec<String>,
}

pub const NOTE_CUSTOM_COMPLETE: &str =
    "custom factor tables are taken as complete below their cutoff as declared";

fn prepare(factors: &[PlanarDomain], q: usize, cutoff: f64, merge_tol: f64) -> Result<Prepared> {
    let n = factors.len();
    if n == 0 {
        return Err(Error::EmptyList {
            what: "enumerate_box_q",
        });
    }
    if q > n {
        return Err(Error::DegreeOutOfRange { q, n });
    }
    let mut lists = Vec::with_capacity(n);
    let mut notes: Vec<String> = Vec::new();
    let mut effective = cutoff;
    for (i, domain) in factors.iter().enumerate() {
        let factor = i + 1;
        let fail = |message: String| Error::Factor { factor, message };
        if domain.complex_dim() != 1 {
            return Err(fail(
                "the enumerator needs planar factors (complex dimension 1)".into(),
            ));
        }
        let data = factor_bidegree(domain, cutoff, merge_tol, DEFAULT_ZERO_TOL)
            .map_err(|e| fail(e.to_string()))?;
        for note in data.notes {
            if !notes.contains(&note) {
                notes.push(note);
            }
        }
        if matches!(domain, PlanarDomain::Custom { .. })
            && !notes.iter().any(|s| s == NOTE_CUSTOM_COMPLETE)
        {
            notes.push(NOTE_CUSTOM_COMPLETE.to_string());
        }
        let table = |bd: Bidegree| -> Result<&TruncatedSpectrum> {
            let s = data.spectra.get(bd).ok_or(Error::Unavailable(Unavailable {
                factor,
                bidegree: bd,
            }))?;
            if !s.is_complete() {
                return Err(fail(Error::Incomplete { cutoff: s.cutoff() }.to_string()));
            }
            if !s.is_pure_point() {
                return Err(fail(Error::MultiplicityUnknown.to_string()));
            }
            Ok(s)
        };
        let s00 = table(Bidegree::new(0, 0))?;
        let s01 = table(Bidegree::new(0, 1))?;
        effective = effective.min(s00.cutoff()).min(s01.cutoff());
        let bergman = kernel_dim(s00, DEFAULT_ZERO_TOL).map_err(|e| fail(e.to_string()))?;
        let pairs = |s: &TruncatedSpectrum| {
            s.points()
                .iter()
                .map(|p| (p.value, p.multiplicity))
                .collect()
        };
        lists.push(FactorLists {
            mu: pairs(s01),
            lambda: pairs(&s00.positive_part(DEFAULT_ZERO_TOL)),
            bergman,
        });
    }
    if effective < cutoff {
        notes.push(format!("cutoff lowered to {effective} by a factor table"));
    }
    Ok(Prepared {
        factors: lists,
        cutoff: effective,
        notes,
    })
}

/// Role of one factor in a product term.
#[derive(Clone, Copy, PartialEq)]
enum Role {
    Dirichlet,
    Positive,
    Bergman,
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

fn terms_of(prep: &Prepared, q: usize) -> Vec<Term> {
    let n = prep.factors.len();
    let mut out = Vec::new();
    for j in subsets(n, q) {
        let complement: Vec<usize> = (0..n).filter(|i| !j.contains(i)).collect();
        // Bit b of `mask` set: complement[b] takes a positive □₀ eigenvalue.
        for mask in 0u64..(1u64 << complement.len()) {
            let mut roles = vec![Role::Dirichlet; n];
            for (b, &i) in complement.iter().enumerate() {
                roles[i] = if mask >> b & 1 == 1 {
                    Role::Positive
                } else {
                    Role::Bergman
                };
            }
            let z_count = mask.count_ones() as usize;
            let kind = if z_count == 0 {
                LabelKind::W
            } else if z_count == complement.len() {
                LabelKind::V
            } else {
                LabelKind::Mixed
            };
            let mut base = Multiplicity::ONE;
            let mut blocked = false;
            for (i, role) in roles.iter().enumerate() {
                if *role == Role::Bergman {
                    match prep.factors[i].bergman.as_multiplicity() {
                        Some(m) => base = base * m,
                        None => blocked = true,
                    }
                }
            }
            if blocked {
                continue;
            }
            let mut ranks = Vec::with_capacity(n);
            walk(prep, &roles, &j, kind, 0, 0.0, base, &mut ranks, &mut out);
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn walk(
    prep: &Prepared,
    roles: &[Role],
    j: &[usize],
    kind: LabelKind,
    i: usize,
    sum: f64,
    mult: Multiplicity,
    ranks: &mut Vec<(usize, usize)>,
    out: &mut Vec<Term>,
) {
    if i == roles.len() {
        out.push(Term {
            value: sum,
            multiplicity: mult,
            label: EigenLabel {
                j: j.iter().map(|i| i + 1).collect(),
                k: ranks.iter().copied().collect(),
                kind,
            },
        });
        return;
    }
    let list = match roles[i] {
        Role::Bergman => return walk(prep, roles, j, kind, i + 1, sum, mult, ranks, out),
        Role::Dirichlet => &prep.factors[i].mu,
        Role::Positive => &prep.factors[i].lambda,
    };
    for (r, &(v, m)) in list.iter().enumerate() {
        if sum + v >= prep.cutoff {
            break;
        }
        ranks.push((i + 1, r + 1));
        walk(prep, roles, j, kind, i + 1, sum + v, mult * m, ranks, out);
        ranks.pop();
    }
}

/// Every product term of Prop.-style form below the cutoff, unmerged, in
/// canonical order (value, then label).
pub fn label_stream(
    factors: &[PlanarDomain],
    q: usize,
    cutoff: f64,
    merge_tol: f64,
) -> Result<impl Iterator<Item = Term>> {
    let prep = prepare(factors, q, cutoff, merge_tol)?;
    let mut terms = terms_of(&prep, q);
    terms.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then_with(|| a.label.cmp(&b.label))
    });
    Ok(terms.into_iter())
}

/// Eigenvalues of □ on (0,q)-forms of the product below `cutoff`, with
/// multiplicities and representative labels. Terms within `merge_tol` of an
/// entry's first value merge into it.
pub fn enumerate_box_q(
    factors: &[PlanarDomain],
    q: usize,
    cutoff: f64,
    merge_tol: f64,
) -> Result<Enumeration> {
    let prep = prepare(factors, q, cutoff, merge_tol)?;
    let mut terms = terms_of(&prep, q);
    terms.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then_with(|| a.label.cmp(&b.label))
    });

    let mut entries: Vec<EigenEntry> = Vec::new();
    let mut pending: Vec<EigenLabel> = Vec::new();
    for term in terms {
        match entries.last_mut() {
            Some(last) if values_close(last.value, term.value, merge_tol) => {
                last.multiplicity = last.multiplicity + term.multiplicity;
                last.label_count += 1;
                pending.push(term.label);
            }
            _ => {
                if let Some(last) = entries.last_mut() {
                    finish_labels(last, &mut pending);
                }
                entries.push(EigenEntry {
                    value: term.value,
                    multiplicity: term.multiplicity,
                    labels: Vec::new(),
                    label_count: 1,
                });
                pending.push(term.label);
            }
        }
    }
    if let Some(last) = entries.last_mut() {
        finish_labels(last, &mut pending);
    }
    Ok(Enumeration {
        q,
        n: factors.len(),
        entries,
        cutoff: prep.cutoff,
        complete: true,
        notes: prep.notes,
    })
}

fn finish_labels(entry: &mut EigenEntry, pending: &mut Vec<EigenLabel>) {
    pending.sort();
    pending.truncate(LABEL_CAP);
    entry.labels = std::mem::take(pending);
}

/// Total multiplicity of the entries with value `<= lambda`.
pub fn counting_function(enumeration: &Enumeration, lambda: f64) -> Result<ExtendedCardinal> {
    if !enumeration.complete {
        return Err(Error::Incomplete {
            cutoff: enumeration.cutoff,
        });
    }
    if !(lambda < enumeration.cutoff) {
        return Err(Error::BeyondCutoff {
            lambda,
            cutoff: enumeration.cutoff,
        });
    }
    Ok(enumeration
        .entries
        .iter()
        .take_while(|e| e.value <= lambda)
        .map(|e| ExtendedCardinal::from(e.multiplicity))
        .sum())
}

/// Compactness of the ∂̄-Neumann operator N_q on a product of `n` bounded
/// planar domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompactnessVerdict {
    NonCompact,
    Compact,
    NotApplicable,
}

impl CompactnessVerdict {
    pub fn reason(self) -> &'static str {
        match self {
            CompactnessVerdict::NonCompact => {
                "0 < q < n: every Dirichlet sum over J is an eigenvalue of infinite multiplicity"
            }
            CompactnessVerdict::Compact => {
                "q = n: all eigenvalues have finite multiplicity and tend to infinity, as for the Dirichlet problem"
            }
            CompactnessVerdict::NotApplicable => {
                "q = 0: the kernel is the infinite-dimensional Bergman space; N_0 is taken on its complement"
            }
        }
    }
}

impl fmt::Display for CompactnessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompactnessVerdict::NonCompact => "NonCompact",
            CompactnessVerdict::Compact => "Compact",
            CompactnessVerdict::NotApplicable => "NotApplicable",
        })
    }
}

pub fn compactness_verdict(q: usize, n: usize) -> Result<CompactnessVerdict> {
    if q > n || n == 0 {
        return Err(Error::DegreeOutOfRange { q, n });
    }
    Ok(if q == 0 {
        CompactnessVerdict::NotApplicable
    } else if q < n {
        CompactnessVerdict::NonCompact
    } else {
        CompactnessVerdict::Compact
    })
}
