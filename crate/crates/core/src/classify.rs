//! Verdicts on pairs of substitutions.
//!
//! The pipeline only ever claims what a checked hypothesis supports:
//!
//! * `NotHomeomorphic` needs both abelianizations aperiodic and a proved
//!   inequality of the Perron fields.
//! * `Homeomorphic` needs a weak-equivalence certificate that re-verifies.
//! * Everything else is `Unknown`, with the facts gathered along the way.
//!
//! A failed bounded search is never read as a refutation.

use serde::Serialize;

use crate::algebra::field::{field_equal, FieldEqualityResult, FieldStatus, DEFAULT_HEIGHT_BOUND};
use crate::algebra::roots::perron_root;
use crate::error::{Error, Result};
use crate::germs::{eventual_range, folds_at_b, is_orientation_preserving, FoldWitness};
use crate::substitution::Substitution;
use crate::tent::{build_tent_model, KneadingWord};
use crate::weak_equiv::{
    matrix_search, search_certificate, verify_certificate, MatrixCertificate, SearchBounds,
    WeakEquivCertificate,
};

/// A certificate makes the inverse limits homeomorphic.
pub const TAG_CERTIFICATE: &str = "weak-equivalence-suffices";
/// Homeomorphic inverse limits of aperiodic maps share the Perron field.
pub const TAG_FIELD: &str = "perron-field-invariant";
/// For distinguished branch points, homeomorphic iff weakly equivalent.
pub const TAG_DISTINGUISHED: &str = "distinguished-iff";
/// Tent inverse limits are homeomorphic iff their substitutions are weakly
/// equivalent.
pub const TAG_TENT: &str = "tent-iff";
/// Homeomorphic tiling spaces share the Perron field (via collaring).
pub const TAG_TILING_FIELD: &str = "tiling-field-invariant";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Homeomorphic,
    NotHomeomorphic,
    Unknown,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Homeomorphic => "homeomorphic",
            Status::NotHomeomorphic => "not_homeomorphic",
            Status::Unknown => "unknown",
        }
    }
}

/// One machine-checked hypothesis and its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

impl Hypothesis {
    fn new(name: impl Into<String>, holds: bool) -> Self {
        Hypothesis {
            name: name.into(),
            holds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub found: bool,
    pub nodes: u64,
    pub budget_exhausted: bool,
    pub searched_pairs: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixSummary {
    pub certificate: Option<MatrixCertificate>,
    pub nodes: u64,
    pub budget_exhausted: bool,
    pub searched_pairs: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Certificate {
        certificate: WeakEquivCertificate,
    },
    FieldObstruction {
        field: FieldEqualityResult,
    },
    Search {
        bounds: SearchBounds,
        word_search: Option<SearchSummary>,
        matrix_search: Option<MatrixSummary>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapClass {
    /// Branch point distinguished.
    Distinguished,
    /// Not distinguished, square orientation preserving.
    ImmersionOriented,
    /// Not distinguished, square not orientation preserving.
    Immersion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GermDiagnostics {
    pub eventual_range: Vec<i32>,
    pub fold: Option<FoldWitness>,
    pub distinguished: bool,
    pub class: MapClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputDiagnostics {
    pub alphabet: usize,
    pub surjective: bool,
    pub aperiodic: bool,
    pub perron_minpoly: Option<String>,
    pub perron_value: Option<String>,
    pub germs: Option<GermDiagnostics>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub evidence: Evidence,
    pub provenance: Vec<String>,
    pub hypotheses: Vec<Hypothesis>,
    pub inputs: Vec<InputDiagnostics>,
    pub field: Option<FieldEqualityResult>,
    pub notes: Vec<String>,
}

pub(crate) fn input_diagnostics(s: &Substitution, with_germs: bool) -> Result<InputDiagnostics> {
    let a = s.abelianization();
    let aperiodic = a.is_aperiodic()?;
    let (perron_minpoly, perron_value) = if aperiodic {
        let r = perron_root(&a)?;
        (Some(r.minpoly().to_string()), Some(r.to_decimal(12)))
    } else {
        (None, None)
    };
    let germs = if with_germs {
        let range = eventual_range(s)?;
        let fold = folds_at_b(s)?;
        let distinguished = fold.is_some() || range.len() != 2;
        let class = if distinguished {
            MapClass::Distinguished
        } else if is_orientation_preserving(&s.power(2)?)? {
            MapClass::ImmersionOriented
        } else {
            MapClass::Immersion
        };
        Some(GermDiagnostics {
            eventual_range: range.iter().map(|l| l.index()).collect(),
            fold,
            distinguished,
            class,
        })
    } else {
        None
    };
    Ok(InputDiagnostics {
        alphabet: s.domain_size(),
        surjective: s.is_surjective(),
        aperiodic,
        perron_minpoly,
        perron_value,
        germs,
    })
}

/// Everything the verdict logic looks at. Kept separate so the gate can be
/// tested against tampered facts.
#[derive(Debug, Clone)]
pub(crate) struct Facts {
    pub chi: Substitution,
    pub psi: Substitution,
    pub inputs: [InputDiagnostics; 2],
    pub field: Option<FieldEqualityResult>,
    pub certificate: Option<WeakEquivCertificate>,
    pub bounds: SearchBounds,
    pub word_search: Option<SearchSummary>,
    pub matrix_search: Option<MatrixSummary>,
    /// Both inputs are tent substitutions.
    pub tent: bool,
}

fn distinguished(d: &InputDiagnostics) -> bool {
    d.germs.as_ref().is_some_and(|g| g.distinguished)
}

pub(crate) fn decide(f: Facts) -> Verdict {
    let [dx, dy] = &f.inputs;
    let mut hypotheses = vec![
        Hypothesis::new("chi surjective", dx.surjective),
        Hypothesis::new("psi surjective", dy.surjective),
        Hypothesis::new("chi aperiodic", dx.aperiodic),
        Hypothesis::new("psi aperiodic", dy.aperiodic),
        Hypothesis::new("chi distinguished", distinguished(dx)),
        Hypothesis::new("psi distinguished", distinguished(dy)),
    ];
    let in_m = dx.surjective && dy.surjective;
    let both_distinguished = distinguished(dx) && distinguished(dy);
    let mut notes = Vec::new();

    let obstruction = f.field.as_ref().filter(|r| r.status == FieldStatus::NotEqual);
    if let Some(r) = obstruction {
        let ok = in_m && dx.aperiodic && dy.aperiodic;
        hypotheses.push(Hypothesis::new("perron fields differ", true));
        if ok {
            let mut provenance = vec![TAG_FIELD.to_string()];
            if f.tent && both_distinguished {
                provenance.push(TAG_TENT.to_string());
            }
            return Verdict {
                status: Status::NotHomeomorphic,
                evidence: Evidence::FieldObstruction { field: r.clone() },
                provenance,
                hypotheses,
                inputs: f.inputs.to_vec(),
                field: f.field.clone(),
                notes,
            };
        }
        notes.push("field obstruction ignored: an input is not aperiodic or not surjective".into());
    }

    if let Some(c) = &f.certificate {
        let verified = verify_certificate(&f.chi, &f.psi, c).unwrap_or(false);
        hypotheses.push(Hypothesis::new("certificate verified", verified));
        if verified && in_m {
            let mut provenance = vec![TAG_CERTIFICATE.to_string()];
            if f.tent && both_distinguished {
                provenance.push(TAG_TENT.to_string());
            }
            return Verdict {
                status: Status::Homeomorphic,
                evidence: Evidence::Certificate {
                    certificate: c.clone(),
                },
                provenance,
                hypotheses,
                inputs: f.inputs.to_vec(),
                field: f.field.clone(),
                notes,
            };
        }
        notes.push("certificate discarded: it does not verify or an input is not surjective".into());
    }

    let mut provenance = Vec::new();
    if both_distinguished && in_m {
        provenance.push(TAG_DISTINGUISHED.to_string());
        notes.push(
            "both branch points are distinguished, so the spaces are homeomorphic iff the \
             substitutions are weakly equivalent; this verdict reflects the search bounds only"
                .into(),
        );
    }
    let class = |d: &InputDiagnostics| d.germs.as_ref().map(|g| g.class.clone());
    if [class(dx), class(dy)].contains(&Some(MapClass::Immersion)) {
        notes.push(
            "an input is an immersion whose square reverses orientation; its classification \
             goes through an auxiliary map that is not constructed here"
                .into(),
        );
    }
    Verdict {
        status: Status::Unknown,
        evidence: Evidence::Search {
            bounds: f.bounds,
            word_search: f.word_search,
            matrix_search: f.matrix_search,
        },
        provenance,
        hypotheses,
        inputs: f.inputs.to_vec(),
        field: f.field,
        notes,
    }
}

fn require_in_m(s: &Substitution, name: &str) -> Result<()> {
    s.require_square()
        .map_err(|e| Error::Precondition(format!("{name}: {e}")))?;
    if !s.is_surjective() {
        return Err(Error::Precondition(format!(
            "{name} is not surjective: some letter never occurs in an image"
        )));
    }
    Ok(())
}

/// Searching from the lesser input makes the outcome independent of the
/// argument order.
fn swap_needed(chi: &Substitution, psi: &Substitution) -> bool {
    (chi.domain_size(), chi) > (psi.domain_size(), psi)
}

/// Certificate search in canonical direction; the certificate is returned
/// for `(chi, psi)`.
pub(crate) fn canonical_search(
    chi: &Substitution,
    psi: &Substitution,
    bounds: &SearchBounds,
) -> Result<(Option<WeakEquivCertificate>, SearchSummary)> {
    let (o, swapped) = if swap_needed(chi, psi) {
        (search_certificate(psi, chi, &bounds.swapped())?, true)
    } else {
        (search_certificate(chi, psi, bounds)?, false)
    };
    let cert = o
        .certificate
        .map(|c| if swapped { c.transposed() } else { c });
    let summary = SearchSummary {
        found: cert.is_some(),
        nodes: o.nodes,
        budget_exhausted: o.budget_exhausted,
        searched_pairs: o.searched_pairs,
    };
    Ok((cert, summary))
}

pub(crate) fn canonical_matrix_search(
    chi: &Substitution,
    psi: &Substitution,
    bounds: &SearchBounds,
) -> Result<MatrixSummary> {
    let (a, b) = (chi.abelianization(), psi.abelianization());
    let o = if swap_needed(chi, psi) {
        let o = matrix_search(&b, &a, &bounds.swapped())?;
        let cert = o.certificate.map(|c| MatrixCertificate {
            s: c.t,
            t: c.s,
            n: c.m,
            m: c.n,
        });
        (cert, o.nodes, o.budget_exhausted, o.searched_pairs)
    } else {
        let o = matrix_search(&a, &b, bounds)?;
        (o.certificate, o.nodes, o.budget_exhausted, o.searched_pairs)
    };
    Ok(MatrixSummary {
        certificate: o.0,
        nodes: o.1,
        budget_exhausted: o.2,
        searched_pairs: o.3,
    })
}

fn gather(chi: &Substitution, psi: &Substitution, bounds: &SearchBounds, tent: bool) -> Result<Facts> {
    require_in_m(chi, "chi")?;
    require_in_m(psi, "psi")?;
    let inputs = [input_diagnostics(chi, true)?, input_diagnostics(psi, true)?];
    let field = if inputs[0].aperiodic && inputs[1].aperiodic {
        let (a, b) = (perron_root(&chi.abelianization())?, perron_root(&psi.abelianization())?);
        Some(field_equal(&a, &b, DEFAULT_HEIGHT_BOUND)?)
    } else {
        None
    };
    let refuted = field.as_ref().is_some_and(|r| r.status == FieldStatus::NotEqual);
    let (certificate, word_search, matrix_search) = if refuted {
        (None, None, None)
    } else {
        let (c, w) = canonical_search(chi, psi, bounds)?;
        let m = if c.is_none() {
            Some(canonical_matrix_search(chi, psi, bounds)?)
        } else {
            None
        };
        (c, Some(w), m)
    };
    Ok(Facts {
        chi: chi.clone(),
        psi: psi.clone(),
        inputs,
        field,
        certificate,
        bounds: *bounds,
        word_search,
        matrix_search,
        tent,
    })
}

/// Classifies the inverse limits of two maps of wedges of circles given by
/// their substitutions.
pub fn classify(chi: &Substitution, psi: &Substitution, bounds: &SearchBounds) -> Result<Verdict> {
    Ok(decide(gather(chi, psi, bounds, false)?))
}

/// Classifies the inverse limits of two tent maps with periodic critical
/// points. Both maps are checked to have a distinguished branch point.
pub fn classify_tent_pair(
    k1: &KneadingWord,
    k2: &KneadingWord,
    bounds: &SearchBounds,
) -> Result<Verdict> {
    let (m1, m2) = (build_tent_model(k1)?, build_tent_model(k2)?);
    let facts = gather(&m1.chi, &m2.chi, bounds, true)?;
    for (k, d) in [(k1, &facts.inputs[0]), (k2, &facts.inputs[1])] {
        if !distinguished(d) {
            return Err(Error::Internal(format!(
                "tent substitution for {k} has an undistinguished branch point"
            )));
        }
    }
    let mut v = decide(facts);
    v.notes.insert(0, format!("tent maps with kneading words {k1} and {k2}"));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weak_equiv::SearchBounds;

    fn sub(n: usize, images: &[Vec<i32>]) -> Substitution {
        Substitution::from_indices(n, images).unwrap()
    }

    fn fib() -> Substitution {
        sub(2, &[vec![1, 2], vec![1]])
    }

    fn bounds() -> SearchBounds {
        SearchBounds::default()
    }

    #[test]
    fn fibonacci_and_square() {
        let v = classify(&fib(), &fib().power(2).unwrap(), &bounds()).unwrap();
        assert_eq!(v.status, Status::Homeomorphic);
        assert_eq!(v.provenance, vec![TAG_CERTIFICATE]);
        let Evidence::Certificate { certificate: c } = &v.evidence else {
            panic!("no certificate");
        };
        assert_eq!((c.n, c.m), (2, 1));
        assert_eq!((&c.sigma, &c.tau), (&fib(), &fib()));
    }

    #[test]
    fn fibonacci_against_doubling() {
        let v = classify(&fib(), &sub(1, &[vec![1, 1]]), &bounds()).unwrap();
        assert_eq!(v.status, Status::NotHomeomorphic);
        assert_eq!(v.provenance, vec![TAG_FIELD]);
        assert!(matches!(v.evidence, Evidence::FieldObstruction { .. }));
    }

    #[test]
    fn self_pair_is_identity() {
        let v = classify(&fib(), &fib(), &bounds()).unwrap();
        let Evidence::Certificate { certificate: c } = &v.evidence else {
            panic!("no certificate");
        };
        assert_eq!(c.tau, Substitution::identity(2));
    }

    #[test]
    fn status_symmetric() {
        let cases = [
            (fib(), fib().power(2).unwrap()),
            (fib(), sub(1, &[vec![1, 1]])),
            (sub(2, &[vec![1, 2], vec![1]]), sub(2, &[vec![2, 1], vec![2]])),
            (sub(2, &[vec![2], vec![-2, -1]]), sub(2, &[vec![1, 2], vec![1]])),
        ];
        for (a, b) in cases {
            let x = classify(&a, &b, &bounds()).unwrap();
            let y = classify(&b, &a, &bounds()).unwrap();
            assert_eq!(x.status, y.status, "{a} vs {b}");
            if let Evidence::Certificate { certificate } = &y.evidence {
                assert!(verify_certificate(&b, &a, certificate).unwrap());
            }
        }
    }

    #[test]
    fn nonsurjective_rejected() {
        let s = sub(2, &[vec![1], vec![1]]);
        assert!(matches!(classify(&s, &fib(), &bounds()), Err(Error::Precondition(_))));
    }

    fn facts(a: &Substitution, b: &Substitution) -> Facts {
        gather(a, b, &bounds(), false).unwrap()
    }

    #[test]
    fn gate_downgrades_field_claim() {
        let doubling = sub(1, &[vec![1, 1]]);
        let mut f = facts(&fib(), &doubling);
        f.inputs[1].aperiodic = false;
        let v = decide(f);
        assert_eq!(v.status, Status::Unknown);
        assert!(!v.provenance.contains(&TAG_FIELD.to_string()));

        let mut f = facts(&fib(), &doubling);
        f.inputs[0].surjective = false;
        assert_eq!(decide(f).status, Status::Unknown);
    }

    #[test]
    fn gate_downgrades_bad_certificate() {
        let mut f = facts(&fib(), &fib().power(2).unwrap());
        let c = f.certificate.as_mut().unwrap();
        c.n += 1;
        let v = decide(f);
        assert_eq!(v.status, Status::Unknown);
        assert!(v.hypotheses.contains(&Hypothesis::new("certificate verified", false)));

        let mut f = facts(&fib(), &fib());
        f.inputs[1].surjective = false;
        assert_eq!(decide(f).status, Status::Unknown);
    }

    #[test]
    fn gate_drops_distinguished_annotation() {
        let mut f = facts(&fib(), &fib());
        f.certificate = None;
        let v = decide(f.clone());
        assert_eq!(v.status, Status::Unknown);
        assert_eq!(v.provenance, vec![TAG_DISTINGUISHED]);
        f.inputs[0].germs.as_mut().unwrap().distinguished = false;
        assert!(decide(f).provenance.is_empty());
    }

    #[test]
    fn tent_pairs() {
        let rl = KneadingWord::parse("RL").unwrap();
        let rll = KneadingWord::parse("RLL").unwrap();
        let v = classify_tent_pair(&rl, &rl, &bounds()).unwrap();
        assert_eq!(v.status, Status::Homeomorphic);
        assert_eq!(v.provenance, vec![TAG_CERTIFICATE, TAG_TENT]);
        let v = classify_tent_pair(&rl, &rll, &bounds()).unwrap();
        assert_eq!(v.status, Status::NotHomeomorphic);
        assert_eq!(v.provenance, vec![TAG_FIELD, TAG_TENT]);
    }
}
