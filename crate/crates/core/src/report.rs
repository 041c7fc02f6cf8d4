//! Shared serialization helpers and report assembly.

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::admissibility::{admissible_degree, admissible_indices, AdmissibleCertificate};
use crate::bounds::{
    admissible_volume_bound, baseline_ccw_bound, chain_volume_bound, integrability_bounds, oscillatory_decay_bound,
    BoundPrediction, BoundsError, IntegrabilityBounds, OscillatoryBound,
};
use crate::newton::{newton_distance, NewtonDistanceResult};
use crate::poly::{ExponentVector, Polynomial, Rational};

/// Serializes an exact rational as a string such as `"10/7"` or `"2"`.
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn serialize_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Run metadata. Everything that may differ between identical runs lives
/// here, so comparing the `result` parts of two outputs is meaningful.
#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
    pub command: Vec<String>,
}

impl Header {
    pub fn now(command: Vec<String>) -> Self {
        Header {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            command,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub header: Header,
    pub kind: String,
    pub result: T,
}

/// A place where a published formula or value disagrees with what the
/// exact computation produces, or a caveat about the input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Note {
    /// `"paper-note"` for published-vs-computed items, `"warning"` otherwise.
    pub label: String,
    pub topic: String,
    pub text: String,
}

impl Note {
    fn published(topic: &str, text: String) -> Self {
        Note {
            label: "paper-note".into(),
            topic: topic.into(),
            text,
        }
    }

    fn warning(topic: &str, text: String) -> Self {
        Note {
            label: "warning".into(),
            topic: topic.into(),
            text,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainSummary {
    pub l: usize,
    /// `P_{l+1}`.
    pub last: String,
    pub last_degree: Option<u32>,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub polynomial: String,
    pub dimension: usize,
    pub degree: Option<u32>,
    pub admissible: Vec<AdmissibleCertificate>,
    pub admissible_degree: u32,
    pub admissible_degree_witness: AdmissibleCertificate,
    pub newton_distance: Option<NewtonDistanceResult>,
    pub chains: Vec<ChainSummary>,
    pub volume_bounds: Vec<BoundPrediction>,
    pub integrability: Option<IntegrabilityBounds>,
    pub oscillatory: OscillatoryBound,
    pub notes: Vec<Note>,
}

/// Exponents `(d, m, q)` when `p = x1^d + x1 x2^m + x2^q` with `d > m > q ≥ 1`.
fn three_term_family(p: &Polynomial) -> Option<(u32, u32, u32)> {
    if p.dimension() != 2 || p.num_terms() != 3 || p.terms().any(|(_, c)| *c != Rational::from_integer(1.into())) {
        return None;
    }
    let (mut d, mut m, mut q) = (None, None, None);
    for e in p.support() {
        match *e.as_slice() {
            [a, 0] if a > 0 => d = Some(a),
            [1, b] if b > 0 => m = Some(b),
            [0, b] if b > 0 => q = Some(b),
            _ => return None,
        }
    }
    let (d, m, q) = (d?, m?, q?);
    (d > m && m > q && q >= 1).then_some((d, m, q))
}

fn term(c: i64, e: [u32; 2]) -> Polynomial {
    Polynomial::monomial(2, ExponentVector::new(e.to_vec()), Rational::from_integer(c.into()))
}

fn family_notes(p: &Polynomial, nd: Option<&NewtonDistanceResult>, notes: &mut Vec<Note>) {
    let Some((d, m, q)) = three_term_family(p) else { return };
    let (di, mi, qi) = (d as i64, m as i64, q as i64);
    if let Ok(chain) = p.jacobian_chain(2) {
        let computed = &chain[2];
        let published = &term(di * mi * (2 - di), [d - 1, m - 1]) - &term(di * qi * (di - 1), [d - 2, q - 1]);
        let difference = computed - &published;
        if !difference.is_zero() {
            notes.push(Note::published(
                "jacobian-chain",
                format!(
                    "published closed form for P_3 is {published}; exact expansion gives {computed} \
                     (difference {difference}); the exact expansion is used"
                ),
            ));
        }
    }
    if let Some(nd) = nd {
        let published = Rational::new((di * mi).into(), (di + mi + 1).into());
        if published != nd.exact {
            notes.push(Note::published(
                "newton-distance",
                format!(
                    "published closed form d*m/(d+m+1) = {published}; the linear program over the support gives {} \
                     (d*p/(d+p) = {}); the computed value is used",
                    nd.exact,
                    Rational::new((di * qi).into(), (di + qi).into())
                ),
            ));
        }
        notes.push(Note::published(
            "newton-distance",
            "the published description of the third corner of the Newton polyhedron reads \"x_2 >= n\"; \
             it is taken to mean x_2 >= p, the exponent of the pure x2 term"
                .into(),
        ));
    }
}

/// Flags inputs whose zero set is the origin alone: every term is an even
/// monomial with positive coefficient and every variable has a pure power.
fn isolated_zero_warning(p: &Polynomial, notes: &mut Vec<Note>) {
    let n = p.dimension();
    if n < 2 || !p.constant_term().is_zero() {
        return;
    }
    let even_positive = p
        .terms()
        .all(|(e, c)| c.is_positive() && e.as_slice().iter().all(|a| a % 2 == 0));
    let pure = (0..n).all(|i| {
        p.support()
            .any(|e| e.get(i) > 0 && e.as_slice().iter().enumerate().all(|(j, &a)| j == i || a == 0))
    });
    if even_positive && pure {
        notes.push(Note::warning(
            "degenerate",
            format!(
                "Z(P) = {{0}} has dimension 0 < n - 1 = {}; the chain varieties are not hypersurfaces and the \
                 sublevel volumes may scale faster than the admissible bound suggests",
                n - 1
            ),
        ));
    }
}

/// Full symbolic analysis, no sampling.
pub fn analyze(p: &Polynomial) -> Result<AnalysisReport, BoundsError> {
    if p.is_constant() {
        return Err(BoundsError::ConstantPolynomial);
    }
    let admissible = admissible_indices(p)?;
    let ad = admissible_degree(p)?;
    let mut notes = Vec::new();

    let nd = match newton_distance(p) {
        Ok(nd) => Some(nd),
        Err(e) => {
            notes.push(Note::warning("newton-distance", e.to_string()));
            None
        }
    };

    let mut chains = Vec::new();
    let mut volume_bounds = Vec::new();
    for cert in &admissible {
        volume_bounds.push(admissible_volume_bound(p, cert)?);
    }
    for l in 1..=p.dimension() {
        let chain = p.jacobian_chain(l)?;
        let last = &chain[l];
        let last_degree = last.degree();
        let nondegenerate = last_degree.is_some_and(|d| d >= 1);
        chains.push(ChainSummary {
            l,
            last: last.to_string(),
            last_degree,
            nondegenerate,
        });
        if nondegenerate {
            volume_bounds.push(chain_volume_bound(p, l, None)?);
        }
    }
    volume_bounds.push(baseline_ccw_bound(p)?);

    let integrability = match integrability_bounds(p) {
        Ok(b) => Some(b),
        Err(BoundsError::NonzeroAtOrigin) => {
            notes.push(Note::warning(
                "integrability",
                "P(0) != 0, so |P|^(-mu) is integrable near the origin for every mu; index bounds omitted".into(),
            ));
            None
        }
        Err(e) => return Err(e),
    };
    let oscillatory = oscillatory_decay_bound(p)?;

    family_notes(p, nd.as_ref(), &mut notes);
    isolated_zero_warning(p, &mut notes);

    Ok(AnalysisReport {
        polynomial: p.to_string(),
        dimension: p.dimension(),
        degree: p.degree(),
        admissible,
        admissible_degree: ad.ad,
        admissible_degree_witness: ad.argmin,
        newton_distance: nd,
        chains,
        volume_bounds,
        integrability,
        oscillatory,
        notes,
    })
}
