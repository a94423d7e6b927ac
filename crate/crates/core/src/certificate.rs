//! JSON certificates for constructions. Every claim except the recorded choices
//! (route, anchors, packed sets) is recomputed from the input and output networks
//! alone, so a certificate can be checked without rerunning the construction.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::construct::small::small_attractor;
use crate::construct::strong::ALL_PAIRS_MAX_DIM;
use crate::construct::{
    break_async_iso, converge_to_fixed_points, converge_to_small_attractor, many_attractors,
    strongly_connected_variant, FixedPointRoute, SmallRoute,
};
use crate::digraph::{bfs_distances, is_strongly_connected};
use crate::dynamics::{
    almost_decreasing_reach, async_attractors, asynchronous_graph, delta_sets, image_count, AsyncView,
};
use crate::error::{verification, Error, Result};
use crate::iso::{are_isomorphic_digraphs, canonical_form};
use crate::network::BoolNet;

pub const SCHEMA: &str = "cert-v1";

/// Largest dimension at which `break-iso` also runs the general isomorphism test.
pub const DIGRAPH_CHECK_MAX_DIM: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Construction {
    #[serde(rename = "few-att")]
    FewAttractors,
    #[serde(rename = "small-att")]
    SmallAttractor,
    #[serde(rename = "many-att")]
    ManyAttractors,
    #[serde(rename = "strong")]
    Strong,
    #[serde(rename = "break-iso")]
    BreakIso,
}

impl Construction {
    pub const ALL: [Construction; 5] = [
        Construction::FewAttractors,
        Construction::SmallAttractor,
        Construction::ManyAttractors,
        Construction::Strong,
        Construction::BreakIso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::FewAttractors => "few-att",
            Construction::SmallAttractor => "small-att",
            Construction::ManyAttractors => "many-att",
            Construction::Strong => "strong",
            Construction::BreakIso => "break-iso",
        }
    }
}

impl std::fmt::Display for Construction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Construction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Construction::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown construction `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Certificate {
    pub schema: String,
    pub construction: Construction,
    pub n: usize,
    /// SHA-256 of the canonical form shared by input and output.
    pub canonical_digest: String,
    pub witness_kind: String,
    pub attractor_count: usize,
    pub attractor_sizes: Vec<usize>,
    pub attractors: Vec<Vec<Config>>,
    pub checks_passed: Vec<String>,
    /// `|Δ⁺|` of input and output.
    pub delta_plus: [usize; 2],
    /// `|Δ⁻|` of input and output.
    pub delta_minus: [usize; 2],
    /// Number of images of `f²`.
    pub images: usize,
    pub strongly_connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_path: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_detour: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anchors: Vec<Config>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub packed: Vec<Vec<Config>>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Verification(format!("unreadable certificate: {e}")))
    }
}

fn max_detour(h: &BoolNet) -> u32 {
    let g = AsyncView(h);
    (0..h.size() as Config)
        .flat_map(|x| {
            bfs_distances(&g, x)
                .into_iter()
                .enumerate()
                .map(move |(y, d)| d.saturating_sub(crate::config::dist(x, y as Config) as u32))
        })
        .max()
        .unwrap_or(0)
}

/// Recomputes every derivable claim for `h` built from `f`, failing on the first
/// property the construction promises but `h` lacks.
pub fn derive(kind: Construction, f: &BoolNet, h: &BoolNet) -> Result<Certificate> {
    let n = f.n();
    if h.n() != n {
        return Err(crate::Precondition::DimensionMismatch(n, h.n()).into());
    }
    let canon = canonical_form(f);
    if canon != canonical_form(h) {
        return Err(verification("output is not isomorphic to the input"));
    }
    let mut checks = vec!["isomorphic-synchronous".to_string()];
    let mut att = async_attractors(h);
    for a in att.attractors.iter_mut() {
        a.sort_unstable();
    }
    att.attractors.sort();
    let (df, dh) = (delta_sets(f), delta_sets(h));
    let strongly_connected = is_strongly_connected(&AsyncView(h));
    let images = image_count(f, 2);
    let mut max_path = None;
    let mut max_detour_claim = None;
    let fail = |what: &str| verification(format!("{kind}: {what}"));

    let witness_kind = match kind {
        Construction::FewAttractors => {
            let fp = f.fixed_point_count();
            if fp == 0 || att.count() != fp || att.attractors.iter().any(|a| a.len() != 1) {
                return Err(fail("attractors are not exactly the fixed points"));
            }
            checks.push("attractors-are-fixed-points".into());
            let reach = almost_decreasing_reach(h, &[]);
            if !reach.ok {
                return Err(fail("some configuration has no almost decreasing path to a fixed point"));
            }
            checks.push("almost-decreasing-reach".into());
            let m = reach.max_length().unwrap_or(0);
            if m as usize > n + 1 {
                return Err(fail("witness path longer than n + 1"));
            }
            checks.push("witness-length-at-most-n+1".into());
            max_path = Some(m);
            "fixed-points"
        }
        Construction::SmallAttractor => {
            let Some((_, m)) = small_attractor(h) else {
                return Err(fail("no unique attractor of size at most 4 reachable from everywhere"));
            };
            checks
                .extend(["unique-attractor", "attractor-size-at-most-4", "almost-decreasing-reach"].map(String::from));
            max_path = Some(m);
            "small-attractor"
        }
        Construction::ManyAttractors => {
            let small = att.attractors.iter().filter(|a| a.len() <= 4).count();
            if small < images / 10 {
                return Err(fail("fewer than floor(d/10) attractors of size at most 4"));
            }
            checks.push("small-attractors-at-least-d/10".into());
            "attractor-count"
        }
        Construction::Strong => {
            if !strongly_connected {
                return Err(fail("asynchronous graph is not strongly connected"));
            }
            checks.push("strongly-connected".into());
            if n <= ALL_PAIRS_MAX_DIM {
                let m = max_detour(h);
                if m > 4 {
                    return Err(fail("some shortest path exceeds the Hamming distance by more than 4"));
                }
                checks.push("paths-within-distance-plus-4".into());
                max_detour_claim = Some(m);
            }
            "strong-connectivity"
        }
        Construction::BreakIso => {
            let kind_name = if df.plus.len() != dh.plus.len() {
                "delta-plus"
            } else if df.minus.len() != dh.minus.len() {
                "delta-minus"
            } else {
                return Err(fail("Δ⁺ and Δ⁻ counts agree"));
            };
            checks.push(format!("{kind_name}-differs"));
            if n <= DIGRAPH_CHECK_MAX_DIM {
                if are_isomorphic_digraphs(&asynchronous_graph(f), &asynchronous_graph(h))?.is_some() {
                    return Err(fail("asynchronous graphs are isomorphic"));
                }
                checks.push("asynchronous-graphs-non-isomorphic".into());
            }
            kind_name
        }
    };
    Ok(Certificate {
        schema: SCHEMA.to_string(),
        construction: kind,
        n,
        canonical_digest: canon.digest(),
        witness_kind: witness_kind.to_string(),
        attractor_count: att.count(),
        attractor_sizes: att.sizes(),
        attractors: att.attractors,
        checks_passed: checks,
        delta_plus: [df.plus.len(), dh.plus.len()],
        delta_minus: [df.minus.len(), dh.minus.len()],
        images,
        strongly_connected,
        max_path,
        max_detour: max_detour_claim,
        route: None,
        anchors: Vec::new(),
        packed: Vec::new(),
    })
}

fn fixed_route(r: FixedPointRoute) -> &'static str {
    match r {
        FixedPointRoute::Identity => "identity",
        FixedPointRoute::NonPermutation => "non-permutation",
        FixedPointRoute::Permutation => "permutation",
        FixedPointRoute::PermutationCorrected => "permutation-corrected",
    }
}

fn small_route(r: SmallRoute) -> String {
    match r {
        SmallRoute::Involution => "involution".into(),
        SmallRoute::Exceptional => "exceptional".into(),
        SmallRoute::Search => "search".into(),
        SmallRoute::Pattern { id, corrected: false } => format!("pattern {id}"),
        SmallRoute::Pattern { id, corrected: true } => format!("pattern {id} corrected"),
    }
}

/// Runs a construction and certifies its output.
pub fn construct(kind: Construction, f: &BoolNet) -> Result<(BoolNet, Certificate)> {
    let (h, route, anchors, packed) = match kind {
        Construction::FewAttractors => {
            let o = converge_to_fixed_points(f)?;
            (o.h, Some(fixed_route(o.route).to_string()), Vec::new(), Vec::new())
        }
        Construction::SmallAttractor => {
            let o = converge_to_small_attractor(f)?;
            (o.h, Some(small_route(o.route)), Vec::new(), Vec::new())
        }
        Construction::ManyAttractors => {
            let o = many_attractors(f)?;
            (o.h, None, Vec::new(), o.packed)
        }
        Construction::Strong => (strongly_connected_variant(f)?.h, None, Vec::new(), Vec::new()),
        Construction::BreakIso => {
            let o = break_async_iso(f)?;
            let case = serde_json::to_value(o.case).ok().and_then(|v| v.as_str().map(String::from));
            (o.h, case, o.anchors, Vec::new())
        }
    };
    let mut cert = derive(kind, f, &h)?;
    cert.route = route;
    cert.anchors = anchors;
    cert.packed = packed;
    Ok((h, cert))
}

/// Checks a certificate against the two networks; returns the checks that passed.
pub fn verify(cert: &Certificate, f: &BoolNet, h: &BoolNet) -> Result<Vec<String>> {
    if cert.schema != SCHEMA {
        return Err(verification(format!("unknown schema `{}`", cert.schema)));
    }
    if cert.n != f.n() {
        return Err(verification(format!("certificate is for n = {}, input has n = {}", cert.n, f.n())));
    }
    let mut d = derive(cert.construction, f, h)?;
    d.route = cert.route.clone();
    d.anchors = cert.anchors.clone();
    d.packed = cert.packed.clone();
    for a in &cert.packed {
        let mut a = a.clone();
        a.sort_unstable();
        if d.attractors.binary_search(&a).is_err() {
            return Err(verification(format!("packed set {a:?} is not an attractor")));
        }
    }
    if d != *cert {
        let mismatch = [
            ("canonical-digest", d.canonical_digest != cert.canonical_digest),
            ("witness-kind", d.witness_kind != cert.witness_kind),
            ("attractor-count", d.attractor_count != cert.attractor_count),
            ("attractor-sizes", d.attractor_sizes != cert.attractor_sizes),
            ("attractors", d.attractors != cert.attractors),
            ("checks-passed", d.checks_passed != cert.checks_passed),
            ("delta-plus", d.delta_plus != cert.delta_plus),
            ("delta-minus", d.delta_minus != cert.delta_minus),
            ("images", d.images != cert.images),
            ("strongly-connected", d.strongly_connected != cert.strongly_connected),
            ("max-path", d.max_path != cert.max_path),
            ("max-detour", d.max_detour != cert.max_detour),
        ]
        .into_iter()
        .filter(|&(_, bad)| bad)
        .map(|(name, _)| name)
        .collect::<Vec<_>>();
        return Err(verification(format!("certificate disagrees on {}", mismatch.join(", "))));
    }
    Ok(d.checks_passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shift() -> BoolNet {
        BoolNet::from_table(2, vec![0, 2, 1, 3]).unwrap()
    }

    #[test]
    fn few_attractors_on_the_shift() {
        let (h, cert) = construct(Construction::FewAttractors, &shift()).unwrap();
        assert_eq!(cert.attractor_count, 2);
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert);
        assert!(verify(&back, &shift(), &h).is_ok());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let f = BoolNet::negation(3);
        let (h, mut cert) = construct(Construction::SmallAttractor, &f).unwrap();
        cert.attractor_count += 1;
        assert!(matches!(verify(&cert, &f, &h), Err(Error::Verification(_))));
    }

    #[test]
    fn wrong_output_is_rejected() {
        let f = BoolNet::negation(3);
        let (_, cert) = construct(Construction::Strong, &f).unwrap();
        assert!(verify(&cert, &f, &BoolNet::identity(3)).is_err());
    }

    #[test]
    fn construction_names_round_trip() {
        for c in Construction::ALL {
            assert_eq!(c.name().parse::<Construction>().unwrap(), c);
        }
    }
}
