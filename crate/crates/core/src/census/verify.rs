use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_2at_coset_graphs, CensusGraph};
use super::lattice::{odd_index_subgroups, MaximalShape, SubgroupCensus};
use super::{Verdict, SCHEMA};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graphs::Family;
use crate::perm::{CompositionFactor, ExceptionalDegree6, GroupTag};
use crate::two_adic::is_power_of_two;

fn groups_of_degree(n: usize, with_exceptional: bool) -> Vec<GroupTag> {
    let mut tags = vec![GroupTag::Alternating(n), GroupTag::Symmetric(n)];
    if n == 6 && with_exceptional {
        tags.extend(ExceptionalDegree6::ALL.map(GroupTag::Exceptional));
    }
    tags
}

/// Families the classification predicts at socle degree `n`: `K_n` for odd
/// `n`, and `O_{2^e - 1}` when `n = 2^{e+1} - 1` with `e >= 2`.
pub fn predicted_families(n: usize) -> Vec<Family> {
    let mut out = Vec::new();
    if n % 2 == 1 {
        out.push(Family::Complete(n));
    }
    if n >= 7 && is_power_of_two(n as u64 + 1) {
        out.push(Family::Odd((n - 1) / 2));
    }
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFamilyDegree {
    pub degree: usize,
    pub groups: Vec<String>,
    pub expected: Vec<Family>,
    pub found: Vec<Family>,
    pub graphs: Vec<CensusGraph>,
    /// Odd graphs whose vertex stabilizer order is not that of `S_m x S_{m-1}`
    /// (or half of it) with `m` a power of 2.
    pub stabilizer_shape_mismatches: Vec<String>,
    /// Graphs violating the prime-power double-star or local 2-transitivity conditions.
    pub local_violations: Vec<String>,
    pub undecided: Vec<String>,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFamilyReport {
    pub schema: String,
    pub caps: Caps,
    pub degrees: Vec<GraphFamilyDegree>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Runs the coset-graph census at each socle degree and compares the
/// families found with [`predicted_families`].
pub fn verify_graph_families(degrees: &[usize], caps: &Caps) -> Result<GraphFamilyReport> {
    caps.validate()?;
    let mut out = Vec::new();
    for &n in degrees {
        if n < 5 {
            return Err(Error::InvalidArgument(format!("socle degree {n} is below 5")));
        }
        let tags = groups_of_degree(n, true);
        let mut graphs = Vec::new();
        let mut undecided = Vec::new();
        for &tag in &tags {
            let census = enumerate_2at_coset_graphs(tag, caps)?;
            undecided.extend(census.undecided.iter().map(|u| format!("{tag}: {u}")));
            graphs.extend(census.graphs);
        }
        let found: Vec<Family> = graphs
            .iter()
            .map(|g| g.family)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut stabilizer_shape_mismatches = Vec::new();
        let mut local_violations = Vec::new();
        for g in &graphs {
            if let Family::Odd(k) = g.family {
                let m = k + 1;
                let full = factorial(m) * factorial(m - 1);
                let fits = g.subgroup_order == full || 2 * g.subgroup_order == full;
                if !(is_power_of_two(m as u64) && fits && 2 * m - 1 == n) {
                    stabilizer_shape_mismatches.push(format!(
                        "{} {}: stabilizer order {}",
                        g.group, g.family, g.subgroup_order
                    ));
                }
            }
            if !g.local.double_star_prime_power || !g.local.local_2transitive {
                local_violations.push(format!("{} {} via {}", g.group, g.family, g.arc_element));
            }
            if g.arc_stabilizer_normal_p_subgroup == Some(false) {
                local_violations.push(format!(
                    "{} {}: arc stabilizer has no normal p-subgroup",
                    g.group, g.family
                ));
            }
        }
        let expected = predicted_families(n);
        let consistent = found == expected
            && undecided.is_empty()
            && stabilizer_shape_mismatches.is_empty()
            && local_violations.is_empty();
        out.push(GraphFamilyDegree {
            degree: n,
            groups: tags.iter().map(|t| t.to_string()).collect(),
            expected,
            found,
            graphs,
            stabilizer_shape_mismatches,
            local_violations,
            undecided,
            consistent,
        });
    }
    let verdict = if out.iter().any(|d| !d.undecided.is_empty()) {
        Verdict::Undecided
    } else if out.iter().all(|d| d.consistent) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(GraphFamilyReport {
        schema: SCHEMA.into(),
        caps: caps.clone(),
        degrees: out,
        notes: vec![
            "n is read as the socle degree; the odd graph O_{2^e-1} has order C(2^{e+1}-1, 2^e-1) and arises at socle degree 2^{e+1}-1".into(),
        ],
        verdict,
    })
}

/// An insoluble odd-index class with a non-alternating insoluble factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ExceptionEntry {
    pub group: String,
    pub order: u64,
    pub index: u64,
    pub generators: Vec<String>,
    pub factors: Vec<CompositionFactor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsolubleFactorReport {
    pub schema: String,
    pub caps: Caps,
    pub degrees: Vec<usize>,
    /// `(group, order)` pairs expected in range.
    pub expected_exceptions: Vec<(String, u64)>,
    pub exceptions_found: Vec<ExceptionEntry>,
    pub insoluble_classes_checked: usize,
    pub censuses: Vec<SubgroupCensus>,
    pub undecided: Vec<String>,
    pub consistent: bool,
    pub verdict: Verdict,
}

/// The pairs `(A_7, GL(3,2))`, `(A_8, AGL(3,2))`, `(A_9, AGL(3,2))`.
pub fn expected_exceptions(degrees: &[usize]) -> Vec<(String, u64)> {
    [(7, 168), (8, 1344), (9, 1344)]
        .into_iter()
        .filter(|(n, _)| degrees.contains(n))
        .map(|(n, o)| (GroupTag::Alternating(n).to_string(), o))
        .collect()
}

/// Checks that every insoluble proper odd-index subgroup of `A_n` and `S_n`
/// has only alternating insoluble composition factors, apart from the
/// expected exceptions.
pub fn verify_insoluble_factors(degrees: &[usize], caps: &Caps) -> Result<InsolubleFactorReport> {
    caps.validate()?;
    let mut censuses = Vec::new();
    let mut exceptions = Vec::new();
    let mut undecided = Vec::new();
    let mut checked = 0;
    for &n in degrees {
        if n < 5 {
            return Err(Error::InvalidArgument(format!("degree {n} is below 5")));
        }
        for tag in groups_of_degree(n, false) {
            let census = odd_index_subgroups(tag, caps)?;
            if census.incomplete {
                undecided.extend(census.notes.iter().map(|m| format!("{tag}: {m}")));
            }
            for class in census.insoluble() {
                checked += 1;
                if let Some(msg) = &class.factors_undecided {
                    undecided.push(format!("{tag} class {}: {msg}", class.conjugacy_class_id));
                } else if !class.non_alternating_insoluble().is_empty() {
                    exceptions.push(ExceptionEntry {
                        group: tag.to_string(),
                        order: class.order,
                        index: class.index,
                        generators: class.generators.clone(),
                        factors: class.factors.clone(),
                    });
                }
            }
            censuses.push(census);
        }
    }
    let expected = expected_exceptions(degrees);
    let found: BTreeSet<(String, u64)> = exceptions.iter().map(|e| (e.group.clone(), e.order)).collect();
    let consistent = undecided.is_empty() && found == expected.iter().cloned().collect();
    let verdict = if !undecided.is_empty() {
        Verdict::Undecided
    } else if consistent {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(InsolubleFactorReport {
        schema: SCHEMA.into(),
        caps: caps.clone(),
        degrees: degrees.to_vec(),
        expected_exceptions: expected,
        exceptions_found: exceptions,
        insoluble_classes_checked: checked,
        censuses,
        undecided,
        consistent,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree6Entry {
    pub group: String,
    pub order: u64,
    pub expected_order: u64,
    pub odd_index_classes: usize,
    pub insoluble_proper_classes: usize,
    pub maximal_shapes: Vec<MaximalShape>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degree6Report {
    pub schema: String,
    pub caps: Caps,
    pub groups: Vec<Degree6Entry>,
    pub verdict: Verdict,
}

/// `PGL(2,9)`, `M_10` and `PGammaL(2,9)` have no insoluble proper subgroup of odd index.
pub fn verify_exceptional_degree6(caps: &Caps) -> Result<Degree6Report> {
    caps.validate()?;
    let mut groups = Vec::new();
    let mut undecided = false;
    for e in ExceptionalDegree6::ALL {
        let tag = GroupTag::Exceptional(e);
        let census = odd_index_subgroups(tag, caps)?;
        undecided |= census.incomplete || census.classes.iter().any(|c| c.factors_undecided.is_some());
        groups.push(Degree6Entry {
            group: tag.to_string(),
            order: census.group_order,
            expected_order: e.expected_order(),
            odd_index_classes: census.classes.len(),
            insoluble_proper_classes: census.insoluble().count(),
            maximal_shapes: census.maximal().filter_map(|c| c.shape.clone()).collect(),
        });
    }
    let pass = groups
        .iter()
        .all(|g| g.insoluble_proper_classes == 0 && g.order == g.expected_order);
    let verdict = if undecided {
        Verdict::Undecided
    } else if pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Degree6Report {
        schema: SCHEMA.into(),
        caps: caps.clone(),
        groups,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalShapeEntry {
    pub group: String,
    pub order: u64,
    pub index: u64,
    pub shape: MaximalShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalShapeReport {
    pub schema: String,
    pub caps: Caps,
    pub degrees: Vec<usize>,
    pub maximal_classes: Vec<MaximalShapeEntry>,
    pub unmatched: usize,
    pub verdict: Verdict,
}

/// Matches every lattice-maximal odd-index class of `A_n` and `S_n` against
/// the known shapes of maximal subgroups of odd index.
pub fn verify_maximal_shapes(degrees: &[usize], caps: &Caps) -> Result<MaximalShapeReport> {
    caps.validate()?;
    let mut entries = Vec::new();
    let mut undecided = false;
    for &n in degrees {
        for tag in groups_of_degree(n, false) {
            let census = odd_index_subgroups(tag, caps)?;
            undecided |= census.incomplete;
            for c in census.maximal() {
                entries.push(MaximalShapeEntry {
                    group: tag.to_string(),
                    order: c.order,
                    index: c.index,
                    shape: c.shape.clone().unwrap_or(MaximalShape::Unmatched),
                });
            }
        }
    }
    let unmatched = entries
        .iter()
        .filter(|e| e.shape == MaximalShape::Unmatched)
        .count();
    let verdict = if undecided {
        Verdict::Undecided
    } else if unmatched == 0 {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(MaximalShapeReport {
        schema: SCHEMA.into(),
        caps: caps.clone(),
        degrees: degrees.to_vec(),
        maximal_classes: entries,
        unmatched,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn predictions() {
        assert_eq!(predicted_families(5), vec![Family::Complete(5)]);
        assert!(predicted_families(6).is_empty());
        assert_eq!(predicted_families(7), vec![Family::Complete(7), Family::Odd(3)]);
        assert!(predicted_families(8).is_empty());
        assert_eq!(predicted_families(15), vec![Family::Complete(15), Family::Odd(7)]);
    }
}
