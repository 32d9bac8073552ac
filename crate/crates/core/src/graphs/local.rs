use serde::{Deserialize, Serialize};

use super::{check_action, Graph};
use crate::error::{Error, Result};
use crate::perm::{p_core, PermGroup};
use crate::two_adic::factorize;

/// Local structure at a vertex `a` and its first neighbour `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalActionReport {
    pub vertex: usize,
    pub stabilizer_order: u64,
    pub local_degree: usize,
    /// Order of the group induced by `G_a` on the neighbourhood of `a`.
    pub local_group_order: u64,
    /// Order of `G_a^[1]`, the kernel of that action.
    pub kernel_order: u64,
    pub local_2transitive: bool,
    /// Order of the pointwise stabilizer of both neighbourhoods of the edge `ab`.
    pub double_star_kernel_order: u64,
    pub double_star_prime: Option<u64>,
    /// Whether the double-star kernel order is 1 or a prime power.
    pub double_star_prime_power: bool,
}

#[derive(Clone, Debug)]
pub struct LocalAction {
    pub report: LocalActionReport,
    /// `G_a` induced on the neighbourhood, on `0..valency` in neighbour order.
    pub local_group: PermGroup,
    pub kernel: PermGroup,
}

/// Pointwise stabilizer of `N(a) ∪ N(b)` for adjacent `a`, `b`, with the
/// prime `p` when its order is a nontrivial power of `p`. The second value is
/// false when the order is not 1 or a prime power.
pub fn double_star_kernel(
    group: &PermGroup,
    graph: &Graph,
    a: usize,
    b: usize,
) -> Result<(PermGroup, Option<u64>, bool)> {
    check_action(group, graph)?;
    if !graph.are_adjacent(a, b) {
        return Err(Error::InvalidArgument(format!("{a} and {b} are not adjacent")));
    }
    let mut points: Vec<usize> = graph.neighbours(a).to_vec();
    points.extend_from_slice(graph.neighbours(b));
    points.sort_unstable();
    points.dedup();
    let kernel = group.pointwise_stabilizer(&points)?;
    let primes = factorize(kernel.order_u64());
    let prime = (primes.len() == 1).then(|| primes[0].0);
    let prime_power = primes.len() <= 1;
    Ok((kernel, prime, prime_power))
}

/// `G_a` on the neighbourhood of `a`, its kernel, and the double-star
/// kernel of the edge from `a` to its first neighbour.
pub fn local_action(group: &PermGroup, graph: &Graph, a: usize) -> Result<LocalAction> {
    check_action(group, graph)?;
    if a >= graph.vertex_count() {
        return Err(Error::PointOutOfRange {
            point: a,
            degree: graph.vertex_count(),
        });
    }
    let stabilizer = group.point_stabilizer(a)?;
    let neighbourhood = graph.neighbours(a);
    let (local_group, kernel) = stabilizer.action_on_orbit(neighbourhood)?;
    let b = *neighbourhood
        .first()
        .ok_or_else(|| Error::InvalidArgument(format!("vertex {a} is isolated")))?;
    let (double_star, double_star_prime, double_star_prime_power) =
        double_star_kernel(group, graph, a, b)?;
    let report = LocalActionReport {
        vertex: a,
        stabilizer_order: stabilizer.order_u64(),
        local_degree: neighbourhood.len(),
        local_group_order: local_group.order_u64(),
        kernel_order: kernel.order_u64(),
        local_2transitive: local_group.is_k_transitive(2),
        double_star_kernel_order: double_star.order_u64(),
        double_star_prime,
        double_star_prime_power,
    };
    Ok(LocalAction {
        report,
        local_group,
        kernel,
    })
}

/// Whether the arc stabilizer `G_ab` induces on the neighbourhood of `a` a
/// group with a nontrivial normal `p`-subgroup.
pub fn arc_stabilizer_has_normal_p_subgroup(
    group: &PermGroup,
    graph: &Graph,
    a: usize,
    b: usize,
    p: u64,
    limit: u64,
) -> Result<bool> {
    check_action(group, graph)?;
    let arc_stabilizer = group.pointwise_stabilizer(&[a, b])?;
    let (induced, _) = arc_stabilizer.action_on_orbit(graph.neighbours(a))?;
    Ok(!p_core(&induced, p, limit)?.is_trivial())
}
