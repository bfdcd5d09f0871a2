use super::{Policy, PolicyAlternative};

/// Removes duplicate assertions inside each alternative, then duplicate
/// alternatives (same assertion set). First occurrences keep their order.
pub fn normalize(policy: &Policy) -> Policy {
    let mut alternatives: Vec<PolicyAlternative> = Vec::with_capacity(policy.alternatives.len());
    for alt in &policy.alternatives {
        let mut assertions = Vec::with_capacity(alt.assertions.len());
        for a in &alt.assertions {
            if !assertions.contains(a) {
                assertions.push(a.clone());
            }
        }
        let alt = PolicyAlternative { assertions };
        if !alternatives.iter().any(|seen| same_set(seen, &alt)) {
            alternatives.push(alt);
        }
    }
    Policy {
        alternatives,
        ..policy.clone()
    }
}

// both sides are free of duplicates, so equal length + inclusion is set equality
fn same_set(a: &PolicyAlternative, b: &PolicyAlternative) -> bool {
    a.assertions.len() == b.assertions.len()
        && a.assertions.iter().all(|x| b.assertions.contains(x))
}
