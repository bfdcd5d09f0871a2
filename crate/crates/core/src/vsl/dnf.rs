use super::ast::{Rel, VslExpression};

/// One product term of a disjunctive normal form.
pub type Conjunct = Vec<Rel>;

/// Rewrites `expr` as an or-of-ands. Leaves inside a conjunct keep their
/// left-to-right source order and appear at most once (syntactic equality).
/// Conjuncts themselves are not deduplicated.
pub fn to_dnf(expr: &VslExpression) -> Vec<Conjunct> {
    match expr {
        VslExpression::Rel(r) => vec![vec![r.clone()]],
        VslExpression::Or(cs) => cs.iter().flat_map(to_dnf).collect(),
        VslExpression::And(cs) => {
            let mut acc: Vec<Conjunct> = vec![Vec::new()];
            for c in cs {
                let rhs = to_dnf(c);
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for left in &acc {
                    for right in &rhs {
                        let mut merged = left.clone();
                        for leaf in right {
                            if !merged.contains(leaf) {
                                merged.push(leaf.clone());
                            }
                        }
                        next.push(merged);
                    }
                }
                acc = next;
            }
            acc
        }
    }
}

/// Evaluates a DNF with `leaf` deciding each relation, visiting every leaf.
pub fn eval_dnf<E>(
    dnf: &[Conjunct],
    leaf: &mut impl FnMut(&Rel) -> Result<bool, E>,
) -> Result<bool, E> {
    let mut any = false;
    for conj in dnf {
        let mut all = true;
        for r in conj {
            all &= leaf(r)?;
        }
        any |= all;
    }
    Ok(any)
}
