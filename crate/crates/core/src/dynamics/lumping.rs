use rand::Rng;

use super::{check_len, DynamicsError};
use crate::preorder::PreorderRelation;
use crate::refinement::Partition;
use crate::scalar::{Real, Scalar};

/// Node state taking value `z[c]` on every node of class `c`.
pub fn lift<T: Scalar>(p: &Partition, z: &[T]) -> Result<Vec<T>, DynamicsError> {
    check_len(p.num_classes(), z.len())?;
    Ok(p.labels().iter().map(|&c| z[c].clone()).collect())
}

/// Class values of a class-constant node state. Values within a class may
/// differ by at most `tol`; the class's smallest member supplies the value.
pub fn project<T: Scalar>(p: &Partition, y: &[T], tol: T) -> Result<Vec<T>, DynamicsError> {
    check_len(p.node_count(), y.len())?;
    p.classes()
        .iter()
        .enumerate()
        .map(|(c, class)| {
            let head = &y[class[0]];
            match class[1..].iter().find(|&&v| y[v].abs_diff(head) > tol) {
                Some(&b) => Err(DynamicsError::NotClassConstant {
                    class: c,
                    a: class[0],
                    b,
                }),
                None => Ok(head.clone()),
            }
        })
        .collect()
}

/// Pairs `i ⪰ j` (with `i ≠ j`) where `y_i < y_j`.
pub fn order_violations_at<T: Scalar>(r: &PreorderRelation, y: &[T]) -> Vec<(usize, usize)> {
    r.pairs().filter(|&(i, j)| y[i] < y[j]).collect()
}

/// Assigns `class_values[c]` to the nodes of class `c` of `p` (the
/// equivalence classes of `r`) and checks that the result is ordered along
/// `r`. The error lists every violating pair.
pub fn consistent_initial<T: Scalar>(
    r: &PreorderRelation,
    class_values: &[T],
    p: &Partition,
) -> Result<Vec<T>, DynamicsError> {
    check_len(r.node_count(), p.node_count())?;
    let y = lift(p, class_values)?;
    let pairs = order_violations_at(r, &y);
    if !pairs.is_empty() {
        return Err(DynamicsError::Inconsistent { pairs });
    }
    Ok(y)
}

/// Random class values in `[0, 1]` ordered along `r`: a class never gets a
/// smaller value than any class it dominates.
///
/// `p` must be the equivalence-class partition of `r`.
pub fn sample_consistent_values<T: Real, R: Rng>(
    r: &PreorderRelation,
    p: &Partition,
    rng: &mut R,
) -> Vec<T> {
    let k = p.num_classes();
    let rep: Vec<usize> = p.classes().iter().map(|c| c[0]).collect();
    let below: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            (0..k)
                .filter(|&b| b != a && r.dominates(rep[a], rep[b]))
                .collect()
        })
        .collect();
    // a class dominates strictly more classes than anything it dominates
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| below[c].len());
    let mut values = vec![T::zero(); k];
    for c in order {
        let floor = below[c].iter().map(|&b| values[b]).fold(T::zero(), T::max);
        let u = T::lit(rng.gen::<f64>());
        values[c] = floor + (T::one() - floor) * u;
    }
    values
}
