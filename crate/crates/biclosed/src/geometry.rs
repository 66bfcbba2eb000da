//! Planar primitives shared by the subsystem and convexity machinery:
//! exact 2-dimensional span solving, plane discovery, and angular order
//! within a plane.

use crate::exactnum::{Scalar, Sign};

/// Solve `x·a + y·b = target` exactly. Returns `None` when the target is off
/// the span. A collinear pair `a ∥ b` degenerates to the ratio test on the
/// line through `a`.
pub fn span2_solve<S: Scalar>(a: &[S], b: &[S], target: &[S]) -> Option<(S, S)> {
    let n = a.len();
    let i = (0..n).find(|&i| !a[i].is_zero())?;
    // hunt for a coordinate pair giving an invertible 2×2 system
    let mut pivot = None;
    for j in 0..n {
        if j == i {
            continue;
        }
        let det = a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone();
        if !det.is_zero() {
            pivot = Some((j, det));
            break;
        }
    }
    let Some((j, det)) = pivot else {
        // b is a multiple of a: the span is a line
        let t = target[i].clone() / a[i].clone();
        let on_line = a
            .iter()
            .zip(target)
            .all(|(ac, tc)| ac.clone() * t.clone() == tc.clone());
        return on_line.then_some((t, S::zero()));
    };
    let x = (target[i].clone() * b[j].clone() - target[j].clone() * b[i].clone()) / det.clone();
    let y = (a[i].clone() * target[j].clone() - a[j].clone() * target[i].clone()) / det;
    let exact = a
        .iter()
        .zip(b)
        .zip(target)
        .all(|((ac, bc), tc)| x.clone() * ac.clone() + y.clone() * bc.clone() == tc.clone());
    exact.then_some((x, y))
}

/// `target ∈ Span₊(a, b)`, with the collinear degenerate case resolved by the
/// one-dimensional ratio test (a positive multiple of `a` counts as inside).
pub fn in_positive_span_2<S: Scalar>(a: &[S], b: &[S], target: &[S]) -> bool {
    match span2_solve(a, b, target) {
        Some((x, y)) => !x.is_negative() && !y.is_negative(),
        None => false,
    }
}

/// Partition of all index pairs into maximal coplanar groups. Every pair of
/// vectors belongs to exactly one group; groups of two are ubiquitous.
/// Assumes no two vectors are collinear (reducedness of the ambient set).
pub fn find_planes<S: Scalar>(vectors: &[Vec<S>]) -> Vec<Vec<usize>> {
    let n = vectors.len();
    let mut covered = vec![false; n * n];
    let mut planes = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if covered[i * n + j] {
                continue;
            }
            let mut members = Vec::new();
            for (k, v) in vectors.iter().enumerate() {
                if k == i || k == j || span2_solve(&vectors[i], &vectors[j], v).is_some() {
                    members.push(k);
                }
            }
            for (a, &ma) in members.iter().enumerate() {
                for &mb in members.iter().skip(a + 1) {
                    covered[ma * n + mb] = true;
                    covered[mb * n + ma] = true;
                }
            }
            planes.push(members);
        }
    }
    planes
}

/// Sort the members of one plane by angle.
///
/// All members lie in an open halfplane (they are positive roots), so the
/// orientation comparator x·y' − y·x' is a strict total order. The first and
/// last members of the result are the plane's two fundamental vectors.
pub fn angular_order<S: Scalar>(vectors: &[Vec<S>], members: &[usize]) -> Vec<usize> {
    if members.len() <= 2 {
        return members.to_vec();
    }
    let u = &vectors[members[0]];
    let w = &vectors[members[1]];
    let coords2: Vec<(usize, (S, S))> = members
        .iter()
        .map(|&m| {
            let xy = span2_solve(u, w, &vectors[m]).expect("member must lie in its plane");
            (m, xy)
        })
        .collect();
    let mut order: Vec<usize> = (0..members.len()).collect();
    order.sort_by(|&p, &q| {
        let (x1, y1) = &coords2[p].1;
        let (x2, y2) = &coords2[q].1;
        let cross = x1.clone() * y2.clone() - y1.clone() * x2.clone();
        match cross.sign() {
            Sign::Pos => std::cmp::Ordering::Less,
            Sign::Neg => std::cmp::Ordering::Greater,
            Sign::Zero => unreachable!("collinear members are excluded by reducedness"),
        }
    });
    order.into_iter().map(|p| coords2[p].0).collect()
}
