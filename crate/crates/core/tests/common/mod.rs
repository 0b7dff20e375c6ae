//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use yangian_core::partitions3d::Box3;
use yangian_core::pyramid::{Color, Stone};

/// Boxes that can occur in a plane partition of size `n`: the whole box
/// spanned by the corner and such a box lies in the partition.
pub fn candidate_boxes(n: usize) -> Vec<Box3> {
    let n = n as u32;
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if (i + 1) * (j + 1) * (k + 1) <= n {
                    out.push(Box3::new(i, j, k));
                }
            }
        }
    }
    out
}

pub fn is_ideal(set: &BTreeSet<[u32; 3]>) -> bool {
    set.iter().all(|&[i, j, k]| {
        (i == 0 || set.contains(&[i - 1, j, k]))
            && (j == 0 || set.contains(&[i, j - 1, k]))
            && (k == 0 || set.contains(&[i, j, k - 1]))
    })
}

pub fn subsets_of_size<T: Clone>(items: &[T], n: usize, f: &mut impl FnMut(&[T])) {
    fn go<T: Clone>(items: &[T], n: usize, start: usize, cur: &mut Vec<T>, f: &mut impl FnMut(&[T])) {
        if cur.len() == n {
            f(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < n - cur.len() {
                break;
            }
            cur.push(items[i].clone());
            go(items, n, i + 1, cur, f);
            cur.pop();
        }
    }
    go(items, n, 0, &mut Vec::new(), f);
}

/// All plane partitions of size `n`, by filtering subsets of candidate boxes.
pub fn plane_partition_oracle(n: usize) -> BTreeSet<BTreeSet<[u32; 3]>> {
    let cands = candidate_boxes(n);
    let mut out = BTreeSet::new();
    subsets_of_size(&cands, n, &mut |s| {
        let set: BTreeSet<[u32; 3]> = s.iter().map(|b| [b.i, b.j, b.k]).collect();
        if is_ideal(&set) {
            out.insert(set);
        }
    });
    out
}

/// Stones of the configuration of length `m`, listed from coordinate ranges.
pub fn erc_oracle(m: u32) -> Vec<Stone> {
    let mut out = vec![];
    for k in 0..m {
        for c in k..m {
            for a in 0..=k {
                out.push(Stone::black(k, a, c));
            }
            for a in 0..k {
                out.push(Stone::white(k, a, c));
            }
        }
    }
    out
}

/// `upper` lies directly above `lower`: a white `W(k;a,c)` over `B(k;a,c)`
/// and `B(k;a+1,c)`, a black `B(k;a,c)` over `W(k+1;a,c)` and `W(k+1;a,c+1)`.
pub fn above(upper: &Stone, lower: &Stone) -> bool {
    match (upper.color, lower.color) {
        (Color::White, Color::Black) => {
            lower.k == upper.k && lower.c == upper.c && (lower.a == upper.a || lower.a == upper.a + 1)
        }
        (Color::Black, Color::White) => {
            lower.k == upper.k + 1 && lower.a == upper.a && (lower.c == upper.c || lower.c == upper.c + 1)
        }
        _ => false,
    }
}

pub fn closed(stones: &[Stone], set: &BTreeSet<Stone>) -> bool {
    set.iter().all(|s| stones.iter().filter(|u| above(u, s)).all(|u| set.contains(u)))
}

/// All upward-closed subsets with at most `max` stones.
pub fn pyramid_oracle(m: u32, max: usize) -> BTreeSet<BTreeSet<Stone>> {
    let stones = erc_oracle(m);
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << stones.len()) {
        if mask.count_ones() as usize > max {
            continue;
        }
        let set: BTreeSet<Stone> = stones.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, s)| *s).collect();
        if closed(&stones, &set) {
            out.insert(set);
        }
    }
    out
}

