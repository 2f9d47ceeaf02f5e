//! Ready-made group actions and composite spaces for tests and examples.

use crate::complex::{standard_space, DeltaComplex};
use crate::nerve::{FinGroup, FinGroupAction};
use std::sync::Arc;

/// Two isolated vertices.
pub fn two_points() -> Arc<DeltaComplex> {
    DeltaComplex::new(vec![("p".into(), vec![]), ("q".into(), vec![])]).unwrap()
}

/// Disjoint union of two 3-edge circles, vertices x*/y* and edges xe*/ye*.
pub fn two_circles() -> Arc<DeltaComplex> {
    let mut decl: Vec<(String, Vec<String>)> = Vec::new();
    for side in ["x", "y"] {
        for v in 0..3 {
            decl.push((format!("{side}v{v}"), vec![]));
        }
    }
    for side in ["x", "y"] {
        for (e, (a, b)) in [(0usize, (0usize, 1usize)), (1, (1, 2)), (2, (2, 0))] {
            decl.push((
                format!("{side}e{e}"),
                vec![format!("{side}v{b}"), format!("{side}v{a}")],
            ));
        }
    }
    DeltaComplex::new(decl).unwrap()
}

/// Z/2 acting trivially on a point.
pub fn z2_on_point() -> FinGroupAction {
    FinGroupAction::trivial(FinGroup::cyclic(2), standard_space("point").unwrap())
}

/// Z/3 acting trivially on a point.
pub fn z3_on_point() -> FinGroupAction {
    FinGroupAction::trivial(FinGroup::cyclic(3), standard_space("point").unwrap())
}

/// Z/3 acting trivially on two points.
pub fn z3_on_two_points() -> FinGroupAction {
    FinGroupAction::trivial(FinGroup::cyclic(3), two_points())
}

/// Z/2 swapping two isolated vertices.
pub fn z2_swap_two_points() -> FinGroupAction {
    let base = two_points();
    let id = vec![vec![0, 1]];
    let swap = vec![vec![1, 0]];
    FinGroupAction::new(FinGroup::cyclic(2), base, vec![id, swap]).unwrap()
}

/// Z/2 swapping the two components of a disjoint union of circles.
pub fn z2_swap_two_circles() -> FinGroupAction {
    let base = two_circles();
    let id: Vec<Vec<usize>> = vec![(0..6).collect(), (0..6).collect()];
    let swap: Vec<Vec<usize>> = vec![vec![3, 4, 5, 0, 1, 2], vec![3, 4, 5, 0, 1, 2]];
    FinGroupAction::new(FinGroup::cyclic(2), base, vec![id, swap]).unwrap()
}

/// The trivial group acting on a named standard space.
pub fn trivial_on(name: &str) -> FinGroupAction {
    FinGroupAction::trivial(FinGroup::trivial(), standard_space(name).unwrap())
}

/// The circle covered by two closed arcs meeting in two vertices, with tau
/// following the first vertex of each simplex.
pub fn circle_two_arc_cover() -> crate::descent::Cover {
    let circle = standard_space("circle_3").unwrap();
    let text = "element A : e01 e12\nelement B : e20\n\
                tau v0 = A\ntau v1 = A\ntau v2 = B\n\
                tau e01 = A\ntau e12 = A\ntau e20 = B\n";
    crate::descent::parse_cover(text, &circle).unwrap().0
}

/// The circle covered by two closed arcs overlapping in a common edge, so
/// the shared first vertex can carry split weights.
pub fn circle_edge_overlap_cover() -> crate::descent::Cover {
    let circle = standard_space("circle_3").unwrap();
    let text = "element A : e01 e12\nelement B : e01 e20\n";
    crate::descent::parse_cover(text, &circle).unwrap().0
}

/// The minimal torus covered by the closures of its two triangles.
pub fn torus_two_triangle_cover() -> crate::descent::Cover {
    let torus = standard_space("torus_min").unwrap();
    let text = "element T1 : U\nelement T2 : L\n";
    crate::descent::parse_cover(text, &torus).unwrap().0
}

/// A cover by the whole complex as its single element.
pub fn single_element_cover(name: &str) -> crate::descent::Cover {
    let base = standard_space(name).unwrap();
    let top = base.dimension();
    let mut ids: Vec<String> = Vec::new();
    for n in 0..=top {
        for i in 0..base.size(n) {
            ids.push(base.simplex_id(n, i).to_string());
        }
    }
    let text = format!("element all : {}\n", ids.join(" "));
    crate::descent::parse_cover(&text, &base).unwrap().0
}
