//! Compatibility of the forward map with signed lamination weights for
//! curves that are neither peripheral nor boundary parallel.

use teich_coords::coordinates::Coordinates;
use teich_coords::fixtures::special_triangulation;
use teich_coords::lamination::*;
use teich_coords::surface::{SurfaceSignature, TriangulatedSurface};

fn push_general(ctx: &LaminationContext, s: &TriangulatedSurface, c: CombinatorialCurve, out: &mut Vec<CombinatorialCurve>) {
    if let Ok(CurveKind::General) = ctx.classify(&c) {
        let key = c.canonical(s);
        if !out.contains(&key) {
            out.push(key);
        }
    }
}

// Curves crossing every edge at most once are simple and in minimal position.
fn edge_once(s: &TriangulatedSurface, path: &[usize], x: usize) -> bool {
    let e = s.edge_of(x);
    path.iter().all(|&p| s.edge_of(p) != e)
}

fn general_curves(s: &TriangulatedSurface, ctx: &LaminationContext) -> Vec<CombinatorialCurve> {
    let mut out = Vec::new();
    let bsides: Vec<usize> = (0..s.num_sides()).filter(|&x| s.twin(x).is_none()).collect();
    let mut stack: Vec<(usize, Vec<usize>)> = bsides.iter().map(|&b| (b, vec![])).collect();
    while let Some((b, path)) = stack.pop() {
        let entry = path.last().map(|&p| s.twin(p).unwrap()).unwrap_or(b);
        let t = s.triangle_of(entry);
        for x in (3 * t..3 * t + 3).filter(|&x| x != entry) {
            match s.twin(x) {
                None => push_general(ctx, s, CombinatorialCurve::arc(End::Boundary(b), path.clone(), End::Boundary(x)), &mut out),
                Some(_) if edge_once(s, &path, x) => {
                    let mut p = path.clone();
                    p.push(x);
                    stack.push((b, p));
                }
                Some(_) => {}
            }
        }
    }
    for start in (0..s.num_sides()).filter(|&x| s.twin(x).is_some()) {
        let mut stack = vec![vec![start]];
        while let Some(path) = stack.pop() {
            let entry = s.twin(*path.last().unwrap()).unwrap();
            let t = s.triangle_of(entry);
            for x in (3 * t..3 * t + 3).filter(|&x| x != entry && s.twin(x).is_some()) {
                if x == start {
                    push_general(ctx, s, CombinatorialCurve::closed(path.clone()), &mut out);
                } else if edge_once(s, &path, x) {
                    let mut p = path.clone();
                    p.push(x);
                    stack.push(p);
                }
            }
        }
    }
    out
}

#[test]
fn general_curves_with_a_curves() {
    let mut total = 0;
    for sig in [SurfaceSignature::new(0, 2, vec![1]), SurfaceSignature::new(1, 1, vec![1]), SurfaceSignature::new(0, 1, vec![1, 1])] {
        let s = special_triangulation(&sig).unwrap();
        let ctx = LaminationContext::new(&s).unwrap();
        let coords = Coordinates::new(s.clone()).unwrap();
        let curves = general_curves(&s, &ctx);
        total += curves.len();
        let mut worst = 0.0f64;
        for g in curves.iter() {
            let mut cs = vec![(g.clone(), 2.75)];
            for v in 0..s.vertices().len() {
                cs.push((CombinatorialCurve::around_vertex(&s, v).unwrap(), 0.3 * v as f64 - 0.4));
            }
            let l = Lamination::new(&s, Flavor::A, cs, vec![0; s.vertices().len()]).unwrap();
            let r = compatibility_check(&coords, &l).unwrap();
            assert!(r.max_boundary_length <= 1e-12);
            assert!(r.tropical_max_error <= 1e-9, "{sig:?} {:?}", g.shape);
            worst = worst.max(r.max_error);
        }
        println!("{sig:?}: {} curves, max error {worst:.2e}", curves.len());
        assert!(worst <= 1e-9);
    }
    assert!(total > 0);
}
