//! Small standard maps used as inputs and test fixtures.

use crate::map::{Dart, Map, VertexId};

/// Builds a plane map from a straight-line drawing; the rotation at each
/// vertex lists neighbours clockwise. The drawing must be crossing-free.
pub fn from_plane_drawing(points: &[(f64, f64)], edges: &[(VertexId, VertexId)]) -> Map {
    let mut at: Vec<Vec<(f64, Dart)>> = vec![Vec::new(); points.len()];
    for (e, &(a, b)) in edges.iter().enumerate() {
        let ang = |from: VertexId, to: VertexId| {
            (points[to].1 - points[from].1).atan2(points[to].0 - points[from].0)
        };
        at[a].push((ang(a, b), 2 * e));
        at[b].push((ang(b, a), 2 * e + 1));
    }
    let rotations: Vec<Vec<Dart>> = at
        .into_iter()
        .map(|mut list| {
            list.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());
            list.into_iter().map(|(_, d)| d).collect()
        })
        .collect();
    Map::from_rotations(&rotations).expect("drawing yields a valid map")
}

fn polygon(n: usize, radius: f64, phase: f64) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let t = phase + std::f64::consts::TAU * i as f64 / n as f64;
            (radius * t.cos(), radius * t.sin())
        })
        .collect()
}

pub fn tetrahedron() -> Map {
    let mut pts = polygon(3, 2.0, 0.0);
    pts.insert(0, (0.0, 0.0));
    from_plane_drawing(&pts, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
}

pub fn octahedron() -> Map {
    let mut pts = polygon(3, 4.0, 0.0);
    pts.extend(polygon(3, 1.0, std::f64::consts::PI / 3.0));
    let edges = [
        (0, 1),
        (1, 2),
        (2, 0),
        (3, 4),
        (4, 5),
        (5, 3),
        (0, 3),
        (0, 5),
        (1, 3),
        (1, 4),
        (2, 4),
        (2, 5),
    ];
    from_plane_drawing(&pts, &edges)
}

pub fn cube() -> Map {
    let mut pts = polygon(4, 4.0, 0.0);
    pts.extend(polygon(4, 1.0, 0.0));
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 0),
        (4, 5),
        (5, 6),
        (6, 7),
        (7, 4),
        (0, 4),
        (1, 5),
        (2, 6),
        (3, 7),
    ];
    from_plane_drawing(&pts, &edges)
}

/// Hub 0 joined to the cycle `1..=n`.
pub fn wheel(n: usize) -> Map {
    let mut pts = vec![(0.0, 0.0)];
    pts.extend(polygon(n, 1.0, 0.0));
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((0, i + 1));
        edges.push((i + 1, (i + 1) % n + 1));
    }
    from_plane_drawing(&pts, &edges)
}

/// The cycle `C_n` in the plane.
pub fn cycle(n: usize) -> Map {
    let pts = polygon(n, 1.0, 0.0);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    from_plane_drawing(&pts, &edges)
}

/// Six-regular triangulation of the torus on the `rows x cols` grid;
/// vertex `(i, j)` is `i * cols + j`.
pub fn torus_grid(rows: usize, cols: usize) -> Map {
    assert!(rows >= 3 && cols >= 3, "grid too small for a simple graph");
    let id = |i: usize, j: usize| (i % rows) * cols + (j % cols);
    // Directions in angular order: (1,0) (1,1) (0,1) (-1,0) (-1,-1) (0,-1).
    let dirs: [(usize, usize); 6] = [
        (1, 0),
        (1, 1),
        (0, 1),
        (rows - 1, 0),
        (rows - 1, cols - 1),
        (0, cols - 1),
    ];
    let n = rows * cols;
    let mut edge_ids = std::collections::HashMap::new();
    let mut rotations: Vec<Vec<Dart>> = vec![Vec::new(); n];
    let mut next_edge = 0;
    for i in 0..rows {
        for j in 0..cols {
            let v = id(i, j);
            for &(di, dj) in dirs.iter().rev() {
                let u = id(i + di, j + dj);
                let key = (v.min(u), v.max(u));
                let e = *edge_ids.entry(key).or_insert_with(|| {
                    next_edge += 1;
                    next_edge - 1
                });
                let dart = if v < u { 2 * e } else { 2 * e + 1 };
                rotations[v].push(dart);
            }
        }
    }
    Map::from_rotations(&rotations).expect("torus grid is valid")
}

/// A triangular embedding of `K_7` in the torus, found once by search.
pub fn k7_torus() -> Map {
    static CACHE: std::sync::OnceLock<Map> = std::sync::OnceLock::new();
    CACHE
        .get_or_init(|| {
            let r = crate::search::witness::search_complete_triangulation(
                7,
                &crate::search::SearchBudget::default(),
                true,
            );
            r.maps
                .into_iter()
                .next()
                .expect("K7 triangulates the torus")
        })
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_counts() {
        let t = tetrahedron();
        assert_eq!(
            (t.num_vertices(), t.num_edges(), t.num_faces(), t.genus()),
            (4, 6, 4, 0)
        );
        let o = octahedron();
        assert_eq!(
            (o.num_vertices(), o.num_edges(), o.num_faces(), o.genus()),
            (6, 12, 8, 0)
        );
        let c = cube();
        assert_eq!(
            (c.num_vertices(), c.num_edges(), c.num_faces(), c.genus()),
            (8, 12, 6, 0)
        );
        assert!(c.faces().iter().all(|f| f.size() == 4));
    }

    #[test]
    fn wheel_has_rim_face() {
        let w = wheel(5);
        assert_eq!(w.genus(), 0);
        assert_eq!(w.face_sizes_desc(), vec![5, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn torus_grid_is_triangular() {
        let g = torus_grid(5, 6);
        assert_eq!(g.genus(), 1);
        assert!(g.is_simple_graph());
        assert!(g.faces().iter().all(|f| f.size() == 3));
        assert_eq!(g.num_faces(), 60);
    }

    #[test]
    fn k7_triangulates_the_torus() {
        let k = k7_torus();
        assert_eq!((k.num_edges(), k.num_faces(), k.genus()), (21, 14, 1));
        assert!(k.faces().iter().all(|f| f.size() == 3));
        // Vertex i sees i+1, i+3, i+2, i+6, i+4, i+5 (mod 7).
        let mut text = String::from("vertices: 7\n");
        for i in 0..7 {
            let ns: Vec<String> = [1, 3, 2, 6, 4, 5]
                .iter()
                .map(|s| ((i + s) % 7).to_string())
                .collect();
            text.push_str(&format!("{i}: {}\n", ns.join(" ")));
        }
        let known = crate::rot::parse_map(&text).unwrap();
        assert_eq!(
            crate::canon::unoriented_code(&k),
            crate::canon::unoriented_code(&known)
        );
    }
}
