//! Deterministic force-directed layout in the unit square.

use ggmnet::graphgen::AdjacencyMatrix;

const ITERATIONS: usize = 200;

/// Fruchterman-Reingold from a circular start, with a small seed-dependent
/// rotation so different draws do not all look alike.
pub fn spring_layout(adj: &AdjacencyMatrix, seed: u64) -> Vec<[f64; 2]> {
    let p = adj.p();
    let spin = (seed % 360) as f64 * std::f64::consts::PI / 180.0;
    let mut pos: Vec<[f64; 2]> = (0..p)
        .map(|v| {
            let t = spin + 2.0 * std::f64::consts::PI * v as f64 / p as f64;
            [0.5 + 0.4 * t.cos(), 0.5 + 0.4 * t.sin()]
        })
        .collect();
    let edges = adj.edges();
    let k = (1.0 / p as f64).sqrt();
    let mut temp = 0.1;
    for _ in 0..ITERATIONS {
        let mut disp = vec![[0.0_f64; 2]; p];
        for a in 0..p {
            for b in (a + 1)..p {
                let (dx, dy) = (pos[a][0] - pos[b][0], pos[a][1] - pos[b][1]);
                let d2 = (dx * dx + dy * dy).max(1e-9);
                let f = k * k / d2;
                disp[a][0] += dx * f;
                disp[a][1] += dy * f;
                disp[b][0] -= dx * f;
                disp[b][1] -= dy * f;
            }
        }
        for &(a, b) in &edges {
            let (dx, dy) = (pos[a][0] - pos[b][0], pos[a][1] - pos[b][1]);
            let d = (dx * dx + dy * dy).sqrt().max(1e-9);
            let f = d / k;
            disp[a][0] -= dx * f;
            disp[a][1] -= dy * f;
            disp[b][0] += dx * f;
            disp[b][1] += dy * f;
        }
        for (q, dv) in pos.iter_mut().zip(&disp) {
            let len = (dv[0] * dv[0] + dv[1] * dv[1]).sqrt().max(1e-12);
            let step = len.min(temp);
            q[0] += dv[0] / len * step;
            q[1] += dv[1] / len * step;
            // Mild pull to the centre keeps isolated nodes on screen.
            q[0] += (0.5 - q[0]) * 0.01;
            q[1] += (0.5 - q[1]) * 0.01;
        }
        temp *= 0.98;
    }
    normalise(&mut pos);
    pos
}

fn normalise(pos: &mut [[f64; 2]]) {
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for q in pos.iter() {
        for c in 0..2 {
            lo[c] = lo[c].min(q[c]);
            hi[c] = hi[c].max(q[c]);
        }
    }
    for q in pos.iter_mut() {
        for c in 0..2 {
            let span = hi[c] - lo[c];
            q[c] = if span > 0.0 { 0.05 + 0.9 * (q[c] - lo[c]) / span } else { 0.5 };
        }
    }
}
