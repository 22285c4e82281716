//! Closed braid shadows.

use super::{Diagram, Edge, End, Vertex};
use crate::freegroup::{Alphabet, Gen};

/// Shadow of the closure of a braid on `strands` strands; `word[k] = i`
/// crosses positions `i` and `i+1` (0-based, position 0 innermost).
/// Strands run eastwards; at a crossing the ports are NE 0, NW 1, SW 2,
/// SE 3. Components are colored `colors[j]` in order of their least edge
/// (the last color repeats).
pub fn braid_shadow(alphabet: Alphabet, strands: usize, word: &[usize], colors: &[Gen]) -> Diagram {
    assert!(
        word.iter().all(|&i| i + 1 < strands),
        "generator out of range"
    );
    let vertices: Vec<Vertex> = (1..=word.len() as u32).map(Vertex::crossing).collect();
    let mut first_in: Vec<Option<End>> = vec![None; strands];
    let mut last_out: Vec<Option<End>> = vec![None; strands];
    let mut links: Vec<(End, End)> = Vec::new();
    let mut enter =
        |p: usize, at: End, first_in: &mut Vec<Option<End>>, last_out: &[Option<End>]| {
            match last_out[p] {
                Some(from) => links.push((from, at)),
                None => first_in[p] = Some(at),
            }
        };
    for (k, &i) in word.iter().enumerate() {
        enter(i, End::new(k, 1), &mut first_in, &last_out);
        enter(i + 1, End::new(k, 2), &mut first_in, &last_out);
        last_out[i + 1] = Some(End::new(k, 3));
        last_out[i] = Some(End::new(k, 0));
    }
    for p in 0..strands {
        if let (Some(from), Some(to)) = (last_out[p], first_in[p]) {
            links.push((from, to));
        }
    }
    let edges: Vec<Edge> = links
        .into_iter()
        .enumerate()
        .map(|(n, (tail, head))| Edge {
            id: n as u32 + 1,
            tail,
            head,
            color: 0,
        })
        .collect();
    let plain = Diagram::build(
        alphabet.clone(),
        vertices.clone(),
        edges.clone(),
        Vec::new(),
    )
    .expect("braid closure is well formed");
    let mut edges = edges;
    for (j, c) in plain.components().iter().enumerate() {
        let color = colors[j.min(colors.len() - 1)];
        for &e in &c.edges {
            edges[e].color = color;
        }
    }
    Diagram::new(alphabet, vertices, edges, Vec::new()).expect("braid closure is a valid diagram")
}

fn abc() -> Alphabet {
    Alphabet::new(["a", "b", "c"]).unwrap()
}

/// Six crossings, three components colored `a`, `b`, `c`: the closure of
/// `(s1 s2)^3`, with all eight faces triangles.
pub fn borromean() -> Diagram {
    braid_shadow(abc(), 3, &[0, 1, 0, 1, 0, 1], &[0, 1, 2])
}

/// Eight crossings, one component colored `a`: the closure of `(s1 s2)^4`.
pub fn poppy() -> Diagram {
    braid_shadow(
        Alphabet::new(["a"]).unwrap(),
        3,
        &[0, 1, 0, 1, 0, 1, 0, 1],
        &[0],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let b = borromean();
        let t = b.topology();
        assert_eq!(
            (b.num_crossings(), b.edges().len(), t.faces.len()),
            (6, 12, 8)
        );
        assert!(t.faces.iter().all(|f| f.len() == 3));
        let colors: Vec<Gen> = b.components().iter().map(|c| c.color).collect();
        assert_eq!(colors, vec![0, 1, 2]);
        let p = poppy();
        assert_eq!(p.num_crossings(), 8);
        assert_eq!(p.components().len(), 1);
        let total: usize = p.topology().faces.iter().map(Vec::len).sum();
        assert_eq!(total, 2 * p.edges().len());
    }
}
