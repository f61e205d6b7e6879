//! ASCII dual-graph diagrams: multiplicity above each node, constant-field
//! degree below, off-spine leaves drawn vertically with a combined
//! `mult(degree)` label. Components with positive canonical degree are
//! labeled `C`.

use fiberlat::{Divisor, FiberConfiguration};

/// Render with the fiber multiplicities as the top labels.
pub fn diagram(cfg: &FiberConfiguration) -> String {
    diagram_with(cfg, &cfg.fiber_divisor())
}

/// Render with custom top labels (e.g. fundamental-cycle coefficients).
pub fn diagram_with(cfg: &FiberConfiguration, labels: &Divisor) -> String {
    match try_tree_diagram(cfg, labels) {
        Some(s) => s,
        None => edge_list(cfg, labels),
    }
}

fn neighbors(cfg: &FiberConfiguration, v: usize) -> Vec<usize> {
    (0..cfg.len())
        .filter(|&w| w != v && cfg.pairing_entry(v, w) > 0)
        .collect()
}

/// Farthest node from `start` with parent links (BFS). Ties prefer
/// (-2)-curves so positive components hang off the spine when possible.
fn farthest(cfg: &FiberConfiguration, start: usize) -> (usize, Vec<Option<usize>>) {
    let mut parent = vec![None; cfg.len()];
    let mut dist = vec![usize::MAX; cfg.len()];
    let mut queue = std::collections::VecDeque::from([start]);
    dist[start] = 0;
    while let Some(v) = queue.pop_front() {
        for w in neighbors(cfg, v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = Some(v);
                queue.push_back(w);
            }
        }
    }
    let best = (0..cfg.len())
        .filter(|&v| dist[v] != usize::MAX)
        .max_by_key(|&v| (dist[v], cfg.curve(v).canonical_deg == 0, cfg.len() - v))
        .unwrap_or(start);
    (best, parent)
}

fn node_tag(cfg: &FiberConfiguration, v: usize, labels: &Divisor) -> (String, String) {
    let c = cfg.curve(v);
    if c.canonical_deg > 0 {
        ("C".to_string(), format!("({})", c.field_degree))
    } else {
        (labels.coeff(v).to_string(), c.field_degree.to_string())
    }
}

fn leaf_label(cfg: &FiberConfiguration, v: usize, labels: &Divisor) -> String {
    let c = cfg.curve(v);
    if c.canonical_deg > 0 {
        format!("C({})", c.field_degree)
    } else {
        format!("{}({})", labels.coeff(v), c.field_degree)
    }
}

fn try_tree_diagram(cfg: &FiberConfiguration, labels: &Divisor) -> Option<String> {
    let n = cfg.len();
    let edge_count: usize = cfg.edges().len();
    if edge_count != n.saturating_sub(1) {
        return None; // has a cycle (or is disconnected)
    }
    // spine = a longest path
    let (u, _) = farthest(cfg, 0);
    let (v, parent) = farthest(cfg, u);
    let mut spine = vec![v];
    let mut cur = v;
    while let Some(p) = parent[cur] {
        spine.push(p);
        cur = p;
    }
    // off-spine nodes must be leaves hanging off the spine
    let on_spine = |x: usize| spine.contains(&x);
    let mut above: Vec<Option<usize>> = vec![None; spine.len()];
    let mut below: Vec<Option<usize>> = vec![None; spine.len()];
    for x in 0..n {
        if on_spine(x) {
            continue;
        }
        let nb = neighbors(cfg, x);
        if nb.len() != 1 || !on_spine(nb[0]) {
            return None;
        }
        let pos = spine.iter().position(|&s| s == nb[0]).unwrap();
        // central components hang below, like the reference tables
        let prefer_below = cfg.curve(x).canonical_deg > 0;
        let slot = if prefer_below {
            if below[pos].is_none() {
                &mut below[pos]
            } else {
                &mut above[pos]
            }
        } else if above[pos].is_none() {
            &mut above[pos]
        } else {
            &mut below[pos]
        };
        if slot.is_some() {
            return None;
        }
        *slot = Some(x);
    }

    // per-column cell text
    let cols = spine.len();
    let mut width = vec![1usize; cols];
    let mut top = vec![String::new(); cols];
    let mut deg = vec![String::new(); cols];
    let mut above_label = vec![String::new(); cols];
    let mut below_label = vec![String::new(); cols];
    for (i, &s) in spine.iter().enumerate() {
        let (t, d) = node_tag(cfg, s, labels);
        width[i] = width[i].max(t.len()).max(d.len());
        top[i] = t;
        deg[i] = d;
        if let Some(x) = above[i] {
            above_label[i] = leaf_label(cfg, x, labels);
            width[i] = width[i].max(above_label[i].len());
        }
        if let Some(x) = below[i] {
            below_label[i] = leaf_label(cfg, x, labels);
            width[i] = width[i].max(below_label[i].len());
        }
    }

    let sep_node = "---";
    let sep_blank = "   ";
    let mut lines: Vec<String> = Vec::new();
    let has_above = above.iter().any(Option::is_some);
    let has_below = below.iter().any(Option::is_some);

    let build = |f: &dyn Fn(usize) -> String, sep: &str| -> String {
        let fill = if sep == sep_node { '-' } else { ' ' };
        let mut line = String::new();
        for (i, &w) in width.iter().enumerate() {
            if i > 0 {
                line.push_str(sep);
            }
            let cell = f(i);
            line.push_str(&cell);
            for _ in cell.len()..w {
                line.push(fill);
            }
        }
        line.trim_end_matches([' ', '-']).to_string()
    };

    if has_above {
        lines.push(build(&|i| above_label[i].clone(), sep_blank));
        lines.push(build(
            &|i| {
                if above[i].is_some() {
                    "o".into()
                } else {
                    String::new()
                }
            },
            sep_blank,
        ));
        lines.push(build(
            &|i| {
                if above[i].is_some() {
                    "|".into()
                } else {
                    String::new()
                }
            },
            sep_blank,
        ));
    }
    lines.push(build(&|i| top[i].clone(), sep_blank));
    lines.push(build(&|_| "o".into(), sep_node));
    lines.push(build(&|i| deg[i].clone(), sep_blank));
    if has_below {
        lines.push(build(
            &|i| {
                if below[i].is_some() {
                    "|".into()
                } else {
                    String::new()
                }
            },
            sep_blank,
        ));
        lines.push(build(
            &|i| {
                if below[i].is_some() {
                    "o".into()
                } else {
                    String::new()
                }
            },
            sep_blank,
        ));
        lines.push(build(&|i| below_label[i].clone(), sep_blank));
    }
    Some(lines.join("\n"))
}

fn edge_list(cfg: &FiberConfiguration, labels: &Divisor) -> String {
    let mut lines: Vec<String> = Vec::new();
    for c in cfg.curves() {
        let (t, d) = node_tag(cfg, c.id, labels);
        lines.push(format!(
            "node {}: mult {t}, degree {d}, self {}, K {}",
            c.id, c.self_int, c.canonical_deg
        ));
    }
    for e in cfg.edges() {
        lines.push(format!("edge {} -- {} ({})", e.a, e.b, e.intersection));
    }
    lines.join("\n")
}
