use std::fmt::Write;

use bipers::{Bigrade, GridModule, Hook};

/// Pointwise dimensions, top row first. Hook births are marked `<`, bounded
/// deaths `>`, and a point that is both `*`.
pub fn render(m: &GridModule, hooks: Option<&[Hook]>) -> String {
    let g = m.grid();
    let hooks = hooks.unwrap_or_default();
    let births: Vec<Bigrade> = hooks.iter().map(Hook::birth).collect();
    let deaths: Vec<Bigrade> = hooks.iter().filter_map(Hook::bounded_death).collect();
    let width = g.nx.max(g.ny).to_string().len().max(2) + 2;

    let mut out = String::new();
    for y in (0..=g.ny).rev() {
        write!(out, "{y:>w$} |", w = width - 1).unwrap();
        for x in 0..=g.nx {
            let d = Bigrade::new(x, y);
            let dim = match m.dim(d) {
                0 => ".".to_string(),
                n => n.to_string(),
            };
            let mark = match (births.contains(&d), deaths.contains(&d)) {
                (true, true) => "*",
                (true, false) => "<",
                (false, true) => ">",
                _ => "",
            };
            write!(out, "{:>w$}", format!("{dim}{mark}"), w = width).unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "{:>w$}-{}", "+", "-".repeat(width * (g.nx as usize + 1)), w = width).unwrap();
    write!(out, "{:>w$}", "", w = width + 1).unwrap();
    for x in 0..=g.nx {
        write!(out, "{x:>width$}").unwrap();
    }
    out.push('\n');
    if !hooks.is_empty() {
        let list: Vec<String> = hooks.iter().map(Hook::to_string).collect();
        writeln!(out, "hooks: {}", list.join(", ")).unwrap();
    }
    out
}
