use std::fmt::Write as _;
use std::io;

use crate::instance::Instance;

const TERMS_PER_LINE: usize = 8;

/// Renders the 0/1 model in LP format.
///
/// Variables are 1-based: `y<i>` selects item `i`, `x<j>` marks element `j`
/// as covered. The covering indicator is linearised as `x_j - y_i >= 0` for
/// every incidence `(i, j)`; the reverse direction needs no constraint,
/// because `x_j` only appears with a positive weight in the capacity row, so
/// an optimal solution never covers an element without need.
pub fn export_lp(inst: &Instance) -> String {
    let mut s = String::new();
    let (m, n) = (inst.num_items(), inst.num_elements());
    let _ = writeln!(
        s,
        "\\ set-union knapsack: {m} items, {n} elements, capacity {}",
        inst.capacity()
    );
    s.push_str("Maximize\n obj:");
    push_terms(
        &mut s,
        inst.profits()
            .iter()
            .enumerate()
            .map(|(i, p)| (*p, 'y', i + 1)),
    );
    s.push_str("\nSubject To\n capacity:");
    push_terms(
        &mut s,
        inst.weights()
            .iter()
            .enumerate()
            .map(|(j, w)| (*w, 'x', j + 1)),
    );
    let _ = writeln!(s, " <= {}", inst.capacity());
    for i in 0..m {
        for &j in inst.elements(i) {
            let _ = writeln!(s, " link_{}_{}: x{} - y{} >= 0", i + 1, j + 1, j + 1, i + 1);
        }
    }
    s.push_str("Binary\n");
    push_names(&mut s, 'y', m);
    push_names(&mut s, 'x', n);
    s.push_str("End\n");
    s
}

pub fn write_lp<W: io::Write>(inst: &Instance, mut out: W) -> io::Result<()> {
    out.write_all(export_lp(inst).as_bytes())
}

fn push_terms(s: &mut String, terms: impl Iterator<Item = (u64, char, usize)>) {
    for (k, (coef, var, idx)) in terms.enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            s.push_str("\n   ");
        }
        let sep = if k == 0 { " " } else { " + " };
        let _ = write!(s, "{sep}{coef} {var}{idx}");
    }
}

fn push_names(s: &mut String, var: char, count: usize) {
    for start in (1..=count).step_by(TERMS_PER_LINE) {
        s.push(' ');
        let names: Vec<String> = (start..=(start + TERMS_PER_LINE - 1).min(count))
            .map(|k| format!("{var}{k}"))
            .collect();
        s.push_str(&names.join(" "));
        s.push('\n');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::generate_instance;

    #[test]
    fn identity_instance_layout() {
        let inst = Instance::new(vec![3, 4], vec![2, 4], vec![vec![0], vec![1]], 5).unwrap();
        let expected = "\\ set-union knapsack: 2 items, 2 elements, capacity 5
Maximize
 obj: 3 y1 + 4 y2
Subject To
 capacity: 2 x1 + 4 x2 <= 5
 link_1_1: x1 - y1 >= 0
 link_2_2: x2 - y2 >= 0
Binary
 y1 y2
 x1 x2
End
";
        assert_eq!(export_lp(&inst), expected);
    }

    #[test]
    fn one_link_per_incidence() {
        let inst = generate_instance(30, 20, 0.15, 0.75, 3).unwrap();
        let lp = export_lp(&inst);
        let links = lp
            .lines()
            .filter(|l| l.trim_start().starts_with("link_"))
            .count();
        assert_eq!(links, inst.incidence_count());
        let binaries: usize = lp
            .split("Binary\n")
            .nth(1)
            .unwrap()
            .lines()
            .take_while(|l| *l != "End")
            .map(|l| l.split_whitespace().count())
            .sum();
        assert_eq!(binaries, 50);
        assert!(lp.lines().all(|l| l.len() < 255));
    }
}
