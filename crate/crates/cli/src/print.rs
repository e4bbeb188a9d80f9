//! Canonical text for morphisms and jet maps.

use formanifold::localforms::JetMap;
use formanifold::morphism::Morphism;
use formanifold::series::var_names;

/// The morphism file that parses back to `m`.
pub fn print_morphism(m: &Morphism) -> String {
    let (n1, k1) = m.src();
    let (n, k) = m.tgt();
    let mut out = format!("source: n'={n1} k'={k1}\ntarget: n={n} k={k}\n");
    for line in m.render_lines() {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// `name = jet` lines with explicit input and output variable letters.
pub fn jetmap_lines(j: &JetMap, input: (&str, &str), output: (&str, &str)) -> Vec<String> {
    let mut names = var_names(input.0, j.src().0);
    names.extend(var_names(input.1, j.src().1));
    let mut outs = var_names(output.0, j.tgt().0);
    outs.extend(var_names(output.1, j.tgt().1));
    outs.into_iter()
        .zip(j.components())
        .map(|(o, c)| format!("{o} = {}", c.render(&names)))
        .collect()
}
