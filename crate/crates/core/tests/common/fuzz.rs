//! Grammar-driven input generator for the surface parser.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use strata_core::surface::{parse_surface, ParseError, SurfaceSpec, WallEdge};
use strata_core::Catalog;

use super::random_spec;

/// Gives every wall in `spec` a lexable name and registers it in `catalog`.
pub fn register_walls(spec: &SurfaceSpec, catalog: &mut Catalog) -> SurfaceSpec {
    let mut out = spec.clone();
    for (k, w) in out.walls.iter_mut().enumerate() {
        let name = format!("fz_wall_{k}");
        let renamed = catalog.insert_wall(w.wall.as_ref().clone().with_name(name));
        *w = WallEdge::new(w.id.clone(), w.from.clone(), w.to.clone(), renamed);
    }
    out
}

/// A valid spec and its canonical text, with a catalog that resolves it.
pub fn valid_input(rng: &mut ChaCha8Rng) -> (SurfaceSpec, String, Catalog) {
    let mut catalog = Catalog::builtin();
    let spec = register_walls(&random_spec(rng, 4), &mut catalog);
    let mut lines: Vec<String> = spec.to_canonical_text().lines().map(str::to_string).collect();
    // declarations are order-independent; sprinkle comments and blank lines
    lines.shuffle(rng);
    if rng.gen_bool(0.3) {
        lines.insert(0, "# generated".into());
    }
    if rng.gen_bool(0.3) {
        lines.push(String::new());
    }
    (spec, lines.join("\n"), catalog)
}

const JUNK: &[&str] = &[
    "region", "wall", ":", "->", "-", ">", "=", "[", "]", ",", "genus", "anyons", "boundaries", "matrix", "#",
    "-3", "99999999999999999999", "toric_code", "nope", "e", "rough", "em_swap", "\t", "\n", "é", "{", "genus=",
];

/// Mutates a valid input into something that is usually, but not always, invalid.
pub fn mutate(rng: &mut ChaCha8Rng, text: &str) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    for _ in 0..rng.gen_range(1..=3) {
        match rng.gen_range(0..5) {
            0 if !chars.is_empty() => {
                let a = rng.gen_range(0..chars.len());
                let b = (a + rng.gen_range(1..6)).min(chars.len());
                chars.drain(a..b);
            }
            1 => {
                let at = rng.gen_range(0..=chars.len());
                let junk = JUNK.choose(rng).unwrap();
                let pad = if rng.gen_bool(0.5) { " " } else { "" };
                let ins: Vec<char> = format!("{pad}{junk}{pad}").chars().collect();
                chars.splice(at..at, ins);
            }
            2 if !chars.is_empty() => {
                let at = rng.gen_range(0..chars.len());
                chars[at] = char::from(rng.gen_range(0x20u8..0x7f));
            }
            3 => {
                let lines: Vec<String> = chars.iter().collect::<String>().lines().map(str::to_string).collect();
                if let Some(line) = lines.choose(rng) {
                    chars.extend(format!("\n{line}").chars());
                }
            }
            _ => {
                let s: String = chars.iter().collect();
                let s = s.replacen("genus=", "genus=x", 1).replacen("->", "<-", usize::from(rng.gen_bool(0.5)));
                chars = s.chars().collect();
            }
        }
    }
    chars.into_iter().collect()
}

#[derive(Debug, Default)]
pub struct FuzzStats {
    pub inputs: usize,
    pub accepted: usize,
    pub rejected: usize,
    pub roundtrips: usize,
    pub failures: Vec<String>,
}

fn check_error(text: &str, err: &ParseError) -> Option<String> {
    let lines = text.split('\n').count();
    let p = err.position;
    if p.line == 0 || p.column == 0 || p.line > lines + 1 {
        return Some(format!("bad position {p} for {err} in {text:?}"));
    }
    None
}

/// Canonical text is a fixed point and the reparsed spec carries the same data.
pub fn check_roundtrip(spec: &SurfaceSpec, catalog: &Catalog) -> Option<String> {
    let text = spec.to_canonical_text();
    let back = match parse_surface(&text, catalog) {
        Ok(s) => s,
        Err(e) => return Some(format!("canonical text rejected: {e}\n{text}")),
    };
    if back.to_canonical_text() != text {
        return Some(format!("canonical text changed:\n{text}\n---\n{}", back.to_canonical_text()));
    }
    for (a, b) in spec.regions.iter().zip(&back.regions) {
        let same = a.id == b.id
            && a.genus == b.genus
            && a.category.same_as(&b.category)
            && a.insertion_objects().iter().map(|o| o.mult().to_vec()).eq(b.insertion_objects().iter().map(|o| o.mult().to_vec()));
        if !same {
            return Some(format!("region {} changed", a.id));
        }
    }
    for (a, b) in spec.walls.iter().zip(&back.walls) {
        if a.id != b.id || a.from != b.from || a.to != b.to || a.wall.matrix() != b.wall.matrix() {
            return Some(format!("wall {} changed", a.id));
        }
    }
    if spec.regions.len() != back.regions.len() || spec.walls.len() != back.walls.len() {
        return Some("declaration count changed".into());
    }
    None
}

/// Runs `n` generated inputs. Panics inside the parser are caught and reported.
pub fn run(seed: u64, n: usize) -> FuzzStats {
    let mut rng = super::rng(seed);
    let mut stats = FuzzStats::default();
    while stats.inputs < n {
        let (spec, text, catalog) = valid_input(&mut rng);
        if let Some(f) = check_roundtrip(&spec, &catalog) {
            stats.failures.push(f);
        }
        stats.roundtrips += 1;
        let candidates = [text.clone(), mutate(&mut rng, &text), mutate(&mut rng, &text)];
        for input in candidates {
            stats.inputs += 1;
            let catalog = Arc::new(catalog.clone());
            let input_c = input.clone();
            let result = std::panic::catch_unwind(move || parse_surface(&input_c, &catalog).map(|s| s.to_canonical_text()));
            match result {
                Err(_) => stats.failures.push(format!("parser panicked on {input:?}")),
                Ok(Ok(_)) => stats.accepted += 1,
                Ok(Err(e)) => {
                    stats.rejected += 1;
                    if let Some(f) = check_error(&input, &e) {
                        stats.failures.push(f);
                    }
                }
            }
        }
    }
    stats
}
