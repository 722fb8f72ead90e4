//! Shared test support: independent oracles for the two sequence models and
//! a seeded Java source generator.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

// ---------------------------------------------------------------------------
// Independent DSRM oracle: a direct transcription of the published matching
// procedure over a flat symbol array. Shares no code with the library.
// ---------------------------------------------------------------------------

/// Negation masks for r of n positions, later positions negated first.
/// Bit k set means 1-based position k+1 is negated.
pub fn negation_masks(n: usize, r: usize) -> Vec<Vec<bool>> {
    let mut masks = Vec::new();
    for bits in (0u32..(1u32 << n)).rev() {
        if bits.count_ones() as usize == r {
            masks.push((0..n).map(|k| bits & (1 << k) != 0).collect());
        }
    }
    masks
}

fn oracle_count(work: &mut [Option<u8>], pattern: &[u8], negated: &[bool]) -> usize {
    let n = pattern.len();
    let m = work.len();
    if n == 0 || m < n {
        return 0;
    }
    let weight = n - negated.iter().filter(|&&b| b).count();
    let mut total = 0;
    for j in 0..=(m - n) {
        let mut ok = true;
        for k in 0..n {
            let equal = match work[j + k] {
                Some(sym) => sym == pattern[k],
                None => false,
            };
            ok &= if negated[k] { !equal } else { equal };
        }
        if ok {
            total += weight;
            for k in 0..n {
                if !negated[k] {
                    work[j + k] = None;
                }
            }
        }
    }
    total
}

/// (similarity, exact, partial) for a document and query over a small
/// symbol alphabet. A document shorter than the query has no windows at all
/// (the published procedure's window loop never runs) and scores zero.
pub fn oracle_dsrm(doc: &[u8], query: &[u8]) -> (f64, usize, usize) {
    let pattern = query;
    if pattern.is_empty() || doc.len() < pattern.len() {
        return (0.0, 0, 0);
    }
    let n = pattern.len();
    let mut work: Vec<Option<u8>> = doc.iter().copied().map(Some).collect();
    let mut exact = 0;
    let mut partial = 0;
    for r in 0..n {
        for mask in negation_masks(n, r) {
            let count = oracle_count(&mut work, pattern, &mask);
            if r == 0 {
                exact += count;
            } else {
                partial += count;
            }
        }
    }
    let total = exact + partial;
    let sim = if total == 0 {
        0.0
    } else {
        exact as f64 / total as f64
    };
    (sim, exact, partial)
}

// ---------------------------------------------------------------------------
// Dice brute-force oracle: literal combination enumeration over distinct-term
// counts, greedily consuming occurrences, weighting matches by n - r.
// ---------------------------------------------------------------------------

pub fn oracle_dice(counts: &[usize]) -> (f64, usize, usize) {
    let n = counts.len();
    if n == 0 {
        return (0.0, 0, 0);
    }
    let mut remaining = counts.to_vec();
    let mut exact = 0;
    let mut partial = 0;
    for r in 0..n {
        for mask in negation_masks(n, r) {
            let positives: Vec<usize> = (0..n).filter(|&k| !mask[k]).collect();
            let matches = positives.iter().map(|&k| remaining[k]).min().unwrap_or(0);
            if matches == 0 {
                continue;
            }
            let weighted = (n - r) * matches;
            if r == 0 {
                exact += weighted;
            } else {
                partial += weighted;
            }
            for &k in &positives {
                remaining[k] -= matches;
            }
        }
    }
    let total = exact + partial;
    let sim = if total == 0 {
        0.0
    } else {
        exact as f64 / total as f64
    };
    (sim, exact, partial)
}

// ---------------------------------------------------------------------------
// Seeded Java source generator. With the same seed, the poisoned and benign
// variants make identical structural choices; they differ only in comment
// insertion and string-literal contents, so their extractions must agree.
// ---------------------------------------------------------------------------

pub struct JavaGenerator {
    rng: ChaCha8Rng,
    poison: bool,
    var_counter: usize,
}

const POISON_COMMENTS: &[&str] = &[
    "// if (hidden) { buried(); }",
    "// while{ break; } } }",
    "/* for (int z = 0; z < 3; z++) { poke(); } */",
    "/* } } else { catch{ */",
];

const POISON_LITERALS: &[&str] = &[
    "if{ -> } -> break",
    "while (true) { loop(); }",
    "} } }",
    "synchronized{",
];

const BENIGN_LITERALS: &[&str] = &["alpha", "beta", "gamma", "delta"];

const CALL_TARGETS: &[&str] = &["helper", "compute", "emit", "flush"];

impl JavaGenerator {
    pub fn new(seed: u64, poison: bool) -> Self {
        JavaGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            poison,
            var_counter: 0,
        }
    }

    fn literal(&mut self) -> String {
        let idx = self.rng.gen_range(0..BENIGN_LITERALS.len());
        let text = if self.poison {
            POISON_LITERALS[idx]
        } else {
            BENIGN_LITERALS[idx]
        };
        format!("\"{text}\"")
    }

    fn maybe_comment(&mut self, out: &mut String, indent: &str) {
        let insert = self.rng.gen_bool(0.35);
        let idx = self.rng.gen_range(0..POISON_COMMENTS.len());
        if insert && self.poison {
            out.push_str(indent);
            out.push_str(POISON_COMMENTS[idx]);
            out.push('\n');
        }
    }

    fn fresh_var(&mut self) -> String {
        self.var_counter += 1;
        format!("v{}", self.var_counter)
    }

    pub fn file(&mut self, index: usize) -> String {
        let mut out = String::new();
        out.push_str("package gen;\n\n");
        self.maybe_comment(&mut out, "");
        out.push_str(&format!("public class Gen{index} {{\n"));
        out.push_str("    private Logger LOG;\n");
        out.push_str("    private List<String> items;\n");
        let methods = self.rng.gen_range(1..=4);
        for m in 0..methods {
            self.method(&mut out, m);
        }
        out.push_str("}\n");
        out
    }

    fn method(&mut self, out: &mut String, index: usize) {
        self.maybe_comment(out, "    ");
        out.push_str(&format!("    public void method{index}(int seed) {{\n"));
        let statements = self.rng.gen_range(1..=4);
        for _ in 0..statements {
            self.statement(out, 2, 0);
        }
        out.push_str("    }\n");
    }

    fn statement(&mut self, out: &mut String, depth: usize, loop_depth: usize) {
        let indent = "    ".repeat(depth);
        self.maybe_comment(out, &indent);
        let max_choice = if depth >= 5 { 3 } else { 10 };
        match self.rng.gen_range(0..max_choice) {
            0 => {
                let lit = self.literal();
                out.push_str(&format!("{indent}LOG.debug({lit});\n"));
            }
            1 => {
                let target = CALL_TARGETS[self.rng.gen_range(0..CALL_TARGETS.len())];
                out.push_str(&format!("{indent}{target}(seed);\n"));
            }
            2 => {
                let var = self.fresh_var();
                let lit = self.literal();
                out.push_str(&format!("{indent}String {var} = {lit};\n"));
            }
            3 => {
                if loop_depth > 0 && self.rng.gen_bool(0.5) {
                    out.push_str(&format!("{indent}break;\n"));
                } else {
                    out.push_str(&format!("{indent}return;\n"));
                }
            }
            4 => {
                // if, optionally braceless, optionally with else.
                if self.rng.gen_bool(0.3) {
                    out.push_str(&format!("{indent}if (seed > 0) emit(seed);\n"));
                } else {
                    out.push_str(&format!("{indent}if (seed > 0) {{\n"));
                    self.statement(out, depth + 1, loop_depth);
                    if self.rng.gen_bool(0.5) {
                        out.push_str(&format!("{indent}}} else {{\n"));
                        self.statement(out, depth + 1, loop_depth);
                    }
                    out.push_str(&format!("{indent}}}\n"));
                }
            }
            5 => {
                if self.rng.gen_bool(0.5) {
                    out.push_str(&format!("{indent}for (int i = 0; i < seed; i++) {{\n"));
                } else {
                    out.push_str(&format!("{indent}for (String item : items) {{\n"));
                }
                self.statement(out, depth + 1, loop_depth + 1);
                out.push_str(&format!("{indent}}}\n"));
            }
            6 => {
                out.push_str(&format!("{indent}while (seed < 100) {{\n"));
                self.statement(out, depth + 1, loop_depth + 1);
                out.push_str(&format!("{indent}}}\n"));
            }
            7 => {
                out.push_str(&format!("{indent}try {{\n"));
                self.statement(out, depth + 1, loop_depth);
                out.push_str(&format!("{indent}}} catch (Exception e) {{\n"));
                out.push_str(&format!(
                    "{}LOG.warn(e.getMessage());\n",
                    "    ".repeat(depth + 1)
                ));
                if self.rng.gen_bool(0.4) {
                    out.push_str(&format!("{indent}}} finally {{\n"));
                    self.statement(out, depth + 1, loop_depth);
                }
                out.push_str(&format!("{indent}}}\n"));
            }
            8 => {
                out.push_str(&format!("{indent}switch (seed) {{\n"));
                out.push_str(&format!("{indent}    case 1:\n"));
                self.statement(out, depth + 2, loop_depth);
                out.push_str(&format!("{indent}        break;\n"));
                out.push_str(&format!("{indent}    default:\n"));
                self.statement(out, depth + 2, loop_depth);
                out.push_str(&format!("{indent}}}\n"));
            }
            _ => {
                out.push_str(&format!("{indent}do {{\n"));
                self.statement(out, depth + 1, loop_depth + 1);
                out.push_str(&format!("{indent}}} while (items.isEmpty());\n"));
            }
        }
    }
}

/// 200 generated source units plus the twin with all comment/literal noise
/// replaced by benign content.
pub fn generated_corpus(
    seed: u64,
    files: usize,
) -> (Vec<struct_seek::SourceUnit>, Vec<struct_seek::SourceUnit>) {
    let mut poisoned = Vec::with_capacity(files);
    let mut benign = Vec::with_capacity(files);
    for i in 0..files {
        let file_seed = seed.wrapping_add(i as u64);
        let mut pg = JavaGenerator::new(file_seed, true);
        let mut bg = JavaGenerator::new(file_seed, false);
        poisoned.push(struct_seek::SourceUnit::new(
            format!("Gen{i}.java"),
            pg.file(i),
        ));
        benign.push(struct_seek::SourceUnit::new(
            format!("Gen{i}.java"),
            bg.file(i),
        ));
    }
    (poisoned, benign)
}
