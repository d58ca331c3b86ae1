//! Regenerates the packaged reference fronts under `data/`.
//!
//! Writes `<id>.front` (objective rows) and `<id>.preimages` (the decision
//! vectors that produced them) for every built-in problem. Deterministic:
//! fixed per-problem seeds, committed output.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rdex_core::problems::frontgen::generate;
use rdex_core::problems::builtin_ids;

const SAMPLES: usize = 1_200_000;
const POINTS: usize = 1000;

fn render(rows: &[Vec<f64>], header: &str) -> String {
    let mut out = String::new();
    writeln!(out, "# {header}").unwrap();
    writeln!(out, "# generated by make_fronts; do not edit by hand").unwrap();
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

fn main() {
    let data_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    fs::create_dir_all(&data_dir).expect("create data dir");
    for (i, id) in builtin_ids().into_iter().enumerate() {
        let seed = 1000 + i as u64;
        eprintln!("generating {id} (seed {seed}, {SAMPLES} samples -> {POINTS} points)");
        let g = generate(id, SAMPLES, POINTS, seed).expect("front generation");
        fs::write(
            data_dir.join(format!("{id}.front")),
            render(&g.objectives, &format!("reference front for {id}: f1 f2")),
        )
        .expect("write front");
        fs::write(
            data_dir.join(format!("{id}.preimages")),
            render(&g.preimages, &format!("decision-space preimages for {id}")),
        )
        .expect("write preimages");
    }
    eprintln!("done");
}
