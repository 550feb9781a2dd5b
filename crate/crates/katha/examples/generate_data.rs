//! Regenerates the inventory files shipped under `data/`.
//!
//! ```text
//! cargo run -p katha --example generate_data -- data
//! ```
//!
//! Writes `inventory-default.tsv` (all 780 phonemes valid) and
//! `inventory-722.tsv` (7 oral CV and 51 nasal CV phonemes flagged
//! invalid, giving the 722-valid split). Which 58 are excluded is a
//! placeholder — no authoritative list exists — so the first few CV labels
//! in label order are used and the file says so.

use std::collections::BTreeSet;
use std::path::Path;

use katha::inventory::{generate_inventory, PhonemeInventory};
use katha::Phoneme;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| String::from("data"));
    let dir = Path::new(&dir);
    std::fs::create_dir_all(dir).expect("create output directory");

    let default = PhonemeInventory::all_valid();
    std::fs::write(dir.join("inventory-default.tsv"), default.to_tsv())
        .expect("write default inventory");

    std::fs::write(dir.join("inventory-722.tsv"), placeholder_722_tsv())
        .expect("write 722-split inventory");

    eprintln!("wrote {}", dir.display());
}

/// The 722-valid split: first 7 oral CV and first 51 nasal CV labels (label
/// order) flagged invalid.
fn placeholder_722_tsv() -> String {
    let all = PhonemeInventory::all_valid();
    let cv_oral: Vec<String> = all
        .entries()
        .map(|(label, _)| label.to_string())
        .filter(|label| {
            let p = Phoneme::parse_label(label).unwrap();
            !p.is_v() && !p.nasal()
        })
        .take(7)
        .collect();
    let cv_nasal: Vec<String> = all
        .entries()
        .map(|(label, _)| label.to_string())
        .filter(|label| {
            let p = Phoneme::parse_label(label).unwrap();
            !p.is_v() && p.nasal()
        })
        .take(51)
        .collect();
    let excluded: BTreeSet<String> = cv_oral.into_iter().chain(cv_nasal).collect();
    let inventory = generate_inventory(&excluded).expect("labels come from the universe");

    // Keep the provenance note at the top of the file.
    let tsv = inventory.to_tsv();
    let (magic, rest) = tsv.split_once('\n').unwrap();
    format!(
        "{magic}\n\
         # 722-valid split: 7 oral CV and 51 nasal CV phonemes flagged invalid.\n\
         # The excluded labels are a placeholder (first CV labels in label\n\
         # order); only the per-class counts are meaningful.\n\
         {rest}"
    )
}
