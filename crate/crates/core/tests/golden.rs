//! Worked examples against their golden files. Set `HALVING_BLESS=1` to
//! rewrite the files from the current output instead.

use std::path::Path;

use halving::reproduce::{example_document, run_example, EXAMPLES};

#[test]
fn examples_match_golden_files() {
    let bless = std::env::var_os("HALVING_BLESS").is_some();
    for name in EXAMPLES {
        if bless {
            let csv = example_document(name).unwrap().to_csv();
            let path = Path::new(env!("CARGO_MANIFEST_DIR"))
                .join("golden")
                .join(format!("{name}.csv"));
            std::fs::write(path, csv).unwrap();
        } else if let Err(e) = run_example(name) {
            panic!("{name}: {e}");
        }
    }
}
