//! Classification reports for small ranks compared byte for byte with the
//! committed copies in `tests/golden`. Set `HC_UPDATE_GOLDEN=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use hecke_clifford::verify::{verify_classification, VerifyConfig};

#[test]
fn classification_reports_match_golden_files() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("HC_UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for p in [0u32, 3, 5, 7] {
        for n in 1..=4 {
            let report = verify_classification(n, p, &VerifyConfig::default()).unwrap();
            assert!(report.passed(), "p = {p}, n = {n}:\n{}", report.to_text());
            let body = report.to_json() + "\n";
            let path = dir.join(format!("classification_p{p}_n{n}.json"));
            if update {
                fs::create_dir_all(&dir).unwrap();
                fs::write(&path, &body).unwrap();
            } else if fs::read_to_string(&path).ok().as_deref() != Some(body.as_str()) {
                mismatched.push(path.display().to_string());
            }
        }
    }
    assert!(mismatched.is_empty(), "reports differ from {mismatched:?}");
}
