mod common;

use common::{golden_mismatches, GOLDEN};

#[test]
fn golden_reports_match_derivations() {
    for name in GOLDEN {
        assert_eq!(golden_mismatches(name), Vec::<String>::new(), "{name}");
    }
}
