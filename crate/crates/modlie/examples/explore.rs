// scratch calibration tool
use modlie::catalog::{entries_at, run_fixture, Tier};

fn main() {
    let filter = std::env::args().nth(1).unwrap_or_default();
    for e in entries_at(Tier::Extended) {
        if !e.name.contains(&filter) {
            continue;
        }
        let r = run_fixture(&e);
        if r.pass() {
            println!("PASS {}", r.entry);
        } else {
            println!("FAIL {}", r.entry);
            for c in r.checks.iter().filter(|c| !c.pass) {
                println!("  [{}] expected {} | computed {}{}", c.id, c.expected, c.computed,
                    c.witness.as_deref().map(|w| format!(" | {w}")).unwrap_or_default());
            }
        }
    }
}
