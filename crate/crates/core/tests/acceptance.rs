//! One line per acceptance criterion. Criteria 3 and 7 fail by construction
//! of the mathematics (see the README); the target itself fails only when an
//! outcome differs from the recorded one.

use std::process::ExitCode;

use modgamma::acceptance;

const EXPECTED_FAILURES: [u8; 2] = [3, 7];

fn main() -> ExitCode {
    let mut unexpected = Vec::new();
    for c in acceptance::run_all() {
        println!("{}", c.line());
        if c.pass == EXPECTED_FAILURES.contains(&c.id) {
            unexpected.push(c.id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: outcomes as recorded");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
