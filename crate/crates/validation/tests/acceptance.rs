use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let mut failed = 0;
    for c in obstrukt_validation::criteria() {
        let start = Instant::now();
        let result = (c.run)();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!(
                "PASS  criterion {:>2}: {} [{detail}] ({secs:.1}s)",
                c.number, c.title
            ),
            Err(reason) => {
                failed += 1;
                println!(
                    "FAIL  criterion {:>2}: {} [{reason}] ({secs:.1}s)",
                    c.number, c.title
                );
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
