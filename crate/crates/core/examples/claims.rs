use std::time::Instant;

use reflection_sperner::reproduce::{reproduce, ClaimId, ReproduceOptions};

fn main() {
    let big = std::env::args().any(|a| a == "--big");
    let opt = ReproduceOptions {
        big,
        ..Default::default()
    };
    for c in ClaimId::ALL {
        let t = Instant::now();
        match reproduce(c, &opt) {
            Ok(r) => print!("{}", r.render()),
            Err(e) => println!("{c}: error {e}"),
        }
        println!("  ({:.2?})", t.elapsed());
    }
}
