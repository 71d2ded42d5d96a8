use std::time::Instant;

use kakeya_core::search::min_kakeya;
use kakeya_core::Field;

fn main() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let f = Field::new(q).unwrap();
        let t = Instant::now();
        let r = min_kakeya(&f, 2).unwrap();
        println!("q={q} min={} nodes={} {:?}", r.size, r.nodes, t.elapsed());
    }
}
