//! The symmetric metric on Z² that puts three directions at 60° to each other.

use tubular::metric::VertexMetric;
use tubular::model::IntVec2;

fn main() {
    let triples = [
        [IntVec2::new(1, 0), IntVec2::new(0, 1), IntVec2::new(1, 1)],
        [IntVec2::new(1, 0), IntVec2::new(16, 1), IntVec2::new(16, -1)],
        [IntVec2::new(2, 1), IntVec2::new(1, 3), IntVec2::new(-1, 1)],
    ];
    for d in triples {
        let m = VertexMetric::symmetric_form(d[0], d[1], d[2]).unwrap();
        println!("{} {} {}: m11 = {}, m12 = {}, m22 = {}", d[0], d[1], d[2], m.m11, m.m12, m.m22);
        for i in 0..3 {
            for j in i + 1..3 {
                let ij = m.inner(d[i], d[j]);
                let cos2 = &ij * &ij / (m.inner(d[i], d[i]) * m.inner(d[j], d[j]));
                println!("  cos² between {} and {} = {}", d[i], d[j], cos2);
            }
        }
    }
}
