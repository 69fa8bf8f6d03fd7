fn main() {
    for id in 1..=32usize {
        let (m3, g3) = tate::coxeter::tetrahedral_homology(id, 3).unwrap();
        let (m5, g5) = tate::coxeter::tetrahedral_homology(id, 5).unwrap();
        println!(
            "CT{:2}: l3 m={} {:?}  l5 m={} {:?}",
            id,
            m3,
            g3.vertex_label_multiset(),
            m5,
            g5.vertex_label_multiset()
        );
    }
}
