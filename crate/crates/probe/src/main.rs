fn main() {
    let (g, _, gens) = pqcores::families::ms_graph(4, 5, &[], &[0]).unwrap();
    let rep = pqcores::solvers::orbit_transitivity_check(&g, &gens.perms).unwrap();
    println!("vertex_transitive: {}, arc_transitive: {}", rep.vertex_transitive, rep.arc_transitive);
    println!("n = {}, val = {:?}, girth = {:?}", g.n(), g.regular_valency(), g.girth());
    let mut tri = 0;
    for u in g.neighbors(0).iter() {
        for v in g.neighbors(0).iter() {
            if v > u && g.has_edge(u, v) { tri += 1; }
        }
    }
    println!("triangles through vertex 0: {tri}");
}
