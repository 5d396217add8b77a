//! Positive roots by reflection closure, invariant degrees and diagram data.

use subgrowth::rootsys::{build_root_system, DynkinDiagram, LieType};

fn main() -> subgrowth::Result<()> {
    for name in ["A3", "B3", "C3", "D4", "G2", "F4", "E6", "2A4", "3D4"] {
        let t: LieType = name.parse()?;
        let rs = build_root_system(t);
        let dia = DynkinDiagram::of(t);
        println!(
            "{t}: {} positive roots, degrees {:?}, {} diagram symmetries, twist permutation {:?}",
            rs.count(),
            rs.degrees,
            dia.symmetries().len(),
            t.twist_permutation()
        );
    }
    let g2 = build_root_system("G2".parse()?);
    for (root, height) in g2.positive_roots.iter().zip(&g2.heights) {
        println!("  G2 root {root:?} of height {height}");
    }
    Ok(())
}
