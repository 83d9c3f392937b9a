//! Built-in example pairings.

use crate::ball::FacetedBall;
use crate::error::{Error, Result};
use crate::homology::H1Invariant;
use crate::io::{parse_input, InputDocument};
use crate::pairing::FacePairing;
use crate::twist::Direction;

pub const NAMES: [&str; 5] = ["tetra", "target", "s2xs1", "lens31", "heisenberg"];

const TETRA: &str = "\
# Regular tetrahedron. ε₁ rotates ABC onto ABD about AB, ε₂ rotates ACD onto BCD about CD.
ball tetra
vertex A B C D
edge AB A B
edge BC B C
edge BD B D
edge AD A D
edge AC A C
edge CD C D
face ABC +AB +BC -AC
face ABD -AB +AD -BD
face ACD +AC +CD -AD
face BCD -BC +BD -CD
pair ABC ABD offset 1
pair ACD BCD offset 1
";

const TARGET: &str = "\
# Sphere with a loop at each pole and an equatorial loop CC.
# N/S are the polar monogons, NQ/SQ the quadrilaterals between them and the equator.
ball target
vertex A B C
edge CC C C
edge AC A C
edge BB B B
edge BC B C
edge AA A A
face NQ +CC -AC -AA +AC
face SQ -CC -BC -BB +BC
face N +AA
face S +BB
pair N S offset 0
pair NQ SQ offset 1
";

const S2XS1: &str = "\
# Two quadrilaterals sharing the bigon ACu, ACd; BA dangles into one, CD into the other.
ball s2xs1
vertex A B C D
edge ACu A C
edge ACd A C
edge CD C D
edge BA B A
face F1 +ACu -ACd -BA +BA
face F2 +ACd +CD -CD -ACu
pair F1 F2 offset 3
";

const LENS31: &str = "\
# Two triangles; ε takes A to B.
ball lens31
vertex A B C
edge AB A B
edge BC B C
edge CA C A
face T1 +AB +BC +CA
face T2 -CA -BC -AB
pair T1 T2 offset 2
";

const HEISENBERG: &str = "\
# Tetrahedron with AB collapsed to X and CD collapsed to Y; faces become digons.
ball heisenberg
vertex X Y
edge BC X Y
edge BD X Y
edge AD X Y
edge AC X Y
face ABC +BC -AC
face ABD +AD -BD
face ACD +AC -AD
face BCD -BC +BD
pair ABC ABD offset 0
pair ACD BCD offset 1
";

#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub text: &'static str,
    pub ball: FacetedBall,
    pub pairing: FacePairing,
    pub direction: Direction,
    /// Edge-cycle lengths in cycle index order.
    pub cycle_lengths: &'static [usize],
    expected: fn(&[u32]) -> H1Invariant,
}

impl Example {
    /// Expected H₁ of the twisted manifold for the given multipliers.
    pub fn expected_h1(&self, mul: &[u32]) -> H1Invariant {
        (self.expected)(mul)
    }

    pub fn document(&self) -> InputDocument {
        parse_input(self.text).expect("registry text parses")
    }
}

fn cyclic(orders: &[u64]) -> H1Invariant {
    H1Invariant::from_orders(0, orders)
}

pub fn load(name: &str) -> Result<Example> {
    let name = name.strip_prefix("example:").unwrap_or(name);
    let (name, text, cycle_lengths, expected): (&'static str, _, &'static [usize], fn(&[u32]) -> H1Invariant) =
        match name {
            // the (1,1,m) family is m-surgery on the figure-eight knot
            "tetra" => ("tetra", TETRA, &[1, 4, 1], |m| cyclic(&[m[0] as u64, m[2] as u64])),
            // connected sum L(p,1) # L(r,1), independent of q
            "target" => ("target", TARGET, &[1, 2, 2], |m| cyclic(&[m[0] as u64, m[2] as u64])),
            "s2xs1" => ("s2xs1", S2XS1, &[4], |_| H1Invariant::free(1)),
            // a 9-gon pairing with a one-corner rotation: L(9m, 3m ± 1)
            "lens31" => ("lens31", LENS31, &[3], |m| cyclic(&[9 * m[0] as u64])),
            "heisenberg" => ("heisenberg", HEISENBERG, &[4], |_| H1Invariant::free(2)),
            other => return Err(Error::UnknownExample(other.to_string())),
        };
    let doc = parse_input(text)?;
    Ok(Example { name, text, ball: doc.ball, pairing: doc.pairing, direction: doc.direction, cycle_lengths, expected })
}
