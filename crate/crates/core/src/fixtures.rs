//! Built-in presentations used by tests, the CLI and the gateway.

use crate::grammar::parse_presentation;
use crate::quiver::Presentation;

/// The family `E1(m)`: vertices `0..m-1`, arrows `a_i : i -> i-1`,
/// `a_m : 0 -> m-1` and a loop `b` at `0`, with relations
/// `a_1...a_m = b^2`, `a_i...a_m b a_1...a_i = 0` and `a_m a_1 = 0`.
pub fn e1_text(m: usize) -> String {
    assert!(m >= 2, "E1(m) needs m >= 2");
    let mut t = String::from("field Q\n");
    for v in 0..m {
        t.push_str(&format!("vertex {v}\n"));
    }
    for i in 1..m {
        t.push_str(&format!("arrow a{i} : {i} -> {}\n", i - 1));
    }
    t.push_str(&format!("arrow a{m} : 0 -> {}\n", m - 1));
    t.push_str("arrow b : 0 -> 0\n");
    let chain = |from: usize, to: usize| (from..=to).map(|i| format!("a{i}")).collect::<Vec<_>>();
    t.push_str(&format!("rel {} - b*b\n", chain(1, m).join("*")));
    for i in 1..=m {
        let mut word = chain(i, m);
        word.push("b".into());
        word.extend(chain(1, i));
        t.push_str(&format!("rel {}\n", word.join("*")));
    }
    t.push_str(&format!("rel a{m}*a1\n"));
    t
}

pub fn e1(m: usize) -> Presentation {
    parse_presentation(&e1_text(m)).expect("E1 fixture parses")
}

/// Three vertices, arrows `a_i` around a triangle one way and `b_i` the
/// other way, with `b_i a_i = a_i b_i = 0` and
/// `a_{i+2} a_{i+1} a_i = b_i b_{i+1} b_{i+2}`.
pub const E2_TEXT: &str = "field Q
vertex 1
vertex 2
vertex 3
arrow a1 : 1 -> 2
arrow a2 : 2 -> 3
arrow a3 : 3 -> 1
arrow b1 : 2 -> 1
arrow b2 : 3 -> 2
arrow b3 : 1 -> 3
rel b1*a1
rel b2*a2
rel b3*a3
rel a1*b1
rel a2*b2
rel a3*b3
rel a3*a2*a1 - b1*b2*b3
rel a1*a3*a2 - b2*b3*b1
rel a2*a1*a3 - b3*b1*b2
";

pub fn e2() -> Presentation {
    parse_presentation(E2_TEXT).expect("E2 fixture parses")
}

/// Brauer tree algebra with two edges and an exceptional loop at vertex 2.
pub const BRAUER2_TEXT: &str = "field Q
vertex 1
vertex 2
arrow a : 1 -> 2
arrow b : 2 -> 1
arrow x : 2 -> 2
rel x*x - a*b
rel b*x
rel x*a
";

pub fn brauer2() -> Presentation {
    parse_presentation(BRAUER2_TEXT).expect("fixture parses")
}

/// The same algebra with the loop sitting at vertex 1.
pub const LOOP_AT_1_TEXT: &str = "field Q
vertex 1
vertex 2
arrow a : 2 -> 1
arrow b : 1 -> 2
arrow x : 1 -> 1
rel x*x - a*b
rel b*x
rel x*a
";

pub fn loop_at_1() -> Presentation {
    parse_presentation(LOOP_AT_1_TEXT).expect("fixture parses")
}

/// `k[x]/(x^2)`.
pub const DUAL_NUMBERS_TEXT: &str = "field Q
vertex 1
arrow x : 1 -> 1
rel x*x
";

pub fn dual_numbers() -> Presentation {
    parse_presentation(DUAL_NUMBERS_TEXT).expect("fixture parses")
}

/// Named fixtures, in a stable order.
pub fn catalog() -> Vec<(String, Presentation)> {
    let mut out = Vec::new();
    for m in 3..=5 {
        out.push((format!("e1-{m}"), e1(m)));
    }
    out.push(("e2".into(), e2()));
    out.push(("brauer2".into(), brauer2()));
    out.push(("loop-at-1".into(), loop_at_1()));
    out.push(("dual-numbers".into(), dual_numbers()));
    out.push(("e1-2".into(), e1(2)));
    out
}

pub fn by_name(name: &str) -> Option<Presentation> {
    catalog().into_iter().find(|(n, _)| n == name).map(|(_, p)| p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e1_shape() {
        for m in 2..=5 {
            let p = e1(m);
            assert_eq!(p.quiver.num_vertices(), m);
            assert_eq!(p.quiver.num_arrows(), m + 1);
            assert_eq!(p.relations.len(), m + 2);
            assert_eq!(p.quiver.loops(0).len(), 1);
        }
    }

    #[test]
    fn catalog_parses() {
        assert_eq!(catalog().len(), 8);
        assert_eq!(e2().relations.len(), 9);
    }
}
