//! Inputs shared by the benchmarks.

use singer_core::dual::DualElement;

/// A primitive of degree 14 in four generators whose transfer is `d_0`.
pub const Q43: &str = "a1(1) a2(1) a3(6) a4(6) + a1(1) a2(2) a3(5) a4(6) + a1(1) a2(3) a3(4) a4(6) + a1(1) a2(4) a3(3) a4(6) + a1(1) a2(5) a3(2) a4(6) + a1(1) a2(6) a3(1) a4(6) + a1(2) a2(1) a3(6) a4(5) + a1(2) a2(2) a3(5) a4(5) + a1(2) a2(3) a3(4) a4(5) + a1(2) a2(4) a3(3) a4(5) + a1(2) a2(5) a3(2) a4(5) + a1(2) a2(6) a3(1) a4(5) + a1(3) a2(1) a3(5) a4(5) + a1(3) a2(2) a3(6) a4(3) + a1(3) a2(3) a3(2) a4(6) + a1(3) a2(4) a3(1) a4(6) + a1(3) a2(4) a3(2) a4(5) + a1(3) a2(4) a3(4) a4(3) + a1(3) a2(6) a3(2) a4(3) + a1(4) a2(1) a3(6) a4(3) + a1(4) a2(2) a3(5) a4(3) + a1(4) a2(3) a3(4) a4(3) + a1(4) a2(4) a3(3) a4(3) + a1(4) a2(5) a3(2) a4(3) + a1(4) a2(6) a3(1) a4(3) + a1(5) a2(1) a3(3) a4(5) + a1(5) a2(2) a3(1) a4(6) + a1(5) a2(2) a3(2) a4(5) + a1(5) a2(2) a3(4) a4(3) + a1(5) a2(3) a3(1) a4(5) + a1(5) a2(3) a3(3) a4(3) + a1(5) a2(5) a3(1) a4(3) + a1(6) a2(1) a3(1) a4(6) + a1(6) a2(1) a3(2) a4(5) + a1(6) a2(1) a3(4) a4(3) + a1(6) a2(2) a3(3) a4(3)";

pub fn q43() -> DualElement {
    DualElement::parse(Q43, 4).expect("fixed text")
}
