//! Fixed formulas for the bounded elimination checks: source, radius, base.

use geoprog::numeric::{int, rat};
use geoprog::{ExactRational, GeoBase};

pub struct Case {
    pub src: &'static str,
    pub radius: ExactRational,
    pub base: GeoBase,
}

fn case(src: &'static str, radius: ExactRational, rho: ExactRational) -> Case {
    Case {
        src,
        radius,
        base: GeoBase::new(rho).unwrap(),
    }
}

pub fn corpus() -> Vec<Case> {
    vec![
        case("E(x)", int(5), int(2)),
        case("exists y in E. exists z in E. x = y - z", int(3), int(2)),
        case("exists y in E. x < y", int(1), int(2)),
        case("exists y in E. x = 1/3*y", int(2), int(2)),
        case("not E(x)", int(5), int(2)),
        case("forall y in E. x < y", int(3), int(2)),
        case("forall y in E. x != y", int(5), int(2)),
        case("E(x) and E(y)", int(5), int(2)),
        case("E(x) or E(y)", int(3), int(2)),
        case("exists y in E. exists z in E. x = y + z", int(10), int(2)),
        case("E(x)", int(4), rat(3, 2)),
        case("exists y in E. exists z in E. x = y - z", int(2), rat(3, 2)),
        case("E(x) and not E(2*x)", int(10), int(2)),
        case("exists y in E. y < x and x < 2*y", int(5), int(2)),
        case("exists y in E. x - y < 1/2 and y - x < 1/2", int(6), int(2)),
        case("E(x + y)", int(3), int(2)),
        case("exists y in E. x + y = 3", int(4), int(2)),
        case("forall y in E. x < y or x > 2*y", int(5), int(2)),
        case("E(x) and x > 1", int(5), rat(5, 2)),
        case("exists y in E. x = 2*y - 1", int(8), int(3)),
        case("not (exists y in E. exists z in E. x = y - z)", int(3), int(2)),
        case("E(x) or E(-x)", int(5), int(2)),
        case("exists y in E. exists z in E. x = y - z and y < 5", int(4), int(2)),
        case("E(x) and E(y) and x < y", int(9), int(3)),
        case("exists z in E. x < z and z < y", int(4), int(2)),
        case("forall y in E. forall z in E. x != y - z", int(2), int(2)),
        case("exists y in E. E(x - y)", int(6), int(2)),
        case("exists v. E(v) and x = 2*v", int(9), int(2)),
        case("E(3/2*x)", int(3), rat(3, 2)),
        case("exists y in E. x < y and y < x + 1", int(5), int(3)),
        case("E(x) and y = 2*x", int(5), int(2)),
        case("not (E(x) or E(y))", int(3), int(2)),
        case("E(x) and (forall z in E. z != 2*x)", int(10), int(3)),
        case("exists y in E. exists z in E. x = y - z", int(3), rat(5, 2)),
        case("exists y in E. x < y and y <= 2", int(3), rat(3, 2)),
    ]
}
