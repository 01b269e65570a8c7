use super::curve::EllipticCurve;

const FIXTURES: &[(&str, [i64; 5])] = &[
    ("11.a2", [0, -1, 1, -10, -20]),
    ("14.a1", [1, 0, 1, -2731, -55146]),
    ("14.a3", [1, 0, 1, -36, -70]),
    ("15.a1", [1, 1, 1, -2160, -39540]),
    ("17.a1", [1, -1, 1, -91, -310]),
    ("17.a2", [1, -1, 1, -6, -4]),
    ("19.a2", [0, 1, 1, -9, -15]),
    ("54.a3", [1, -1, 0, 12, 8]),
    ("56.b1", [0, -1, 0, -40, -84]),
    ("89.a1", [1, 1, 1, -1, 0]),
];

pub fn fixture_labels() -> Vec<&'static str> {
    FIXTURES.iter().map(|(l, _)| *l).collect()
}

/// Embedded curve by its isogeny-class label.
pub fn fixture(label: &str) -> Option<EllipticCurve> {
    FIXTURES
        .iter()
        .find(|(l, _)| *l == label)
        .map(|(_, a)| EllipticCurve::from_integers(*a).expect("fixtures are nonsingular"))
}
