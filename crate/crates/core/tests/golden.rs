//! Checked-in summaries of a 400-node block model and a 400-node smooth
//! graphon sample, with reference values from `fixtures/golden.py`.

use netmoment::hashdb::parse_db;
use netmoment::inference::{confidence_interval_with_delta, test_with_delta};
use netmoment::HashDb;

const FIXTURE: &str = include_str!("fixtures/sbm1-vs-smooth2-n400.ndjson");

fn db() -> HashDb {
    parse_db(FIXTURE).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

struct Golden {
    motif: &'static str,
    delta: f64,
    t: f64,
    p: f64,
    ci: (f64, f64),
    i0: f64,
    q1: f64,
    q2: f64,
}

const GOLDEN: [Golden; 4] = [
    Golden { motif: "vshape", delta: 0.0, t: -0.8471684531620002, p: 0.3774442075408226, ci: (-0.189383918223745, 0.05718394566074199), i0: -0.019635417136962853, q1: 0.02976408961683918, q2: 0.01442858187625165 },
    Golden { motif: "vshape", delta: 0.125, t: -0.7221684531620002, p: 0.45046871603987637, ci: (-0.18001500463759096, 0.06655285924689605), i0: -0.019635417136962853, q1: 0.02976408961683918, q2: 0.01442858187625165 },
    Golden { motif: "triangle", delta: 0.0, t: -4.433535112977139, p: 0.0, ci: (-0.37244563843097295, -0.1742473150973011), i0: -0.024768128657849428, q1: 0.06632674509114436, q2: 0.03630920626205346 },
    Golden { motif: "triangle", delta: 0.125, t: -4.308535112977139, p: 0.0, ci: (-0.3649146368844627, -0.16671631355079086), i0: -0.024768128657849428, q1: 0.06632674509114436, q2: 0.03630920626205346 },
];

#[test]
fn fixture_records_are_valid() {
    let db = db();
    assert_eq!(db.len(), 2);
    for rec in db.records() {
        rec.validate().unwrap();
        assert_eq!(rec.n, 400);
    }
}

#[test]
fn p_values_and_intervals_match_reference() {
    let db = db();
    let a = db.get("sbm1-n400").unwrap();
    let b = db.get("smooth2-n400").unwrap();
    for g in &GOLDEN {
        let (sa, sb) = (a.summary(g.motif).unwrap(), b.summary(g.motif).unwrap());
        let t = test_with_delta(sa, sb, 0.05, g.delta).unwrap();
        assert!(close(t.t_obs, g.t, 1e-12), "{} t {} vs {}", g.motif, t.t_obs, g.t);
        assert!(close(t.p_value, g.p, 1e-10), "{} p {} vs {}", g.motif, t.p_value, g.p);
        assert!(close(t.coeffs.i0, g.i0, 1e-12));
        assert!(close(t.coeffs.q1, g.q1, 1e-12));
        assert!(close(t.coeffs.q2, g.q2, 1e-12));
        let ci = confidence_interval_with_delta(sa, sb, 0.9, g.delta).unwrap();
        assert!(close(ci.lo, g.ci.0, 1e-10), "{} lo {} vs {}", g.motif, ci.lo, g.ci.0);
        assert!(close(ci.hi, g.ci.1, 1e-10), "{} hi {} vs {}", g.motif, ci.hi, g.ci.1);
    }
}

#[test]
fn edge_motif_is_degenerate_for_the_block_model() {
    let db = db();
    let a = db.get("sbm1-n400").unwrap().summary("edge").unwrap();
    let b = db.get("smooth2-n400").unwrap().summary("edge").unwrap();
    assert!(matches!(test_with_delta(a, b, 0.05, 0.0), Err(netmoment::Error::DegenerateVariance(_))));
}

#[test]
fn roundtrip_preserves_fixture_bytes() {
    let db = db();
    let lines: Vec<String> = ["sbm1-n400", "smooth2-n400"]
        .iter()
        .map(|id| db.get(id).unwrap().to_json_line().unwrap())
        .collect();
    let expected: Vec<&str> = FIXTURE.lines().filter(|l| !l.trim().is_empty()).collect();
    assert_eq!(lines, expected);
}
