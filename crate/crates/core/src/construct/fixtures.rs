//! Published coordinates that are only known numerically.

use crate::design::{Design, DesignMeta, UnitPoint};
use crate::error::{Error, Result};
use crate::symmetry::{config_to_design, OrbitConfig, RotationGroup};

/// Names accepted by [`fixture`].
pub const FIXTURE_NAMES: &[&str] = &[
    "orbits-36-8",
    "orbits-60-10",
    "orbits-72-11",
    "orbits-96-13",
    "orbits-108-14",
    "orbits-144-16",
    "orbits-240-21",
    "design-23-5-seed",
    "design-48-9-seed",
];

const REPS_36: &[[f64; 3]] = &[
    [0.74051521, 0.24352778, 0.62636367],
    [0.80542549, 0.30620001, -0.50747545],
    [0.95712033, 0.28624872, 0.04452356],
];

const REPS_60: &[[f64; 3]] = &[
    [0.71315107, 0.03408955, 0.70018102],
    [0.75382867, 0.54595191, -0.36562119],
    [0.78335594, -0.42686412, -0.45181910],
    [0.93321004, 0.12033145, -0.33858436],
    [0.95799794, 0.27623022, 0.07705072],
];

const REPS_72: &[[f64; 3]] = &[
    [0.66932119, -0.65648669, -0.34789994],
    [0.75683290, 0.38164750, -0.53061205],
    [0.82190371, 0.54929373, -0.15083333],
    [0.85544705, 0.04115447, 0.51625251],
    [0.90728126, 0.36233033, 0.21344190],
    [0.97885492, 0.12557302, -0.16147588],
];

const REPS_96: &[[f64; 3]] = &[
    [0.69989534, 0.59974524, -0.38788163],
    [0.73338128, -0.54971991, -0.39994990],
    [0.78556905, 0.09585688, -0.61130412],
    [0.82321276, 0.56450535, 0.06045217],
    [0.83255539, -0.25643858, -0.49100996],
    [0.88122889, 0.33818291, -0.33025441],
    [0.96391874, -0.26382492, -0.03545521],
    [0.96783463, -0.01683358, -0.25102343],
];

const REPS_108: &[[f64; 3]] = &[
    [0.69160471, -0.40217576, 0.59994798],
    [0.71050575, 0.58202818, 0.39550573],
    [0.75403890, 0.65127837, -0.08521631],
    [0.80598041, 0.26283378, 0.53039041],
    [0.86226532, -0.39729017, 0.31410038],
    [0.86442500, -0.05628604, 0.49960114],
    [0.87315060, -0.46879380, -0.13356797],
    [0.96418944, 0.16093133, 0.21080756],
    [0.97567128, -0.17376307, 0.13368600],
];

const REPS_144: &[[f64; 3]] = &[
    [0.65758346, 0.61920220, 0.42915339],
    [0.70203400, -0.68122298, 0.20756570],
    [0.70428352, -0.55221381, 0.44614418],
    [0.71018481, -0.16518988, -0.68436090],
    [0.84130836, -0.32306467, 0.43339297],
    [0.84532735, -0.30622774, -0.43777418],
    [0.85087242, 0.52354706, -0.04375603],
    [0.85473787, -0.02894596, 0.51825216],
    [0.87135881, 0.43350173, 0.22980441],
    [0.94028712, -0.28839660, 0.18079695],
    [0.96296114, 0.02735042, 0.26824950],
    [0.98473889, 0.16325742, 0.06030199],
];

const REPS_240: &[[f64; 3]] = &[
    [0.66536339, 0.58086027, 0.46892741],
    [0.67683321, -0.48257247, 0.55589623],
    [0.71800639, 0.65744688, -0.22853979],
    [0.72687147, -0.02748828, -0.68622319],
    [0.73733200, -0.62085150, -0.26624225],
    [0.77263286, 0.51705945, -0.36835851],
    [0.77909960, -0.23760971, -0.58012537],
    [0.78443181, 0.28431902, -0.55120724],
    [0.78559925, -0.40515695, -0.46763412],
    [0.81763902, -0.57522572, 0.02412057],
    [0.84781923, 0.06632578, -0.52612113],
    [0.86317647, -0.46818182, -0.18902953],
    [0.89265354, -0.41253405, 0.18161861],
    [0.89457952, -0.27876240, 0.34931219],
    [0.90354264, 0.09900269, 0.41690427],
    [0.90950707, 0.29209374, 0.29576703],
    [0.94298382, 0.33269411, 0.00980574],
    [0.95866803, -0.10111361, 0.26595424],
    [0.97946878, 0.11341985, 0.16666388],
    [0.99028895, 0.12883316, -0.05224764],
];

// x, y, z of the nine linked pairs (±x, ±y, z); the first x is exactly 1/3.
const SEED_23_X: [f64; 8] = [
    0.5654, 0.1949, 0.8337, 0.6521, 0.5610, 0.7414, 0.1927, 0.5854,
];
const SEED_23_Y: [f64; 9] = [
    -0.2194, 0.3485, -0.7812, -0.4754, 0.7082, -0.7301, 0.4805, 0.7199, -0.2092,
];
const SEED_23_Z: [f64; 9] = [
    -0.9169, -0.7476, -0.5931, -0.2807, -0.2705, 0.3903, 0.4685, 0.6668, 0.7833,
];

const SEED_48: &[[f64; 3]] = &[[0.9334, 0.3535, -0.0620], [0.7068, 0.6397, 0.3018]];

/// Builds a design from embedded published coordinates.
pub fn fixture(name: &str) -> Result<Design> {
    let (reps, t) = match name {
        "orbits-36-8" => (REPS_36, 8),
        "orbits-60-10" => (REPS_60, 10),
        "orbits-72-11" => (REPS_72, 11),
        "orbits-96-13" => (REPS_96, 13),
        "orbits-108-14" => (REPS_108, 14),
        "orbits-144-16" => (REPS_144, 16),
        "orbits-240-21" => (REPS_240, 21),
        "design-23-5-seed" => return seed_23(),
        "design-48-9-seed" => return seed_48(),
        _ => return Err(Error::UnknownDesign(name.to_string())),
    };
    let mut d = orbit_union("[3,3]+", reps)?;
    d.meta = DesignMeta {
        target_t: Some(t),
        group_label: Some("[3,3]+".into()),
        source: Some(format!("{name}: published 8-digit orbit representatives")),
        requires_polish: false,
    };
    Ok(d)
}

fn orbit_union(label: &str, reps: &[[f64; 3]]) -> Result<Design> {
    let group = RotationGroup::from_label(label)?;
    let reps = reps
        .iter()
        .map(|c| UnitPoint::new(c[0], c[1], c[2]))
        .collect::<Result<Vec<_>>>()?;
    config_to_design(&OrbitConfig::new(group, reps))
}

fn seed_23() -> Result<Design> {
    let mut coords = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
    ];
    let xs = std::iter::once(1.0 / 3.0).chain(SEED_23_X);
    for ((x, y), z) in xs.zip(SEED_23_Y).zip(SEED_23_Z) {
        coords.push([x, y, z]);
        coords.push([-x, -y, z]);
    }
    let d = Design::from_coords(&coords)?;
    Ok(d.with_meta(DesignMeta {
        target_t: Some(5),
        group_label: Some("[2]+".into()),
        source: Some("design-23-5-seed: published 4-digit values, two typos corrected".into()),
        requires_polish: true,
    }))
}

fn seed_48() -> Result<Design> {
    let d = orbit_union("[3,4]+", SEED_48)?;
    Ok(d.with_meta(DesignMeta {
        target_t: Some(9),
        group_label: Some("[3,4]+".into()),
        source: Some("design-48-9-seed: published 4-digit orbit representatives".into()),
        requires_polish: true,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::verified_strength;

    #[test]
    fn table_fixtures_verify_at_published_precision() {
        for (name, n, t) in [
            ("orbits-36-8", 36, 8),
            ("orbits-60-10", 60, 10),
            ("orbits-72-11", 72, 11),
        ] {
            let d = fixture(name).unwrap();
            assert_eq!(d.n(), n);
            assert_eq!(verified_strength(&d, t + 1, 1e-12).verified_t, t, "{name}");
        }
    }

    #[test]
    fn seeds_are_close_but_need_polish() {
        let d = fixture("design-23-5-seed").unwrap();
        assert_eq!(d.n(), 23);
        assert!(d.meta.requires_polish);
        assert_eq!(verified_strength(&d, 6, 1e-7).verified_t, 5);
        assert!(verified_strength(&d, 6, 1e-20).verified_t < 5);
        let d = fixture("design-48-9-seed").unwrap();
        assert_eq!(d.n(), 48);
        assert!(verified_strength(&d, 10, 1e-20).verified_t < 9);
    }

    #[test]
    fn unknown_fixture() {
        assert_eq!(fixture("nope"), Err(Error::UnknownDesign("nope".into())));
    }
}
