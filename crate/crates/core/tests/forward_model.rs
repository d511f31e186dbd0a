use kirmig::array::uniform_circular_array;
use kirmig::forward::{
    born_s_parameter, incident_field, synthesize_frames, FieldModel, NoiseSpec, Quadrature,
    Scatterer, Scene, Trajectory,
};
use kirmig::wavecore::{complex_wavenumber, BackgroundMedium};
use kirmig::{Complex64, Point2};

fn water() -> BackgroundMedium {
    BackgroundMedium::reference_water()
}

fn plastic(at: Point2, radius: f64) -> Scatterer {
    Scatterer::dielectric(Trajectory::stationary(at), radius, 3.0, 0.0)
}

fn max_rel_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale
}

#[test]
fn two_object_frame_is_the_sum_of_single_object_frames() {
    let array = uniform_circular_array(16, 0.09).unwrap();
    let a = plastic(Point2::new(0.02, 0.01), 0.0032);
    let b = Scatterer::dielectric(
        Trajectory::stationary(Point2::new(-0.03, 0.04)),
        0.005,
        50.0,
        0.4,
    );
    for model in [FieldModel::Exact, FieldModel::Farfield] {
        let synth = |scs: Vec<Scatterer>| {
            synthesize_frames(
                &Scene::new(water(), scs),
                &array,
                &[0.0],
                None,
                model,
                Quadrature::default(),
            )
            .unwrap()
        };
        let both = synth(vec![a.clone(), b.clone()]);
        let fa = synth(vec![a.clone()]);
        let fb = synth(vec![b.clone()]);
        let sum: Vec<Complex64> = fa[0]
            .entries()
            .iter()
            .zip(fb[0].entries())
            .map(|(x, y)| x + y)
            .collect();
        assert!(max_rel_diff(both[0].entries(), &sum) <= 1e-12);
    }
}

#[test]
fn doubling_the_override_doubles_every_entry_exactly() {
    let array = uniform_circular_array(12, 0.09).unwrap();
    let at = Trajectory::stationary(Point2::new(0.01, -0.02));
    let c = Complex64::new(0.7, -0.2);
    let one = Scene::new(
        water(),
        vec![Scatterer::with_contrast(at.clone(), 0.004, c)],
    );
    let two = Scene::new(water(), vec![Scatterer::with_contrast(at, 0.004, c * 2.0)]);
    let q = Quadrature::default();
    let f1 = synthesize_frames(&one, &array, &[0.0], None, FieldModel::Exact, q).unwrap();
    let f2 = synthesize_frames(&two, &array, &[0.0], None, FieldModel::Exact, q).unwrap();
    for (x, y) in f1[0].entries().iter().zip(f2[0].entries()) {
        assert_eq!(*x * 2.0, *y);
    }
}

#[test]
fn static_scene_frames_are_identical_across_time() {
    let array = uniform_circular_array(16, 0.09).unwrap();
    let scene = Scene::new(water(), vec![plastic(Point2::new(-0.01, 0.03), 0.0032)]);
    let frames = synthesize_frames(
        &scene,
        &array,
        &[0.0, 0.5, 7.25],
        None,
        FieldModel::Exact,
        Quadrature::default(),
    )
    .unwrap();
    assert_eq!(frames[0].entries(), frames[1].entries());
    assert_eq!(frames[0].entries(), frames[2].entries());
}

#[test]
fn noise_free_frames_are_symmetric_with_zero_diagonal() {
    let array = uniform_circular_array(16, 0.09).unwrap();
    let scene = Scene::new(water(), vec![plastic(Point2::new(0.03, 0.0), 0.01)]);
    for model in [FieldModel::Exact, FieldModel::Farfield] {
        let f = &synthesize_frames(&scene, &array, &[0.0], None, model, Quadrature::default())
            .unwrap()[0];
        assert_eq!(f.max_asymmetry(), 0.0);
        for n in 0..16 {
            assert_eq!(f.get(n, n), Complex64::new(0.0, 0.0));
        }
    }
}

#[test]
fn default_quadrature_agrees_with_refined_rule() {
    let array = uniform_circular_array(16, 0.09).unwrap();
    let scene = Scene::new(water(), vec![plastic(Point2::ORIGIN, 0.0032)]);
    let coarse = Quadrature::default();
    let fine = coarse.refined(4);
    let s = |q| born_s_parameter(&scene, &array, 0, 8, 0.0, FieldModel::Exact, q).unwrap();
    let (c, f) = (s(coarse), s(fine));
    assert!(
        (c - f).norm() / f.norm() <= 5e-3,
        "rel err {}",
        (c - f).norm() / f.norm()
    );
}

#[test]
fn measured_snr_tracks_the_target() {
    let array = uniform_circular_array(16, 0.09).unwrap();
    let scene = Scene::new(water(), vec![plastic(Point2::new(0.02, 0.01), 0.0032)]);
    let q = Quadrature::Point;
    let clean = synthesize_frames(&scene, &array, &[0.0], None, FieldModel::Exact, q).unwrap();
    let signal = clean[0].frobenius_norm_sq();
    for seed in 0..100u64 {
        let noise = NoiseSpec { snr_db: 20.0, seed };
        let noisy =
            synthesize_frames(&scene, &array, &[0.0], Some(noise), FieldModel::Exact, q).unwrap();
        let noise_energy: f64 = noisy[0]
            .entries()
            .iter()
            .zip(clean[0].entries())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let measured = 10.0 * (signal / noise_energy).log10();
        assert!((measured - 20.0).abs() <= 1.0, "seed {seed}: {measured} dB");
    }
}

#[test]
fn incident_field_decays_monotonically_and_is_finite_near_the_array() {
    let k = complex_wavenumber(&water()).unwrap();
    let a = Point2::new(0.09, 0.0);
    let mut prev = f64::INFINITY;
    for i in 0..=1950 {
        let d = 0.005 + i as f64 * 1e-4;
        let v = incident_field(k, a, a - Point2::new(d, 0.0))
            .unwrap()
            .norm();
        assert!(v < prev, "not decreasing at {d}");
        prev = v;
    }
    let closest = 0.857 / k.norm();
    let v = incident_field(k, a, Point2::new(0.09 - closest, 0.0)).unwrap();
    assert!(v.re.is_finite() && v.im.is_finite());
    let r = Point2::new(0.01, 0.02);
    assert_eq!(
        incident_field(k, a, r).unwrap(),
        incident_field(k, r, a).unwrap()
    );
}
