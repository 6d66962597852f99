use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ris_bench::{full_cut, indoor, ka_panel, outdoor};
use ris_core::aperture::{radiation_pattern, squint_bandwidth_numeric};
use ris_core::link::{evaluate_scenario, BandwidthMethod};
use ris_core::{build_grid, Frequency, SteeringTarget};

fn pattern(c: &mut Criterion) {
    let (a, p, t) = ka_panel();
    let thetas = full_cut();
    let f = a.design_frequency();
    c.bench_function("radiation_pattern 30x30, 357 angles", |b| {
        b.iter(|| radiation_pattern(&a, &p, f, &t, 0.0, black_box(&thetas)).unwrap())
    });
}

fn squint(c: &mut Criterion) {
    let f0 = Frequency::from_ghz(140.0).unwrap();
    let t = SteeringTarget::normal_to(50.0).unwrap();
    let mut g = c.benchmark_group("squint_bandwidth_numeric");
    g.sample_size(10);
    for side_mm in [24.0, 118.0] {
        let a = build_grid(side_mm * 1e-3, f0).unwrap();
        g.bench_function(format!("{side_mm} mm"), |b| {
            b.iter(|| squint_bandwidth_numeric(black_box(&a), &t, f0).unwrap())
        });
    }
    g.finish();
}

fn scenario(c: &mut Criterion) {
    let mut g = c.benchmark_group("evaluate_scenario");
    g.sample_size(10);
    let (out, ind) = (outdoor(50.0), indoor(50.0));
    g.bench_function("outdoor numeric", |b| {
        b.iter(|| evaluate_scenario(black_box(&out), BandwidthMethod::Numeric).unwrap())
    });
    g.bench_function("indoor numeric", |b| {
        b.iter(|| evaluate_scenario(black_box(&ind), BandwidthMethod::Numeric).unwrap())
    });
    g.bench_function("outdoor analytic", |b| {
        b.iter(|| evaluate_scenario(black_box(&out), BandwidthMethod::analytic()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, pattern, squint, scenario);
criterion_main!(benches);
