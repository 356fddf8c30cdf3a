//! Acceptance suite: one test per release criterion. Each test prints a
//! PASS line on success (visible with `cargo test -- --nocapture`).

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::distribution::{ContinuousCDF, Normal};

use saxshape::bench::{self, BenchOp};
use saxshape::classify::{build_word_sets, classify_image};
use saxshape::sax::{breakpoints, paa, sax_transform, word_distance, znormalize, SaxConfig, SaxWord};
use saxshape::shape::{rotate_image, signature, BinaryImage};
use saxshape::{io, synth, TimeSeries};

fn series(v: Vec<f64>) -> TimeSeries {
    TimeSeries::new(v).unwrap()
}

#[test]
fn criterion_01_breakpoint_fidelity() {
    let published: [&[f64]; 6] = [
        &[-0.43, 0.43],
        &[-0.67, 0.0, 0.67],
        &[-0.84, -0.25, 0.25, 0.84],
        &[-0.97, -0.43, 0.0, 0.43, 0.97],
        &[-1.07, -0.57, -0.18, 0.18, 0.57, 1.07],
        &[-1.15, -0.67, -0.32, 0.0, 0.32, 0.67, 1.15],
    ];
    let gaussian = Normal::new(0.0, 1.0).unwrap();
    for a in 3..=8usize {
        let cuts = breakpoints(a).unwrap();
        assert_eq!(cuts, published[a - 3], "a={a} differs from published row");
        for (k, &cut) in cuts.iter().enumerate() {
            let quantile = gaussian.inverse_cdf((k + 1) as f64 / a as f64);
            assert!(
                (cut - quantile).abs() <= 0.005,
                "a={a} beta_{} = {cut} vs quantile {quantile}",
                k + 1
            );
        }
    }
    println!("PASS criterion 1: breakpoint fidelity (published rows, quantiles within 0.005)");
}

#[test]
fn criterion_02_normalization_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=1024);
        let scale: f64 = rng.gen_range(0.1..100.0);
        let offset: f64 = rng.gen_range(-1e3..1e3);
        let samples: Vec<f64> = (0..n)
            .map(|_| scale * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng) + offset)
            .collect();
        let ts = series(samples);
        let (out, stats) = znormalize(&ts);
        assert!(stats.std_dev > 0.0, "random series came out constant");
        let nf = n as f64;
        let mean = out.samples().iter().sum::<f64>() / nf;
        let var = out.samples().iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / nf;
        assert!(mean.abs() < 1e-9, "|mean| = {}", mean.abs());
        assert!((var.sqrt() - 1.0).abs() < 1e-9, "std = {}", var.sqrt());
    }
    let (out, stats) = znormalize(&series(vec![7.5; 33]));
    assert_eq!(stats.std_dev, 0.0);
    assert!(out.samples().iter().all(|&s| s == 0.0));
    println!("PASS criterion 2: normalization suite (1000 random series, sigma=0 path)");
}

#[test]
fn criterion_03_paa_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=512);
        let w = rng.gen_range(1..=n);
        let samples: Vec<f64> = (0..n).map(|_| rng.gen_range(-100.0..100.0)).collect();
        let ts = series(samples.clone());

        let identity = paa(&ts, n).unwrap();
        assert_eq!(identity.samples(), ts.samples(), "w = n identity");

        let reduced = paa(&ts, w).unwrap();
        let in_mean = samples.iter().sum::<f64>() / n as f64;
        let out_mean = reduced.samples().iter().sum::<f64>() / w as f64;
        assert!(
            (in_mean - out_mean).abs() < 1e-9,
            "mean drift {} at n={n} w={w}",
            (in_mean - out_mean).abs()
        );

        if n % w == 0 {
            let seg = n / w;
            let naive: Vec<f64> = (0..w)
                .map(|i| samples[i * seg..(i + 1) * seg].iter().sum::<f64>() / seg as f64)
                .collect();
            assert_eq!(reduced.samples(), &naive[..], "naive oracle at n={n} w={w}");
        }
    }
    println!("PASS criterion 3: PAA laws (identity, mean preservation, divisible-case oracle)");
}

#[test]
fn criterion_04_discretization_uniformity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 100_000;
    let samples: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let ts = series(samples);
    for a in 3..=8usize {
        let cfg = SaxConfig::new(a, n).unwrap();
        let word = sax_transform(&ts, &cfg).unwrap();
        let mut counts = vec![0usize; a];
        for &s in word.symbols() {
            counts[s as usize - 1] += 1;
        }
        for (i, &c) in counts.iter().enumerate() {
            let freq = c as f64 / n as f64;
            let expected = 1.0 / a as f64;
            assert!(
                (freq - expected).abs() <= 0.01,
                "a={a} symbol {} frequency {freq} vs {expected}",
                i + 1
            );
        }
    }
    println!("PASS criterion 4: discretization uniformity (100k samples, each a in 3..8)");
}

#[test]
fn criterion_05_word_distance_algorithm() {
    // independent cell-sum oracle, hardcoded for a = 4
    let beta4 = [-0.67, 0.0, 0.67];
    let oracle = |w1: &[u8], w2: &[u8]| -> f64 {
        let mut dist = 0.0;
        for (&i, &j) in w1.iter().zip(w2) {
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            if hi as i32 - lo as i32 > 1 {
                dist += beta4[hi as usize - 2] - beta4[lo as usize - 1];
            }
        }
        dist
    };

    for len in 1..=4usize {
        let count = 4usize.pow(len as u32);
        let decode = |mut code: usize| -> Vec<u8> {
            (0..len)
                .map(|_| {
                    let s = (code % 4) as u8 + 1;
                    code /= 4;
                    s
                })
                .collect()
        };
        for c1 in 0..count {
            let s1 = decode(c1);
            let w1 = SaxWord::new(s1.clone(), 4).unwrap();
            assert_eq!(word_distance(&w1, &w1).unwrap(), 0.0);
            for c2 in 0..count {
                let s2 = decode(c2);
                let w2 = SaxWord::new(s2.clone(), 4).unwrap();
                let d12 = word_distance(&w1, &w2).unwrap();
                assert_eq!(d12, word_distance(&w2, &w1).unwrap(), "symmetry");
                let want = oracle(&s1, &s2);
                assert!(
                    (d12 - want).abs() < 1e-12,
                    "{s1:?} vs {s2:?}: {d12} vs oracle {want}"
                );
                if s1.iter().zip(&s2).all(|(&a, &b)| a.abs_diff(b) <= 1) {
                    assert_eq!(d12, 0.0, "adjacent perturbation must be free");
                }
            }
        }
    }
    println!("PASS criterion 5: word distance laws and oracle agreement over all length<=4 pairs, a=4");
}

fn fixture_shapes() -> Vec<BinaryImage> {
    let mut shapes = Vec::new();
    for (i, radius) in [12.0, 17.5, 23.0, 28.0].iter().enumerate() {
        shapes.push(synth::disk_image(64, *radius));
        for sides in [3, 4, 5, 6] {
            shapes.push(synth::regular_polygon_image(
                64,
                sides,
                *radius,
                0.3 * i as f64,
            ));
        }
    }
    assert_eq!(shapes.len(), 20);
    shapes
}

fn embed(image: &BinaryImage, frame: usize, dx: usize, dy: usize) -> BinaryImage {
    BinaryImage::from_fn(frame, frame, |x, y| {
        x >= dx
            && y >= dy
            && x - dx < image.width()
            && y - dy < image.height()
            && image.get(x - dx, y - dy)
    })
    .unwrap()
}

#[test]
fn criterion_06_translation_invariance() {
    let translations = [
        (0, 0),
        (10, 17),
        (1, 0),
        (0, 1),
        (33, 2),
        (2, 40),
        (25, 25),
        (7, 31),
        (40, 40),
        (19, 5),
    ];
    for (i, shape) in fixture_shapes().iter().enumerate() {
        let reference = signature(&embed(shape, 128, 0, 0), 360).unwrap();
        for &(dx, dy) in &translations[1..] {
            let translated = signature(&embed(shape, 128, dx, dy), 360).unwrap();
            assert_eq!(
                reference.samples.samples(),
                translated.samples.samples(),
                "shape {i} translated by ({dx}, {dy})"
            );
        }
    }
    println!("PASS criterion 6: translation invariance (20 shapes x 10 translations, bit-identical)");
}

/// Circular moving average over a 5-bin window, then maximal-run local
/// maxima strictly above the signature mean.
fn smoothed_peak_count(samples: &[f64]) -> usize {
    let k = samples.len();
    let smoothed: Vec<f64> = (0..k)
        .map(|i| {
            (-2i64..=2)
                .map(|d| samples[((i as i64 + d).rem_euclid(k as i64)) as usize])
                .sum::<f64>()
                / 5.0
        })
        .collect();
    let mean = smoothed.iter().sum::<f64>() / k as f64;

    let mut peaks = 0;
    let mut i = 0;
    while i < k {
        let v = smoothed[i];
        // extent of the plateau starting at i
        let mut run = 1;
        while run < k && smoothed[(i + run) % k] == v {
            run += 1;
        }
        if run == k {
            break; // constant signal, no peaks
        }
        let before = smoothed[(i + k - 1) % k];
        let after = smoothed[(i + run) % k];
        if v > mean && v > before && v > after {
            peaks += 1;
        }
        i += run;
    }
    peaks
}

#[test]
fn criterion_07_peak_structure() {
    let triangle = synth::regular_polygon_image(512, 3, 200.0, 0.0);
    let tri_sig = signature(&triangle, 360).unwrap();
    assert_eq!(
        smoothed_peak_count(tri_sig.samples.samples()),
        3,
        "triangle peak count"
    );

    let octagon = synth::regular_polygon_image(512, 8, 200.0, 0.0);
    let oct_sig = signature(&octagon, 360).unwrap();
    assert_eq!(
        smoothed_peak_count(oct_sig.samples.samples()),
        8,
        "octagon peak count"
    );

    let disk = synth::disk_image(512, 200.0);
    let disk_sig = signature(&disk, 360).unwrap();
    let s = disk_sig.samples.samples();
    let mean = s.iter().sum::<f64>() / s.len() as f64;
    let var = s.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / s.len() as f64;
    let cv = var.sqrt() / mean;
    assert!(cv < 0.03, "disk coefficient of variation {cv}");
    println!("PASS criterion 7: peak structure (3 and 8 peaks, disk CV {cv:.4} < 0.03)");
}

#[test]
fn criterion_08_end_to_end_classification() {
    let bins = 360;
    let config = SaxConfig::new(4, 45).unwrap();
    let bases = [
        ("circle", synth::disk_image(256, 90.0)),
        ("octagon", synth::regular_polygon_image(256, 8, 100.0, 0.0)),
        ("triangle", synth::regular_polygon_image(256, 3, 100.0, 0.0)),
    ];

    // 36 training rotations per class, on a 10-degree grid
    let mut training = Vec::new();
    for (label, base) in &bases {
        for k in 0..36 {
            let angle = TAU * k as f64 / 36.0;
            training.push((label.to_string(), rotate_image(base, angle)));
        }
    }
    let (db, _conflicts) = build_word_sets(&training, &config, bins).unwrap();

    // 30 held-out rotations per class, off the training grid
    let mut correct = 0;
    let mut total = 0;
    for (label, base) in &bases {
        for k in 0..30 {
            let degrees = 5.0 + 12.0 * k as f64;
            let image = rotate_image(base, degrees.to_radians());
            let result = classify_image(&image, &db, &config, bins).unwrap();
            total += 1;
            if result.label == *label {
                correct += 1;
            }
        }
    }
    let accuracy = correct as f64 / total as f64;
    assert!(
        accuracy >= 0.95,
        "accuracy {accuracy} ({correct}/{total}) below 0.95"
    );
    println!("PASS criterion 8: end-to-end classification accuracy {accuracy:.3} >= 0.95");
}

#[test]
fn criterion_09_bench_scaling() {
    let small = bench::run(BenchOp::Sax, 100_000, 9, 42).unwrap();
    let large = bench::run(BenchOp::Sax, 1_000_000, 9, 42).unwrap();
    let ratio = large[0].median_ns() as f64 / small[0].median_ns() as f64;
    assert!(
        (5.0..=20.0).contains(&ratio),
        "10x input scaled time by {ratio}"
    );
    assert!(
        large[0].median_ns() < 1_000_000_000,
        "length-1e6 transform took {} ns",
        large[0].median_ns()
    );
    println!(
        "PASS criterion 9: bench scaling ratio {ratio:.1} in [5, 20], 1e6 transform {} ms",
        large[0].median_ns() / 1_000_000
    );
}

#[test]
fn criterion_10_parser_fuzz() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let seeds: Vec<Vec<u8>> = vec![
        b"P1\n4 4\n1 1 1 1\n1 0 0 1\n1 0 0 1\n1 1 1 1\n".to_vec(),
        b"P4\n8 2\n\xff\x00".to_vec(),
        b"# series\n1.5\n-2\n3e-4\n".to_vec(),
        b"#sax a=4 w=3\ncircle\tabc\nsquare\tbbb\n".to_vec(),
    ];
    for case in 0..10_000 {
        let bytes: Vec<u8> = if case % 2 == 0 {
            let len = rng.gen_range(0..256);
            (0..len).map(|_| rng.gen()).collect()
        } else {
            // mutate a valid document to reach deeper parser states
            let mut bytes = seeds[rng.gen_range(0..seeds.len())].clone();
            for _ in 0..rng.gen_range(1..8) {
                match rng.gen_range(0..3) {
                    0 if !bytes.is_empty() => {
                        let i = rng.gen_range(0..bytes.len());
                        bytes[i] = rng.gen();
                    }
                    1 => bytes.truncate(rng.gen_range(0..=bytes.len())),
                    _ => bytes.insert(rng.gen_range(0..=bytes.len()), rng.gen()),
                }
            }
            bytes
        };
        // parsers must return structured errors, never panic
        let _ = io::read_pbm(&bytes);
        if let Ok(text) = std::str::from_utf8(&bytes) {
            let _ = io::read_series(text);
            let _ = io::read_word_sets(text);
        }
    }
    println!("PASS criterion 10: 10,000-case parser fuzz with zero crashes");
}

#[test]
fn resubstitution_consistency() {
    // every training image classifies back to its own label at distance 0
    // unless its word was removed as a conflict
    let bins = 360;
    let config = SaxConfig::new(4, 16).unwrap();
    let bases = [
        ("circle", synth::disk_image(96, 30.0)),
        ("triangle", synth::regular_polygon_image(96, 3, 34.0, 0.0)),
    ];
    let mut training = Vec::new();
    for (label, base) in &bases {
        for k in 0..8 {
            training.push((label.to_string(), rotate_image(base, TAU * k as f64 / 8.0)));
        }
    }
    let (db, conflicts) = build_word_sets(&training, &config, bins).unwrap();
    let conflict_words: BTreeSet<&SaxWord> = conflicts.iter().map(|c| &c.word).collect();
    for (label, image) in &training {
        let sig = signature(image, bins).unwrap();
        let word = sax_transform(&sig.samples, &config).unwrap();
        if conflict_words.contains(&word) {
            continue;
        }
        let result = classify_image(image, &db, &config, bins).unwrap();
        assert_eq!(&result.label, label);
        assert_eq!(result.distance, 0.0);
    }
}
