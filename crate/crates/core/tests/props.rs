//! Property tests and an independent brute-force oracle for the SAX
//! pipeline.

use proptest::prelude::*;

use saxshape::sax::{
    breakpoints, detect_transitions, discretize, paa, sax_transform, word_distance, znormalize,
    SaxConfig, SaxWord,
};
use saxshape::{io, TimeSeries};

fn series(v: Vec<f64>) -> TimeSeries {
    TimeSeries::new(v).unwrap()
}

/// Naive three-step SAX, written directly from the published formulas and
/// kept independent of the library implementation path.
mod oracle {
    const TABLE: [&[f64]; 6] = [
        &[-0.43, 0.43],
        &[-0.67, 0.0, 0.67],
        &[-0.84, -0.25, 0.25, 0.84],
        &[-0.97, -0.43, 0.0, 0.43, 0.97],
        &[-1.07, -0.57, -0.18, 0.18, 0.57, 1.07],
        &[-1.15, -0.67, -0.32, 0.0, 0.32, 0.67, 1.15],
    ];

    /// Requires w | n.
    pub fn sax(samples: &[f64], a: usize, w: usize) -> Vec<u8> {
        let n = samples.len();
        assert_eq!(n % w, 0);
        let mut mean = 0.0;
        for &s in samples {
            mean += s;
        }
        mean /= n as f64;
        let mut var = 0.0;
        for &s in samples {
            var += (s - mean) * (s - mean);
        }
        var /= n as f64;
        let sd = var.sqrt();
        let normalized: Vec<f64> = samples
            .iter()
            .map(|&s| if sd > 0.0 { (s - mean) / sd } else { 0.0 })
            .collect();

        let seg = n / w;
        let mut word = Vec::with_capacity(w);
        for i in 0..w {
            let mut sum = 0.0;
            for j in 0..seg {
                sum += normalized[i * seg + j];
            }
            let t = sum / seg as f64;
            let cuts = TABLE[a - 3];
            let mut symbol = a as u8;
            for (k, &cut) in cuts.iter().enumerate() {
                if t <= cut {
                    symbol = k as u8 + 1;
                    break;
                }
            }
            word.push(symbol);
        }
        word
    }
}

#[test]
fn brute_force_oracle_equivalence() {
    // exhaustive over short series, sampled over the longer ones
    let values = [-2.0, -1.0, 0.0, 1.0, 2.0];
    let mut cases: Vec<Vec<f64>> = Vec::new();
    for n in 1..=6usize {
        let mut idx = vec![0usize; n];
        loop {
            cases.push(idx.iter().map(|&i| values[i]).collect());
            let mut k = 0;
            loop {
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
                if k == n {
                    break;
                }
            }
            if k == n {
                break;
            }
        }
    }
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for n in 7..=8usize {
        for _ in 0..1500 {
            cases.push((0..n).map(|_| values[(next() % 5) as usize]).collect());
        }
    }

    for samples in &cases {
        let n = samples.len();
        let ts = series(samples.clone());
        for a in 3..=8usize {
            for w in 1..=n {
                if n % w != 0 {
                    continue;
                }
                let cfg = SaxConfig::new(a, w).unwrap();
                let got = sax_transform(&ts, &cfg).unwrap();
                let want = oracle::sax(samples, a, w);
                assert_eq!(got.symbols(), &want[..], "series {samples:?} a={a} w={w}");
            }
        }
    }
}

proptest! {
    #[test]
    fn znormalize_stats(v in prop::collection::vec(-1e6f64..1e6, 2..256)) {
        let ts = series(v.clone());
        let (out, stats) = znormalize(&ts);
        prop_assert_eq!(out.len(), ts.len());
        if stats.std_dev > 0.0 {
            let n = out.len() as f64;
            let mean = out.samples().iter().sum::<f64>() / n;
            let var = out.samples().iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n;
            prop_assert!(mean.abs() < 1e-9);
            prop_assert!((var.sqrt() - 1.0).abs() < 1e-9);
        } else {
            prop_assert!(out.samples().iter().all(|&s| s == 0.0));
        }
    }

    #[test]
    fn znormalize_preserves_extremum_positions(v in prop::collection::vec(-1e6f64..1e6, 2..128)) {
        let ts = series(v.clone());
        let (out, stats) = znormalize(&ts);
        prop_assume!(stats.std_dev > 0.0);
        let argmax = |s: &[f64]| {
            s.iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap()
                .0
        };
        let argmin = |s: &[f64]| {
            s.iter()
                .enumerate()
                .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap()
                .0
        };
        prop_assert_eq!(argmax(ts.samples()), argmax(out.samples()));
        prop_assert_eq!(argmin(ts.samples()), argmin(out.samples()));
    }

    #[test]
    fn paa_identity_and_mean_preservation(
        v in prop::collection::vec(-1e3f64..1e3, 1..200),
        w_frac in 0.0f64..1.0,
    ) {
        let ts = series(v.clone());
        let n = ts.len();

        let identity = paa(&ts, n).unwrap();
        prop_assert_eq!(identity.samples(), ts.samples());

        let w = 1 + (w_frac * (n as f64 - 1.0)) as usize;
        let reduced = paa(&ts, w).unwrap();
        prop_assert_eq!(reduced.len(), w);
        let in_mean = ts.samples().iter().sum::<f64>() / n as f64;
        let out_mean = reduced.samples().iter().sum::<f64>() / w as f64;
        prop_assert!((in_mean - out_mean).abs() < 1e-9);
    }

    #[test]
    fn sax_transform_affine_invariant(
        v in prop::collection::vec(-1e3f64..1e3, 2..128),
        scale in 0.01f64..100.0,
        offset in -1e3f64..1e3,
        a in 3usize..=8,
    ) {
        let ts = series(v.clone());
        let transformed = series(v.iter().map(|x| scale * x + offset).collect());
        let w = ts.len().min(16);
        let cfg = SaxConfig::new(a, w).unwrap();
        prop_assert_eq!(
            sax_transform(&ts, &cfg).unwrap(),
            sax_transform(&transformed, &cfg).unwrap()
        );
    }

    #[test]
    fn word_distance_laws(
        s1 in prop::collection::vec(1u8..=5, 1..24),
        s2 in prop::collection::vec(1u8..=5, 1..24),
    ) {
        let n = s1.len().min(s2.len());
        let w1 = SaxWord::new(s1[..n].to_vec(), 5).unwrap();
        let w2 = SaxWord::new(s2[..n].to_vec(), 5).unwrap();
        let d12 = word_distance(&w1, &w2).unwrap();
        let d21 = word_distance(&w2, &w1).unwrap();
        prop_assert_eq!(d12, d21);
        prop_assert!(d12 >= 0.0);
        prop_assert_eq!(word_distance(&w1, &w1).unwrap(), 0.0);
        if w1
            .symbols()
            .iter()
            .zip(w2.symbols())
            .all(|(&a, &b)| a.abs_diff(b) <= 1)
        {
            prop_assert_eq!(d12, 0.0);
        }
    }

    #[test]
    fn transitions_match_adjacent_differences(s in prop::collection::vec(1u8..=4, 1..32)) {
        let word = SaxWord::new(s.clone(), 4).unwrap();
        let events = detect_transitions(&word);
        let expected = s.windows(2).filter(|p| p[0] != p[1]).count();
        prop_assert_eq!(events.len(), expected);
        for e in &events {
            prop_assert_eq!(s[e.position - 1], e.from_symbol);
            prop_assert_eq!(s[e.position], e.to_symbol);
            prop_assert_ne!(e.from_symbol, e.to_symbol);
        }
    }

    #[test]
    fn series_file_round_trip(v in prop::collection::vec(-1e12f64..1e12, 1..64)) {
        let ts = series(v);
        let text = io::write_series(&ts);
        let back = io::read_series(&text).unwrap();
        prop_assert_eq!(back.samples(), ts.samples());
        prop_assert_eq!(io::write_series(&back), text);
    }

    #[test]
    fn pbm_round_trip(bits in prop::collection::vec(any::<bool>(), 1..256), width in 1usize..16) {
        let height = bits.len().div_ceil(width);
        let mut pixels = bits.clone();
        pixels.resize(width * height, false);
        let img = saxshape::BinaryImage::new(width, height, pixels).unwrap();
        prop_assert_eq!(io::read_pbm(&io::write_pbm(&img)).unwrap(), img);
    }

    #[test]
    fn discretize_breakpoint_partition(t in -3.0f64..3.0, a in 3usize..=8) {
        // symbol k and the breakpoint row always agree on the interval
        let cfg = SaxConfig::new(a, 1).unwrap();
        let word = discretize(&series(vec![t]), &cfg).unwrap();
        let k = word.symbols()[0] as usize;
        let cuts = breakpoints(a).unwrap();
        if k > 1 {
            prop_assert!(t > cuts[k - 2]);
        }
        if k < a {
            prop_assert!(t <= cuts[k - 1]);
        }
    }
}
