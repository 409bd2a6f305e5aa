use braidvar::positroid::*;

const SIZES: [(usize, usize); 8] = [(1, 3), (2, 4), (1, 4), (2, 5), (3, 5), (1, 5), (2, 6), (3, 6)];

#[test]
fn pair_affine_round_trip() {
    for (k, n) in SIZES {
        for p in all_positroid_pairs(k, n) {
            let f = pair_to_affine(&p);
            f.validate(k).unwrap();
            assert_eq!(f.k(), k);
            assert_eq!(affine_to_pair(&f).unwrap(), p, "{p}");
        }
    }
}

#[test]
fn affine_rank_round_trip() {
    for (k, n) in SIZES {
        for p in all_positroid_pairs(k, n) {
            let f = pair_to_affine(&p);
            let r = affine_to_rank(&f);
            r.validate().unwrap();
            assert_eq!(rank_to_affine(&r).unwrap(), f);
            for i in 1..=n as i64 {
                let fi = f.at(i);
                if fi != i {
                    assert!(rank_marks(&r, i, fi), "{f} at {i}");
                }
            }
        }
    }
}

#[test]
fn pair_le_round_trip() {
    for (k, n) in SIZES {
        let mut seen = std::collections::BTreeSet::new();
        for p in all_positroid_pairs(k, n) {
            let d = pair_to_le(&p);
            d.validate().unwrap();
            assert_eq!(d.dots.len() + p.u.length(), d.lambda.iter().sum::<usize>());
            assert_eq!(le_to_pair(&d).unwrap(), p);
            assert_eq!(LeDiagram::from_ascii(&d.to_ascii(), n).unwrap(), d);
            assert!(seen.insert(d));
        }
    }
}

#[test]
fn every_le_filling_is_hit() {
    // valid Le fillings of each λ are exactly the images of pair_to_le
    for (k, n) in [(2, 4), (2, 5), (3, 5)] {
        let images: std::collections::BTreeSet<_> = all_positroid_pairs(k, n).iter().map(pair_to_le).collect();
        let mut count = 0;
        for lam in partitions_in_box(k, n - k) {
            let cells: Vec<(usize, usize)> =
                (1..=lam.len()).flat_map(|r| (1..=lam[r - 1]).map(move |c| (r, c))).collect();
            for mask in 0u32..(1 << cells.len()) {
                let dots = cells.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c).collect();
                let d = LeDiagram { k, n, lambda: lam.clone(), dots };
                if d.validate().is_ok() {
                    assert!(images.contains(&d), "{}", d.to_ascii());
                    count += 1;
                }
            }
        }
        assert_eq!(count, images.len());
    }
}

#[test]
fn le_diagram_with_empty_rows() {
    for (k, n) in SIZES {
        for p in all_positroid_pairs(k, n) {
            let d = pair_to_le(&p);
            let f = pair_to_affine(&p);
            match d.inductive_case() {
                LeCase::EmptyColumn(_) => assert!(f.fixed_points() > 0),
                LeCase::EmptyRow(_) => assert!((1..=n as i64).any(|i| f.at(i) == i + n as i64)),
                LeCase::TopAdjustedLastColumn => assert!(d.last_column_top_adjusted(), "{}", d.to_ascii()),
                LeCase::Empty => {}
            }
        }
    }
}
