use proptest::prelude::*;
use rankloc::codes::{CodeParams, LocalRankCode, RankCode};
use rankloc::crisscross::{crisscross_weight, ErasurePattern};
use rankloc::formats::{self, CodeSpec};
use rankloc::gf::{BaseField, Field, FieldSpec};
use rankloc::matrix::Matrix;
use rankloc::subspace::{lift, Subspace};

fn brute_cover(m: &Matrix) -> usize {
    let (r, c) = m.shape();
    let mut best = r + c;
    for rows in 0u32..1 << r {
        for cols in 0u32..1 << c {
            let covered = (0..r).all(|i| (0..c).all(|j| m.get(i, j) == 0 || rows >> i & 1 == 1 || cols >> j & 1 == 1));
            if covered {
                best = best.min((rows.count_ones() + cols.count_ones()) as usize);
            }
        }
    }
    best
}

fn binary_matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(0u8..2, r * c).prop_map(move |d| Matrix::from_vec(r, c, d).unwrap())
    })
}

fn matrix_over(q: u8, rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..q, rows * cols).prop_map(move |d| Matrix::from_vec(rows, cols, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn crisscross_weight_is_min_cover(m in binary_matrix(6)) {
        let (w, cover) = crisscross_weight(&m);
        prop_assert_eq!(w, brute_cover(&m));
        prop_assert!(cover.covers(&m));
        prop_assert_eq!(cover.size(), w);
    }

    #[test]
    fn rank_bounded_by_weight(m in binary_matrix(6)) {
        let gf = BaseField::new(2).unwrap();
        prop_assert!(m.rank(&gf) <= crisscross_weight(&m).0);
    }

    #[test]
    fn lifting_doubles_rank_distance(x in matrix_over(3, 3, 4), y in matrix_over(3, 3, 4)) {
        let gf = BaseField::new(3).unwrap();
        let d = lift(&x).distance(&lift(&y), &gf).unwrap();
        prop_assert_eq!(d, 2 * x.sub(&y, &gf).unwrap().rank(&gf));
    }

    #[test]
    fn subspace_text_round_trip(x in matrix_over(2, 5, 3)) {
        let gf = BaseField::new(2).unwrap();
        let s = Subspace::span(&x, &gf);
        let text = formats::format_subspace(&s, 2, None);
        prop_assert_eq!(formats::parse_subspace(&text, 2, &gf).unwrap(), s);
    }

    #[test]
    fn encoding_is_linear(a in prop::collection::vec(0u128..1 << 12, 4), b in prop::collection::vec(0u128..1 << 12, 4)) {
        let code = LocalRankCode::with_defaults(CodeParams::new(2, 12, 12, 4, 2, 2).unwrap()).unwrap();
        let f = code.field();
        let ma: Vec<_> = a.iter().map(|&i| f.from_index(i)).collect();
        let mb: Vec<_> = b.iter().map(|&i| f.from_index(i)).collect();
        let sum: Vec<_> = ma.iter().zip(&mb).map(|(&x, &y)| f.add(x, y)).collect();
        let (ca, cb, cs) = (code.encode(&ma).unwrap(), code.encode(&mb).unwrap(), code.encode(&sum).unwrap());
        for i in 0..12 {
            prop_assert_eq!(cs[i], f.add(ca[i], cb[i]));
        }
    }

    #[test]
    fn codeword_file_round_trip(msg in prop::collection::vec(0u128..1 << 6, 2)) {
        let spec = CodeSpec::parse("q=2\nm=6\nn=6\nk=2\nr=1\ndelta=2\n").unwrap();
        let code = spec.build().unwrap();
        let f = code.field();
        let msg: Vec<_> = msg.iter().map(|&i| f.from_index(i)).collect();
        let cw = code.encode(&msg).unwrap();
        let text = formats::format_codeword(f, &spec.fingerprint(), &cw);
        prop_assert_eq!(formats::parse_codeword_elements(&text, f, 6).unwrap(), cw.clone());
        let (mat, erased) = formats::parse_array_file(&text, f, 6).unwrap();
        prop_assert!(erased.is_empty());
        prop_assert_eq!(mat, code.encode_matrix(&msg).unwrap());
    }

    #[test]
    fn pattern_text_round_trip(cells in prop::collection::btree_set((0usize..5, 0usize..7), 0..12)) {
        let e = ErasurePattern::from_cells(5, 7, cells.iter().copied());
        let text = formats::format_pattern(&e, &[]);
        let (back, errs) = formats::parse_pattern(&text, 5, 7).unwrap();
        prop_assert_eq!(back, e);
        prop_assert!(errs.is_empty());
    }

    #[test]
    fn element_text_round_trip(i in 0u128..81) {
        let f = Field::new(&FieldSpec::default_for(3, 4).unwrap()).unwrap();
        let a = f.from_index(i);
        prop_assert_eq!(f.parse_element(&f.format(a)).unwrap(), a);
    }
}

#[test]
fn spec_fingerprint_ignores_comments_and_order() {
    let a = CodeSpec::parse("q=2\nm=6\nn=6\nk=2\nr=1\ndelta=2\n").unwrap();
    let b = CodeSpec::parse("# tiny\ndelta=2\nr=1\nk=2\nn=6\nm=6\nq=2\n").unwrap();
    assert_eq!(a.fingerprint(), b.fingerprint());
    assert_eq!(a.fingerprint().len(), 16);
    let c = CodeSpec::parse("q=2\nm=6\nn=6\nk=2\nr=2\ndelta=1\n").unwrap();
    assert_ne!(a.fingerprint(), c.fingerprint());
}

#[test]
fn spec_errors_name_the_line() {
    let e = CodeSpec::parse("q=2\nm=6\nbogus\n").unwrap_err().to_string();
    assert!(e.contains("line 3"), "{e}");
}
