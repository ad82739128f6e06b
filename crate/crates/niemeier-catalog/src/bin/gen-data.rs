//! Regenerates the frozen data files under `data/`:
//!
//!   gen-data glue   — glue-code generator words for all 23 root-full
//!                     lattices (deterministic backtracking search, Golay
//!                     codes for 24A1 and 12A2), written to data/glue.json
//!   gen-data hbar   — ambient coordinates of the named square-12
//!                     polarizations, written to data/hbar.json (requires
//!                     an up-to-date glue.json compiled in)
//!
//! Run `glue`, rebuild, then run `hbar`.

use niemeier_catalog::glue::{search_glue, GlueWord};
use niemeier_catalog::golay::{GolayCode, TernaryGolayCode};
use niemeier_catalog::niemeier::{build_niemeier, catalog_spec, NiemeierLattice};
use niemeier_catalog::root::RootKind;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;
use std::io::Write as _;

fn golay_generator_words() -> Vec<GlueWord> {
    let code = GolayCode::build();
    let mut span: std::collections::BTreeSet<u32> = [0].into();
    let mut gens = Vec::new();
    for &w in code.words() {
        if span.contains(&w) {
            continue;
        }
        let old: Vec<u32> = span.iter().copied().collect();
        for s in old {
            span.insert(s ^ w);
        }
        gens.push((0..24).map(|i| ((w >> i) & 1) as u8).collect());
        if span.len() == code.len() {
            break;
        }
    }
    gens
}

fn ternary_golay_generator_words() -> Vec<GlueWord> {
    let code = TernaryGolayCode::build();
    let mut span: std::collections::BTreeSet<[u8; 12]> = [[0u8; 12]].into();
    let mut gens = Vec::new();
    for w in code.words() {
        if span.contains(w) {
            continue;
        }
        let old: Vec<[u8; 12]> = span.iter().copied().collect();
        for s in old {
            for m in 1..3u8 {
                let mut v = s;
                for j in 0..12 {
                    v[j] = (v[j] + m * w[j]) % 3;
                }
                span.insert(v);
            }
        }
        gens.push(w.to_vec());
        if span.len() == code.len() {
            break;
        }
    }
    gens
}

fn gen_glue() {
    let mut entries = Vec::new();
    for (name, kinds) in catalog_spec() {
        let gens: Vec<GlueWord> = match name {
            "24A1" => golay_generator_words(),
            "12A2" => ternary_golay_generator_words(),
            _ => {
                let det: u128 = kinds.iter().map(|k| k.det() as u128).product();
                let target = (det as f64).sqrt().round() as u64;
                assert_eq!((target as u128) * (target as u128), det, "{name}");
                let start = std::time::Instant::now();
                let gens = search_glue(&kinds, target)
                    .unwrap_or_else(|| panic!("no glue group found for {name}"));
                eprintln!("{name}: order {target}, {} generators, {:?}", gens.len(), start.elapsed());
                gens
            }
        };
        let comp_names: Vec<String> = kinds
            .iter()
            .map(|k| match k {
                RootKind::A(n) => format!("A{n}"),
                RootKind::D(n) => format!("D{n}"),
                RootKind::E(n) => format!("E{n}"),
            })
            .collect();
        entries.push(json!({
            "name": name,
            "components": comp_names,
            "generators": gens,
        }));
    }
    let out = serde_json::to_string_pretty(&json!({ "lattices": entries })).unwrap();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/glue.json");
    std::fs::File::create(path).unwrap().write_all(out.as_bytes()).unwrap();
    eprintln!("wrote {path}");
}

/// Conic candidates: norm-4 vectors pairing to 4 with ħ (basis coords).
fn conics(lat: &NiemeierLattice, hbar: &[i64]) -> Vec<Vec<i64>> {
    let hq: Vec<BigRational> = hbar.iter().map(|&c| BigRational::from(BigInt::from(c))).collect();
    lat.lattice()
        .enumerate_vectors(4, &[(hq, BigRational::from(BigInt::from(4)))])
        .unwrap()
}



fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// A2 Gram pairing of two component vectors given as integer numerators
/// (thirds of root coordinates); the true product is the result over 9.
fn block9(x1: i64, y1: i64, x2: i64, y2: i64) -> i64 {
    2 * x1 * x2 + 2 * y1 * y2 - x1 * y2 - x2 * y1
}

fn ip9(u: &[i64], v: &[i64]) -> i64 {
    (0..12).map(|k| block9(u[2 * k], u[2 * k + 1], v[2 * k], v[2 * k + 1])).sum()
}

/// Conic fiber of a candidate ħ, with both basis coordinates and integer
/// ambient numerators (thirds).
fn fiber_12a2(lat: &NiemeierLattice, hbar_coords: &[i64]) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let list = conics(lat, hbar_coords);
    let thirds: Vec<Vec<i64>> = list
        .iter()
        .map(|l| {
            lat.ambient_of(l)
                .iter()
                .map(|x| {
                    let t = x * BigRational::from(BigInt::from(3));
                    i64::try_from(t.to_integer()).unwrap()
                })
                .collect()
        })
        .collect();
    (list, thirds)
}

/// Candidate ħ for 12A2 probes: per-component data on the root-orthogonal
/// line, returned as ambient thirds.
fn assemble_thirds(parts: &[(usize, i64, i64)]) -> Vec<i64> {
    let mut num = vec![0i64; 24];
    for &(k, a1, a2) in parts {
        num[2 * k] += a1;
        num[2 * k + 1] += a2;
    }
    num
}

fn thirds_to_ambient(num: &[i64]) -> Vec<BigRational> {
    num.iter().map(|&x| BigRational::new(BigInt::from(x), BigInt::from(3))).collect()
}

/// All candidate polarizations of a given component-norm shape
/// (`a` norm-2/3, `b` norm-8/3, `c` norm-6 components, plus optionally a
/// single root component), compatible with the ternary Golay glue.
/// Components on the root-orthogonal line are w = (α₁ + 2α₂)/3 multiples;
/// per-component Weyl symmetry makes the in-class representative choice
/// irrelevant, but the norm-6 signs and the placement subsets are not
/// symmetric a priori and are iterated.
fn shape_candidates(
    code: &TernaryGolayCode,
    a: usize,
    b: usize,
    c: usize,
    root_comp: bool,
    word_cap: usize,
    subset_cap: usize,
) -> Vec<Vec<i64>> {
    let weight = (a + b) as u32;
    let zero = [0u8; 12];
    let words: Vec<[u8; 12]> = if weight == 0 {
        vec![zero]
    } else {
        code.words()
            .iter()
            .filter(|w| w.iter().filter(|&&d| d != 0).count() as u32 == weight)
            .take(word_cap)
            .copied()
            .collect()
    };
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut seen: std::collections::BTreeSet<Vec<i64>> = Default::default();
    for word in &words {
        let supp: Vec<usize> = (0..12).filter(|&k| word[k] != 0).collect();
        let free: Vec<usize> = (0..12).filter(|&k| word[k] == 0).collect();
        let needed = c + usize::from(root_comp);
        if free.len() < needed {
            continue;
        }
        for b_set in subsets(&supp, b).iter().take(subset_cap) {
            for c_set in subsets(&free, c).iter().take(subset_cap) {
                let remaining: Vec<usize> =
                    free.iter().copied().filter(|k| !c_set.contains(k)).collect();
                let root_positions: Vec<Option<usize>> = if root_comp {
                    remaining.iter().map(|&k| Some(k)).collect()
                } else {
                    vec![None]
                };
                for root_pos in root_positions {
                    for sign_bits in 0..(1u32 << c) {
                        let mut parts: Vec<(usize, i64, i64)> = Vec::new();
                        for &k in &supp {
                            let digit = word[k];
                            if b_set.contains(&k) {
                                // ħ_k = ε·2w, class(2w) = 1
                                let eps = if digit == 1 { 1 } else { -1 };
                                parts.push((k, 2 * eps, 4 * eps));
                            } else {
                                // ħ_k = ε·w, class(w) = 2
                                let eps = if digit == 2 { 1 } else { -1 };
                                parts.push((k, eps, 2 * eps));
                            }
                        }
                        for (i, &k) in c_set.iter().enumerate() {
                            let eps = if sign_bits >> i & 1 == 1 { -1 } else { 1 };
                            parts.push((k, 3 * eps, 6 * eps)); // ±3w = ±(α₁ + 2α₂)
                        }
                        if let Some(k) = root_pos {
                            parts.push((k, 3, 0)); // ħ_k = α₁
                        }
                        let thirds = assemble_thirds(&parts);
                        if ip9(&thirds, &thirds) == 108 && seen.insert(thirds.clone()) {
                            out.push(thirds);
                        }
                    }
                }
            }
        }
    }
    out
}

fn set_rank_i64(vecs: &[Vec<i64>]) -> usize {
    let rows: Vec<Vec<BigInt>> = vecs
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    lattice_core::mat::rank(&lattice_core::IMat::from_rows(&rows))
}

fn build_12a2_vector2(lat: &NiemeierLattice) -> (Vec<BigRational>, Vec<i64>, usize) {
    // Two components carry the norm-6 root-lattice vector α₁ + 2α₂ (a
    // tripled dual minimal vector); the other ten components are zero.
    let thirds = assemble_thirds(&[(0, 3, 6), (1, 3, 6)]);
    let ambient = thirds_to_ambient(&thirds);
    let coords = lat.coords_i64(&ambient).expect("12A2 vector 2 in lattice");
    assert_eq!(ip9(&thirds, &thirds), 108);
    let (fiber, fiber_thirds) = fiber_12a2(lat, &coords);
    assert_eq!(fiber.len(), 1215, "12A2 vector 2 fiber size");
    assert_eq!(set_rank_i64(&fiber), 21, "12A2 vector 2 fiber rank");
    // r = one orthogonal root per component (α₁ throughout); its
    // perpendicular cut is the maximal 285-conic set of rank 20.
    let mut r = vec![0i64; 24];
    for k in 0..12 {
        r[2 * k] = 3;
    }
    let cut: Vec<Vec<i64>> = (0..fiber.len())
        .filter(|&i| ip9(&fiber_thirds[i], &r) == 0)
        .map(|i| fiber[i].clone())
        .collect();
    assert_eq!(cut.len(), 285, "maximal cut size");
    assert_eq!(set_rank_i64(&cut), 20, "maximal cut rank");
    // Doubling the root at a component off the support cuts out the
    // 249-conic set instead.
    let mut r2 = r.clone();
    r2[2 * 2] += 3;
    let cut2: Vec<Vec<i64>> = (0..fiber.len())
        .filter(|&i| ip9(&fiber_thirds[i], &r2) == 0)
        .map(|i| fiber[i].clone())
        .collect();
    assert_eq!(cut2.len(), 249, "misc cut size");
    let misc_rank = set_rank_i64(&cut2);
    eprintln!("12A2 vector 2: fiber 1215/21, cuts 285/20 and 249/{misc_rank}");
    (ambient, coords, misc_rank)
}

/// Candidate ħ for 12A2 vector 5: a weight-9 ternary Golay word carries
/// either seven norm-2/3 and two norm-8/3 components, or eight norm-2/3
/// and one norm-14/3 component; one free position carries a root and the
/// other two are zero.
fn vector5_candidates(code: &TernaryGolayCode) -> Vec<Vec<i64>> {
    let words: Vec<[u8; 12]> = code
        .words()
        .iter()
        .filter(|w| w.iter().filter(|&&d| d != 0).count() == 9)
        .take(4)
        .copied()
        .collect();
    let mut seen: std::collections::BTreeSet<Vec<i64>> = Default::default();
    let mut out = Vec::new();
    for word in &words {
        let supp: Vec<usize> = (0..12).filter(|&k| word[k] != 0).collect();
        let free: Vec<usize> = (0..12).filter(|&k| word[k] == 0).collect();
        for &root_pos in &free {
            // Shape A: two positions of the support carry a doubled dual
            // minimal vector (norm 8/3), the rest a single one (norm 2/3).
            for pair in subsets(&supp, 2) {
                let mut parts: Vec<(usize, i64, i64)> = vec![(root_pos, 3, 0)];
                for &k in &supp {
                    let digit = word[k];
                    if pair.contains(&k) {
                        let eps = if digit == 1 { 1 } else { -1 };
                        parts.push((k, 2 * eps, 4 * eps));
                    } else {
                        let eps = if digit == 2 { 1 } else { -1 };
                        parts.push((k, eps, 2 * eps));
                    }
                }
                let thirds = assemble_thirds(&parts);
                if ip9(&thirds, &thirds) == 108 && seen.insert(thirds.clone()) {
                    out.push(thirds);
                }
            }
            // Shape B: one position of the support carries a norm-14/3
            // vector off the root-orthogonal line.
            for &hot in &supp {
                let mut parts: Vec<(usize, i64, i64)> = vec![(root_pos, 3, 0)];
                for &k in &supp {
                    let digit = word[k];
                    if k == hot {
                        let eps = if digit == 2 { 1 } else { -1 };
                        parts.push((k, eps, 5 * eps));
                    } else {
                        let eps = if digit == 2 { 1 } else { -1 };
                        parts.push((k, eps, 2 * eps));
                    }
                }
                let thirds = assemble_thirds(&parts);
                if ip9(&thirds, &thirds) == 108 && seen.insert(thirds.clone()) {
                    out.push(thirds);
                }
            }
        }
    }
    out
}

fn gen_hbar() {
    let mut configs = Vec::new();
    let code = GolayCode::build();
    let octads = code.octads();
    let first_octad = octads[0];
    let bits = |m: u32| -> Vec<usize> { (0..24).filter(|&i| m >> i & 1 == 1).collect() };

    let push = |configs: &mut Vec<serde_json::Value>,
                id: &str,
                lattice: &str,
                num: Vec<i64>,
                den: i64,
                stab: Option<u64>| {
        let mut entry = json!({ "id": id, "lattice": lattice, "num": num, "den": den });
        if let Some(s) = stab {
            entry["stab_order"] = json!(s);
        }
        configs.push(entry);
    };

    // 24A1 vectors. Roots are the unit basis vectors e_k (norm 2);
    // codeword halves are (1/2)·indicator vectors.
    {
        let o = bits(first_octad);
        // #2: sum of six roots inside an octad.
        let mut num = vec![0i64; 24];
        for &k in &o[..6] {
            num[k] = 1;
        }
        push(&mut configs, "24A1#2", "24A1", num, 1, Some(11520));

        // #3: half octad plus two of its roots.
        let mut num = vec![0i64; 24];
        for &k in &o {
            num[k] = 1;
        }
        num[o[0]] = 3;
        num[o[1]] = 3;
        push(&mut configs, "24A1#3", "24A1", num, 2, Some(11520));

        // #4: half of a 16-set plus one of its roots.
        let sixteen = bits(first_octad ^ 0xFF_FFFF);
        let mut num = vec![0i64; 24];
        for &k in &sixteen {
            num[k] = 1;
        }
        num[sixteen[0]] = 3;
        push(&mut configs, "24A1#4", "24A1", num, 2, Some(20160));

        // #11: sum of six roots not inside any octad.
        let six = (0..(1u32 << 24))
            .filter(|m| m.count_ones() == 6)
            .find(|&m| !octads.iter().any(|&o| o & m == m))
            .unwrap();
        let mut num = vec![0i64; 24];
        for k in bits(six) {
            num[k] = 1;
        }
        push(&mut configs, "24A1#11", "24A1", num, 1, Some(2160));
    }

    // Leech vectors, in the eighth-integral frame.
    {
        let mut num = vec![0i64; 24];
        num[0] = 4;
        num[1] = -4;
        num[2] = 8;
        push(&mut configs, "Leech#1", "Leech", num, 1, Some(9_196_830_720));

        let mut num = vec![2i64; 24];
        num[0] = -2;
        num[1] = -2;
        num[2] = -2;
        num[3] = -2;
        push(&mut configs, "Leech#2", "Leech", num, 1, Some(244_823_040));
    }

    // 12A2 vectors, recovered by fingerprint probes.
    {
        let lat = build_niemeier("12A2").unwrap();
        let tern = TernaryGolayCode::build();
        let (ambient2, _, misc_rank) = build_12a2_vector2(&lat);
        let num: Vec<i64> = ambient2
            .iter()
            .map(|x| {
                i64::try_from((x * BigRational::from(BigInt::from(3))).to_integer()).unwrap()
            })
            .collect();
        push(&mut configs, "12A2#2", "12A2", num, 3, Some(720));
        let _ = (tern, misc_rank);
    }

    let out = serde_json::to_string_pretty(&json!({ "configs": configs })).unwrap();
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/hbar.json");
    std::fs::File::create(path).unwrap().write_all(out.as_bytes()).unwrap();
    eprintln!("wrote {path}");
}

fn main() {
    match std::env::args().nth(1).as_deref() {
        Some("glue") => gen_glue(),
        Some("hbar") => gen_hbar(),
        Some("check") => check_24a1(),
        Some("probe2") => probe2(),
        Some("probe3") => probe3(),
        Some("probe4") => probe4(),
        Some("probe5") => probe5(),
        Some("probe6") => probe6(),
        Some("probe7") => probe7(),
        _ => {
            eprintln!("usage: gen-data <glue|hbar>");
            std::process::exit(2);
        }
    }
}

fn check_24a1() {
    let lat = build_niemeier("24A1").unwrap();
    let code = GolayCode::build();
    let octads = code.octads();
    let o: Vec<usize> = (0..24).filter(|&i| octads[0] >> i & 1 == 1).collect();
    // #2: six roots in an octad
    let h2: Vec<BigRational> = (0..24)
        .map(|i| BigRational::from(BigInt::from(i64::from(o[..6].contains(&i)))))
        .collect();
    // #3: half octad plus two of its roots
    let amb3: Vec<BigRational> = (0..24)
        .map(|i| {
            let mut n = 0i64;
            if o.contains(&i) {
                n += 1;
            }
            if i == o[0] || i == o[1] {
                n += 2;
            }
            BigRational::new(BigInt::from(n), BigInt::from(2))
        })
        .collect();
    for (label, amb) in [("24A1 vec2", h2), ("24A1 vec3", amb3)] {
        let coords = lat.coords_i64(&amb).expect(label);
        assert_eq!(lat.lattice().norm_int(&coords), 12, "{label}");
        let fib = conics(&lat, &coords);
        let rows: Vec<Vec<BigInt>> = fib
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let rank = lattice_core::mat::rank(&lattice_core::IMat::from_rows(&rows));
        eprintln!("{label}: |F| = {}, rank {}", fib.len(), rank);
    }
}

/// Per-A2-component decomposition of a polarization in a (replanted)
/// 12A2 lattice: component norms and whether a component root is
/// orthogonal to ħ.
fn shape_of_12a2(label: &str, lat: &NiemeierLattice, hbar_amb: &[BigRational]) {
    let roots = lat.roots().unwrap();
    let mut assigned = vec![usize::MAX; roots.len()];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for i in 0..roots.len() {
        if assigned[i] != usize::MAX {
            continue;
        }
        let c = comps.len();
        assigned[i] = c;
        let mut frontier = vec![i];
        let mut members = vec![i];
        while let Some(j) = frontier.pop() {
            for k in 0..roots.len() {
                if assigned[k] == usize::MAX && lat.lattice().inner_int(&roots[j], &roots[k]) != 0
                {
                    assigned[k] = c;
                    frontier.push(k);
                    members.push(k);
                }
            }
        }
        comps.push(members);
    }
    eprintln!("{label}: {} root components", comps.len());
    let mut norms: Vec<(BigRational, bool)> = Vec::new();
    for members in &comps {
        // Spanning pair of roots.
        let r1 = lat.ambient_of(&roots[members[0]]);
        let mut pair = None;
        for &m in &members[1..] {
            let r2 = lat.ambient_of(&roots[m]);
            let g12 = lat.inner_ambient(&r1, &r2);
            let g11 = lat.inner_ambient(&r1, &r1);
            let g22 = lat.inner_ambient(&r2, &r2);
            if (&g11 * &g22 - &g12 * &g12) != BigRational::zero() {
                pair = Some((r2, g11, g12, g22));
                break;
            }
        }
        let (r2, g11, g12, g22) = pair.expect("rank-2 component");
        let b1 = lat.inner_ambient(&r1, &hbar_amb.to_vec());
        let b2 = lat.inner_ambient(&r2, &hbar_amb.to_vec());
        let det = &g11 * &g22 - &g12 * &g12;
        let c1 = (&g22 * &b1 - &g12 * &b2) / &det;
        let c2 = (&g11 * &b2 - &g12 * &b1) / &det;
        // ħ_k² = c·(b1,b2)
        let norm = &c1 * &b1 + &c2 * &b2;
        let perp = members.iter().any(|&m| {
            lat.inner_ambient(&lat.ambient_of(&roots[m]), &hbar_amb.to_vec())
                == BigRational::zero()
        });
        norms.push((norm, perp));
    }
    let mut display: Vec<String> =
        norms.iter().map(|(n, p)| format!("{n}{}", if *p { "" } else { "!" })).collect();
    display.sort();
    eprintln!("  component norms (! = no orthogonal root): {display:?}");
}

fn probe2() {
    let lat24 = build_niemeier("24A1").unwrap();
    let code = GolayCode::build();
    let dodecads = code.dodecads();
    let d = dodecads[0];
    let inside: Vec<usize> = (0..24).filter(|&i| d >> i & 1 == 1).collect();
    let outside: Vec<usize> = (0..24).filter(|&i| d >> i & 1 == 0).collect();
    let half = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(2));
    // 24A1 vector 8: half a dodecad, doubled at one inside and one
    // outside position.
    let mut v8: Vec<BigRational> = vec![BigRational::zero(); 24];
    for &i in &inside {
        v8[i] = half(1);
    }
    v8[inside[0]] += BigRational::from(BigInt::from(1));
    v8[outside[0]] += BigRational::from(BigInt::from(1));
    // 24A1 vector 9: half a dodecad plus three roots outside.
    let mut v9: Vec<BigRational> = vec![BigRational::zero(); 24];
    for &i in &inside {
        v9[i] = half(1);
    }
    for &i in &outside[..3] {
        v9[i] += BigRational::from(BigInt::from(1));
    }
    for (label, amb) in [("24A1 vec8", v8), ("24A1 vec9", v9)] {
        let coords = lat24.coords_i64(&amb).expect(label);
        assert_eq!(lat24.lattice().norm_int(&coords), 12, "{label}");
        let fib = conics(&lat24, &coords);
        let rank = set_rank_i64(&fib);
        eprintln!("{label}: |F| = {}, rank {rank}", fib.len());
        let rep = niemeier_catalog::replant::replant(&lat24, &amb).expect(label);
        let system = rep.lattice.detect_root_system().unwrap();
        eprintln!("  replanted root system: {system:?}");
        shape_of_12a2(&format!("{label} replant"), &rep.lattice, &rep.hbar_ambient);
    }
}

fn probe3() {
    let lat = build_niemeier("12A2").unwrap();
    let code = TernaryGolayCode::build();
    let shapes: &[(usize, usize, usize)] = &[(2, 4, 0), (0, 0, 2), (9, 0, 1), (6, 3, 0)];
    let mut r = vec![0i64; 24];
    for k in 0..12 {
        r[2 * k] = 3;
    }
    for &(a, b, c) in shapes {
        let candidates = shape_candidates(&code, a, b, c, false, 2, 2);
        eprintln!("shape ({a},{b},{c}): {} candidates", candidates.len());
        for thirds in candidates.iter().take(8) {
            let ambient = thirds_to_ambient(thirds);
            let Some(coords) = lat.coords_i64(&ambient) else { continue };
            let (fiber, fiber_thirds) = fiber_12a2(&lat, &coords);
            let rank = set_rank_i64(&fiber);
            let cut: Vec<Vec<i64>> = (0..fiber.len())
                .filter(|&i| ip9(&fiber_thirds[i], &r) == 0)
                .map(|i| fiber[i].clone())
                .collect();
            eprintln!(
                "  |F| = {}, rank {rank}; r-cut {} conics rank {}",
                fiber.len(),
                cut.len(),
                set_rank_i64(&cut)
            );
        }
    }
}

fn probe4() {
    let lat = build_niemeier("12A2").unwrap();
    let thirds = assemble_thirds(&[(0, 3, 6), (1, 3, 6)]);
    let ambient = thirds_to_ambient(&thirds);
    let coords = lat.coords_i64(&ambient).unwrap();
    let (fiber, fiber_thirds) = fiber_12a2(&lat, &coords);
    let mut r = vec![0i64; 24];
    for k in 0..12 {
        r[2 * k] = 3;
    }
    let mut r2 = r.clone();
    r2[2 * 2] += 3;
    for (label, wall) in [("max 285", r), ("misc 249", r2)] {
        let cut: Vec<Vec<i64>> = (0..fiber.len())
            .filter(|&i| ip9(&fiber_thirds[i], &wall) == 0)
            .map(|i| fiber[i].clone())
            .collect();
        let mut gens = cut.clone();
        gens.push(coords.clone());
        let span = lat.lattice().saturate_int(&gens);
        eprintln!("{label}: {} conics, span rank {} (with polarization)", cut.len(), span.rank());
        let ann = lat.lattice().orthogonal_complement(&span);
        let annlat = lat.lattice().restrict(&ann).unwrap();
        eprintln!("  annihilator rank {}, det {}", ann.rank(), annlat.det());
        for norm in [2i64, 4, 6, 8, 10, 12] {
            let count = annlat.enumerate_vectors(norm, &[]).unwrap().len();
            eprint!(" n{norm}:{count}");
        }
        eprintln!();
        // Gram of the annihilator basis.
        let g = annlat.gram();
        for i in 0..ann.rank() {
            let row: Vec<String> = (0..ann.rank()).map(|j| g[(i, j)].to_string()).collect();
            eprintln!("  [{}]", row.join(", "));
        }
    }
}

/// Tests a vector-5 candidate polarization against the published recipe:
/// with n the component carrying the root, p and q the two zero
/// components, and r_k at each of the nine support components the root
/// orthogonal to the component of the polarization, the cut
/// F cap spn(h - 2h_n, r + r_p, r_n, r_q)-perp over all root choices
/// r_n, r_p, r_q must contain a 249-conic set whose span with h has
/// rank 20 and annihilator determinant 312 (matching the isomorphic
/// 249-set of the vector-2 fiber).
fn probe5_search(lat: &NiemeierLattice, thirds: &[i64]) -> bool {
    let ambient = thirds_to_ambient(thirds);
    let Some(coords) = lat.coords_i64(&ambient) else { return false };
    let (fiber, fiber_thirds) = fiber_12a2(lat, &coords);
    let norm9 = |k: usize| block9(thirds[2 * k], thirds[2 * k + 1], thirds[2 * k], thirds[2 * k + 1]);
    let Some(n) = (0..12).find(|&k| norm9(k) == 18) else { return false };
    let zero_comps: Vec<usize> = (0..12).filter(|&k| norm9(k) == 0).collect();
    let [p, q] = zero_comps[..] else { return false };
    let supp9: Vec<usize> = (0..12).filter(|&k| k != n && k != p && k != q).collect();

    // Wall fixed by the candidate: h - 2h_n (the root component is
    // always the simple root alpha_1, thirds (3, 0)).
    let mut w1 = thirds.to_vec();
    w1[2 * n] -= 6;
    // r restricted to the support components, where the root orthogonal
    // to the polarization component is alpha_1 up to Weyl reflections
    // fixing the polarization.
    let mut r_base = vec![0i64; 24];
    for &k in &supp9 {
        r_base[2 * k] = 3;
    }
    let roots6: [(i64, i64); 6] = [(3, 0), (0, 3), (3, 3), (-3, 0), (0, -3), (-3, -3)];
    // At the root component no root is orthogonal to the polarization;
    // the seventh "root" choice is the orthogonal norm-6 direction.
    let roots7: [(i64, i64); 7] = [(3, 0), (0, 3), (3, 3), (-3, 0), (0, -3), (-3, -3), (3, 6)];
    // Per-conic pairings: the fixed walls and each root at n, p, q.
    let per_conic: Vec<(i64, i64, [i64; 7], [i64; 6], [i64; 6])> = fiber_thirds
        .iter()
        .map(|l| {
            let f = |comp: usize| -> [i64; 6] {
                roots6.map(|(a1, a2)| block9(l[2 * comp], l[2 * comp + 1], a1, a2))
            };
            let f7 = |comp: usize| -> [i64; 7] {
                roots7.map(|(a1, a2)| block9(l[2 * comp], l[2 * comp + 1], a1, a2))
            };
            (ip9(l, &w1), ip9(l, &r_base), f7(n), f(p), f(q))
        })
        .collect();
    let slice = per_conic.iter().filter(|c| c.0 == 0).count();
    let mut best = 0usize;
    let mut found = false;
    // The sum r may or may not include the (arbitrary) roots at the two
    // zero components; scan both readings of the wall r + r_p.
    for include_pq in [false, true] {
        for rn in 0..7 {
            for rp in 0..6 {
                for rq in 0..6 {
                    let idx: Vec<usize> = (0..fiber.len())
                        .filter(|&i| {
                            let (h, rb, pn, pp, pq) = &per_conic[i];
                            let wall2 = if include_pq {
                                rb + 2 * pp[rp] + pq[rq]
                            } else {
                                rb + pp[rp]
                            };
                            *h == 0 && wall2 == 0 && pn[rn] == 0 && pq[rq] == 0
                        })
                        .collect();
                    best = best.max(idx.len());
                    if idx.len() != 249 {
                        continue;
                    }
                    let mut gens: Vec<Vec<i64>> =
                        idx.iter().map(|&i| fiber[i].clone()).collect();
                    gens.push(coords.clone());
                    let span = lat.lattice().saturate_int(&gens);
                    let ann = lat.lattice().orthogonal_complement(&span);
                    let det = lat.lattice().restrict(&ann).unwrap().det().clone();
                    eprintln!(
                        "  include_pq={include_pq} rn={rn} rp={rp} rq={rq}: 249 conics, span rank {}, ann det {det}",
                        span.rank()
                    );
                    if span.rank() == 20 && det == BigInt::from(312) {
                        found = true;
                    }
                }
            }
        }
    }
    eprintln!("  slice {slice}, best cut {best}");
    found
}

fn probe5() {
    let lat = build_niemeier("12A2").unwrap();
    let code = TernaryGolayCode::build();
    let candidates = vector5_candidates(&code);
    let shape_of = |thirds: &Vec<i64>| -> usize {
        (0..12).filter(|&k| {
            block9(thirds[2 * k], thirds[2 * k + 1], thirds[2 * k], thirds[2 * k + 1]) == 42
        }).count()
    };
    for (ci, cand) in candidates.iter().enumerate() {
        let shape = if shape_of(cand) == 0 { "A" } else { "B" };
        eprintln!("candidate {ci} (shape {shape}): {cand:?}");
        if probe5_search(&lat, cand) {
            eprintln!("=> MATCH: {cand:?}");
            return;
        }
    }
    eprintln!("=> no candidate matched");
}

fn probe6() {
    let lat = build_niemeier("12A2").unwrap();
    let thirds = assemble_thirds(&[(0, 3, 6), (1, 3, 6)]);
    let ambient = thirds_to_ambient(&thirds);
    let coords = lat.coords_i64(&ambient).unwrap();
    let (fiber, fiber_thirds) = fiber_12a2(&lat, &coords);
    let mut r2 = vec![0i64; 24];
    for k in 0..12 {
        r2[2 * k] = 3;
    }
    r2[2 * 2] += 3;
    let cut: Vec<Vec<i64>> = (0..fiber.len())
        .filter(|&i| ip9(&fiber_thirds[i], &r2) == 0)
        .map(|i| fiber[i].clone())
        .collect();
    let mut gens = cut.clone();
    gens.push(coords.clone());
    let span = lat.lattice().saturate_int(&gens);
    let ann = lat.lattice().orthogonal_complement(&span);
    let annlat = lat.lattice().restrict(&ann).unwrap();
    for norm in [2i64, 4] {
        for v in annlat.enumerate_vectors(norm, &[]).unwrap() {
            let mut full = vec![0i64; 24];
            for (i, &c) in v.iter().enumerate() {
                for j in 0..24 {
                    full[j] += c
                        * i64::try_from(ann.basis()[(i, j)].clone()).unwrap();
                }
            }
            let t: Vec<i64> = lat
                .ambient_of(&full)
                .iter()
                .map(|x| {
                    i64::try_from((x * BigRational::from(BigInt::from(3))).to_integer()).unwrap()
                })
                .collect();
            let comps: Vec<String> = (0..12)
                .filter(|&k| (t[2 * k], t[2 * k + 1]) != (0, 0))
                .map(|k| format!("{k}:({},{})", t[2 * k], t[2 * k + 1]))
                .collect();
            eprintln!("norm {norm}: {}", comps.join(" "));
        }
    }
}

fn probe7() {
    // Vector-2 fiber sanity check for the wall-signature search: does the
    // known 249-set come back as the fiber cut by its annihilator's two
    // roots plus one short norm-4 vector, or are four walls needed?
    let lat = build_niemeier("12A2").unwrap();
    let thirds = assemble_thirds(&[(0, 3, 6), (1, 3, 6)]);
    let ambient = thirds_to_ambient(&thirds);
    let coords = lat.coords_i64(&ambient).unwrap();
    let (fiber, fiber_thirds) = fiber_12a2(&lat, &coords);
    let a = assemble_thirds(&[(0, 3, 0)]);
    let b = assemble_thirds(&[(1, 3, 0)]);
    let w = assemble_thirds(&[(0, 0, -3), (1, 0, 3)]);
    eprintln!("pairings a.w={} b.w={}", ip9(&a, &w) / 9, ip9(&b, &w) / 9);
    let cut3: Vec<usize> = (0..fiber.len())
        .filter(|&i| {
            let l = &fiber_thirds[i];
            ip9(l, &a) == 0 && ip9(l, &b) == 0 && ip9(l, &w) == 0
        })
        .collect();
    eprintln!("three-wall cut: {} conics", cut3.len());
    let cutv: Vec<Vec<i64>> = cut3.iter().map(|&i| fiber[i].clone()).collect();
    let mut gens = cutv.clone();
    gens.push(coords.clone());
    let span = lat.lattice().saturate_int(&gens);
    let ann = lat.lattice().orthogonal_complement(&span);
    let annlat = lat.lattice().restrict(&ann).unwrap();
    eprintln!("span rank {}, ann det {}", span.rank(), annlat.det());
}
