use combhom::nerves::{category_catalog, groupoid_catalog, nerve, symmetric_nerve, FiniteCategory, FiniteGroupoid};

/// Composable strings of `n` arrows, counted by extending strings one arrow at a time.
fn chains(c: &FiniteCategory, n: usize) -> usize {
    if n == 0 {
        return c.objects();
    }
    let mut ends: Vec<usize> = (0..c.num_arrows()).map(|a| c.dst(a)).collect();
    for _ in 1..n {
        ends = ends
            .into_iter()
            .flat_map(|y| (0..c.num_arrows()).filter(move |&a| c.src(a) == y))
            .map(|a| c.dst(a))
            .collect();
    }
    ends.len()
}

#[test]
fn nerve_counts_composable_strings() {
    for (name, c) in category_catalog() {
        for n in 0..=3 {
            let list = nerve(&c, n);
            assert_eq!(list.len(), chains(&c, n), "{name}, dimension {n}");
            assert!(list.check_cocycles(&c), "{name}, dimension {n}");
        }
    }
}

/// Every `(n+1) x (n+1)` matrix of arrows, kept when it has identities on the diagonal and
/// `a_ij` then `a_jk` is `a_ik`.
fn brute_force_cocycles(g: &FiniteGroupoid, n: usize) -> usize {
    let c = g.category();
    let m = c.num_arrows();
    let cells = (n + 1) * (n + 1);
    let mut count = 0;
    for code in 0..m.pow(cells as u32) {
        let entry = |i: usize, j: usize| code / m.pow((i * (n + 1) + j) as u32) % m;
        let ok = (0..=n).all(|i| c.is_identity(entry(i, i)))
            && (0..=n).all(|i| {
                (0..=n).all(|j| (0..=n).all(|k| c.then(entry(i, j), entry(j, k)) == Some(entry(i, k))))
            });
        count += usize::from(ok);
    }
    count
}

#[test]
fn symmetric_nerve_counts_cocycle_matrices() {
    for (name, g) in groupoid_catalog() {
        if g.category().num_arrows() > 4 {
            continue;
        }
        for n in 0..=2 {
            let list = symmetric_nerve(&g, n);
            assert_eq!(list.len(), brute_force_cocycles(&g, n), "{name}, dimension {n}");
            assert!(list.check_cocycles(g.category()), "{name}, dimension {n}");
        }
    }
}

#[test]
fn bundled_tables_load() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/tables");
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = serde_json::from_str::<FiniteCategory>(&text);
        if path.file_name().unwrap().to_str().unwrap().starts_with("broken") {
            let err = parsed.unwrap_err().to_string();
            assert!(err.contains("associativity fails"), "{err}");
        } else {
            parsed.unwrap();
        }
    }
}
