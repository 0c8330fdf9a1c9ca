//! Plain-text renderings of the JSON documents.

use acm_core::classifier::ClassificationEntry;
use acm_core::enumerate::KindCatalog;
use acm_core::pairs::KindSignature;
use acm_core::picard::{DivisorClass, WatanabeCase};

use crate::{LowOut, ResOut};

fn grid(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(headers.to_vec())];
    out.extend(rows.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

pub fn matrix(entries: &[Vec<i64>]) -> String {
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let w = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    rows.iter()
        .map(|r| r.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn signature(s: &KindSignature) -> String {
    let cells: Vec<String> = s
        .cells
        .iter()
        .map(|r| r.iter().map(|c| format!("{c:>3}")).collect::<Vec<_>>().join(" "))
        .collect();
    format!("degree {}\n{}", s.degree, cells.join("\n"))
}

pub fn catalog(cat: &KindCatalog) -> String {
    let rows: Vec<Vec<String>> = cat
        .kinds
        .iter()
        .map(|k| vec![k.signature.to_string(), k.representative.to_string(), k.count.to_string()])
        .collect();
    format!(
        "degree {} b_cap {} kinds {}\n{}",
        cat.degree,
        cat.b_cap,
        cat.kinds.len(),
        grid(&["SIGNATURE", "REPRESENTATIVE", "COUNT"], &rows)
    )
}

pub fn res(r: &ResOut) -> String {
    format!(
        "gens    {}\nsyz     {}\ndegree  {}\ngenus   {}",
        join(&r.gens),
        join(&r.syz),
        r.degree,
        r.genus
    )
}

pub fn classes(cs: &[DivisorClass]) -> String {
    let rows: Vec<Vec<String>> = cs.iter().map(|c| vec![c.a.to_string(), c.b.to_string()]).collect();
    grid(&["A", "B"], &rows)
}

pub fn watanabe(cases: &[WatanabeCase]) -> String {
    let rows: Vec<Vec<String>> = cases
        .iter()
        .map(|c| {
            vec![
                c.label.clone(),
                c.self_int.to_string(),
                c.dh_min.to_string(),
                c.dh_max.to_string(),
                join(&c.classes),
                c.side_condition.clone().unwrap_or_default(),
            ]
        })
        .collect();
    grid(&["LABEL", "SELF_INT", "DH_MIN", "DH_MAX", "CLASSES", "SIDE_CONDITION"], &rows)
}

pub fn entries(es: &[ClassificationEntry]) -> String {
    let rows: Vec<Vec<String>> = es
        .iter()
        .map(|e| {
            let table = e
                .resolution
                .table()
                .map(|t| t.to_string())
                .unwrap_or_else(|err| err.to_string());
            vec![
                e.citation.clone(),
                e.provenance.to_string(),
                e.class.to_string(),
                e.k.map(|k| k.to_string()).unwrap_or_default(),
                e.invariants.degree.to_string(),
                e.invariants.genus.to_string(),
                e.closed_form.clone().unwrap_or_default(),
                table,
                e.description.clone(),
            ]
        })
        .collect();
    grid(
        &["CITATION", "PROVENANCE", "CLASS", "K", "DEGREE", "GENUS", "CLOSED_FORM", "RESOLUTION", "DESCRIPTION"],
        &rows,
    )
}

pub fn low(out: &[LowOut]) -> String {
    out.iter()
        .map(|o| {
            let f = o.family;
            let mut head = format!("# {} {} (surface degree {}, k >= {})", f.key, f.description, f.surface_degree, f.k_min);
            if let Some(n) = &f.note {
                head.push_str(&format!("\nnote: {n}"));
            }
            let rows: Vec<Vec<String>> = o
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(","),
                        r.k.to_string(),
                        r.pair.to_string(),
                        join(r.table.gens()),
                        join(r.table.syz()),
                        join(&r.expected_gens),
                        join(&r.expected_syz),
                        r.invariants.degree.to_string(),
                        r.invariants.genus.to_string(),
                        if r.matches { "PASS" } else { "FAIL" }.to_string(),
                    ]
                })
                .collect();
            format!(
                "{head}\n{}",
                grid(&["PARAMS", "K", "PAIR", "GENS", "SYZ", "EXPECTED_GENS", "EXPECTED_SYZ", "DEGREE", "GENUS", "STATUS"], &rows)
            )
        })
        .collect::<Vec<_>>()
        .join("\n\n")
}
