use std::io::Write;

use psisum::enumeration::{Catalog, SpectrumEntry};
use psisum::group::{Group, GroupSpec, OrderProfile};
use psisum::theorems::VerificationReport;
use serde::Serialize;

use crate::{CliError, Format};

/// Version of every JSON document this tool prints.
const SCHEMA: u32 = 1;

#[derive(Serialize)]
struct PsiDoc<'a> {
    schema: u32,
    spec: String,
    order: usize,
    psi: u128,
    cyclic: bool,
    abelian: bool,
    order_profile: &'a OrderProfile,
}

#[derive(Serialize)]
struct SpectrumDoc<'a> {
    schema: u32,
    order: usize,
    spectrum: &'a [SpectrumEntry],
}

#[derive(Serialize)]
struct CatalogDoc<'a> {
    schema: u32,
    #[serde(flatten)]
    catalog: &'a Catalog,
}

#[derive(Serialize)]
struct ReportsDoc<'a> {
    schema: u32,
    passed: bool,
    reports: &'a [VerificationReport],
}

fn json(out: &mut dyn Write, doc: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}

fn csv_rows(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for row in rows {
        writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn profile_text(profile: &OrderProfile) -> String {
    profile.iter().map(|(order, count)| format!("{order}:{count}")).collect::<Vec<_>>().join(" ")
}

pub fn psi(out: &mut dyn Write, format: Format, spec: &GroupSpec, group: &Group) -> Result<(), CliError> {
    let profile = group.order_profile();
    match format {
        Format::Table => {
            writeln!(out, "{}", group.psi())?;
            Ok(())
        }
        Format::Json => json(
            out,
            &PsiDoc {
                schema: SCHEMA,
                spec: spec.to_string(),
                order: group.order(),
                psi: group.psi(),
                cyclic: group.is_cyclic(),
                abelian: group.is_abelian(),
                order_profile: &profile,
            },
        ),
        Format::Csv => {
            let row =
                vec![spec.to_string(), group.order().to_string(), group.psi().to_string(), profile_text(&profile)];
            csv_rows(out, &["spec", "order", "psi", "order_profile"], &[row])
        }
    }
}

pub fn spectrum(out: &mut dyn Write, format: Format, catalog: &Catalog) -> Result<(), CliError> {
    let entries = catalog.spectrum();
    if format == Format::Json {
        return json(out, &SpectrumDoc { schema: SCHEMA, order: catalog.order, spectrum: &entries });
    }
    let rows: Vec<Vec<String>> =
        entries.iter().map(|e| vec![e.psi.to_string(), e.count.to_string(), e.witnesses.join(";")]).collect();
    let header = ["psi", "count", "groups"];
    if format == Format::Csv {
        csv_rows(out, &header, &rows)
    } else {
        table(out, &header, &rows)
    }
}

pub fn catalog(out: &mut dyn Write, format: Format, catalog: &Catalog) -> Result<(), CliError> {
    if format == Format::Json {
        return json(out, &CatalogDoc { schema: SCHEMA, catalog });
    }
    let rows: Vec<Vec<String>> = catalog
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            vec![i.to_string(), c.name.clone(), c.psi.to_string(), c.cyclic.to_string(), profile_text(&c.order_profile)]
        })
        .collect();
    let header = ["index", "name", "psi", "cyclic", "order_profile"];
    if format == Format::Csv {
        csv_rows(out, &header, &rows)
    } else {
        table(out, &header, &rows)
    }
}

pub fn reports(out: &mut dyn Write, format: Format, reports: &[VerificationReport]) -> Result<(), CliError> {
    let passed = reports.iter().all(VerificationReport::passed);
    match format {
        Format::Json => json(out, &ReportsDoc { schema: SCHEMA, passed, reports }),
        Format::Csv => {
            let opt = |r: &Option<psisum::arith::Rational>| r.as_ref().map(ToString::to_string).unwrap_or_default();
            let rows: Vec<Vec<String>> = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| {
                        vec![
                            r.claim_id.to_string(),
                            c.params_string(),
                            opt(&c.lhs),
                            opt(&c.rhs),
                            c.verdict.to_string(),
                            c.witness.clone().unwrap_or_default(),
                        ]
                    })
                })
                .collect();
            csv_rows(out, &["claim_id", "params", "lhs", "rhs", "verdict", "witness"], &rows)
        }
        Format::Table => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    let scope: Vec<String> = r.scope.iter().map(ToString::to_string).collect();
                    vec![
                        r.claim_id.to_string(),
                        if r.passed() { "pass" } else { "FAIL" }.to_string(),
                        r.verdict.to_string(),
                        r.checks.len().to_string(),
                        r.failures().count().to_string(),
                        scope.join(","),
                        r.params_string(),
                    ]
                })
                .collect();
            table(out, &["claim", "result", "verdict", "checks", "failed", "scope", "params"], &rows)?;
            for r in reports {
                if !r.witnesses.is_empty() {
                    writeln!(out, "{} witnesses: {}", r.claim_id, r.witnesses.join(", "))?;
                }
                for c in r.failures() {
                    let lhs = c.lhs.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
                    let rhs = c.rhs.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
                    writeln!(
                        out,
                        "{} failed: {} [{}]: {lhs} {} {rhs} is {}",
                        r.claim_id,
                        c.label,
                        c.params_string(),
                        c.relation.symbol(),
                        c.verdict
                    )?;
                }
            }
            Ok(())
        }
    }
}
