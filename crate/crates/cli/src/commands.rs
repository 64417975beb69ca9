//! Implementations of the report-producing subcommands.

use std::collections::BTreeMap;

use latpoly_core::census::{
    chi_series_from, enumerate, growth_pc_estimate, one_point_series, tn_table, two_point_map,
    CensusRequest, Point, PolymerCensus,
};
use latpoly_core::continuum::constants_report;
use latpoly_core::critical::{gh_decompose, hath_ub, pc_ratio_estimate, solve_p1, triangle_lb};
use latpoly_core::kernel::{Norm, StepKernel};
use latpoly_core::numeric::to_f64;
use latpoly_core::series::PowerSeries;
use latpoly_core::{Error, PolymerModel};

use crate::census_io;
use crate::report::{cell_exact, cell_sig, Report, Scalar, Table};

pub fn cmd_kernel(
    d: u32,
    range: u32,
    nmax: usize,
    norm: Norm,
    digits: usize,
) -> Result<Report, Error> {
    let kernel = StepKernel::new(d, range, norm)?;
    let table = kernel.conv_table(nmax)?;
    let mut report = Report::new("kernel");
    report
        .scalar("d", Scalar::UInt(d as u64))
        .scalar("L", Scalar::UInt(range as u64))
        .scalar("norm", Scalar::Text(census_io::norm_token(norm).into()))
        .scalar("lambda_size", Scalar::UInt(kernel.lambda_size()))
        .scalar("beta", Scalar::Float(kernel.beta()))
        .scalar("n_max", Scalar::UInt(nmax as u64));
    match table.tail_bound() {
        Some(tail) => {
            report
                .scalar("tail_bound", Scalar::Float(tail.bound))
                .scalar("tail_ratio", Scalar::Float(tail.ratio));
            for t in [2usize, 3] {
                let s = table.s_geq(t)?;
                report.scalar(
                    if t == 2 { "s_geq_2" } else { "s_geq_3" },
                    Scalar::exact(&s.prefix),
                );
            }
        }
        None => {
            report.scalar(
                "tail_bound",
                Scalar::Text("unavailable (d <= 2 or table too short)".into()),
            );
        }
    }
    let mut rows = Vec::new();
    for n in 0..=table.n_max() {
        let v = table.value(n);
        rows.push(vec![
            n.to_string(),
            cell_exact(v),
            cell_sig(to_f64(v), digits),
        ]);
    }
    report.table(Table {
        name: "dstar_origin",
        columns: vec!["n", "exact", "decimal"],
        rows,
    });
    Ok(report)
}

pub fn cmd_constants(
    d: u32,
    nmax: usize,
    l_values: &[u32],
    digits: usize,
) -> Result<Report, Error> {
    let rep = constants_report(d, nmax, l_values)?;
    let mut report = Report::new("constants");
    report
        .scalar("d", Scalar::UInt(d as u64))
        .scalar("n_max", Scalar::UInt(nmax as u64))
        .scalar("c_lt", Scalar::Float(rep.c_lt.value))
        .scalar("c_lt_tail_error", Scalar::Float(rep.c_lt.tail_error))
        .scalar("c_la", Scalar::Float(rep.animal.c_la))
        .scalar("c_la_tail_error", Scalar::Float(rep.animal.tail_error))
        .scalar(
            "c_la_correction",
            Scalar::Float(rep.animal.correction.value),
        )
        .scalar("proven_dimension", Scalar::Bool(d > 8));
    let mut rows = Vec::new();
    for (n, exact) in &rep.u_table {
        rows.push(vec![
            n.to_string(),
            cell_exact(exact),
            cell_sig(to_f64(exact), digits),
        ]);
    }
    report.table(Table {
        name: "ustar_origin",
        columns: vec!["n", "exact", "decimal"],
        rows,
    });
    if !rep.pc_predictions.is_empty() {
        let mut rows = Vec::new();
        for p in &rep.pc_predictions {
            rows.push(vec![
                p.range.to_string(),
                census_io::model_token(p.model).to_string(),
                cell_sig(p.value, digits),
                cell_sig(p.correction_term, digits),
                cell_sig(p.tail_error, digits),
                p.proven.to_string(),
            ]);
        }
        report.table(Table {
            name: "pc_predictions",
            columns: vec![
                "L",
                "model",
                "pc",
                "correction_term",
                "tail_error",
                "proven",
            ],
            rows,
        });
    }
    Ok(report)
}

pub fn cmd_enumerate(
    model: PolymerModel,
    d: u32,
    range: u32,
    norm: Norm,
    max_vertices: u32,
    budget: u64,
) -> Result<String, Error> {
    let mut req = CensusRequest::rooted(model, d, range, norm, max_vertices);
    req.budget = budget;
    let census = enumerate(&req)?;
    Ok(census_io::render(&census))
}

pub fn cmd_critical(
    census: &PolymerCensus,
    tol: f64,
    nmax: usize,
    budget: u64,
    digits: usize,
) -> Result<Report, Error> {
    if !(census.required.len() == 1 && census.required[0].iter().all(|&c| c == 0)) {
        return Err(Error::InvalidParameter {
            what: "census",
            message: "critical reports need a census rooted at the origin only".into(),
        });
    }
    let kernel = StepKernel::new(census.d, census.range, census.norm)?;
    let g = one_point_series(census)?;
    let chi = chi_series_from(census)?;
    let p1 = solve_p1(&g, tol)?;

    // two-point data is not part of the census file; re-derive it by
    // enumeration at the header parameters
    let mut req = CensusRequest::rooted(
        census.model,
        census.d,
        census.range,
        census.norm,
        census.max_vertices,
    );
    req.budget = budget;
    let tau_all = two_point_map(&req)?;
    let tau_lambda: BTreeMap<Point, PowerSeries> = tau_all
        .iter()
        .filter(|(x, _)| kernel.contains(x).unwrap_or(false))
        .map(|(x, s)| (x.clone(), s.clone()))
        .collect();

    let leading_table = if census.d >= 3 {
        Some(kernel.conv_table(nmax)?)
    } else {
        None
    };
    let decomposition = gh_decompose(
        census.model,
        &kernel,
        &g,
        &tau_lambda,
        &p1,
        leading_table.as_ref(),
    )?;

    let ratio = pc_ratio_estimate(&chi)?;
    let triangle = triangle_lb(kernel.lambda_size(), p1.p1)?;
    let hath = hath_ub(&tau_all, p1.p1)?;

    let mut report = Report::new("critical");
    report
        .scalar(
            "model",
            Scalar::Text(census_io::model_token(census.model).into()),
        )
        .scalar("d", Scalar::UInt(census.d as u64))
        .scalar("L", Scalar::UInt(census.range as u64))
        .scalar(
            "norm",
            Scalar::Text(census_io::norm_token(census.norm).into()),
        )
        .scalar("max_vertices", Scalar::UInt(census.max_vertices as u64))
        .scalar(
            "truncation_order",
            Scalar::UInt(g.truncation_order() as u64),
        )
        .scalar("p1", Scalar::Float(p1.p1))
        .scalar("p1_residual", Scalar::Float(p1.residual))
        .scalar("g_at_p1", Scalar::Float(decomposition.g_value))
        .scalar("G", Scalar::Float(decomposition.big_g))
        .scalar("h_effective", Scalar::Float(decomposition.h_effective))
        .scalar("g0_closed", Scalar::exact(&decomposition.g0_closed))
        .scalar("triangle_lower_bound", Scalar::Float(triangle))
        .scalar("hath_upper_bound", Scalar::Float(hath.value))
        .scalar(
            "hath_window_radius",
            Scalar::UInt(hath.window_radius as u64),
        );
    if let Some(leading) = &decomposition.leading {
        report
            .scalar("g_leading", Scalar::Float(leading.g_leading.value))
            .scalar(
                "g_leading_tail",
                Scalar::Float(leading.g_leading.tail_error),
            )
            .scalar("h_leading", Scalar::Float(leading.h_leading.value))
            .scalar(
                "h_leading_tail",
                Scalar::Float(leading.h_leading.tail_error),
            )
            .scalar("i_leading", Scalar::Float(leading.i_leading.value))
            .scalar(
                "i_leading_tail",
                Scalar::Float(leading.i_leading.tail_error),
            );
    }

    let mut rows = Vec::new();
    for (k, r) in ratio.ratios.iter().enumerate() {
        let rich = ratio.richardson.get(k).copied().flatten();
        rows.push(vec![
            k.to_string(),
            r.map(|v| cell_sig(v, digits))
                .unwrap_or_else(|| "skip".into()),
            rich.map(|v| cell_sig(v, digits))
                .unwrap_or_else(|| "-".into()),
        ]);
    }
    report.table(Table {
        name: "pc_ratio_estimate",
        columns: vec!["k", "ratio", "richardson"],
        rows,
    });

    if census.model == PolymerModel::Trees {
        let tn = tn_table(census)?;
        let growth = growth_pc_estimate(&tn, kernel.lambda_size())?;
        let rows = growth
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                vec![
                    (i + 1).to_string(),
                    cell_exact(&tn.t[i]),
                    cell_sig(v, digits),
                ]
            })
            .collect();
        report.table(Table {
            name: "growth_pc_estimate",
            columns: vec!["n", "t_n", "pc_estimate"],
            rows,
        });
    }
    Ok(report)
}
