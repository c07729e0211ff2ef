//! The three subcommands: classify, cone and gallery.

use std::collections::BTreeMap;
use std::fs;
use std::time::Instant;

use conelab_core::classify::{classify_map, verify_report};
use conelab_core::cones::{verify_certificate, Cone, ConeConfig};
use conelab_core::gallery;
use conelab_core::solver::SolverConfig;

use crate::doc::{parse_input, InputObject};
use crate::emit::{deliver, to_json};
use crate::report;
use crate::{ClassifyArgs, CommonArgs, ConeArgs, ConeName, Failure, Format, GalleryArgs};

fn cone_config(common: &CommonArgs) -> Result<ConeConfig, Failure> {
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(Failure::usage(format!(
            "--tol must be a positive finite number, got {}",
            common.tol
        )));
    }
    if common.starts == 0 {
        return Err(Failure::usage("--starts must be at least 1"));
    }
    Ok(ConeConfig {
        tol: common.tol,
        solver: SolverConfig {
            seed: common.seed,
            starts: common.starts,
            budget_ms: common.budget_ms,
            ..Default::default()
        },
        ..Default::default()
    })
}

fn read_input(args: &ClassifyArgs) -> Result<String, Failure> {
    read_file(&args.input)
}

fn read_file(path: &std::path::Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("reading {}: {e}", path.display())))
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("conelab: warning: {w}");
    }
}

pub fn classify(args: &ClassifyArgs) -> Result<(), Failure> {
    let text = read_input(args)?;
    let (object, warnings) = parse_input(&text, args.common.strict)?;
    warn_all(&warnings);
    let InputObject::Map(t) = object else {
        return Err(Failure::usage(format!(
            "classify expects kind \"map\", got \"{}\"",
            object.kind()
        )));
    };
    let config = cone_config(&args.common)?;
    let started = Instant::now();
    let result = classify_map(&t, &config);
    let wall_ms_total = started.elapsed().as_secs_f64() * 1e3;

    if args.common.verify {
        // Re-parse so the checks run against the raw document alone.
        let (fresh, _) = parse_input(&text, args.common.strict)?;
        let InputObject::Map(fresh_map) = fresh else {
            unreachable!("the same text parsed as a map a moment ago");
        };
        verify_report(&fresh_map, &result, &config).map_err(Failure::verification)?;
    }

    let rendered = match args.common.format {
        Format::Json => to_json(&report::classify_report(
            t.dim_in(),
            t.dim_out(),
            &result,
            wall_ms_total,
        )),
        Format::Text => report::classify_text(t.dim_in(), t.dim_out(), &result),
    };
    deliver(&rendered, args.common.out.as_deref())
}

pub fn cone(args: &ConeArgs) -> Result<(), Failure> {
    let text = read_file(&args.input)?;
    let (object, warnings) = parse_input(&text, args.common.strict)?;
    warn_all(&warnings);
    let InputObject::Operator(x) = object else {
        return Err(Failure::usage(format!(
            "cone expects kind \"operator\", got \"{}\"",
            object.kind()
        )));
    };
    let config = cone_config(&args.common)?;
    let (cone, name) = match args.cone {
        ConeName::Cp => (Cone::Psd, "cp"),
        ConeName::Ccp => (Cone::PtPsd, "ccp"),
        ConeName::D => (Cone::Ppt, "d"),
        ConeName::I => (Cone::BlockPositive, "i"),
        ConeName::P => (Cone::Separable, "p"),
    };
    let started = Instant::now();
    let verdict = cone.test(&x, &config);
    let wall_ms = started.elapsed().as_secs_f64() * 1e3;

    if args.common.verify {
        let (fresh, _) = parse_input(&text, args.common.strict)?;
        let InputObject::Operator(fresh_op) = fresh else {
            unreachable!("the same text parsed as an operator a moment ago");
        };
        verify_certificate(&fresh_op, &verdict, &config).map_err(Failure::verification)?;
    }

    let rendered = match args.common.format {
        Format::Json => to_json(&report::cone_report(
            x.dim_a(),
            x.dim_b(),
            name,
            &verdict,
            &config,
            wall_ms,
        )),
        Format::Text => report::cone_text(x.dim_a(), x.dim_b(), name, &verdict),
    };
    deliver(&rendered, args.common.out.as_deref())
}

pub fn gallery(args: &GalleryArgs) -> Result<(), Failure> {
    let mut params: BTreeMap<String, f64> = BTreeMap::new();
    for raw in &args.params {
        let (key, value) = raw.split_once('=').ok_or_else(|| {
            Failure::usage(format!("--param needs KEY=VALUE, got \"{raw}\""))
        })?;
        let value: f64 = value.parse().map_err(|_| {
            Failure::usage(format!("--param {key}: \"{}\" is not a number", value))
        })?;
        if params.insert(key.to_string(), value).is_some() {
            return Err(Failure::usage(format!("--param {key} given twice")));
        }
    }
    let entry = gallery::make(&args.name, &params, Some(args.seed)).map_err(|e| {
        let mut failure = Failure::from_core(&e);
        if matches!(e, conelab_core::Error::UnknownName(_)) {
            failure.message = format!(
                "{}; known names: {}",
                failure.message,
                gallery::catalog().join(", ")
            );
        }
        failure
    })?;
    warn_all(&entry.warnings);
    let rendered = to_json(&report::gallery_document(&entry, args.seed));
    deliver(&rendered, args.out.as_deref())
}
