use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;

use miconf::bounds::{delta_i, delta_i_zhang, AlphabetPair};
use miconf::intervals::{confidence_radius, interval as build_interval, required_sample_size, Method};
use miconf::montecarlo::{quantile, sampling_cdf, ChannelSpec, GENERATOR_ID, QUANTILE_CONVENTION};
use miconf::{JointDistribution, MarginalDistribution, Unit};

use crate::payload::{read_counts, read_joint, read_samples};
use crate::report::{
    sig, to_json, InputEcho, IntervalEntry, IntervalReport, Metadata, SampleSizeReport, SimulateReport,
    SourceEcho, SCHEMA,
};
use crate::{BoundArgs, CliError, IntervalArgs, MethodArg, SampleSizeArgs, SimulateArgs};

fn check_alpha(alpha: f64) -> Result<(), CliError> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(CliError::Domain(format!("alpha must lie in (0, 1], got {alpha}")))
    }
}

fn log_name(unit: Unit) -> &'static str {
    match unit {
        Unit::Bits => "log2",
        Unit::Nats => "ln",
    }
}

pub fn interval(args: &IntervalArgs) -> Result<String, CliError> {
    let (table, input) = if let Some(path) = &args.samples {
        let (mx, my) = (args.mx.unwrap_or_default(), args.my.unwrap_or_default());
        (read_samples(path, mx, my)?, InputEcho { kind: "samples", path: path.display().to_string() })
    } else if let Some(path) = &args.counts {
        (read_counts(path)?, InputEcho { kind: "counts", path: path.display().to_string() })
    } else if let Some(path) = &args.joint {
        read_joint(path)?;
        return Err(CliError::Input(format!(
            "{}: a joint distribution carries no sample size; pass --samples or --counts",
            path.display()
        )));
    } else {
        unreachable!("clap requires one payload");
    };
    if let (Some(_), Some(mx), Some(my)) = (&args.counts, args.mx, args.my) {
        if (mx, my) != (table.mx(), table.my()) {
            return Err(CliError::Input(format!(
                "--mx/--my = {mx}x{my} disagree with the count table's {}x{}",
                table.mx(),
                table.my()
            )));
        }
    }
    check_alpha(args.alpha)?;

    let unit = Unit::from(args.unit);
    let alphabet = AlphabetPair::new(table.mx(), table.my())?;
    let methods: &[Method] = match args.method {
        MethodArg::Thm2 => &[Method::WorstCase],
        MethodArg::Thm4 => &[Method::EntropyBall],
        MethodArg::Both => &[Method::WorstCase, Method::EntropyBall],
    };
    let digits = args.precision;
    let mut intervals = Vec::new();
    for &method in methods {
        let mut ci = build_interval(&table, args.alpha, method)?.to_unit(unit);
        if args.clamp {
            ci = ci.clamped(alphabet);
        }
        intervals.push(IntervalEntry {
            method: method.as_str(),
            lower: sig(ci.lower, digits),
            upper: sig(ci.upper, digits),
            width: sig(ci.width(), digits),
        });
    }

    Ok(to_json(&IntervalReport {
        schema: SCHEMA,
        command: "interval",
        input,
        n: table.n(),
        mx: table.mx(),
        my: table.my(),
        alpha: args.alpha,
        method: match args.method {
            MethodArg::Thm2 => "thm2",
            MethodArg::Thm4 => "thm4",
            MethodArg::Both => "both",
        },
        clamp: args.clamp,
        unit: unit.as_str(),
        epsilon: sig(confidence_radius(&table, args.alpha)?, digits),
        mi_empirical: sig(unit.from_nats(table.mutual_information()), digits),
        intervals,
        metadata: Metadata::new(unit),
    }))
}

pub fn samplesize(args: &SampleSizeArgs) -> Result<String, CliError> {
    let unit = Unit::from(args.unit);
    let alphabet = AlphabetPair::new(args.mx, args.my)?;
    let ceiling = unit.log(alphabet.mx() as f64);
    if args.gamma >= ceiling {
        return Err(CliError::Domain(format!(
            "gamma must be < {}(mx)={} (wider intervals hold with probability one)",
            log_name(unit),
            sig(ceiling, 6)
        )));
    }
    if args.gamma.is_nan() || args.gamma <= 0.0 {
        return Err(CliError::Domain(format!("gamma must be > 0, got {}", args.gamma)));
    }
    check_alpha(args.alpha)?;
    let plan = required_sample_size(unit.to_nats(args.gamma), args.alpha, alphabet)?;
    Ok(to_json(&SampleSizeReport {
        schema: SCHEMA,
        command: "samplesize",
        gamma: args.gamma,
        unit: unit.as_str(),
        alpha: args.alpha,
        mx: args.mx,
        my: args.my,
        epsilon: sig(plan.epsilon, args.precision),
        n_required: plan.n_required,
        metadata: Metadata::new(unit),
    }))
}

pub fn simulate(args: &SimulateArgs) -> Result<String, CliError> {
    let (joint, source): (JointDistribution, SourceEcho) = match (&args.joint, args.ber, args.px) {
        (Some(path), _, _) => (read_joint(path)?, SourceEcho::Joint { path: path.display().to_string() }),
        (None, Some(ber), Some(px)) => {
            if !(0.0..=1.0).contains(&px) {
                return Err(CliError::Domain(format!("px must lie in [0, 1], got {px}")));
            }
            let input = MarginalDistribution::new(vec![px, 1.0 - px])?;
            (ChannelSpec::bsc(ber, input)?.joint(), SourceEcho::Bsc { ber, px })
        }
        _ => return Err(CliError::Input("--ber and --px are required for the bsc channel".into())),
    };
    check_alpha(args.alpha)?;
    if args.n == 0 || args.reps == 0 {
        return Err(CliError::Domain("--n and --reps must be at least 1".into()));
    }

    let unit = Unit::from(args.unit);
    let cdf = sampling_cdf(&joint, args.n, args.reps, args.seed)?;
    let levels = [0.5 * args.alpha, 1.0 - 0.5 * args.alpha];
    let lower = unit.from_nats(quantile(&cdf, levels[0])?);
    let upper = unit.from_nats(quantile(&cdf, levels[1])?);

    if let Some(path) = &args.emit_cdf {
        let file = File::create(path)
            .map_err(|e| CliError::Input(format!("cannot create {}: {e}", path.display())))?;
        cdf.write_text(BufWriter::new(file), unit)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }

    let digits = args.precision;
    let mut metadata = Metadata::new(unit);
    metadata.quantile_convention = Some(QUANTILE_CONVENTION);
    Ok(to_json(&SimulateReport {
        schema: SCHEMA,
        command: "simulate",
        source,
        n: args.n,
        reps: args.reps,
        alpha: args.alpha,
        seed: args.seed,
        unit: unit.as_str(),
        true_mi: sig(unit.from_nats(joint.mutual_information()), digits),
        quantile_levels: levels,
        quantile_lower: sig(lower, digits),
        quantile_upper: sig(upper, digits),
        width: sig(upper - lower, digits),
        cdf_path: args.emit_cdf.as_ref().map(|p| p.display().to_string()),
        generator_id: GENERATOR_ID,
        metadata,
    }))
}

/// Parse `start:stop:count` into evenly spaced radii.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Input(format!("malformed --epsilon-grid '{spec}': {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err(bad("expected start:stop:count"));
    };
    let start: f64 = start.trim().parse().map_err(|_| bad("start is not a number"))?;
    let stop: f64 = stop.trim().parse().map_err(|_| bad("stop is not a number"))?;
    let count: usize = count.trim().parse().map_err(|_| bad("count is not a positive integer"))?;
    if count == 0 {
        return Err(bad("count must be at least 1"));
    }
    if !(0.0..=2.0).contains(&start) || !(0.0..=2.0).contains(&stop) || start > stop {
        return Err(bad("need 0 <= start <= stop <= 2"));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|k| if k == count - 1 { stop } else { start + step * k as f64 })
        .collect())
}

pub fn bound(args: &BoundArgs) -> Result<String, CliError> {
    let grid = parse_grid(&args.epsilon_grid)?;
    let alphabet = AlphabetPair::new(args.mx, args.my)?;
    let unit = Unit::from(args.unit);
    let digits = args.precision;
    let mut out = String::from("epsilon,delta_i");
    if args.compare_zhang {
        out.push_str(",delta_i_zhang");
    }
    out.push('\n');
    for eps in grid {
        let d = unit.from_nats(delta_i(eps, alphabet)?);
        write!(out, "{},{}", sig(eps, digits), sig(d, digits)).unwrap();
        if args.compare_zhang {
            // empty field where the older bound is undefined
            match delta_i_zhang(eps, alphabet) {
                Ok(z) => write!(out, ",{}", sig(unit.from_nats(z), digits)).unwrap(),
                Err(_) => out.push(','),
            }
        }
        out.push('\n');
    }
    Ok(out)
}
