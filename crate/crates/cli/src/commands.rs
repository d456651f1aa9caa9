use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use nodeorder::dynamics::{
    bound_run, integrate_rk4, iterate_discrete, lift, max_class_spread, max_discrete_step,
    order_monitor, order_violations_at, sample_consistent_values, simulate_logistic,
    LogisticParams, QuotientSystem, Trajectory,
};
use nodeorder::{
    color_refinement, condensation, equivalence_classes, max_inductive_preorder, quotient_matrix,
    GeneratorSpec, Graph, Partition, PreorderRelation,
};

use crate::{Common, Simulate, Source};

pub fn load_graph(source: &Source) -> Result<Graph> {
    match (&source.graph, &source.generate) {
        (Some(path), None) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Graph::from_edge_list_with_header(&text)
                .with_context(|| format!("parsing {}", path.display()))
        }
        (None, Some(spec)) => {
            let spec: GeneratorSpec = spec.parse()?;
            Ok(spec.build()?)
        }
        _ => bail!("give exactly one of --graph FILE or --generate SPEC"),
    }
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_file(dir, name, &text)
}

fn write_trajectory(dir: &Path, name: &str, traj: &Trajectory<f64>) -> Result<()> {
    write_file(dir, name, &traj.to_csv_string())
}

fn list(values: &[usize]) -> String {
    let items: Vec<String> = values.iter().map(usize::to_string).collect();
    format!("[{}]", items.join(","))
}

fn partition_summary(p: &Partition) -> String {
    format!("K={}, sizes {}", p.num_classes(), list(&p.class_sizes()))
}

pub fn cep(args: &Common) -> Result<bool> {
    let g = load_graph(&args.source)?;
    let p = color_refinement(&g);
    write_json(&args.out, "partition.json", &p.to_json())?;
    println!("{}", partition_summary(&p));
    Ok(true)
}

pub fn preorder(args: &Common) -> Result<bool> {
    let g = load_graph(&args.source)?;
    let r = max_inductive_preorder(&g);
    let cond = condensation(&r)?;
    write_json(&args.out, "relation.json", &r.to_json())?;
    write_json(&args.out, "partition.json", &cond.classes.to_json())?;
    write_file(&args.out, "condensation.dot", &cond.to_dot())?;
    println!(
        "{} related pairs, {}, {} condensation edges, {} passes",
        r.pair_count(),
        partition_summary(&cond.classes),
        cond.edges.len(),
        r.iterations()
    );
    Ok(true)
}

fn parse_values(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .with_context(|| format!("`{v}` is not a number"))
        })
        .collect()
}

/// Resolves `--y0` to a full node state.
fn initial_state(
    args: &Simulate,
    g: &Graph,
    r: &PreorderRelation,
    p: &Partition,
) -> Result<Vec<f64>> {
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let y0 = match args.y0.as_str() {
        "random" => (0..n).map(|_| rng.gen::<f64>()).collect(),
        "consistent" => lift(p, &sample_consistent_values::<f64, _>(r, p, &mut rng))?,
        text => {
            let values = parse_values(text)?;
            match values.len() {
                1 => vec![values[0]; n],
                len if len == n => values,
                len => bail!("--y0 has {len} values but the graph has {n} nodes"),
            }
        }
    };
    if let Some(bad) = y0.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        bail!("initial value {bad} is outside [0, 1]");
    }
    Ok(y0)
}

fn discrete_step_size(args: &Simulate, g: &Graph) -> Result<Option<f64>> {
    match args.h.as_deref() {
        None => Ok(None),
        Some("max") => Ok(Some(max_discrete_step(g, args.gamma))),
        Some(text) => {
            Ok(Some(text.parse::<f64>().with_context(|| {
                format!("--h `{text}` is not a number")
            })?))
        }
    }
}

fn params(args: &Simulate) -> Result<LogisticParams<f64>> {
    Ok(LogisticParams::new(args.gamma, args.horizon, args.dt)?)
}

pub fn simulate(args: &Simulate) -> Result<bool> {
    let g = load_graph(&args.common.source)?;
    let r = max_inductive_preorder(&g);
    let p = equivalence_classes(&r)?;
    let y0 = initial_state(args, &g, &r, &p)?;
    let inconsistent = order_violations_at(&r, &y0);
    if args.require_consistent && !inconsistent.is_empty() {
        let pairs: Vec<String> = inconsistent
            .iter()
            .map(|(i, j)| format!("({i},{j})"))
            .collect();
        bail!(
            "initial state is not ordered along the preorder; violating pairs i ⪰ j: {}",
            pairs.join(" ")
        );
    }
    let traj = match discrete_step_size(args, &g)? {
        Some(h) => {
            let steps = args
                .steps
                .unwrap_or_else(|| (args.horizon / h).ceil() as usize);
            iterate_discrete(&g, args.gamma, h, &y0, steps)?
        }
        None => simulate_logistic(&g, &params(args)?, &y0)?,
    };
    let violations = order_monitor(&traj, &r, args.tol);
    write_trajectory(&args.common.out, "trajectory.csv", &traj)?;
    write_json(&args.common.out, "violations.json", &violations)?;
    println!(
        "N={}, records={}, t_end={}, violations={}, max class spread={:e}",
        g.node_count(),
        traj.len(),
        traj.times.last().copied().unwrap_or(0.0),
        violations.len(),
        max_class_spread(&traj, &p)
    );
    // violations from an inconsistent start are expected, not a failure
    Ok(violations.is_empty() || !inconsistent.is_empty())
}

pub fn quotient(args: &Simulate) -> Result<bool> {
    let g = load_graph(&args.common.source)?;
    let p = color_refinement(&g);
    let q = quotient_matrix(&g, &p)?;
    let system = QuotientSystem::new(&q, args.gamma)?;
    let z0: Vec<f64> = match args.y0.as_str() {
        "random" | "consistent" => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..p.num_classes()).map(|_| rng.gen()).collect()
        }
        text => {
            let values = parse_values(text)?;
            match values.len() {
                1 => vec![values[0]; p.num_classes()],
                len if len == p.num_classes() => values,
                len => bail!(
                    "--y0 has {len} values but there are {} classes",
                    p.num_classes()
                ),
            }
        }
    };
    let lumped = integrate_rk4(&system, &z0, args.horizon, args.dt)?;
    let full = simulate_logistic(&g, &params(args)?, &lift(&p, &z0)?)?;
    let error =
        full.max_abs_diff(&lumped.map_states(|z| lift(&p, z).expect("class count matches")));
    write_json(&args.common.out, "partition.json", &p.to_json())?;
    write_json(&args.common.out, "quotient.json", &q)?;
    write_trajectory(&args.common.out, "quotient_trajectory.csv", &lumped)?;
    println!(
        "{}, lumping error {error:e} (tol {:e})",
        partition_summary(&p),
        args.tol
    );
    Ok(error <= args.tol)
}

pub fn bound(args: &Simulate) -> Result<bool> {
    let g = load_graph(&args.common.source)?;
    let p = color_refinement(&g);
    let r = max_inductive_preorder(&g);
    let y0 = initial_state(args, &g, &r, &p)?;
    let run = bound_run(&g, &params(args)?, &y0, &p)?;
    let escapes = run.bracket_violations(args.tol);
    write_trajectory(&args.common.out, "lower.csv", &run.lower)?;
    write_trajectory(&args.common.out, "upper.csv", &run.upper)?;
    write_trajectory(&args.common.out, "trajectory.csv", &run.full)?;
    write_json(&args.common.out, "bracket_violations.json", &escapes)?;
    let width = run
        .upper
        .last_state()
        .iter()
        .zip(run.lower.last_state())
        .map(|(u, l)| u - l)
        .fold(0.0, f64::max);
    println!(
        "{}, bracket violations={}, final envelope width={width:e}",
        partition_summary(&p),
        escapes.len()
    );
    Ok(escapes.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_format() {
        let p = Partition::from_labels(&[0, 1, 1, 0]);
        assert_eq!(partition_summary(&p), "K=2, sizes [2,2]");
        assert_eq!(list(&[]), "[]");
    }

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("0.1, 0.5,1").unwrap(), vec![0.1, 0.5, 1.0]);
        assert!(parse_values("0.1,x").is_err());
    }

    #[test]
    fn source_must_be_unique() {
        let none = Source {
            graph: None,
            generate: None,
        };
        assert!(load_graph(&none).is_err());
        let generated = Source {
            graph: None,
            generate: Some("cycle:5".into()),
        };
        assert_eq!(load_graph(&generated).unwrap().node_count(), 5);
    }
}
