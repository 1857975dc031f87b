use anyhow::{bail, Result};
use clap::Subcommand;
use gjtrig::elliptic::{complete_k, incomplete_f, jacobi_m};
use gjtrig::gjelliptic::{gj_eval, GJModuli};
use serde_json::json;

use crate::Output;

#[derive(Subcommand)]
pub enum EvalCommand {
    /// sn, cn, dn at u for modulus k (or parameter m = k²).
    Jacobi {
        #[arg(long, allow_hyphen_values = true)]
        u: f64,
        #[arg(long, conflicts_with = "m")]
        k: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<f64>,
    },
    /// Complete integral of the first kind.
    #[command(name = "K")]
    CompleteK {
        #[arg(long)]
        k: f64,
    },
    /// Incomplete integral of the first kind F(φ, k).
    #[command(name = "F")]
    IncompleteF {
        #[arg(long, allow_hyphen_values = true)]
        phi: f64,
        #[arg(long)]
        k: f64,
    },
    /// The generalized quadruple s, c, d1, d2 with its identity residuals.
    Gj {
        #[arg(long, allow_hyphen_values = true)]
        u: f64,
        #[arg(long)]
        k1: f64,
        #[arg(long)]
        k2: f64,
    },
}

fn print(v: serde_json::Value) -> Result<Output> {
    Ok(Output::ok(serde_json::to_string_pretty(&v)? + "\n"))
}

pub fn run(c: EvalCommand) -> Result<Output> {
    match c {
        EvalCommand::Jacobi { u, k, m } => {
            let m = match (k, m) {
                (Some(k), None) => k * k,
                (None, Some(m)) => m,
                _ => bail!("give exactly one of --k and --m"),
            };
            let t = jacobi_m(u, m);
            print(json!({"u": u, "m": m, "sn": t.sn, "cn": t.cn, "dn": t.dn}))
        }
        EvalCommand::CompleteK { k } => print(json!({"k": k, "K": complete_k(k)?})),
        EvalCommand::IncompleteF { phi, k } => print(json!({"phi": phi, "k": k, "F": incomplete_f(phi, k)?})),
        EvalCommand::Gj { u, k1, k2 } => {
            let md = GJModuli::new(k1, k2)?;
            let q = gj_eval(u, &md);
            let r = q.identity_residuals(&md);
            print(json!({
                "u": u, "k1": k1, "k2": k2,
                "s": q.s, "c": q.c, "d1": q.d1, "d2": q.d2,
                "residuals": {
                    "s2_plus_c2": r[0], "d1_with_s": r[1], "d2_with_s": r[2], "d_with_c": r[3], "d1_with_d2": r[4]
                },
                "max_residual": q.max_identity_residual(&md),
            }))
        }
    }
}
