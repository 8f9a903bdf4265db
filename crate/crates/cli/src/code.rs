//! Codes named on the command line, either by a codebook file or by a spec
//! string such as `vt:q=4,l=1,n=3,a=7`.

use std::collections::HashMap;
use std::path::Path;

use anyhow::Context;
use lmec::aec::AecCode;
use lmec::channel::decode_by_search;
use lmec::format::parse_codebook;
use lmec::uec::{jstar, TailCodeSpec, UecCode};
use lmec::vt::{decode_power, PowerCodeSpec};
use lmec::{ued, ChannelMode, CodeMode, CodeParams, Codebook, Error, ErrorVector, Word};

#[derive(Debug, Clone)]
pub enum Code {
    Aec(AecCode),
    Uec(UecCode),
    Vt(PowerCodeSpec),
    Ued { params: CodeParams, a: u64 },
    File(Codebook),
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Error::InvalidArgument(msg.into()).into()
}

/// `constant-sum` (optionally with `j`), `two-level` or `tail`.
pub fn uec_code(params: CodeParams, construction: &str, j: Option<u64>) -> anyhow::Result<UecCode> {
    if j.is_some() && construction != "constant-sum" {
        return Err(usage("j only applies to the constant-sum construction"));
    }
    Ok(match construction {
        "constant-sum" => UecCode::ConstantSum {
            params,
            j: j.unwrap_or_else(|| jstar(&params)),
        },
        "two-level" => UecCode::TwoLevel { params },
        "tail" => UecCode::Tail(TailCodeSpec::new(params)),
        other => return Err(usage(format!("unknown construction {other:?}"))),
    })
}

impl Code {
    /// A spec string when it starts with a known kind followed by `:`,
    /// otherwise a path to a codebook file.
    pub fn parse(arg: &str) -> anyhow::Result<Code> {
        if let Some((kind, rest)) = arg.split_once(':') {
            if ["aec", "uec", "vt", "ued"].contains(&kind) {
                return Self::from_spec(kind, rest);
            }
        }
        let text =
            std::fs::read_to_string(Path::new(arg)).with_context(|| format!("reading {arg}"))?;
        Ok(Code::File(parse_codebook(&text)?))
    }

    fn from_spec(kind: &str, rest: &str) -> anyhow::Result<Code> {
        let mut kv: HashMap<&str, &str> = HashMap::new();
        for field in rest.split(',').filter(|f| !f.is_empty()) {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| usage(format!("expected key=value in code spec, got {field:?}")))?;
            let k = if k == "ell" { "l" } else { k };
            kv.insert(k, v);
        }
        let num = |k: &str| -> anyhow::Result<Option<i64>> {
            kv.get(k)
                .map(|v| {
                    v.parse::<i64>()
                        .map_err(|e| usage(format!("bad value for {k}: {e}")))
                })
                .transpose()
        };
        let need = |k: &str| -> anyhow::Result<i64> {
            num(k)?.ok_or_else(|| usage(format!("code spec needs {k}")))
        };
        let q = u32::try_from(need("q")?).map_err(|_| usage("q out of range"))?;
        let ell = u32::try_from(need("l")?).map_err(|_| usage("l out of range"))?;
        let n = usize::try_from(need("n")?).map_err(|_| usage("n out of range"))?;
        let params = CodeParams::new(q, ell, n)?;
        let allowed: &[&str] = match kind {
            "aec" => &[],
            "uec" => &["j", "construction"],
            "vt" => &["a", "r"],
            _ => &["a"],
        };
        if let Some(k) = kv
            .keys()
            .find(|k| !["q", "l", "n"].contains(k) && !allowed.contains(k))
        {
            return Err(usage(format!("{kind} codes take no {k}")));
        }
        Ok(match kind {
            "aec" => Code::Aec(AecCode::new(params)),
            "uec" => {
                let j = num("j")?
                    .map(|j| u64::try_from(j).map_err(|_| usage("j must be non-negative")))
                    .transpose()?;
                Code::Uec(uec_code(
                    params,
                    kv.get("construction").copied().unwrap_or("constant-sum"),
                    j,
                )?)
            }
            "vt" => match (num("a")?, num("r")?) {
                (Some(_), Some(_)) => return Err(usage("give either a or r, not both")),
                (Some(a), None) => Code::Vt(PowerCodeSpec::with_constant(params, a)?),
                (None, r) => Code::Vt(PowerCodeSpec::new(params, r.unwrap_or(0))?),
            },
            _ => {
                let a = num("a")?.unwrap_or(0);
                Code::Ued {
                    params,
                    a: u64::try_from(a).map_err(|_| usage("a must be non-negative"))?,
                }
            }
        })
    }

    pub fn params(&self) -> CodeParams {
        match self {
            Code::Aec(c) => c.params(),
            Code::Uec(c) => c.params(),
            Code::Vt(s) => s.params(),
            Code::Ued { params, .. } => *params,
            Code::File(c) => c.params(),
        }
    }

    pub fn mode(&self) -> CodeMode {
        match self {
            Code::Aec(_) => CodeMode::Aec,
            Code::Uec(_) | Code::Vt(_) => CodeMode::Uec,
            Code::Ued { .. } => CodeMode::Ued,
            Code::File(c) => c.mode(),
        }
    }

    pub fn channel(&self) -> ChannelMode {
        match self.mode() {
            CodeMode::Aec => ChannelMode::Asymmetric,
            _ => ChannelMode::Unidirectional,
        }
    }

    pub fn codebook(&self, cap: usize) -> anyhow::Result<Codebook> {
        let book = match self {
            Code::Aec(c) => c.build(cap)?,
            Code::Uec(c) => c.build()?,
            Code::Vt(s) => s.linear_code().enumerate(),
            Code::Ued { params, a } => ued::build_ca(params, *a)?,
            Code::File(c) => c.clone(),
        };
        if book.len() > cap {
            return Err(Error::ResourceCap {
                what: "codebook size",
                requested: book.len() as u128,
                cap: cap as u128,
            }
            .into());
        }
        Ok(book)
    }

    pub fn decode(&self, y: &Word) -> anyhow::Result<(Word, ErrorVector)> {
        Ok(match self {
            Code::Aec(c) => {
                let x = c.decode(y)?;
                let e =
                    lmec::channel::error_between(&x, y, c.params().ell(), ChannelMode::Asymmetric)
                        .expect("rounding down stays within the level");
                (x, e)
            }
            Code::Uec(c) => c.decode(y)?,
            Code::Vt(s) => decode_power(y, s)?,
            Code::Ued { .. } => return Err(usage("detection codes do not decode")),
            Code::File(c) => {
                if c.mode() == CodeMode::Ued {
                    return Err(usage("detection codes do not decode"));
                }
                decode_by_search(c, y, self.channel())?
            }
        })
    }
}
