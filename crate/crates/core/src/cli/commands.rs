use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use tempfile::NamedTempFile;

use crate::codec::{
    combine_documents, split_documents, DocumentLayout, Plaintext, PlaintextUnit, ShareDocument,
    StorageReport,
};
use crate::field::{FieldElement, Prime};
use crate::sss::ShareParams;

use super::{CliError, LayoutArg};

pub(super) struct SplitArgs {
    pub k: usize,
    pub n: usize,
    pub prime: String,
    pub layout: LayoutArg,
    pub seed: Option<u64>,
    pub raw_elements: bool,
    pub out_dir: PathBuf,
    pub input: PathBuf,
}

fn report(out: &mut dyn Write, line: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::io("<stdout>", e))
}

/// `<stem>.s<x>.share`
pub fn share_file_name(stem: &str, x: &FieldElement) -> String {
    format!("{stem}.s{x}.share")
}

/// Decimal integers separated by whitespace or commas, each below p.
pub fn parse_elements(text: &str, prime: &Prime) -> Result<Vec<FieldElement>, CliError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|token| {
            let value: BigUint = token
                .parse()
                .map_err(|_| CliError::Validation(format!("not a decimal element: {token:?}")))?;
            Ok(FieldElement::new(value, prime)?)
        })
        .collect()
}

fn build_params(
    k: usize,
    n: usize,
    prime: Prime,
    layout: LayoutArg,
) -> Result<ShareParams, CliError> {
    Ok(match layout {
        LayoutArg::Sequential => ShareParams::sequential(k, n, prime)?,
        LayoutArg::RandomPoints => {
            let share_xs = (1..=n as u64)
                .map(|x| FieldElement::reduce_u64(x, &prime))
                .collect();
            ShareParams::explicit(k, prime, share_xs)?
        }
    })
}

/// Writes every file to a temporary sibling first and renames only once all
/// of them are complete.
fn write_all_atomically(files: &[(PathBuf, Vec<u8>)]) -> Result<(), CliError> {
    let mut staged = Vec::with_capacity(files.len());
    for (path, bytes) in files {
        let dir = path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        let mut tmp = NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
        tmp.write_all(bytes)
            .map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.as_file()
            .sync_all()
            .map_err(|e| CliError::io(tmp.path(), e))?;
        staged.push((tmp, path));
    }
    let mut done: Vec<&PathBuf> = Vec::with_capacity(staged.len());
    for (tmp, path) in staged {
        if let Err(e) = tmp.persist(path) {
            for p in done {
                let _ = fs::remove_file(p);
            }
            return Err(CliError::io(path, e.error));
        }
        done.push(path);
    }
    Ok(())
}

pub(super) fn split(args: &SplitArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let prime = Prime::from_name(&args.prime)?;
    let params = build_params(args.k, args.n, prime.clone(), args.layout)?;
    let element_mode = matches!(PlaintextUnit::for_prime(&prime), PlaintextUnit::Elements);
    match (element_mode, args.raw_elements) {
        (true, false) => {
            return Err(CliError::Validation(format!(
                "prime {prime} is below 257 and cannot carry bytes; pass --raw-elements"
            )))
        }
        (false, true) => {
            return Err(CliError::Validation(format!(
                "--raw-elements needs a prime below 257, got {prime}"
            )))
        }
        _ => {}
    }

    let raw = fs::read(&args.input).map_err(|e| CliError::io(&args.input, e))?;
    let plaintext = if args.raw_elements {
        let text = String::from_utf8(raw)
            .map_err(|_| CliError::Validation("raw element input is not UTF-8".into()))?;
        Plaintext::Elements(parse_elements(&text, &prime)?)
    } else {
        Plaintext::Bytes(raw)
    };

    let mut rng = match args.seed {
        Some(seed) => ChaCha20Rng::seed_from_u64(seed),
        None => ChaCha20Rng::from_entropy(),
    };
    let docs = split_documents(plaintext, &params, &mut rng)?;

    fs::create_dir_all(&args.out_dir).map_err(|e| CliError::io(&args.out_dir, e))?;
    let stem = args
        .input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into());
    let files: Vec<(PathBuf, Vec<u8>)> = docs
        .iter()
        .map(|d| {
            (
                args.out_dir.join(share_file_name(&stem, d.x())),
                d.to_bytes(),
            )
        })
        .collect();
    write_all_atomically(&files)?;
    for (doc, (path, bytes)) in docs.iter().zip(&files) {
        report(
            out,
            format_args!("x={} bytes={} {}", doc.x(), bytes.len(), path.display()),
        )?;
    }
    Ok(())
}

fn read_document(path: &Path) -> Result<ShareDocument, CliError> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    ShareDocument::from_bytes(&bytes)
        .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub(super) fn combine(
    shares: &[PathBuf],
    output: &Path,
    verify: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let docs = shares
        .iter()
        .map(|p| read_document(p))
        .collect::<Result<Vec<_>, _>>()?;
    let bytes = match combine_documents(&docs, verify)? {
        Plaintext::Bytes(bytes) => bytes,
        Plaintext::Elements(elements) => elements
            .iter()
            .map(|e| format!("{e}\n"))
            .collect::<String>()
            .into_bytes(),
    };
    write_all_atomically(&[(output.to_path_buf(), bytes.clone())])?;
    report(
        out,
        format_args!(
            "combined {} shares into {} ({} bytes)",
            docs.len(),
            output.display(),
            bytes.len()
        ),
    )
}

pub(super) fn inspect(path: &Path, dump: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let doc = read_document(path)?;
    report(
        out,
        format_args!(
            "k={} n={} p={} layout={} x={} blocks={}",
            doc.k(),
            doc.n(),
            doc.prime(),
            doc.layout().name(),
            doc.x(),
            doc.payload().len()
        ),
    )?;
    let unit = match doc.plaintext_unit() {
        PlaintextUnit::Bytes { .. } => "bytes",
        PlaintextUnit::Elements => "elements",
    };
    report(
        out,
        format_args!("plaintext_length={} {unit}", doc.plaintext_length()),
    )?;
    if let DocumentLayout::Explicit { secret_xs } = doc.layout() {
        report(out, format_args!("secret_xs={}", join(secret_xs)))?;
    }
    if dump {
        report(out, format_args!("payload={}", join(doc.payload())))?;
    }
    Ok(())
}

fn join(elements: &[FieldElement]) -> String {
    elements
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(super) fn stats(
    k: usize,
    n: usize,
    prime: &str,
    length: Option<u64>,
    input: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let prime = Prime::from_name(prime)?;
    let params = ShareParams::sequential(k, n, prime)?;
    let length = match (length, input) {
        (Some(l), _) => l,
        (None, Some(path)) => fs::metadata(path).map_err(|e| CliError::io(path, e))?.len(),
        (None, None) => return Err(CliError::Validation("need --length or INPUT".into())),
    };
    if length == 0 {
        return Err(CliError::Validation("length must be positive".into()));
    }
    report(
        out,
        format_args!("k={k} n={n} p={} length={length}", params.prime()),
    )?;
    for (name, r) in [
        ("algorithm_a", StorageReport::algorithm_a(&params, length)),
        ("shamir", StorageReport::shamir(&params, length)),
    ] {
        report(
            out,
            format_args!(
                "{name} per_share_payload={} per_share_header={} total_payload={} total={} \
                 payload_ratio={:.4} total_ratio={:.4} element_ratio={:.4}",
                r.payload_bytes_per_share(),
                r.header_bytes_per_share,
                r.total_payload_bytes(),
                r.total_bytes(),
                r.payload_ratio(),
                r.total_ratio(),
                r.element_ratio(),
            ),
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_parsing() {
        let p = Prime::p31();
        let got = parse_elements("10, 23\n16\t25", &p).unwrap();
        let got: Vec<String> = got.iter().map(|e| e.to_string()).collect();
        assert_eq!(got, ["10", "23", "16", "25"]);
        assert!(parse_elements("31", &p).is_err());
        assert!(parse_elements("ten", &p).is_err());
        assert!(parse_elements("", &p).unwrap().is_empty());
    }

    #[test]
    fn file_names() {
        let x = FieldElement::from_u64(7, &Prime::p31()).unwrap();
        assert_eq!(share_file_name("secrets", &x), "secrets.s7.share");
    }
}
