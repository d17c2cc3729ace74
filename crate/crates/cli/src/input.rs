//! Loading matrices, vectors, faces and triangulations from files or inline arguments.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_relax::io::{parse_matrix, parse_vector};
use toric_relax::{Error, Face, IntMatrix, RegularTriangulation};

use crate::CliError;

/// Contents of the file at `arg`, or `None` when `arg` is not an existing path.
fn file_text(arg: &str) -> Result<Option<String>, CliError> {
    let path = Path::new(arg);
    if !path.is_file() {
        // inline numeric data never contains letters, so this was meant as a path
        if arg.chars().any(|c| c.is_ascii_alphabetic()) {
            return Err(CliError::Io(format!("{arg}: no such file")));
        }
        return Ok(None);
    }
    std::fs::read_to_string(path)
        .map(Some)
        .map_err(|e| CliError::Io(format!("{arg}: {e}")))
}

fn to_i64(v: &[BigInt]) -> Result<Vec<i64>, CliError> {
    v.iter()
        .map(|x| x.to_i64().ok_or(CliError::Lib(Error::Overflow)))
        .collect()
}

/// Integer rows from a matrix file, or inline rows separated by `;`.
pub fn int_rows(arg: &str) -> Result<Vec<Vec<BigInt>>, CliError> {
    if let Some(text) = file_text(arg)? {
        return Ok(parse_matrix(&text)?);
    }
    let rows: Vec<Vec<BigInt>> = arg
        .split(';')
        .map(|r| parse_vector(&r.replace(',', " ")))
        .collect::<Result<_, _>>()?;
    let n = rows.first().map_or(0, Vec::len);
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("{arg:?} is neither a file nor a matrix")).into());
    }
    Ok(rows)
}

pub fn matrix(arg: &str) -> Result<IntMatrix, CliError> {
    Ok(IntMatrix::new(int_rows(arg)?)?)
}

/// Columns of a matrix file, as machine-word vectors.
pub fn columns(arg: &str) -> Result<(usize, Vec<Vec<i64>>), CliError> {
    let rows = int_rows(arg)?;
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| to_i64(r)).collect::<Result<_, _>>()?;
    let d = rows.len();
    let n = rows[0].len();
    Ok((d, (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect()))
}

/// A vector file, or an inline list separated by spaces or commas.
pub fn vector(arg: &str, len: usize, what: &str) -> Result<Vec<i64>, CliError> {
    let text = file_text(arg)?.unwrap_or_else(|| arg.replace(',', " "));
    let v = to_i64(&parse_vector(&text)?)?;
    if v.len() != len {
        return Err(Error::Dimension(format!("{what} has length {}, expected {len}", v.len())).into());
    }
    Ok(v)
}

/// The cost from `--cost`, or a seeded sample in `0..=99` when none is given.
pub fn cost(arg: Option<&str>, n: usize, seed: u64) -> Result<(Vec<i64>, bool), CliError> {
    match arg {
        Some(arg) => Ok((vector(arg, n, "cost")?, false)),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(((0..n).map(|_| rng.gen_range(0..=99)).collect(), true))
        }
    }
}

/// A face written as 1-based indices, e.g. `3`, `1,4,5` or `{}` for the empty face.
pub fn face(arg: &str, n: usize) -> Result<Face, CliError> {
    let inner = arg.trim().trim_start_matches('{').trim_end_matches('}');
    let indices: Vec<usize> = inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad face index {t:?}")))
        })
        .collect::<Result<_, _>>()?;
    Ok(Face::from_one_based(&indices, n)?)
}

/// A triangulation given as JSON: a list of 1-based maximal faces, or an object with a
/// `maximal_faces` field such as the output of `triangulate`.
pub fn triangulation(arg: &str, a: &IntMatrix) -> Result<RegularTriangulation, CliError> {
    let text = file_text(arg)?.unwrap_or_else(|| arg.to_string());
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("triangulation: {e}")))?;
    let list = value.get("maximal_faces").unwrap_or(&value);
    let faces: Vec<Vec<usize>> = serde_json::from_value(list.clone())
        .map_err(|e| Error::Parse(format!("triangulation: {e}")))?;
    let faces: Vec<Face> = faces
        .iter()
        .map(|f| Face::from_one_based(f, a.ncols()))
        .collect::<Result<_, _>>()?;
    Ok(RegularTriangulation::from_faces(a, &faces)?)
}
