//! Value parsers for command-line arguments.

/// A count such as `10000`, `1e7` or `10_000_000`.
pub fn count(s: &str) -> Result<u64, String> {
    let t = s.replace('_', "");
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    match t.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
        _ => Err(format!("`{s}` is not a non-negative integer count")),
    }
}

/// Bytes with an optional binary suffix `K`, `M`, `G` or `T`.
pub fn bytes(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let (num, shift) = match t.char_indices().last() {
        Some((i, c)) if c.is_ascii_alphabetic() => {
            let shift = match c.to_ascii_uppercase() {
                'K' => 10,
                'M' => 20,
                'G' => 30,
                'T' => 40,
                _ => return Err(format!("unknown size suffix in `{s}`")),
            };
            (&t[..i], shift)
        }
        _ => (t, 0),
    };
    let v = count(num)?;
    v.checked_mul(1u64 << shift)
        .ok_or_else(|| format!("`{s}` overflows"))
}

/// Comma-separated indices, e.g. `3,7`.
pub fn indices(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad index `{p}` in `{s}`"))
        })
        .collect()
}

/// Comma-separated indices with exactly one free slot written `:` or `_`.
pub fn fixed(s: &str) -> Result<Vec<Option<usize>>, String> {
    let out: Vec<Option<usize>> = s
        .split(',')
        .map(|p| match p.trim() {
            ":" | "_" => Ok(None),
            p => p
                .parse::<usize>()
                .map(Some)
                .map_err(|_| format!("bad index `{p}` in `{s}`")),
        })
        .collect::<Result<_, _>>()?;
    if out.iter().filter(|f| f.is_none()).count() != 1 {
        return Err(format!(
            "`{s}` must have exactly one free index written `:`"
        ));
    }
    Ok(out)
}

/// An `x`-separated shape such as `100x100`. Entries `d` parse as `None`.
pub fn shape(s: &str) -> Result<Vec<Option<usize>>, String> {
    s.split(['x', 'X'])
        .map(|p| match p.trim() {
            "d" | "D" => Ok(None),
            p => p
                .parse::<usize>()
                .map(Some)
                .map_err(|_| format!("bad entry `{p}` in shape `{s}`")),
        })
        .collect()
}

/// Comma-separated floats.
pub fn floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number `{p}`"))
        })
        .collect()
}
