//! Sample-schedule syntax: comma-separated sizes, each either a plain
//! integer or `2^k`, with `2^a..2^b` expanding to the inclusive power range.

pub fn parse_schedule(text: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for item in text.split(',') {
        let item = item.trim();
        if let Some((lo, hi)) = item.split_once("..") {
            let lo = parse_power(lo).ok_or_else(|| format!("range endpoint `{lo}` must be 2^k"))?;
            let hi = parse_power(hi).ok_or_else(|| format!("range endpoint `{hi}` must be 2^k"))?;
            if lo > hi {
                return Err(format!("empty range `{item}`"));
            }
            out.extend((lo..=hi).map(|e| 1u64 << e));
        } else if let Some(exp) = parse_power(item) {
            out.push(1u64 << exp);
        } else {
            out.push(
                item.parse::<u64>()
                    .map_err(|_| format!("bad schedule entry `{item}`"))?,
            );
        }
    }
    if out.is_empty() {
        return Err("empty schedule".to_string());
    }
    if out.windows(2).any(|p| p[1] <= p[0]) {
        return Err("schedule must be strictly increasing".to_string());
    }
    Ok(out)
}

fn parse_power(item: &str) -> Option<u32> {
    let exp = item.trim().strip_prefix("2^")?.parse::<u32>().ok()?;
    (exp < 64).then_some(exp)
}

pub fn describe(schedule: &[u64]) -> String {
    schedule
        .iter()
        .map(|s| {
            if s.is_power_of_two() {
                format!("2^{}", s.trailing_zeros())
            } else {
                s.to_string()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}
