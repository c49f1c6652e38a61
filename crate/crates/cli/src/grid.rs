//! Parameter grid syntax: `start:step:end` (inclusive, arithmetic),
//! `geom:start:end:count` (geometric) or a comma-separated list.

pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let spec = spec.trim();
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| format!("bad number '{s}' in grid '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    let grid = match parts.as_slice() {
        ["geom", a, b, k] => {
            let (a, b) = (num(a)?, num(b)?);
            let k: usize = k.trim().parse().map_err(|_| format!("bad count in grid '{spec}'"))?;
            if !(a > 0.0 && b > 0.0) || k < 2 {
                return Err(format!("geometric grid '{spec}' needs positive ends and at least 2 points"));
            }
            geometric(a, b, k)
        }
        [a, step, b] => {
            let (a, step, b) = (num(a)?, num(step)?, num(b)?);
            if !(step > 0.0) || b < a {
                return Err(format!("grid '{spec}' needs a positive step and start <= end"));
            }
            arithmetic(a, step, b)
        }
        [list] => list.split(',').map(num).collect::<Result<_, _>>()?,
        _ => return Err(format!("unrecognised grid '{spec}'")),
    };
    if grid.is_empty() {
        return Err(format!("grid '{spec}' is empty"));
    }
    Ok(grid)
}

/// `a, a+step, …` up to `b`, with each point computed as `a + k·step` so
/// errors do not accumulate.
pub fn arithmetic(a: f64, step: f64, b: f64) -> Vec<f64> {
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    (0..count).map(|k| a + k as f64 * step).collect()
}

pub fn geometric(a: f64, b: f64, k: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    (0..k).map(|i| (la + (lb - la) * i as f64 / (k - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("0.1:0.1:0.3").unwrap().len(), 3);
        assert_eq!(parse_grid("1,2,5").unwrap(), vec![1.0, 2.0, 5.0]);
        let g = parse_grid("geom:1e-4:1:5").unwrap();
        assert_eq!(g.len(), 5);
        assert!((g[2] - 1e-2).abs() < 1e-15);
        assert!(parse_grid("1:0:2").is_err());
        assert!(parse_grid("a,b").is_err());
    }
}
