use apery_core::clausen::RationalAngle;
use apery_core::identities::ConstExpr;
use apery_core::series::QuadraticSurd;
use apery_core::{Error, Result};

/// One basis element of `discover`, e.g. `zeta3`, `pi2`, `log:5`, `pi2log:1+sqrt2`, `cl3:1/5`.
pub fn parse_element(text: &str) -> Result<ConstExpr> {
    let text = text.trim();
    let surd = |s: &str| s.parse::<QuadraticSurd>();
    let angle = |s: &str| s.parse::<RationalAngle>();
    let expr = match text.split_once(':') {
        None => match text {
            "1" | "one" => ConstExpr::int(1),
            "zeta3" => ConstExpr::Zeta3,
            "pi" => ConstExpr::Pi,
            "pi2" => ConstExpr::pi_squared(),
            _ => return Err(Error::Parse(format!("unknown basis element `{text}`"))),
        },
        Some(("log", arg)) => ConstExpr::log_of(surd(arg)?),
        Some(("pi2log", arg)) => ConstExpr::Product(vec![ConstExpr::pi_squared(), ConstExpr::log_of(surd(arg)?)]),
        Some(("cl2", arg)) => ConstExpr::cl2(angle(arg)?),
        Some(("cl3", arg)) => ConstExpr::cl3(angle(arg)?),
        Some((tag, _)) => return Err(Error::Parse(format!("unknown basis tag `{tag}`"))),
    };
    Ok(expr)
}

pub fn parse_basis(text: &str) -> Result<Vec<ConstExpr>> {
    let items: Vec<&str> = text.split(',').filter(|s| !s.trim().is_empty()).collect();
    if items.is_empty() {
        return Err(Error::Parse("empty basis".into()));
    }
    items.into_iter().map(parse_element).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements() {
        assert_eq!(parse_element("zeta3").unwrap(), ConstExpr::Zeta3);
        assert_eq!(parse_element("pi2log:2+sqrt3").unwrap().to_string(), "π^2·log(2+sqrt3)");
        assert_eq!(parse_element("cl3:1/5").unwrap().to_string(), "Cl3(1/5·π)");
        assert!(parse_element("gamma").is_err());
        assert!(parse_element("log:x").is_err());
        assert_eq!(parse_basis("zeta3, pi2log:2,pi2log:1+sqrt2").unwrap().len(), 3);
        assert!(parse_basis(",").is_err());
    }
}
