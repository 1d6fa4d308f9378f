//! Golden examples with known class groups, run through every route.

use tricl_core::classgroup::{class_group, relation_degree_order};
use tricl_core::coxring::iterate_cox_rings;
use tricl_core::type1::{class_group_type1, Type1Variety};
use tricl_core::{Method, TrinomialVariety};

pub struct SelfTestLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

const GOLDEN: &[(&str, &[&[u64]], &str)] = &[
    ("free rank one", &[&[4], &[2], &[3, 2]], "Z"),
    ("torsion three", &[&[4], &[2], &[3, 3]], "Z/3 x Z"),
    ("case (iii) with rank two", &[&[2, 4], &[2], &[2, 6]], "Z/2 x Z^2"),
    ("quadric", &[&[2], &[2], &[2]], "Z/2"),
    ("E6", &[&[4], &[3], &[2]], "Z/3"),
    ("D4", &[&[3], &[3], &[2]], "Z/2 x Z/2"),
    ("E8", &[&[5], &[3], &[2]], "0"),
    ("A3", &[&[4], &[2], &[2]], "Z/4"),
    ("A2", &[&[3], &[2], &[2]], "Z/3"),
];

const TYPE1: &[(&str, &[&[u64]], &str)] = &[
    ("type 1 quadric", &[&[2], &[2]], "0"),
    ("type 1 free", &[&[2], &[1, 1]], "Z"),
    ("type 1 non-rational", &[&[3], &[3]], "not finitely generated"),
];

fn blocks(b: &[&[u64]]) -> Vec<Vec<u64>> {
    b.iter().map(|x| x.to_vec()).collect()
}

fn check_trinomial(b: &[&[u64]], expected: &str) -> Result<String, String> {
    let v = TrinomialVariety::from_blocks(blocks(b), 0)
        .map_err(|e| e.to_string())?
        .adjust()
        .variety;
    let report = class_group(&v, Method::Both).map_err(|e| e.to_string())?;
    let got = report.group.to_string();
    if got != expected {
        return Err(format!("got {got}, expected {expected}"));
    }
    if report.snf.is_some() {
        relation_degree_order(&v).map_err(|e| e.to_string())?;
    }
    Ok(got)
}

pub fn run_selftest() -> Vec<SelfTestLine> {
    let mut lines = Vec::new();
    for (name, b, expected) in GOLDEN {
        let r = check_trinomial(b, expected);
        lines.push(line(name, r));
    }
    for (name, b, expected) in TYPE1 {
        let r = Type1Variety::from_blocks(blocks(b), 0)
            .and_then(|v| class_group_type1(&v))
            .map_err(|e| e.to_string())
            .and_then(|g| {
                let got = g.to_string();
                if got == *expected {
                    Ok(got)
                } else {
                    Err(format!("got {got}, expected {expected}"))
                }
            });
        lines.push(line(name, r));
    }
    let chain = TrinomialVariety::from_blocks(blocks(&[&[4], &[3], &[2]]), 0)
        .map_err(|e| e.to_string())
        .and_then(|v| iterate_cox_rings(&v.adjust().variety).map_err(|e| e.to_string()))
        .and_then(|c| {
            let groups: Vec<String> = c.steps.iter().map(|s| s.class_group.to_string()).collect();
            let got = groups.join(" -> ");
            if got == "Z/3 -> Z/2 x Z/2 -> Z/2 -> 0" {
                Ok(got)
            } else {
                Err(format!("chain groups {got}"))
            }
        });
    lines.push(line("E6 iteration chain", chain));
    lines
}

fn line(name: &str, r: Result<String, String>) -> SelfTestLine {
    match r {
        Ok(detail) => SelfTestLine { name: name.into(), passed: true, detail },
        Err(detail) => SelfTestLine { name: name.into(), passed: false, detail },
    }
}
