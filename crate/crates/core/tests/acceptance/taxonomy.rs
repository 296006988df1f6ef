//! Crafted failing patterns raise the right category and code.

use std::collections::BTreeMap;

use cpforge::cp::parse_cp;
use cpforge::diagnostics::{Category, Diagnostics};
use cpforge::folder::{fold_with, FoldOptions};

use crate::{common, Checker};

fn compile(name: &str, cap: Option<usize>) -> Diagnostics {
    match parse_cp(&common::read(name)) {
        Err(ds) => ds,
        Ok(cp) => {
            let opts = FoldOptions { layer_cap: cap.unwrap_or(FoldOptions::default().layer_cap), ..FoldOptions::default() };
            fold_with(&cp, &opts).err().unwrap_or_else(|| panic!("{name} compiled"))
        }
    }
}

pub fn run(c: &mut Checker) {
    let mut per_category: BTreeMap<Category, usize> = BTreeMap::new();
    for (name, code, cap) in common::error_cases() {
        let ds = compile(&name, cap);
        let first = &ds.0[0];
        let category = code.parse::<cpforge::diagnostics::Code>().unwrap().category();
        c.eq(format!("{name}: code"), first.code().as_str(), code.as_str());
        c.eq(format!("{name}: category"), first.category(), category);
        *per_category.entry(category).or_default() += 1;
        if code == "E_AMBIGUOUS_LAYER_ORDER" {
            let states = first.param("number_of_possible_states").and_then(|v| v.as_u64()).unwrap_or(0);
            c.truth(format!("{name}: number_of_possible_states {states}"), states >= 2);
        }
    }
    for cat in [Category::Cse, Category::Gif, Category::Psi, Category::Afs] {
        let n = per_category.get(&cat).copied().unwrap_or(0);
        c.truth(format!("{} has {n} fixtures, need 3", cat.as_str()), n >= 3);
    }
    for (name, code) in [
        ("errors/cse_euler.cp", "E_CP_SYNTAX_VALUE_OUT_OF_RANGE"),
        ("errors/gif_maekawa.cp", "E_GEOM_ANGLE_CONSTRAINT_VIOLATION"),
        ("errors/psi_strip_interlock_valley.cp", "E_PHYS_SELF_INTERSECTION"),
        ("errors/afs_open_flaps.cp", "E_AMBIGUOUS_LAYER_ORDER"),
    ] {
        c.truth(format!("{name} raises {code}"), compile(name, None).has_code(code.parse().unwrap()));
    }
    let euler = compile("errors/cse_euler.cp", None);
    c.truth("Euler check is named", euler.iter().any(|d| d.param("check").and_then(|v| v.as_str()) == Some("euler")));
    let maekawa = compile("errors/gif_maekawa.cp", None);
    c.truth("Maekawa reason is named", maekawa.iter().any(|d| d.param("reason").and_then(|v| v.as_str()) == Some("maekawa")));
}
