use super::{check_order, Tree, DEFAULT_MAX_ORDER};
use crate::error::Result;

/// All canonical trees with `colors` vertex colors, grouped by order
/// `1..=max_order` (index 0 holds order 1). Within a group trees are sorted.
pub fn enumerate_trees(max_order: usize, colors: u32) -> Result<Vec<Vec<Tree>>> {
    enumerate_trees_capped(max_order, colors, DEFAULT_MAX_ORDER)
}

pub fn enumerate_trees_capped(max_order: usize, colors: u32, cap: usize) -> Result<Vec<Vec<Tree>>> {
    check_order(max_order, cap)?;
    let mut by_order: Vec<Vec<Tree>> = Vec::with_capacity(max_order);
    // every tree of smaller order, sorted; children are drawn from here in
    // non-decreasing position so each child multiset appears once
    let mut pool: Vec<Tree> = Vec::new();
    for n in 1..=max_order {
        let mut level = Vec::new();
        let mut forests = Vec::new();
        forests_of_weight(&pool, 0, n - 1, &mut Vec::new(), &mut forests);
        for color in 1..=colors {
            for forest in &forests {
                level.push(Tree::colored(color, forest.clone()));
            }
        }
        level.sort();
        pool.extend(level.iter().cloned());
        pool.sort();
        by_order.push(level);
    }
    Ok(by_order)
}

pub fn trees_of_order(order: usize, colors: u32) -> Result<Vec<Tree>> {
    Ok(enumerate_trees(order, colors)?.pop().unwrap_or_default())
}

fn forests_of_weight(pool: &[Tree], from: usize, weight: usize, current: &mut Vec<Tree>, out: &mut Vec<Vec<Tree>>) {
    if weight == 0 {
        out.push(current.clone());
        return;
    }
    for i in from..pool.len() {
        let w = pool[i].order();
        if w > weight {
            continue;
        }
        current.push(pool[i].clone());
        forests_of_weight(pool, i, weight - w, current, out);
        current.pop();
    }
}
