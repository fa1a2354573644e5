#![allow(dead_code)]

use exflex::fixtures;
use exflex::symmetry::check_incidence_hypothesis;
use exflex::{hyperplane_pinning, Framework, PinningSpec, Placement};
use nalgebra::DVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Catalogue fixtures, with extrusion-symmetric pinnings substituted where
/// the bundled pinning breaks the incidence hypothesis.
pub fn symmetric_cases() -> Vec<(String, Framework, PinningSpec)> {
    fixtures::catalogue()
        .into_iter()
        .map(|(name, f, pin)| {
            if check_incidence_hypothesis(&f, &pin).is_ok() {
                (name.to_string(), f, pin)
            } else {
                let (pin, spec) = hyperplane_pinning(&f).unwrap();
                (format!("{name}+hyperplane_pin"), f.with_active(spec.active).unwrap(), pin)
            }
        })
        .collect()
}

/// Fixtures whose group is nontrivial.
pub fn extrusion_cases() -> Vec<(String, Framework, PinningSpec)> {
    symmetric_cases().into_iter().filter(|(_, f, _)| f.group().size() > 1).collect()
}

/// A random configuration near `f` in which every parallel class stays
/// parallel: each normal of a class is a fixed multiple of the first one.
pub fn perturbed_in_wg(f: &Framework, rng: &mut ChaCha8Rng, size: f64) -> DVector<f64> {
    let layout = f.layout();
    let d = f.dim();
    let mut x = f.coordinates();
    for v in x.iter_mut() {
        *v += rng.gen_range(-size..size);
    }
    let g = f.graph();
    for class in 0..g.parallel_class_count() {
        let members = g.class_members(class);
        let lead = members[0];
        let lead_normal = f.normal(lead).clone();
        let new_lead = x.rows(layout.offset(lead), d).into_owned();
        for &w in &members[1..] {
            let ratio = f.normal(w).dot(&lead_normal) / lead_normal.norm_squared();
            x.rows_mut(layout.offset(w), d).copy_from(&(&new_lead * ratio));
        }
    }
    x
}

pub fn hyperplane_count(f: &Framework) -> usize {
    f.config().placements.iter().filter(|p| matches!(p, Placement::Hyperplane { .. })).count()
}
