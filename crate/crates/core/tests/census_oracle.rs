//! Census counts against the independent window brute force, on the king
//! lattice up to five vertices and on spread-out lines.

use latpoly_core::census::{enumerate, CensusRequest};
use latpoly_core::kernel::Norm;
use latpoly_core::PolymerModel;
use latpoly_oracles::{census_oracle, OracleModel};

fn assert_matches_oracle(model: PolymerModel, omodel: OracleModel, d: u32, l: u32, maxv: u32) {
    let req = CensusRequest::rooted(model, d, l, Norm::Sup, maxv);
    let census = enumerate(&req).expect("enumeration succeeds");
    let want = census_oracle(omodel, d as usize, l as i64, maxv as usize);
    assert_eq!(
        census.counts, want,
        "{model} d={d} L={l} max_vertices={maxv}"
    );
}

#[test]
fn king_lattice_trees_to_five_vertices() {
    assert_matches_oracle(PolymerModel::Trees, OracleModel::Trees, 2, 1, 5);
}

#[test]
fn king_lattice_animals_to_five_vertices() {
    assert_matches_oracle(PolymerModel::Animals, OracleModel::Animals, 2, 1, 5);
}

#[test]
fn spread_out_line_both_models() {
    assert_matches_oracle(PolymerModel::Trees, OracleModel::Trees, 1, 2, 6);
    assert_matches_oracle(PolymerModel::Animals, OracleModel::Animals, 1, 2, 5);
    assert_matches_oracle(PolymerModel::Trees, OracleModel::Trees, 1, 3, 4);
}

#[test]
fn full_small_parameter_grid() {
    for model in [PolymerModel::Trees, PolymerModel::Animals] {
        let omodel = match model {
            PolymerModel::Trees => OracleModel::Trees,
            PolymerModel::Animals => OracleModel::Animals,
        };
        for d in [1u32, 2] {
            for l in [1u32, 2] {
                assert_matches_oracle(model, omodel, d, l, 4);
            }
        }
    }
}

#[test]
fn three_dimensional_smoke() {
    assert_matches_oracle(PolymerModel::Trees, OracleModel::Trees, 3, 1, 3);
    assert_matches_oracle(PolymerModel::Animals, OracleModel::Animals, 3, 1, 3);
}
