//! Prints the documents generated for the bundled FlightService model.

use nfpc_core::{
    emit_bundles, parse_model, transform_model, EmitConfig, FunctionIdMode, TypeLibrary,
};

fn main() {
    let entity = std::env::args().any(|a| a == "--entity");
    let model =
        parse_model(include_str!("../fixtures/flight_service.model")).expect("fixture parses");
    let artifacts = transform_model(&model, &TypeLibrary::builtin()).expect("fixture transforms");
    let config = EmitConfig {
        function_ids: if entity {
            FunctionIdMode::Entity
        } else {
            FunctionIdMode::XacmlUrn
        },
        ..EmitConfig::default()
    };
    for bundle in emit_bundles(&model, &artifacts, &config) {
        for (name, text) in bundle.files(true) {
            println!("==> {name} <==\n{text}");
        }
    }
}
