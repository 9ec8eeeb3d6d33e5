//! File formats: Burmeister `.cxt` contexts and JSON documents.

mod cxt;
mod json;

pub use cxt::{parse_cxt, parse_cxt_bytes, serialize_cxt};
pub use json::{
    description_records, implication_records, implications_from_records, parse_implications,
    parse_partial_context, partial_context_from_records, write_implications,
    write_partial_context, DescriptionRecord, ImplicationRecord,
};
