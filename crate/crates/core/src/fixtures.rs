//! Embedded reference matrices.

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// Stable id of the 10×10 UK 2010 correlation fragment.
pub const UK2010_ID: &str = "uk2010";

/// Raw CSV text of the UK 2010 fragment, exactly as shipped.
pub const UK2010_CSV: &str = include_str!("../fixtures/uk2010.csv");

/// 10×10 Pearson correlation fragment of UK equity returns, 2010.
pub fn uk2010() -> SquareMatrix {
    SquareMatrix::parse_csv(UK2010_CSV).expect("embedded fixture is well formed")
}

/// Raw CSV text for a fixture id.
pub fn fixture_csv(id: &str) -> Result<&'static str> {
    match id {
        UK2010_ID => Ok(UK2010_CSV),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

pub fn fixture(id: &str) -> Result<SquareMatrix> {
    SquareMatrix::parse_csv(fixture_csv(id)?)
}
