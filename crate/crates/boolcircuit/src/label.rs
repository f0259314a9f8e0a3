use crate::{CircuitError, Result};
use std::fmt;

/// One of the four grid labels +1, -1, +2, -2.
///
/// Two-bit circuit outputs encode labels as `(b0, b1)` with `b0` selecting
/// magnitude 2 and `b1` selecting negative sign: `00` is +1, `01` is -1,
/// `10` is +2 and `11` is -2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TuckerLabel {
    Plus1,
    Minus1,
    Plus2,
    Minus2,
}

impl TuckerLabel {
    pub const ALL: [TuckerLabel; 4] =
        [TuckerLabel::Plus1, TuckerLabel::Minus1, TuckerLabel::Plus2, TuckerLabel::Minus2];

    pub fn value(self) -> i8 {
        match self {
            TuckerLabel::Plus1 => 1,
            TuckerLabel::Minus1 => -1,
            TuckerLabel::Plus2 => 2,
            TuckerLabel::Minus2 => -2,
        }
    }

    pub fn from_value(v: i8) -> Result<Self> {
        match v {
            1 => Ok(TuckerLabel::Plus1),
            -1 => Ok(TuckerLabel::Minus1),
            2 => Ok(TuckerLabel::Plus2),
            -2 => Ok(TuckerLabel::Minus2),
            _ => Err(CircuitError::Structure(format!("no label has value {v}"))),
        }
    }

    pub fn negate(self) -> Self {
        match self {
            TuckerLabel::Plus1 => TuckerLabel::Minus1,
            TuckerLabel::Minus1 => TuckerLabel::Plus1,
            TuckerLabel::Plus2 => TuckerLabel::Minus2,
            TuckerLabel::Minus2 => TuckerLabel::Plus2,
        }
    }

    /// The two-bit circuit encoding `(b0, b1)`.
    pub fn to_bits(self) -> (bool, bool) {
        match self {
            TuckerLabel::Plus1 => (false, false),
            TuckerLabel::Minus1 => (false, true),
            TuckerLabel::Plus2 => (true, false),
            TuckerLabel::Minus2 => (true, true),
        }
    }

    pub fn from_bits(b0: bool, b1: bool) -> Self {
        match (b0, b1) {
            (false, false) => TuckerLabel::Plus1,
            (false, true) => TuckerLabel::Minus1,
            (true, false) => TuckerLabel::Plus2,
            (true, true) => TuckerLabel::Minus2,
        }
    }
}

impl fmt::Display for TuckerLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            v if v > 0 => write!(f, "+{v}"),
            v => write!(f, "{v}"),
        }
    }
}

/// A four-bit output word of a labelling circuit.  Only four patterns are
/// legal: 1110 for +1, 0001 for -1, 0111 for +2 and 1000 for -2.  Bitwise
/// complement swaps each word with the word of the negated label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelWord {
    bits: [bool; 4],
}

impl LabelWord {
    pub fn from_bits(bits: [bool; 4]) -> Result<Self> {
        let w = LabelWord { bits };
        w.label()?;
        Ok(w)
    }

    pub fn bits(self) -> [bool; 4] {
        self.bits
    }

    pub fn complement(self) -> Self {
        LabelWord { bits: [!self.bits[0], !self.bits[1], !self.bits[2], !self.bits[3]] }
    }

    pub fn label(self) -> Result<TuckerLabel> {
        match self.bits {
            [true, true, true, false] => Ok(TuckerLabel::Plus1),
            [false, false, false, true] => Ok(TuckerLabel::Minus1),
            [false, true, true, true] => Ok(TuckerLabel::Plus2),
            [true, false, false, false] => Ok(TuckerLabel::Minus2),
            b => Err(CircuitError::Structure(format!(
                "illegal label word {}",
                b.iter().map(|&x| if x { '1' } else { '0' }).collect::<String>()
            ))),
        }
    }
}

impl fmt::Display for LabelWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// The legal output word for a label.
pub fn label_word_of(label: TuckerLabel) -> LabelWord {
    let bits = match label {
        TuckerLabel::Plus1 => [true, true, true, false],
        TuckerLabel::Minus1 => [false, false, false, true],
        TuckerLabel::Plus2 => [false, true, true, true],
        TuckerLabel::Minus2 => [true, false, false, false],
    };
    LabelWord { bits }
}
