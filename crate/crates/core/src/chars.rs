//! Code points the rest of the crate refers to by name.

use unicode_general_category::{get_general_category, GeneralCategory};

pub const ZWNJ: char = '\u{200C}';
pub const ARABIC_YEH: char = '\u{064A}';
pub const ALEF_MAKSURA: char = '\u{0649}';
pub const FARSI_YEH: char = '\u{06CC}';
pub const ARABIC_KAF: char = '\u{0643}';
pub const KEHEH: char = '\u{06A9}';
pub const TATWEEL: char = '\u{0640}';
pub const FATHATAN: char = '\u{064B}';

/// Unicode general categories P* and S*.
pub fn is_punct_or_symbol(c: char) -> bool {
    use GeneralCategory::*;
    matches!(
        get_general_category(c),
        ConnectorPunctuation
            | DashPunctuation
            | OpenPunctuation
            | ClosePunctuation
            | InitialPunctuation
            | FinalPunctuation
            | OtherPunctuation
            | MathSymbol
            | CurrencySymbol
            | ModifierSymbol
            | OtherSymbol
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn persian_punctuation_is_separator() {
        for c in ['،', '؛', '؟', '«', '»', '.', '!', '%', '+', '…', '$'] {
            assert!(is_punct_or_symbol(c), "{c:?}");
        }
        for c in [ZWNJ, 'ک', '۱', 'a', FATHATAN, TATWEEL] {
            assert!(!is_punct_or_symbol(c), "{c:?}");
        }
    }
}
