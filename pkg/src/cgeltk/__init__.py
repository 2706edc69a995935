"""Tools for CGEL-formalism treebanks and their UD/PTB parallels."""

from .labels import FUNCTIONS, POS_TAGS, FunctionHierarchy, subsumes
from .model import CgelTree, Gap, Lexeme, Phrase, census, lexemes, terminals
from .notation import NotationDocument, ParseError, parse, read_file, serialize
from .validate import Violation, validate, validate_corpus

__version__ = "0.1.0"

__all__ = [
    "FUNCTIONS", "POS_TAGS", "FunctionHierarchy", "subsumes",
    "CgelTree", "Gap", "Lexeme", "Phrase", "census", "lexemes", "terminals",
    "NotationDocument", "ParseError", "parse", "read_file", "serialize",
    "Violation", "validate", "validate_corpus",
]
