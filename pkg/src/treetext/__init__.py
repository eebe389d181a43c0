"""treetext: a total, lossless toolkit for indentation-structured trees.

The core guarantee: ``parse`` accepts every string and ``serialize``
reproduces it byte for byte.  On top of that sit JSON interconversion
(:mod:`treetext.codec`), semantic diff/patch (:mod:`treetext.differ`),
and a small grammar engine with validation, autofix, and template
compilation (:mod:`treetext.grammar`).  ``treetext.cli`` exposes the
same operations as a command-line tool.
"""

from treetext.core import (
    INDENT,
    NEWLINE,
    WORD_SEP,
    InvalidLineError,
    NodePath,
    PathNotFoundError,
    TreeDocument,
    TreeError,
    TreeNode,
    parse,
    parse_parallel,
    serialize,
)
from treetext.codec import (
    ConversionError,
    DecodeError,
    JsonValue,
    from_json_typed,
    from_json_untyped,
    from_map,
    to_json_typed,
    to_map,
)
from treetext.differ import (
    PatchFormatError,
    PatchMismatchError,
    apply_patch,
    diff,
)
from treetext.grammar import (
    CellTypeDef,
    CompileError,
    Grammar,
    GrammarLoadError,
    NodeTypeDef,
    TlError,
    autofix,
    builtin_grammar_text,
    check,
    check_parallel,
    compile_doc,
    load_builtin_grammar,
    load_grammar,
)

__version__ = "0.1.0"

__all__ = [
    "INDENT",
    "NEWLINE",
    "WORD_SEP",
    "NodePath",
    "TreeError",
    "InvalidLineError",
    "PathNotFoundError",
    "TreeNode",
    "TreeDocument",
    "parse",
    "parse_parallel",
    "serialize",
    "JsonValue",
    "ConversionError",
    "DecodeError",
    "from_json_untyped",
    "from_json_typed",
    "to_json_typed",
    "to_map",
    "from_map",
    "diff",
    "apply_patch",
    "PatchFormatError",
    "PatchMismatchError",
    "Grammar",
    "NodeTypeDef",
    "CellTypeDef",
    "TlError",
    "GrammarLoadError",
    "CompileError",
    "load_grammar",
    "load_builtin_grammar",
    "builtin_grammar_text",
    "check",
    "check_parallel",
    "autofix",
    "compile_doc",
    "__version__",
]
