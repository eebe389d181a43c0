"""A deliberately minimal grammar engine for line-oriented tree dialects.

A grammar names the node types a document may contain, the cell types
that constrain the words of each line, and an optional compile template
per node type.  Checking a document yields a flat list of errors; each
subtree is checked independently of its siblings, so one broken branch
never hides problems elsewhere.  Unknown first words get a spelling
suggestion when a known one is close, and ``autofix`` applies those
suggestions mechanically.

Grammar files are themselves tree documents::

    grammar <name>
    celltype <name>
     base word|int|float|bool|any
     enum <value> <value> ...
     regex <pattern>
    nodetype <name>
     match <first-word>
     cells <celltype> ...
     catchAllCell <celltype>
     children <nodetype> ...
     catchAllChild <nodetype>
     root
     compile <template>

``match`` defaults to the node type's name.  ``root`` marks a type legal
at depth 0; ``root catchall`` makes it match any first word at depth 0,
which is how key-value dialects admit arbitrary keys.  A ``catchAllChild``
plays the same role below a node.  Directives outside this list are load
errors: grammars are the trusted layer.

Compile templates are flat substitutions.  ``{0}``, ``{1}``, ... insert
the words after the first word; ``{N+}`` inserts words N+1 onward joined
by spaces; ``{w}`` inserts the first word itself; ``{c}`` inserts the
compiled children joined by newlines, and ``{c|SEP}`` joins them with SEP
instead (for example ``{c|,}`` for comma-separated output).  Anything
else in the template is literal text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from treetext.core import (
    NEWLINE,
    WORD_SEP,
    NodePath,
    TreeDocument,
    TreeError,
    TreeNode,
    parse,
)

# Error kinds reported by check() and by the typed codecs.
UNKNOWN_NODE_TYPE = "unknownNodeType"
CELL_TYPE_MISMATCH = "cellTypeMismatch"
ARITY_MISMATCH = "arityMismatch"
ILLEGAL_CHILD = "illegalChild"
DUPLICATE_ROOT = "duplicateRoot"

CELL_BASES = ("word", "int", "float", "bool", "any")

_INT_RE = re.compile(r"[+-]?[0-9]+")
_FLOAT_RE = re.compile(r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")


@dataclass(frozen=True)
class TlError:
    """One language-level error, locatable in the checked document."""

    path: NodePath
    kind: str
    message: str
    suggestion: Optional[str] = None


class GrammarLoadError(TreeError):
    """The grammar file itself is malformed."""

    def __init__(self, message: str, path: NodePath = ()):
        super().__init__(f"{message} (at path {list(path)})" if path else message)
        self.path = path


class CompileError(TreeError):
    """Compilation refused or failed; ``errors`` holds pending check errors."""

    def __init__(self, message: str, path: NodePath = (), errors: "tuple[TlError, ...]" = ()):
        super().__init__(message)
        self.path = path
        self.errors = errors


@dataclass(frozen=True)
class CellTypeDef:
    name: str
    base: str = "any"
    enum_values: Optional[frozenset] = None
    pattern: Optional["re.Pattern[str]"] = None

    def accepts(self, word: str) -> bool:
        if self.base == "word":
            if word == "":
                return False
        elif self.base == "int":
            if _INT_RE.fullmatch(word) is None:
                return False
        elif self.base == "float":
            if _FLOAT_RE.fullmatch(word) is None:
                return False
        elif self.base == "bool":
            if word not in ("true", "false"):
                return False
        if self.enum_values is not None and word not in self.enum_values:
            return False
        if self.pattern is not None and self.pattern.fullmatch(word) is None:
            return False
        return True


@dataclass
class NodeTypeDef:
    name: str
    match: str
    cells: "tuple[str, ...]" = ()
    catch_all_cell: Optional[str] = None
    child_types: "tuple[str, ...]" = ()
    catch_all_child: Optional[str] = None
    is_root: bool = False
    is_root_catch_all: bool = False
    template: Optional[str] = None


@dataclass
class Grammar:
    """An immutable (after load) tree-language definition."""

    name: str = ""
    node_types: "dict[str, NodeTypeDef]" = field(default_factory=dict)
    cell_types: "dict[str, CellTypeDef]" = field(default_factory=dict)
    root_types: "tuple[str, ...]" = ()
    root_catch_all: Optional[str] = None

    def _root_context(self) -> "_Context":
        named = tuple(
            self.node_types[n] for n in self.root_types if n != self.root_catch_all
        )
        return _Context(
            named,
            self.node_types[self.root_catch_all] if self.root_catch_all else None,
        )

    def _child_context(self, node_type: NodeTypeDef) -> "_Context":
        return _Context(
            tuple(self.node_types[n] for n in node_type.child_types),
            self.node_types[node_type.catch_all_child] if node_type.catch_all_child else None,
        )


@dataclass(frozen=True)
class _Context:
    """The node types admissible at one position in the tree."""

    candidates: "tuple[NodeTypeDef, ...]"
    catch_all: Optional[NodeTypeDef]

    def resolve(self, first_word: str) -> Optional[NodeTypeDef]:
        for candidate in self.candidates:
            if candidate.match == first_word:
                return candidate
        return self.catch_all

    def match_words(self) -> "list[str]":
        return sorted({c.match for c in self.candidates})


# ---------------------------------------------------------------------------
# loading


def load_grammar(text: str) -> Grammar:
    """Parse and validate a grammar file. Raises GrammarLoadError."""
    doc = parse(text)
    grammar = Grammar()
    named = False
    pending_refs: "list[tuple[NodePath, str, str]]" = []  # (path, kind, name)

    for i, block in enumerate(doc.roots):
        words = block.words
        keyword = words[0]
        if keyword == "grammar":
            if named:
                raise GrammarLoadError("duplicate grammar name", (i,))
            if block.children:
                raise GrammarLoadError("grammar directive takes no children", (i,))
            grammar.name = block.content
            named = True
        elif keyword == "nodetype":
            name = _block_name(block, (i,))
            if name in grammar.node_types:
                raise GrammarLoadError(f"duplicate nodetype {name!r}", (i,))
            grammar.node_types[name] = _load_node_type(name, block, (i,), grammar, pending_refs)
        elif keyword == "celltype":
            name = _block_name(block, (i,))
            if name in grammar.cell_types:
                raise GrammarLoadError(f"duplicate celltype {name!r}", (i,))
            grammar.cell_types[name] = _load_cell_type(name, block, (i,))
        elif block.line == "":
            continue  # blank separator lines are fine
        else:
            raise GrammarLoadError(f"unknown directive {keyword!r}", (i,))

    for path, kind, name in pending_refs:
        if kind == "cell" and name not in grammar.cell_types:
            raise GrammarLoadError(f"reference to unknown celltype {name!r}", path)
        if kind == "node" and name not in grammar.node_types:
            raise GrammarLoadError(f"reference to unknown nodetype {name!r}", path)

    grammar.root_types = tuple(n for n, nt in grammar.node_types.items() if nt.is_root)
    catch_all_roots = [n for n, nt in grammar.node_types.items() if nt.is_root_catch_all]
    if len(catch_all_roots) > 1:
        raise GrammarLoadError("more than one catch-all root nodetype")
    grammar.root_catch_all = catch_all_roots[0] if catch_all_roots else None
    if not grammar.root_types:
        raise GrammarLoadError("empty root type set: no nodetype is marked root")
    return grammar


def _block_name(block: TreeNode, path: NodePath) -> str:
    words = block.words
    if len(words) != 2 or words[1] == "":
        raise GrammarLoadError(f"{words[0]} needs exactly one name", path)
    return words[1]


def _single_word(node: TreeNode, path: NodePath) -> str:
    if len(node.words) != 2 or node.words[1] == "":
        raise GrammarLoadError(f"{node.first_word} needs exactly one value", path)
    return node.words[1]


def _word_list(node: TreeNode, path: NodePath) -> "tuple[str, ...]":
    values = tuple(w for w in node.words[1:] if w != "")
    if not values:
        raise GrammarLoadError(f"{node.first_word} needs at least one value", path)
    return values


def _load_node_type(name, block, path, grammar, pending_refs) -> NodeTypeDef:
    nt = NodeTypeDef(name=name, match=name)
    for j, directive in enumerate(block.children):
        dpath = path + (j,)
        if directive.children:
            raise GrammarLoadError("directives take no children", dpath)
        keyword = directive.first_word
        if keyword == "match":
            nt.match = _single_word(directive, dpath)
        elif keyword == "cells":
            nt.cells = _word_list(directive, dpath)
            pending_refs.extend((dpath, "cell", c) for c in nt.cells)
        elif keyword == "catchAllCell":
            nt.catch_all_cell = _single_word(directive, dpath)
            pending_refs.append((dpath, "cell", nt.catch_all_cell))
        elif keyword == "children":
            nt.child_types = _word_list(directive, dpath)
            pending_refs.extend((dpath, "node", c) for c in nt.child_types)
        elif keyword == "catchAllChild":
            nt.catch_all_child = _single_word(directive, dpath)
            pending_refs.append((dpath, "node", nt.catch_all_child))
        elif keyword == "root":
            if directive.content == "":
                nt.is_root = True
            elif directive.content == "catchall":
                nt.is_root = True
                nt.is_root_catch_all = True
            else:
                raise GrammarLoadError("root takes nothing or 'catchall'", dpath)
        elif keyword == "compile":
            nt.template = directive.content
        else:
            raise GrammarLoadError(f"unknown nodetype directive {keyword!r}", dpath)
    return nt


def _load_cell_type(name, block, path) -> CellTypeDef:
    base = "any"
    enum_values = None
    pattern = None
    for j, directive in enumerate(block.children):
        dpath = path + (j,)
        if directive.children:
            raise GrammarLoadError("directives take no children", dpath)
        keyword = directive.first_word
        if keyword == "base":
            base = _single_word(directive, dpath)
            if base not in CELL_BASES:
                raise GrammarLoadError(
                    f"unknown base {base!r}, expected one of {', '.join(CELL_BASES)}", dpath
                )
        elif keyword == "enum":
            enum_values = frozenset(_word_list(directive, dpath))
        elif keyword == "regex":
            try:
                pattern = re.compile(directive.content)
            except re.error as exc:
                raise GrammarLoadError(f"bad regex: {exc}", dpath) from None
        else:
            raise GrammarLoadError(f"unknown celltype directive {keyword!r}", dpath)
    return CellTypeDef(name=name, base=base, enum_values=enum_values, pattern=pattern)


# ---------------------------------------------------------------------------
# checking


def check(doc: TreeDocument, grammar: Grammar) -> "list[TlError]":
    """Check every node against the grammar; errors never stop the walk.

    Each depth-0 subtree is checked in isolation, so the errors for a
    concatenation of two documents are the union of their separate
    errors with the second document's paths offset.
    """
    errors: "list[TlError]" = []
    context = grammar._root_context()
    for i, root in enumerate(doc.roots):
        _check_node(root, (i,), context, grammar, errors)
    return errors


def check_parallel(doc: TreeDocument, grammar: Grammar, max_workers: Optional[int] = None) -> "list[TlError]":
    """Check depth-0 subtrees concurrently; result equals ``check``."""
    from concurrent.futures import ThreadPoolExecutor

    context = grammar._root_context()

    def check_root(item: "tuple[int, TreeNode]") -> "list[TlError]":
        i, root = item
        errors: "list[TlError]" = []
        _check_node(root, (i,), context, grammar, errors)
        return errors

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        per_root = list(pool.map(check_root, enumerate(doc.roots)))
    return [e for errors in per_root for e in errors]


def _check_node(node, path, context, grammar, errors) -> None:
    node_type = context.resolve(node.first_word)
    if node_type is None:
        first = node.first_word
        known_elsewhere = any(nt.match == first for nt in grammar.node_types.values())
        if known_elsewhere:
            errors.append(
                TlError(path, ILLEGAL_CHILD, f"node type {first!r} is not allowed here")
            )
        else:
            errors.append(
                TlError(
                    path,
                    UNKNOWN_NODE_TYPE,
                    f"unknown node type {first!r}",
                    suggestion=suggest(first, context.match_words()),
                )
            )
        return  # children of an unresolved node have no defined types

    _check_cells(node, path, node_type, grammar, errors)

    if not node.children:
        return
    if not node_type.child_types and node_type.catch_all_child is None:
        for j, _child in enumerate(node.children):
            errors.append(
                TlError(
                    path + (j,),
                    ILLEGAL_CHILD,
                    f"{node_type.name} nodes do not take children",
                )
            )
        return
    child_context = grammar._child_context(node_type)
    for j, child in enumerate(node.children):
        _check_node(child, path + (j,), child_context, grammar, errors)


def _check_cells(node, path, node_type, grammar, errors) -> None:
    values = node.words[1:]
    cells = node_type.cells
    if len(values) < len(cells):
        errors.append(
            TlError(
                path,
                ARITY_MISMATCH,
                f"expected {len(cells)} cells after {node.first_word!r}, got {len(values)}",
            )
        )
    elif len(values) > len(cells) and node_type.catch_all_cell is None:
        errors.append(
            TlError(
                path,
                ARITY_MISMATCH,
                f"expected {len(cells)} cells after {node.first_word!r}, got {len(values)}",
            )
        )
    for i, value in enumerate(values):
        if i < len(cells):
            cell_name = cells[i]
        elif node_type.catch_all_cell is not None:
            cell_name = node_type.catch_all_cell
        else:
            break
        cell = grammar.cell_types[cell_name]
        if not cell.accepts(value):
            suggestion = None
            if cell.enum_values is not None:
                suggestion = suggest(value, sorted(cell.enum_values))
            errors.append(
                TlError(
                    path,
                    CELL_TYPE_MISMATCH,
                    f"word {i + 2} {value!r} is not a valid {cell.name}",
                    suggestion=suggestion,
                )
            )


# ---------------------------------------------------------------------------
# suggestions and autofix


def levenshtein(a: str, b: str) -> int:
    """Plain edit distance (insert, delete, substitute all cost 1)."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def suggest(word: str, candidates: "list[str]", max_distance: int = 2) -> Optional[str]:
    """Nearest candidate within ``max_distance`` edits; ties go alphabetically."""
    best = None
    best_distance = max_distance + 1
    for candidate in sorted(candidates):
        distance = levenshtein(word, candidate)
        if distance < best_distance:
            best, best_distance = candidate, distance
    return best


def autofix(doc: TreeDocument, grammar: Grammar) -> TreeDocument:
    """Apply every first-word suggestion; idempotent, never raises.

    Only unknown-node-type errors carry applicable suggestions.  Fixing a
    node can make its children checkable for the first time, so the pass
    repeats until no applicable suggestion remains; the repeat count is
    bounded by the document depth.
    """
    fixed = doc.clone()
    for _ in range(fixed.max_depth() + 2):
        applicable = [
            e for e in check(fixed, grammar)
            if e.kind == UNKNOWN_NODE_TYPE and e.suggestion is not None
        ]
        if not applicable:
            break
        for error in applicable:
            node = fixed.get_node(error.path)
            words = node.words
            words[0] = error.suggestion
            node.set_line(WORD_SEP.join(words))
    return fixed


# ---------------------------------------------------------------------------
# compiling

_PLACEHOLDER = re.compile(r"\{(?:(w)|c(?:\|([^{}]*))?|([0-9]+)(\+?))\}")


def compile_doc(doc: TreeDocument, grammar: Grammar) -> str:
    """Render a checked document through its node types' templates.

    Refuses documents with pending check errors.  Nodes without a
    template contribute their compiled children joined by newlines.
    """
    errors = check(doc, grammar)
    if errors:
        raise CompileError(
            f"document has {len(errors)} error(s); fix them before compiling",
            errors=tuple(errors),
        )
    context = grammar._root_context()
    return NEWLINE.join(
        _render(root, (i,), context, grammar) for i, root in enumerate(doc.roots)
    )


def _render(node, path, context, grammar) -> str:
    node_type = context.resolve(node.first_word)  # check passed: never None
    child_context = grammar._child_context(node_type)
    rendered = [
        _render(child, path + (j,), child_context, grammar)
        for j, child in enumerate(node.children)
    ]
    if node_type.template is None:
        return NEWLINE.join(rendered)
    return _fill(node_type.template, node, rendered, path)


def _fill(template, node, rendered_children, path) -> str:
    words = node.words

    def substitute(match: "re.Match[str]") -> str:
        if match.group(1):  # {w}
            return words[0]
        index = match.group(3)
        if index is None:  # {c} or {c|SEP}
            separator = match.group(2)
            return (NEWLINE if separator is None else separator).join(rendered_children)
        position = int(index) + 1
        if match.group(4):  # {N+}: empty when no words remain
            return WORD_SEP.join(words[position:])
        if position >= len(words):
            raise CompileError(
                f"template placeholder {{{index}}} out of range for line {node.line!r}",
                path=path,
            )
        return words[position]

    return _PLACEHOLDER.sub(substitute, template)


# ---------------------------------------------------------------------------
# bundled grammars


def builtin_grammar_text(name: str) -> str:
    """Source text of a bundled grammar (``jsontl`` or ``maptl``)."""
    from importlib.resources import files

    resource = files("treetext").joinpath(f"grammars/{name}.grammar")
    if not resource.is_file():
        raise GrammarLoadError(f"no bundled grammar named {name!r}")
    return resource.read_text(encoding="utf-8")


def load_builtin_grammar(name: str) -> Grammar:
    return load_grammar(builtin_grammar_text(name))
