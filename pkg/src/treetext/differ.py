"""Semantic diff and patch. Patches are themselves tree documents.

Because the notation has exactly one text for every tree, two documents
differ semantically exactly when their serializations differ, and a
diff over the text structure IS a diff over meaning.  The edit script
dialect (PatchTL) has four operations, one per line:

    keep <n>      advance past n matching siblings
    delete <n>    drop the next n siblings (whole subtrees)
    insert        children of this node are inserted subtrees
    descend       enter the next sibling; children are nested operations

Operations at depth 0 address the document's roots; a ``descend``
node's children address the entered node's children, and so on.

The diff algorithm runs a longest-common-subsequence match over the
sibling lines at each level (full lines, not first words), breaking
ties toward the earliest match and toward delete-before-insert, then
recurses into matched pairs whose subtrees still differ.  Unmatched
runs are deleted or inserted whole; there is no move detection.

Guarantees: ``apply_patch(diff(a, b), a) == b`` for all documents, and
``diff(a, b)`` contains an insert or delete operation if and only if
the serializations of a and b differ.  ``diff(a, a)`` is the single
line ``keep <root count>``.
"""

from __future__ import annotations

from treetext.core import NodePath, TreeDocument, TreeError, TreeNode

KEEP = "keep"
DELETE = "delete"
INSERT = "insert"
DESCEND = "descend"


class PatchFormatError(TreeError):
    """The patch document is not well-formed PatchTL."""

    def __init__(self, message: str, path: NodePath = ()):
        super().__init__(f"{message} (at patch path {list(path)})" if path else message)
        self.path = path


class PatchMismatchError(TreeError):
    """The patch does not fit the document it was applied to."""

    def __init__(self, message: str, path: NodePath = ()):
        super().__init__(f"{message} (at path {list(path)})")
        self.path = path


# ---------------------------------------------------------------------------
# diff


def diff(a: TreeDocument, b: TreeDocument) -> TreeDocument:
    """Compute a PatchTL document p with apply_patch(p, a) == b."""
    patch = TreeDocument()
    patch.roots = _diff_siblings(a.roots, b.roots)
    if not patch.roots:
        patch.roots = [TreeNode(f"{KEEP} 0")]
    return patch


def _diff_siblings(old: "list[TreeNode]", new: "list[TreeNode]") -> "list[TreeNode]":
    table = _lcs_table(old, new)
    ops: "list[TreeNode]" = []
    i = j = 0
    while i < len(old) or j < len(new):
        if (
            i < len(old)
            and j < len(new)
            and old[i].line == new[j].line
            and table[i][j] == table[i + 1][j + 1] + 1
        ):
            if old[i] == new[j]:
                _bump_count(ops, KEEP)
            else:
                node = TreeNode(DESCEND)
                node.children = _diff_siblings(old[i].children, new[j].children)
                ops.append(node)
            i += 1
            j += 1
        elif i < len(old) and (j >= len(new) or table[i + 1][j] >= table[i][j + 1]):
            _bump_count(ops, DELETE)
            i += 1
        else:
            _append_insert(ops, new[j])
            j += 1
    return ops


def _lcs_table(old, new) -> "list[list[int]]":
    # table[i][j] = LCS length of old[i:] vs new[j:], keyed on lines.
    table = [[0] * (len(new) + 1) for _ in range(len(old) + 1)]
    for i in range(len(old) - 1, -1, -1):
        row, below = table[i], table[i + 1]
        for j in range(len(new) - 1, -1, -1):
            if old[i].line == new[j].line:
                row[j] = below[j + 1] + 1
            else:
                row[j] = below[j] if below[j] >= row[j + 1] else row[j + 1]
    return table


def _bump_count(ops, word) -> None:
    if ops and ops[-1].first_word == word:
        count = int(ops[-1].words[1])
        ops[-1].set_line(f"{word} {count + 1}")
    else:
        ops.append(TreeNode(f"{word} 1"))


def _append_insert(ops, subtree: TreeNode) -> None:
    if not (ops and ops[-1].line == INSERT):
        ops.append(TreeNode(INSERT))
    ops[-1].children.append(subtree.clone())


# ---------------------------------------------------------------------------
# apply


def apply_patch(patch: TreeDocument, doc: TreeDocument) -> TreeDocument:
    """Replay a PatchTL document against doc, producing a new document.

    Raises PatchFormatError for malformed patches and PatchMismatchError
    when keep/delete/descend counts do not fit doc; the error's path
    names the position in doc where consumption failed.
    """
    result = TreeDocument()
    result.roots = _apply_ops(patch.roots, doc.roots, (), ())
    return result


def _apply_ops(ops, source, path: NodePath, op_path: NodePath) -> "list[TreeNode]":
    out: "list[TreeNode]" = []
    i = 0
    for k, op in enumerate(ops):
        kind = op.first_word
        if kind in (KEEP, DELETE):
            count = _read_count(op, op_path + (k,))
            if i + count > len(source):
                raise PatchMismatchError(
                    f"{kind} {count} overruns {len(source) - i} remaining sibling(s)",
                    path + (i,),
                )
            if kind == KEEP:
                out.extend(source[m].clone() for m in range(i, i + count))
            i += count
        elif kind == INSERT:
            if op.content:
                raise PatchFormatError("insert takes no words", op_path + (k,))
            out.extend(child.clone() for child in op.children)
        elif kind == DESCEND:
            if op.content:
                raise PatchFormatError("descend takes no words", op_path + (k,))
            if i >= len(source):
                raise PatchMismatchError("descend overruns the sibling list", path + (i,))
            node = TreeNode(source[i].line)
            node.children = _apply_ops(
                op.children, source[i].children, path + (i,), op_path + (k,)
            )
            out.append(node)
            i += 1
        else:
            raise PatchFormatError(f"unknown operation {kind!r}", op_path + (k,))
    if i != len(source):
        raise PatchMismatchError(
            f"patch left {len(source) - i} sibling(s) unconsumed", path + (i,)
        )
    return out


def _read_count(op: TreeNode, op_path: NodePath) -> int:
    if op.children:
        raise PatchFormatError(f"{op.first_word} takes no children", op_path)
    words = op.words
    if len(words) != 2 or not words[1].isdigit():
        raise PatchFormatError(f"{op.first_word} needs one nonnegative count", op_path)
    return int(words[1])
