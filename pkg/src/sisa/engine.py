"""Queue-and-propagate scoring of dependency trees.

The tree is evaluated bottom-up. Matching nodes instantiate pending
operations that climb one head link per level; where an instance's countdown
reaches zero it is dequeued and applied, transforming either the level head's
lexical score, one child branch's accumulated score, or the whole accumulated
level. Instances still pending at the root are force-applied there rather
than dropped. A full trace of every trigger, application and discard is
returned alongside the sentence score.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .conllu import DepTree, Token
from .lexicon import SentimentLexicon, WordList
from .operations import (
    ALL,
    BRANCH,
    SUBJL,
    SUBJR,
    TARGET,
    WEIGHTING,
    OperationDefinition,
    PendingOperation,
    ScopeSpec,
    apply_shift,
    apply_weighting,
)
from .util import format_so


@dataclass
class BranchState:
    """One child branch at a level: who heads it, its bare deprel, and the
    accumulated (possibly already transformed) score of its subtree."""

    child_id: int
    deprel: str
    so: float


@dataclass
class LevelState:
    """Mutable scoring state of one node while operations apply at it."""

    head_id: int
    head_so: float
    branches: list[BranchState]
    adjustment: float = 0.0

    def total(self) -> float:
        return self.head_so + sum(b.so for b in self.branches) + self.adjustment


@dataclass(frozen=True)
class ScopeSelection:
    """Outcome of scope resolution: which spec matched and, for branch-like
    scopes, which branch it selected."""

    spec: ScopeSpec
    branch: BranchState | None = None


def resolve_scope(
    scopes: Sequence[ScopeSpec], level: LevelState, origin_id: int
) -> ScopeSelection | None:
    """Try scope specs in order and return the first match, or None.

    ``origin_id`` is the surface position through which the operation entered
    the level (the trigger itself when it triggered here). target requires a
    nonzero head score; b(x) the leftmost branch with that deprel and nonzero
    score; subjl/subjr the leftmost nonzero branch strictly left/right of the
    origin; all always matches.
    """
    for spec in scopes:
        if spec.kind == TARGET:
            if level.head_so != 0:
                return ScopeSelection(spec)
        elif spec.kind == BRANCH:
            for branch in level.branches:
                if branch.deprel == spec.deprel and branch.so != 0:
                    return ScopeSelection(spec, branch)
        elif spec.kind == SUBJL:
            for branch in level.branches:
                if branch.child_id < origin_id and branch.so != 0:
                    return ScopeSelection(spec, branch)
        elif spec.kind == SUBJR:
            for branch in level.branches:
                if branch.child_id > origin_id and branch.so != 0:
                    return ScopeSelection(spec, branch)
        elif spec.kind == ALL:
            return ScopeSelection(spec)
    return None


@dataclass
class TriggerRecord:
    """A rule firing at a node."""

    rule: str
    delta: int
    beta: float | None = None
    missing_booster: bool = False


@dataclass
class ApplyRecord:
    """One operation dequeued at a level: what it selected and what changed."""

    rule: str
    trigger_id: int
    scope: str
    before: float | None
    after: float | None
    forced: bool = False
    discarded: bool = False
    backoff: bool = False


@dataclass
class NodeTrace:
    """Per-node record: lexical score, rule firings, applications at this
    level, and the final accumulated subtree score."""

    token_id: int
    form: str
    lexical_so: float
    triggers: list[TriggerRecord] = field(default_factory=list)
    applications: list[ApplyRecord] = field(default_factory=list)
    subtree_so: float = 0.0


@dataclass
class SoTrace:
    """Complete, deterministic account of one sentence evaluation."""

    nodes: list[NodeTrace]
    sentence_so: float
    warnings: list[str] = field(default_factory=list)

    def render(self) -> str:
        """Byte-stable plain-text rendering (used for golden files and the
        trace subcommand)."""
        lines: list[str] = []
        for node in self.nodes:
            lines.append(
                f"node\t{node.token_id}\t{node.form}\tlexical\t{format_so(node.lexical_so)}"
            )
            for trig in node.triggers:
                line = f"\ttrigger\t{trig.rule}\tdelta\t{trig.delta}"
                if trig.beta is not None:
                    line += f"\tbeta\t{format_so(trig.beta)}"
                if trig.missing_booster:
                    line += "\tmissing-booster"
                lines.append(line)
            for app in node.applications:
                if app.discarded:
                    line = f"\tdiscard\t{app.rule}\ttrigger\t{app.trigger_id}"
                    if app.forced:
                        line += "\tforced"
                    lines.append(line)
                    continue
                line = (
                    f"\tapply\t{app.rule}\ttrigger\t{app.trigger_id}"
                    f"\tscope\t{app.scope}"
                    f"\tbefore\t{format_so(app.before)}\tafter\t{format_so(app.after)}"
                )
                if app.forced:
                    line += "\tforced"
                if app.backoff:
                    line += "\tbackoff"
                lines.append(line)
            lines.append(f"\tsubtree\t{format_so(node.subtree_so)}")
        for warning in self.warnings:
            lines.append(f"warn\t{warning}")
        lines.append(f"sentence\t{format_so(self.sentence_so)}")
        return "\n".join(lines) + "\n"


def _booster_value(
    source: str, token: Token, lists: Mapping[str, WordList]
) -> tuple[float, bool]:
    """Snapshot the booster value for a trigger: form first, then lemma.

    Returns (value, missing); absent words fall back to 0 (a no-op weighting)
    so a misconfigured list degrades loudly in the trace, not with a crash.
    """
    wordlist = lists.get(source)
    if wordlist is None:
        return 0.0, True
    value = wordlist.value(token.form.lower())
    if value is None:
        value = wordlist.value(token.lemma.lower())
    if value is None:
        return 0.0, True
    return value, False


def _transform(pending: PendingOperation, so: float) -> float:
    transform = pending.definition.transform
    if transform.kind == WEIGHTING:
        beta = transform.param
        if beta is None:
            beta = pending.resolved_beta if pending.resolved_beta is not None else 0.0
        return apply_weighting(beta, so)
    return apply_shift(transform.param, so)


def _apply_batch(
    batch: list[tuple[PendingOperation, int]],
    level: LevelState,
    node_trace: NodeTrace,
    forced: bool,
) -> None:
    """Dequeue a batch at one level: higher priority first, then leftmost
    trigger. Transformed constituents stay visible to later operations."""
    batch.sort(key=lambda item: (-item[0].definition.priority, item[0].trigger_id))
    for pending, origin_id in batch:
        name = pending.definition.name
        selection = resolve_scope(pending.definition.scopes, level, origin_id)
        if selection is None:
            node_trace.applications.append(
                ApplyRecord(name, pending.trigger_id, "none", None, None, forced, discarded=True)
            )
            continue
        kind = selection.spec.kind
        if kind == TARGET:
            before = level.head_so
            after = _transform(pending, before)
            level.head_so = after
            scope_text = TARGET
        elif kind == ALL:
            before = level.total()
            after = _transform(pending, before)
            level.adjustment += after - before
            scope_text = ALL
        else:
            branch = selection.branch
            before = branch.so
            after = _transform(pending, before)
            branch.so = after
            scope_text = f"{selection.spec}:{branch.child_id}"
        node_trace.applications.append(
            ApplyRecord(
                name,
                pending.trigger_id,
                scope_text,
                before,
                after,
                forced,
                backoff=kind == ALL,
            )
        )


def compute_so(
    tree: DepTree,
    lex: SentimentLexicon,
    defs: Sequence[OperationDefinition],
    lists: Mapping[str, WordList] | None = None,
) -> SoTrace:
    """Score one sentence and return the full trace.

    Post-order over the tree: children are evaluated first; pending
    operations arriving from a child have their countdown decremented; rules
    matching the node itself are instantiated with a fresh countdown; every
    instance at zero is dequeued and applied here (higher priority first,
    leftmost trigger on ties); the level total is the possibly-transformed
    head score plus all branch scores; instances still counting down climb
    on, and any left over at the root are force-applied there.
    """
    lists = lists or {}
    traces: dict[int, NodeTrace] = {}
    results: dict[int, tuple[float, list[PendingOperation]]] = {}
    warnings: list[str] = []

    stack: list[tuple[int, bool]] = [(tree.root_id, False)]
    while stack:
        node_id, expanded = stack.pop()
        if not expanded:
            stack.append((node_id, True))
            for child_id in reversed(tree.children(node_id)):
                stack.append((child_id, False))
            continue

        token = tree.token(node_id)
        lexical = lex.lookup(token.form, token.lemma, token.upos)
        node_trace = NodeTrace(node_id, token.form, lexical)
        traces[node_id] = node_trace

        branches: list[BranchState] = []
        carried: list[tuple[PendingOperation, int]] = []
        for child_id in tree.children(node_id):
            child_so, child_pending = results.pop(child_id)
            branches.append(BranchState(child_id, tree.token(child_id).bare_deprel, child_so))
            for pending in child_pending:
                pending.remaining -= 1
                carried.append((pending, child_id))

        for definition in defs:
            if definition.matches(token):
                beta: float | None = None
                if definition.transform.booster_source is not None:
                    beta, missing = _booster_value(
                        definition.transform.booster_source, token, lists
                    )
                    if missing:
                        warnings.append(
                            f"rule {definition.name}: no booster value for trigger "
                            f"{token.form!r} (token {node_id}); using 0"
                        )
                    node_trace.triggers.append(
                        TriggerRecord(definition.name, definition.delta, beta, missing)
                    )
                else:
                    node_trace.triggers.append(TriggerRecord(definition.name, definition.delta))
                carried.append(
                    (PendingOperation(definition, node_id, definition.delta, beta), node_id)
                )

        level = LevelState(node_id, lexical, branches)
        ready = [(p, origin) for p, origin in carried if p.remaining == 0]
        climbing = [(p, origin) for p, origin in carried if p.remaining > 0]
        _apply_batch(ready, level, node_trace, forced=False)
        if node_id == tree.root_id and climbing:
            _apply_batch(climbing, level, node_trace, forced=True)
            climbing = []

        subtree_so = level.total()
        node_trace.subtree_so = subtree_so
        results[node_id] = (subtree_so, [p for p, _ in climbing])

    sentence_so = results[tree.root_id][0]
    ordered = [traces[token.id] for token in tree.tokens]
    return SoTrace(ordered, sentence_so, warnings)
