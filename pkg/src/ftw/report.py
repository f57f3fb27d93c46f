"""Analysis orchestration and line-oriented text reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import bits
from .cover import (FormalTopology, adjoin_top, booleanization, closed_subspace,
                    extract_presentation, validate_axioms)
from .document import Document, build_poset, build_space
from .errors import DocumentError, FrameError
from .frame import Frame, beta_cover, enumerate_frame, law_report, minimal_subcover
from .maps import canonical_positivity, enumerate_points, find_isomorphism
from .order import Poset


@dataclass
class AnalyzeOptions:
    laws: bool = False
    points: bool = False
    frame: bool = False
    presentation: bool = False
    booleanize: bool = False
    beta: bool = False
    closed: list[list[str]] = field(default_factory=list)
    adjoin_top: bool = False
    complete: bool = False
    max_base: Optional[int] = None


def _tf(flag: bool) -> str:
    return "true" if flag else "false"


def _witness(s: FormalTopology, verdict) -> str:
    a, *subsets = verdict.witness
    return "(" + ",".join([s.labels[a]] + [s.fmt(u) for u in subsets]) + ")"


def describe_space(s: FormalTopology, opts: AnalyzeOptions, header: str = "[space]") -> list[str]:
    out = [header]
    kind = s.backend if s.derivation is None else f"{s.backend}:{s.derivation[0]}"
    top = s.top
    out.append(f"kind={kind} base={s.n} elements={s.fmt(s.base)} "
               f"top={'-' if top is None else s.labels[top]} "
               f"nontrivial={_tf(not bits.is_subset(s.base, s.saturate(0)))}")
    verdict = validate_axioms(s)
    if verdict:
        out.append("axioms=valid")
    else:
        out.append(f"axioms=invalid axiom={verdict.law} witness={_witness(s, verdict)}")

    frame: Optional[Frame] = None
    if verdict:
        try:
            frame = enumerate_frame(s)
        except FrameError as exc:
            out.append(f"frame=unavailable reason={exc}")
    if frame is not None:
        out.append("[frame]")
        out.append(f"size={len(frame)} bottom={frame.fmt(frame.bottom)} top={frame.fmt(frame.top)}")
        if opts.frame:
            out.extend(s.fmt(u) for u in frame)
        if opts.laws:
            out.append("[laws]")
            out.extend(law_report(s, frame).lines(s))
            pos, pverdict = canonical_positivity(s)
            out.append(f"law=overt holds={_tf(bool(pverdict))} pos={s.fmt(pos.pos)}")
    elif opts.frame or opts.laws:
        out.append("[frame]")
        out.append("skipped=cover axioms fail")
    if opts.points:
        pts = enumerate_points(s, opts.max_base)
        out.append("[points]")
        out.append(f"count={len(pts)}")
        out.extend(s.fmt(p) for p in pts)
    if opts.presentation:
        out.append("[presentation]")
        for a, covers in enumerate(extract_presentation(s)):
            out.append(f"{s.labels[a]}: " + " | ".join(s.fmt(c) for c in covers))
    return out


def run_analyze(doc: Document, opts: AnalyzeOptions) -> str:
    s = build_space(doc, complete=opts.complete, max_base=opts.max_base)
    lines = describe_space(s, opts)
    derived = []
    for names in opts.closed:
        try:
            v = s.subset(names)
        except KeyError as exc:
            raise DocumentError(f"--closed: {exc.args[0]}") from None
        derived.append((f"closed {s.fmt(v)}", lambda v=v: closed_subspace(s, v)))
    if opts.booleanize:
        derived.append(("booleanization", lambda: booleanization(s)))
    if opts.adjoin_top:
        derived.append(("adjoined-top", lambda: adjoin_top(s)))
    if opts.beta:
        derived.append(("beta", lambda: beta_cover(s)))

    sub = AnalyzeOptions(laws=opts.laws, points=opts.points, frame=opts.frame,
                         max_base=opts.max_base)
    base_ok = bool(validate_axioms(s))
    for tag, make in derived:
        if not base_ok:
            lines += [f"[derived {tag}]", "skipped=cover axioms fail"]
            continue
        d = make()
        lines += describe_space(d, sub, header=f"[derived {tag}]")
        if tag == "beta":
            cover = minimal_subcover(d, d.base)[0]
            lines.append(f"compact_witness={d.fmt(cover)}")
    return "\n".join(lines) + "\n"


def run_iso(s1: FormalTopology, s2: FormalTopology) -> str:
    found = find_isomorphism(s1, s2)
    if found is None:
        return "isomorphic=false\n"
    f, g = found
    lines = ["isomorphic=true", "[forward]"] + f.lines() + ["[backward]"] + g.lines()
    return "\n".join(lines) + "\n"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(obj: Union[Poset, Frame], name: str = "hasse") -> str:
    """DOT digraph of the Hasse diagram, edges pointing upwards."""
    if isinstance(obj, Frame):
        labels = [obj.fmt(i) for i in range(len(obj))]
    else:
        labels = list(obj.labels)
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, label in enumerate(labels):
        lines.append(f"  n{i} [label={_quote(label)}];")
    for x, y in obj.hasse_edges():
        lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_for(doc: Document, frame: bool, complete: bool = False,
            max_base: Optional[int] = None) -> str:
    if frame:
        return emit_dot(enumerate_frame(build_space(doc, complete=complete, max_base=max_base)))
    poset = build_poset(doc, max_base)
    if poset is None:
        raise DocumentError(f"a {doc.kind!r} document has no order to draw; use --frame")
    return emit_dot(poset)
