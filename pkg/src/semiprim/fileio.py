"""Plain-text group files and triple files.

Group file::

    # comment
    degree <n>          (first non-comment line)
    name <string>
    gen <cycles>
    stab <cycles>

Triple file::

    K:
    <group file lines for K>
    aut:
    <images of K's generators, separated by ';'>   (one line per generator of H)
    L:
    <cycles>   (one line per generator of L; 'gen' prefix optional)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .action import TransitiveAction, action_of_transitive_group, make_action
from .config import DEFAULT_CAPS, Caps
from .errors import MalformedCycle, ParseError, PointOutOfRange, RepeatedPoint
from .group import PermGroup, Subgroup, generated_by
from .perm import cycle_string, parse_cycles
from .triples import SemiprimitiveTriple, make_triple


@dataclass
class GroupFile:
    degree: int
    gens: list = field(default_factory=list)
    stab: list | None = None
    name: str | None = None

    def group(self) -> PermGroup:
        return PermGroup(self.degree, self.gens, name=self.name)

    def action(self, caps: Caps = DEFAULT_CAPS) -> TransitiveAction:
        """The designated action; without a stabilizer, the natural action if transitive, else the regular one."""
        G = self.group()
        if self.stab is not None:
            return make_action(G, generated_by(G, self.stab), caps, name=self.name)
        if G.is_transitive():
            return action_of_transitive_group(G, 0, name=self.name)
        return make_action(G, Subgroup(G, [], order=1), caps, name=self.name, check=False)


def _cycles(text: str, degree: int, line: int):
    try:
        return parse_cycles(text, degree).raw
    except PointOutOfRange as e:
        raise ParseError(line, f"point out of range: {e}") from None
    except (MalformedCycle, RepeatedPoint) as e:
        raise ParseError(line, str(e)) from None


def parse_group_lines(lines, first_line: int = 1) -> GroupFile:
    degree = None
    name = None
    gens: list = []
    stab: list | None = None
    for offset, raw in enumerate(lines):
        ln = first_line + offset
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        word, _, rest = text.partition(" ")
        rest = rest.strip()
        if degree is None and word != "degree":
            raise ParseError(ln, "'degree' must come first")
        if word == "degree":
            if degree is not None:
                raise ParseError(ln, "repeated 'degree'")
            if not rest.isdigit():
                raise ParseError(ln, f"bad degree {rest!r}")
            degree = int(rest)
            if degree < 1:
                raise ParseError(ln, "degree must be positive")
        elif word == "name":
            name = rest
        elif word == "gen":
            gens.append(_cycles(rest, degree, ln))
        elif word == "stab":
            stab = (stab or []) + [_cycles(rest, degree, ln)]
        else:
            raise ParseError(ln, f"unknown keyword {word!r}")
    if degree is None:
        raise ParseError(first_line + max(len(lines) - 1, 0), "missing 'degree'")
    return GroupFile(degree, gens, stab, name)


def parse_group_text(text: str) -> GroupFile:
    return parse_group_lines(text.splitlines())


def parse_group_file(path) -> tuple[PermGroup, Subgroup | None]:
    """``(group, designated stabilizer or None)``."""
    gf = parse_group_text(Path(path).read_text())
    G = gf.group()
    return G, (generated_by(G, gf.stab) if gf.stab is not None else None)


def read_group_file(path) -> GroupFile:
    return parse_group_text(Path(path).read_text())


def format_group_file(G: PermGroup, stab: PermGroup | None = None, name: str | None = None) -> str:
    out = [f"degree {G.degree}"]
    if name:
        out.append(f"name {name}")
    out += [f"gen {cycle_string(g)}" for g in G.gens]
    if stab is not None:
        out += [f"stab {cycle_string(h)}" for h in stab.gens] or ["stab ()"]
    return "\n".join(out) + "\n"


# Triple files


def parse_triple_text(text: str, caps: Caps = DEFAULT_CAPS) -> SemiprimitiveTriple:
    lines = text.splitlines()
    sections: dict[str, tuple[int, list[str]]] = {}
    current = None
    for i, raw in enumerate(lines, start=1):
        s = raw.strip()
        if s in ("K:", "aut:", "L:"):
            if s in sections:
                raise ParseError(i, f"repeated section {s}")
            current = s
            sections[s] = (i + 1, [])
            continue
        if current is None:
            if s and not s.startswith("#"):
                raise ParseError(i, "expected a section header 'K:'")
            continue
        sections[current][1].append(raw)
    if "K:" not in sections:
        raise ParseError(len(lines), "missing section 'K:'")
    start, klines = sections["K:"]
    gf = parse_group_lines(klines, start)
    K = gf.group()
    auts = []
    if "aut:" in sections:
        start, alines = sections["aut:"]
        for off, raw in enumerate(alines):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            parts = [p.strip() for p in s.split(";")]
            if len(parts) != len(K.gens):
                raise ParseError(start + off, f"expected {len(K.gens)} images, got {len(parts)}")
            auts.append([_cycles(p, K.degree, start + off) for p in parts])
    lgens = []
    if "L:" in sections:
        start, llines = sections["L:"]
        for off, raw in enumerate(llines):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            if s.startswith("gen "):
                s = s[4:]
            lgens.append(_cycles(s, K.degree, start + off))
    L = PermGroup(K.degree, lgens)
    return make_triple(K, auts, L, caps)


def read_triple_file(path, caps: Caps = DEFAULT_CAPS) -> SemiprimitiveTriple:
    return parse_triple_text(Path(path).read_text(), caps)


def format_triple(t: SemiprimitiveTriple) -> str:
    K = t.K.group
    out = ["K:", format_group_file(K).rstrip("\n"), "aut:"]
    gi = t.K.gen_indices()
    for h in t.H.gens:
        out.append("; ".join(cycle_string(t.K.elements[h[i]]) for i in gi))
    out.append("L:")
    out += [cycle_string(g) for g in t.L.gens]
    return "\n".join(out) + "\n"
