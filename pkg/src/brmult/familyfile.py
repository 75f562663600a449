"""Line-oriented text format for ideal families.

::

    # comments and blank lines are ignored
    vars 2
    ideal I1
    gen 2 0
    gen 0 1
    ideal
    gen 1 0
    gen 0 2

``vars d`` comes first; each ``ideal`` (optionally named) is followed by one
or more ``gen`` lines with ``d`` exponents. Generators are minimalized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .monomial import IdealFamily, NotPrimaryError, is_m_primary, minimalize


class FamilyParseError(ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class FamilyFile:
    family: IdealFamily
    path: str | None = None
    # ideal index -> line numbers of its "ideal" header and "gen" lines
    lines: dict = field(default_factory=dict)


def _int(tok, lineno, what):
    try:
        v = int(tok)
    except ValueError:
        raise FamilyParseError(f"{what} must be an integer, got {tok!r}", lineno) from None
    if v < 0:
        raise FamilyParseError(f"{what} must be non-negative, got {v}", lineno)
    return v


def parse_family_file(text: str, path=None, allow_non_primary: bool = False) -> FamilyFile:
    d = None
    blocks = []  # [name, [gens], [line numbers]]
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        head = toks[0]
        if d is None:
            if head != "vars" or len(toks) != 2:
                raise FamilyParseError("expected 'vars <d>' header", lineno)
            d = _int(toks[1], lineno, "vars")
            if d < 1:
                raise FamilyParseError("vars must be at least 1", lineno)
        elif head == "vars":
            raise FamilyParseError("duplicate 'vars' header", lineno)
        elif head == "ideal":
            if len(toks) > 2:
                raise FamilyParseError("'ideal' takes at most one name", lineno)
            blocks.append([toks[1] if len(toks) == 2 else None, [], [lineno]])
        elif head == "gen":
            if not blocks:
                raise FamilyParseError("'gen' before any 'ideal'", lineno)
            if len(toks) - 1 != d:
                raise FamilyParseError(f"'gen' needs {d} exponents, got {len(toks) - 1}", lineno)
            blocks[-1][1].append(tuple(_int(t, lineno, "exponent") for t in toks[1:]))
            blocks[-1][2].append(lineno)
        else:
            raise FamilyParseError(f"unknown keyword {head!r}", lineno)
    if d is None:
        raise FamilyParseError("empty input: missing 'vars' header")
    if not blocks:
        raise FamilyParseError("no ideals given")
    ideals = []
    for name, gens, lines in blocks:
        if not gens:
            raise FamilyParseError(f"ideal {name or len(ideals) + 1} has no generators", lines[0])
        I = minimalize(gens, d)
        if not allow_non_primary and not is_m_primary(I):
            raise FamilyParseError(f"ideal {I} is not m-primary (infinite colength)", lines[0])
        ideals.append(I)
    names = [b[0] for b in blocks]
    try:
        fam = IdealFamily(
            tuple(ideals),
            tuple(n or f"I{j + 1}" for j, n in enumerate(names)) if any(names) else None,
            require_primary=not allow_non_primary,
        )
    except NotPrimaryError as exc:
        raise FamilyParseError(str(exc)) from None
    return FamilyFile(fam, path, {j: b[2] for j, b in enumerate(blocks)})


def parse_family(text: str, allow_non_primary: bool = False) -> IdealFamily:
    return parse_family_file(text, allow_non_primary=allow_non_primary).family


def load_family(path, allow_non_primary: bool = False) -> FamilyFile:
    with open(path) as fh:
        return parse_family_file(fh.read(), str(path), allow_non_primary)


def render_family(F: IdealFamily) -> str:
    out = [f"vars {F.dim}"]
    for j, I in enumerate(F.ideals):
        out.append(f"ideal {F.names[j]}" if F.names else "ideal")
        out.extend("gen " + " ".join(map(str, g)) for g in I.gens)
    return "\n".join(out) + "\n"
