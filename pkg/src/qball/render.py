"""Deterministic text rendering of normal forms.

The output is valid input for the CLI expression grammar, so golden-file
tests can round-trip through the parser.  Terms print in canonical order:
by word length, then by generator codes.
"""

from __future__ import annotations

from .ncpoly import Algebra, NCPoly


def word_text(alg: Algebra, word: tuple) -> str:
    if not word:
        return "1"
    parts = []
    run_start = 0
    for k in range(1, len(word) + 1):
        if k == len(word) or word[k] != word[run_start]:
            g = alg.gens[word[run_start]]
            atom = f"{g.cls}[{g.i},{g.j}]"
            e = k - run_start
            parts.append(atom if e == 1 else f"{atom}^{e}")
            run_start = k
    return "*".join(parts)


def poly_text(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    bits = []
    for word in sorted(p.terms, key=lambda w: (len(w), w)):
        c = p.terms[word]
        ctext = c.to_text()
        wtext = word_text(p.alg, word)
        if wtext == "1":
            term = ctext if _is_simple(ctext) else f"({ctext})"
        elif ctext == "1":
            term = wtext
        elif ctext == "-1":
            term = f"-{wtext}"
        elif _is_simple(ctext):
            term = f"{ctext}*{wtext}"
        else:
            term = f"({ctext})*{wtext}"
        bits.append(term)
    out = bits[0]
    for t in bits[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


def _is_simple(ctext: str) -> bool:
    # a single product term needs no parentheses inside a bigger product
    return not any(op in ctext for op in (" + ", " - "))
