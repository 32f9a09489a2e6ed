"""Plain-text definition files for presentations and matrices.

Presentation file layout::

    name: U(sl2)
    alphabet: f h e
    degrees: 1 1 1
    confluent: yes
    relation r0
    1 | e f
    -1 | f e
    -1 | h
    end
    rule e f
    1 | f e
    1 | h
    end
"""

from __future__ import annotations

from .freealg import Alphabet, NCElement, from_exchange, to_exchange
from .scalar import parse


def presentation_to_text(p) -> str:
    alph = p.alphabet
    lines = [f"name: {p.name}", f"alphabet-name: {alph.name}",
             "alphabet: " + " ".join(alph.symbols),
             "degrees: " + " ".join(str(d) for d in alph.degrees),
             f"confluent: {'yes' if p.confluent else 'no'}"]
    for tag, r in zip(p.tags, p.relations):
        lines.append(f"relation {tag}")
        lines.append(to_exchange(r).rstrip("\n"))
        lines.append("end")
    for lhs, rhs in p.rules:
        lines.append(f"rule {alph.word_text(lhs)}")
        body = to_exchange(rhs).rstrip("\n")
        if body:
            lines.append(body)
        lines.append("end")
    return "\n".join(lines) + "\n"


def presentation_from_text(text: str):
    from .presentations import Presentation

    header = {}
    blocks = []
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if current is not None:
            if line == "end":
                blocks.append(current)
                current = None
            else:
                current[2].append(line)
            continue
        if line.startswith("relation") or line.startswith("rule "):
            kind, _, arg = line.partition(" ")
            current = (kind, arg.strip(), [])
            continue
        key, _, value = line.partition(":")
        header[key.strip()] = value.strip()
    if current is not None:
        raise ValueError("unterminated block in presentation text")
    symbols = header["alphabet"].split()
    degrees = [int(x) for x in header.get("degrees", "").split()] or None
    alph = Alphabet(header.get("alphabet-name", header["name"]), symbols, degrees)
    relations, tags, rules = [], [], []
    for kind, arg, body in blocks:
        elem = from_exchange("\n".join(body), (alph,))
        if kind == "relation":
            relations.append(elem)
            tags.append(arg or f"r{len(tags)}")
        else:
            rules.append((alph.word(arg), elem))
    return Presentation(header["name"], alph, relations, rules,
                        confluent=header.get("confluent", "no") == "yes", tags=tags)


def matrix_to_text(m) -> str:
    """Grid of canonical scalar strings, one row per line, ' ; ' separated."""
    return "\n".join(" ; ".join(str(x) for x in row) for row in m) + "\n"


def matrix_from_text(text: str):
    return [[parse(x) for x in line.split(";")] for line in text.strip().splitlines()]
