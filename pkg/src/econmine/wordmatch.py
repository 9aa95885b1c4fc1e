"""Lexicon entry matching shared by the sentiment and issue modules.

An entry is either a literal lowercase word or a prefix pattern written
``stem*`` that matches any token beginning with ``stem``.
"""

from __future__ import annotations

from .exceptions import ValidationError


class WildcardSet:
    """Compiled set of literal entries and trailing-* prefix patterns."""

    __slots__ = ("entries", "literals", "prefixes")

    def __init__(self, entries, min_stem=2, what="entry"):
        literals = set()
        prefixes = set()
        for entry in entries:
            entry = entry.strip().lower()
            if not entry:
                continue
            if entry.endswith("*"):
                stem = entry[:-1]
                if "*" in stem:
                    raise ValidationError(
                        f"bad {what} {entry!r}: '*' is only allowed as a trailing wildcard"
                    )
                if len(stem) < min_stem:
                    raise ValidationError(
                        f"bad {what} {entry!r}: wildcard stem must be at least "
                        f"{min_stem} characters"
                    )
                prefixes.add(stem)
            else:
                if "*" in entry:
                    raise ValidationError(
                        f"bad {what} {entry!r}: '*' is only allowed as a trailing wildcard"
                    )
                literals.add(entry)
        self.literals = frozenset(literals)
        # tuple form so hot loops can use str.startswith(prefixes) in one call
        self.prefixes = tuple(sorted(prefixes))
        self.entries = frozenset(literals | {p + "*" for p in prefixes})

    def matches(self, token: str) -> bool:
        if token in self.literals:
            return True
        return bool(self.prefixes) and token.startswith(self.prefixes)

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        return f"WildcardSet({len(self.literals)} literals, {len(self.prefixes)} prefixes)"


def parse_sectioned_file(path, allowed_sections=None):
    """Parse a ``[section]`` / one-entry-per-line lexicon file.

    Blank lines and lines starting with '#' are ignored; entries are
    lowercased. Repeated section headers append to the earlier section.
    Returns a dict mapping section name to the list of entries in file order.
    """
    sections: dict[str, list[str]] = {}
    current = None
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if line.startswith("[") and line.endswith("]"):
                    name = line[1:-1].strip()
                    if allowed_sections is not None and name not in allowed_sections:
                        raise ValidationError(
                            f"{path}:{lineno}: unknown section [{name}]"
                        )
                    current = sections.setdefault(name, [])
                    continue
                if current is None:
                    raise ValidationError(
                        f"{path}:{lineno}: entry {line!r} appears before any [section] header"
                    )
                current.append(line.lower())
    except OSError as exc:
        from .exceptions import InputError

        raise InputError(f"cannot read lexicon file {path}: {exc}") from exc
    return sections
