"""Rule-table light stemmer for Arabic tokens.

Affix-stripping only, no root extraction. The rules live in
``data/stem_rules.tsv`` (tab-separated ``kind<TAB>affix<TAB>min_remaining``,
kind is ``prefix`` or ``suffix``) and are tried top-to-bottom; passes repeat
until no rule fires, so stemming is idempotent. Two guards keep it light:

 - a rule only fires when the remainder keeps ``min_remaining`` letters,
   and tokens of three letters or fewer are never touched;
 - a rule is vetoed when the remainder is a stop-word, so a content token
   can never be reduced to a function word (this keeps the whole pipeline
   a fixed point on its own output).
"""

from dataclasses import dataclass
from pathlib import Path

from alsent.textprep.stopwords import STOPWORDS

_DATA_FILE = Path(__file__).parent / "data" / "stem_rules.tsv"


@dataclass(frozen=True)
class StemRule:
    kind: str  # "prefix" | "suffix"
    affix: str
    min_remaining: int


def load_rules(path: Path = _DATA_FILE) -> tuple[StemRule, ...]:
    """Parse the rule table, preserving file order."""
    rules = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        parts = stripped.split("\t")
        if len(parts) != 3:
            raise ValueError(f"{path.name}:{lineno}: expected 3 tab-separated fields")
        kind, affix, min_remaining = parts
        if kind not in ("prefix", "suffix") or not affix:
            raise ValueError(f"{path.name}:{lineno}: bad rule {stripped!r}")
        rules.append(StemRule(kind, affix, int(min_remaining)))
    return tuple(rules)


RULES = load_rules()


def _one_pass(token: str, rules: tuple[StemRule, ...]) -> str:
    current = token
    for rule in rules:
        if rule.kind == "prefix":
            if not current.startswith(rule.affix):
                continue
            rest = current[len(rule.affix):]
        else:
            if not current.endswith(rule.affix):
                continue
            rest = current[: len(current) - len(rule.affix)]
        if len(rest) >= rule.min_remaining and rest not in STOPWORDS:
            current = rest
    return current


def stem_token(token: str, rules: tuple[StemRule, ...] = RULES) -> str:
    """Strip affixes from one token; never lengthens it."""
    if len(token) <= 3:
        return token
    current = token
    while True:
        stripped = _one_pass(current, rules)
        if stripped == current:
            return current
        current = stripped
