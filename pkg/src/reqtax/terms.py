"""Candidate glossary terms: unigram and bigram counts over statements."""

from __future__ import annotations

import re
from collections import Counter
from typing import Iterable

STOPWORDS = frozenset(
    """
    a about above after again against all also am an and any are aren't as at be
    because been before being below between both but by can cannot could did do
    does doing down during each either else etc even ever every few for from
    further get gets got had has have having he her here hers herself him himself
    his how however i if in into is isn't it its itself just least less like
    made make makes many may me might more most much must my myself neither no
    none nor not now of off often on once one only onto or other others our ours
    ourselves out over own per rather same shall she should since so some still
    such than that the their theirs them themselves then there these they this
    those through thus to too under until up upon us very via was we well were
    what when where whether which while who whom whose why will with within
    without would yet you your yours yourself yourselves
    """.split()
)

_TOKEN_RE = re.compile(r"[a-z0-9]+(?:['’\-][a-z0-9]+)*")
_NUMBER_RE = re.compile(r"[0-9]+(?:[.,'’\-][0-9]+)*")


def tokenize(text: str) -> list[str]:
    out = []
    for tok in _TOKEN_RE.findall(text.casefold()):
        if tok.endswith(("'s", "’s")):
            tok = tok[:-2]
        out.append(tok)
    return out


def content_runs(text: str, stopwords: Iterable[str] = STOPWORDS) -> list[list[str]]:
    """Maximal runs of adjacent content words; stopwords and numbers break runs."""
    stop = stopwords if isinstance(stopwords, (set, frozenset)) else frozenset(stopwords)
    runs: list[list[str]] = []
    current: list[str] = []
    for tok in tokenize(text):
        if tok in stop or _NUMBER_RE.fullmatch(tok) or len(tok) < 2:
            if current:
                runs.append(current)
                current = []
        else:
            current.append(tok)
    if current:
        runs.append(current)
    return runs


def count_terms(
    texts: Iterable[str],
    stopwords: Iterable[str] = STOPWORDS,
    bigram_min_support: int = 2,
) -> Counter[str]:
    """Count terms; a recurring adjacent pair is one bigram occurrence.

    Pairs seen at least ``bigram_min_support`` times across all texts are
    treated as collocations. Each run is then covered left to right, taking
    a collocation where it starts unless the overlapping next pair is more
    frequent; the words of a taken bigram are not counted as unigrams.
    """
    runs = [run for text in texts for run in content_runs(text, stopwords)]
    pairs: Counter[tuple[str, str]] = Counter()
    for run in runs:
        pairs.update(zip(run, run[1:]))

    counts: Counter[str] = Counter()
    for run in runs:
        i = 0
        while i < len(run):
            here = pairs[(run[i], run[i + 1])] if i + 1 < len(run) else 0
            after = pairs[(run[i + 1], run[i + 2])] if i + 2 < len(run) else 0
            if here >= bigram_min_support and here >= after:
                counts[f"{run[i]} {run[i + 1]}"] += 1
                i += 2
            else:
                counts[run[i]] += 1
                i += 1
    return counts


def candidate_terms(text: str, stopwords: Iterable[str] = STOPWORDS) -> list[str]:
    """Every unigram and adjacent-pair bigram of one statement, in order."""
    out: list[str] = []
    for run in content_runs(text, stopwords):
        for i, word in enumerate(run):
            out.append(word)
            if i + 1 < len(run):
                out.append(f"{word} {run[i + 1]}")
    return out


def head_term(text: str, stopwords: Iterable[str] = STOPWORDS) -> str | None:
    """Longest candidate term of ``text`` (words, then characters, then first)."""
    best: str | None = None
    best_key = (0, 0)
    for term in candidate_terms(text, stopwords):
        key = (term.count(" ") + 1, len(term))
        if key > best_key:
            best, best_key = term, key
    return best
