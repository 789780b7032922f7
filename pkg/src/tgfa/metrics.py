"""Evaluation metrics: chrF, chrF++, CER, normalized CER, sequence accuracy.

Conventions that matter for comparability:

* All lengths and distances are over Unicode scalar values, never bytes.
* "CER" is the mean raw edit distance per pair, not a rate; normalized
  CER divides each pair's distance by max(1, len(reference)).
* chrF/chrF++ are corpus-level by default: n-gram match/total counts are
  pooled over all pairs and the averaged-F formula is applied once.
  Character n-grams are taken over the text with all whitespace removed;
  word n-grams over space-delimited words. Precisions and recalls are
  averaged uniformly over the active orders (those with at least one
  reference n-gram), then combined with beta = 2. A sentence-averaged
  variant is available for sensitivity checks.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from ._kernels import KERNEL_BACKEND, levenshtein
from .errors import EmptyCorpus, WrongState
from .script import FARSI_DIACRITICS, ZWNJ, strip_whitespace

__all__ = [
    "EvalPair",
    "GroupScores",
    "MetricReport",
    "edit_distance",
    "cer_mean",
    "ncer_mean",
    "ngram_f",
    "chrf",
    "chrf_pp",
    "seq_acc",
    "score_corpus",
    "KERNEL_BACKEND",
]

CHRF_CHAR_ORDER = 6
CHRF_PP_WORD_ORDER = 2
CHRF_BETA = 2.0

# Characters that may not survive eval normalization; their presence in
# an EvalPair means a stage was skipped upstream.
_FORBIDDEN = frozenset("@_-") | {ZWNJ} | FARSI_DIACRITICS


@dataclass(frozen=True)
class EvalPair:
    """One scored pair: detokenized hypothesis vs. reference, both eval-normalized."""

    hypothesis: str
    reference: str
    group: str = ""

    def __post_init__(self):
        for side, text in (("hypothesis", self.hypothesis), ("reference", self.reference)):
            bad = set(text) & _FORBIDDEN
            if bad:
                shown = ", ".join(f"U+{ord(c):04X}" for c in sorted(bad))
                raise WrongState(f"{side} is not eval-normalized (contains {shown})")


@dataclass(frozen=True)
class GroupScores:
    n_pairs: int
    chrf: float
    chrf_pp: float
    cer: float
    ncer: float
    acc: float
    acc_no_ws: float


@dataclass(frozen=True)
class MetricReport:
    """Per-group and overall aggregates; overall pools all pairs."""

    groups: dict[str, GroupScores]
    overall: GroupScores


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit insert/delete/substitute costs."""
    return levenshtein(a, b)


def _distances(pairs: Sequence[EvalPair], jobs: int = 1) -> list[int]:
    if jobs > 1:
        # Only pays off with the compiled kernel, which releases the GIL.
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda p: levenshtein(p.hypothesis, p.reference), pairs))
    return [levenshtein(p.hypothesis, p.reference) for p in pairs]


def _require_pairs(pairs: Sequence[EvalPair]) -> None:
    if not pairs:
        raise EmptyCorpus("no pairs to score")


def cer_mean(pairs: Sequence[EvalPair], jobs: int = 1) -> float:
    """Mean raw edit distance over all pairs."""
    _require_pairs(pairs)
    return sum(_distances(pairs, jobs)) / len(pairs)


def ncer_mean(pairs: Sequence[EvalPair], jobs: int = 1) -> float:
    """Mean of edit distance divided by max(1, reference length)."""
    _require_pairs(pairs)
    dists = _distances(pairs, jobs)
    return sum(
        d / max(1, len(p.reference)) for d, p in zip(dists, pairs)
    ) / len(pairs)


def _char_ngrams(text: str, n: int) -> Counter:
    return Counter(text[i : i + n] for i in range(len(text) - n + 1))


def _word_ngrams(words: Sequence[str], n: int) -> Counter:
    return Counter(tuple(words[i : i + n]) for i in range(len(words) - n + 1))


def _pair_stats(
    hyp: str, ref: str, max_char_n: int, max_word_n: int
) -> list[tuple[int, int, int]]:
    """Per-order (matched, hyp_total, ref_total) n-gram counts for one pair."""
    stats = []
    hc, rc = strip_whitespace(hyp), strip_whitespace(ref)
    for n in range(1, max_char_n + 1):
        h, r = _char_ngrams(hc, n), _char_ngrams(rc, n)
        stats.append((sum((h & r).values()), sum(h.values()), sum(r.values())))
    if max_word_n > 0:
        hw, rw = hyp.split(), ref.split()
        for n in range(1, max_word_n + 1):
            h, r = _word_ngrams(hw, n), _word_ngrams(rw, n)
            stats.append((sum((h & r).values()), sum(h.values()), sum(r.values())))
    return stats


def _f_from_stats(stats: Sequence[tuple[int, int, int]], beta: float) -> float:
    """Averaged-F over active orders, scaled to [0, 100].

    An order is active when the reference contributed at least one
    n-gram. With no active orders the score is 100 if the hypothesis is
    equally empty, 0 otherwise.
    """
    precisions, recalls = [], []
    for matched, hyp_total, ref_total in stats:
        if ref_total == 0:
            continue
        precisions.append(matched / hyp_total if hyp_total else 0.0)
        recalls.append(matched / ref_total)
    if not precisions:
        return 100.0 if all(h == 0 for _, h, _ in stats) else 0.0
    p = sum(precisions) / len(precisions)
    r = sum(recalls) / len(recalls)
    if p + r == 0.0:
        return 0.0
    b2 = beta * beta
    return (1 + b2) * p * r / (b2 * p + r) * 100.0


def ngram_f(
    hyp: str, ref: str, max_char_n: int, max_word_n: int = 0, beta: float = CHRF_BETA
) -> float:
    """Sentence-level character/word n-gram F-score in [0, 100]."""
    if max_char_n < 1:
        raise ValueError("max_char_n must be >= 1")
    if beta <= 0:
        raise ValueError("beta must be > 0")
    return _f_from_stats(_pair_stats(hyp, ref, max_char_n, max_word_n), beta)


def _corpus_f(
    pairs: Sequence[EvalPair],
    max_char_n: int,
    max_word_n: int,
    beta: float,
    sentence_level: bool,
) -> float:
    _require_pairs(pairs)
    if sentence_level:
        return sum(
            ngram_f(p.hypothesis, p.reference, max_char_n, max_word_n, beta)
            for p in pairs
        ) / len(pairs)
    n_orders = max_char_n + max_word_n
    totals = [(0, 0, 0)] * n_orders
    for p in pairs:
        stats = _pair_stats(p.hypothesis, p.reference, max_char_n, max_word_n)
        totals = [
            (tm + m, th + h, tr + r)
            for (tm, th, tr), (m, h, r) in zip(totals, stats)
        ]
    return _f_from_stats(totals, beta)


def chrf(pairs: Sequence[EvalPair], sentence_level: bool = False) -> float:
    """Corpus chrF: character n-grams up to order 6, beta = 2."""
    return _corpus_f(pairs, CHRF_CHAR_ORDER, 0, CHRF_BETA, sentence_level)


def chrf_pp(pairs: Sequence[EvalPair], sentence_level: bool = False) -> float:
    """Corpus chrF++: chrF plus word unigrams and bigrams."""
    return _corpus_f(
        pairs, CHRF_CHAR_ORDER, CHRF_PP_WORD_ORDER, CHRF_BETA, sentence_level
    )


def seq_acc(pairs: Sequence[EvalPair], strip_ws: bool = False) -> float:
    """Percentage of hypotheses exactly matching their references."""
    _require_pairs(pairs)
    if strip_ws:
        hits = sum(
            strip_whitespace(p.hypothesis) == strip_whitespace(p.reference)
            for p in pairs
        )
    else:
        hits = sum(p.hypothesis == p.reference for p in pairs)
    return 100.0 * hits / len(pairs)


def _group_scores(
    pairs: Sequence[EvalPair], sentence_level_chrf: bool, jobs: int
) -> GroupScores:
    return GroupScores(
        n_pairs=len(pairs),
        chrf=chrf(pairs, sentence_level_chrf),
        chrf_pp=chrf_pp(pairs, sentence_level_chrf),
        cer=cer_mean(pairs, jobs),
        ncer=ncer_mean(pairs, jobs),
        acc=seq_acc(pairs, strip_ws=False),
        acc_no_ws=seq_acc(pairs, strip_ws=True),
    )


_GROUP_ORDER = {"poetry": 0, "prose": 1, "names": 2, "dictionary": 3}


def _ordered_groups(labels: Iterable[str]) -> list[str]:
    return sorted(set(labels), key=lambda g: (_GROUP_ORDER.get(g, len(_GROUP_ORDER)), g))


def score_corpus(
    pairs: Sequence[EvalPair],
    sentence_level_chrf: bool = False,
    jobs: int = 1,
) -> MetricReport:
    """All six metrics per group label and pooled overall."""
    _require_pairs(pairs)
    by_group: dict[str, list[EvalPair]] = {}
    for p in pairs:
        by_group.setdefault(p.group, []).append(p)
    groups = {
        label: _group_scores(by_group[label], sentence_level_chrf, jobs)
        for label in _ordered_groups(by_group)
    }
    return MetricReport(
        groups=groups, overall=_group_scores(pairs, sentence_level_chrf, jobs)
    )
