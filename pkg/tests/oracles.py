"""Brute-force reference computations, deliberately independent of the package code."""

import math
from fractions import Fraction
from itertools import combinations


def maximal_windows_bruteforce(fragments, budget):
    """Every contiguous window whose ", "-join fits, reduced to inclusion-maximal ones."""
    n = len(fragments)
    fits = [
        (i, j)
        for i in range(n)
        for j in range(i, n)
        if len(", ".join(fragments[i : j + 1])) <= budget
    ]
    maximal = [w for w in fits if not any(o != w and o[0] <= w[0] and w[1] <= o[1] for o in fits)]
    out = []
    for i, j in sorted(maximal):
        text = ", ".join(fragments[i : j + 1])
        if text not in out:
            out.append(text)
    return out


def oracle_terms(text):
    out = []
    for tok in text.lower().split():
        if tok == "[link]":
            continue
        spots = [k for k, ch in enumerate(tok) if ch in "0123456789abcdefghijklmnopqrstuvwxyz"]
        if not spots:
            continue
        first, last = spots[0], spots[-1]
        lead = tok[first - 1] if first > 0 and tok[first - 1] in "@#" else ""
        out.append(lead + tok[first : last + 1])
    return out


def oracle_scores(texts_by_user, T):
    """Score'(D) for every candidate string, recomputed from scratch."""
    docs = [t for texts in texts_by_user for t in texts]
    M = len(docs)
    df = {}
    for d in docs:
        for term in set(oracle_terms(d)):
            df[term] = df.get(term, 0) + 1
    scores = []
    for texts in texts_by_user:
        row = []
        for d in texts:
            words = oracle_terms(d)
            if not words:
                row.append(0.0)
                continue
            total = 0.0
            for term in sorted(set(words)):
                total += words.count(term) * math.log(M / df[term])
            row.append(total / len(words) * len(d) / T)
        scores.append(row)
    return scores


METHOD_RANK = {"occupation_pattern": 0, "link_triangulation": 1, "user_classification": 2}


def oracle_pick(texts, methods, scores):
    best = max(scores)
    cutoff = best - 1e-12 * max(1.0, abs(best))
    tied = [k for k, s in enumerate(scores) if s >= cutoff]
    return min(tied, key=lambda k: (-len(texts[k]), METHOD_RANK[methods[k]], texts[k]))


def fleiss_kappa_pairs(items, categories):
    """Fleiss' kappa via explicit rater-pair agreement counting, in exact arithmetic."""
    n = len(items[0])
    N = len(items)
    pairs = n * (n - 1) // 2
    p_bar = sum(Fraction(sum(a == b for a, b in combinations(r, 2)), pairs) for r in items) / N
    p_e = sum(Fraction(sum(r.count(j) for r in items), N * n) ** 2 for j in range(categories))
    if p_bar == 1:
        return 1.0
    return float((p_bar - p_e) / (1 - p_e))
