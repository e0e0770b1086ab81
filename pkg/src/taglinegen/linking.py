"""Identity resolution against the KB by shared out-links, and KB occupation extraction."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence
from urllib.parse import urlsplit

from .errors import MalformedUrl
from .ingest import KbPage
from .model import Candidate, Method, UserProfile
from .occupation import NGram, compose_candidates

logger = logging.getLogger(__name__)

_SCHEME_RE = re.compile(r"^[a-z][a-z0-9+.\-]*://", re.IGNORECASE)
_HOST_RE = re.compile(r"^[\w\-]+(?:\.[\w\-]+)*$")


def normalize_url(u: str) -> str:
    """Canonical form: lowercased host without scheme, "www.", fragment or trailing slash.

    >>> normalize_url("http://www.rachaelray.com/")
    'rachaelray.com'
    """
    if not isinstance(u, str):
        raise MalformedUrl(u)
    raw = u.strip()
    if not raw or any(ch.isspace() for ch in raw):
        raise MalformedUrl(u)
    if not _SCHEME_RE.match(raw):
        raw = "http://" + raw
    try:
        parts = urlsplit(raw)
        host = parts.hostname
        port = parts.port
    except ValueError:
        raise MalformedUrl(u) from None
    if not host or not _HOST_RE.match(host) or ("." not in host and host != "localhost"):
        raise MalformedUrl(u)
    while host.startswith("www.") and len(host) > 4:
        host = host[4:]
    netloc = host if port is None else f"{host}:{port}"
    path = parts.path.rstrip("/")
    query = f"?{parts.query}" if parts.query else ""
    return netloc + path + query


@dataclass
class LinkIndex:
    """Multimap from canonical out-link to the KB pages that list it."""

    pages_by_url: dict = field(default_factory=dict)
    skipped_links: int = 0

    def lookup(self, url: str) -> list[KbPage]:
        return self.pages_by_url.get(url, [])

    def __len__(self):
        return len(self.pages_by_url)


@dataclass(frozen=True)
class AmbiguousIdentity:
    user_id: str
    url: str
    titles: tuple

    def __str__(self):
        return f"ambiguous identity: user {self.user_id} url {self.url} matches {list(self.titles)}"


def build_link_index(pages: Sequence[KbPage]) -> LinkIndex:
    index = LinkIndex()
    for page in pages:
        for link in page.external_links:
            try:
                key = normalize_url(link)
            except MalformedUrl:
                index.skipped_links += 1
                continue
            bucket = index.pages_by_url.setdefault(key, [])
            if not any(p is page for p in bucket):
                bucket.append(page)
    return index


def resolve_identity(p: UserProfile, index: LinkIndex, diagnostics: Optional[list] = None) -> Optional[KbPage]:
    """Return the single KB page sharing the user's personal link, else None.

    Collisions (several pages) are reported to ``diagnostics`` and resolved
    conservatively to None.
    """
    if not p.personal_url:
        return None
    try:
        key = normalize_url(p.personal_url)
    except MalformedUrl:
        return None
    matches = index.lookup(key)
    if not matches:
        return None
    if len(matches) > 1:
        report = AmbiguousIdentity(p.user_id, key, tuple(m.title for m in matches))
        logger.info("%s", report)
        if diagnostics is not None:
            diagnostics.append(report)
        return None
    return matches[0]


_COMMENT_RE = re.compile(r"<!--.*?-->", re.DOTALL)
_REF_RE = re.compile(r"<ref[^>/]*/>|<ref[^>]*>.*?</ref>", re.DOTALL | re.IGNORECASE)
_BR_RE = re.compile(r"<br\s*/?>", re.IGNORECASE)
_TAG_RE = re.compile(r"</?[a-zA-Z][^>]*>")
_LINK_RE = re.compile(r"\[\[(?:[^\[\]|]*\|)?([^\[\]]*)\]\]")
_EXTLINK_RE = re.compile(r"\[(?:https?:)?//\S+\s*([^\]]*)\]")
_TEMPLATE_RE = re.compile(r"\{\{([^{}]*)\}\}")
_EMPHASIS_RE = re.compile(r"'{2,}")
_BULLET_RE = re.compile(r"^[ \t]*[*#:;]+[ \t]*", re.MULTILINE)
_TAG_SPLIT_RE = re.compile(r",|\n|\band\b")

# templates whose arguments are list items
_NAMED_ARG_RE = re.compile(r"^\s*\w[\w ]*=")
_LIST_TEMPLATES = {"hlist", "flatlist", "plainlist", "ubl", "unbulleted list", "ublist", "bulleted list", "cslist"}


def _expand_template(match: re.Match) -> str:
    name, _, rest = match.group(1).partition("|")
    if name.strip().lower() not in _LIST_TEMPLATES:
        return ""
    if not rest:
        return ""
    return "\n".join(a for a in rest.split("|") if not _NAMED_ARG_RE.match(a))


def strip_wikitext(raw: str) -> str:
    text = _COMMENT_RE.sub("", raw)
    text = _REF_RE.sub("", text)
    text = _BR_RE.sub("\n", text)
    text = _TAG_RE.sub("", text)
    text = _LINK_RE.sub(r"\1", text)
    text = _EXTLINK_RE.sub(r"\1", text)
    # innermost first, so nested templates collapse
    prev = None
    while prev != text:
        prev = text
        text = _TEMPLATE_RE.sub(_expand_template, text)
    text = _EMPHASIS_RE.sub("", text)
    text = _BULLET_RE.sub("", text)
    return text


def _split_tags(text: str) -> list[str]:
    return [t for t in (" ".join(s.split()) for s in _TAG_SPLIT_RE.split(text)) if t]


def parse_infobox_occupation(raw: str) -> list[str]:
    if not raw:
        return []
    return _split_tags(strip_wikitext(raw))


_ARTICLE_RE = re.compile(r"^(?:a|an|the)\s+", re.IGNORECASE)
_SENTENCE_END_RE = re.compile(r"\.(?:\s|$)")


def extract_first_sentence_occupation(sentence: str) -> list[str]:
    if not sentence:
        return []
    text = " ".join(strip_wikitext(sentence).split())
    _, found, rest = text.partition(" is ")
    if not found:
        return []
    end = _SENTENCE_END_RE.search(rest)
    if end:
        rest = rest[: end.start()]
    rest = _ARTICLE_RE.sub("", rest.strip())
    return _split_tags(rest)


def occupation_tags(page: KbPage) -> list[str]:
    """Infobox tags when the page has an infobox occupation, else first-sentence tags."""
    if page.infobox_occupation:
        return parse_infobox_occupation(page.infobox_occupation)
    if page.first_sentence:
        return extract_first_sentence_occupation(page.first_sentence)
    return []


def generate_kb_candidates(
    p: UserProfile, index: LinkIndex, T: int, diagnostics: Optional[list] = None
) -> list[Candidate]:
    page = resolve_identity(p, index, diagnostics)
    if page is None:
        return []
    tags = occupation_tags(page)
    ngrams = [NGram(t, i) for i, t in enumerate(tags)]
    return compose_candidates(ngrams, T, user_id=p.user_id, method=Method.LINK_TRIANGULATION)
